"""Command-line interface: ``osforest <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 validation
failure (e.g. ``r a_i`` not integral), 4 size-guard refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import parse_rational, scalar_latex, scalar_text
from .forests import ForestSyntaxError, forest_latex, forest_text, parse_forest, parse_tree
from .os_algebra import SizeGuardError

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_VALIDATION, EXIT_GUARD = 0, 1, 2, 3, 4

MAX_ENUM_N = 6
MAX_GROUP_ORDER = 10**5
MAX_FORM_N = 4

_VALUE_OPTIONS = ("--weights", "--pairs")


class ValidationError(ValueError):
    pass


class InputParseError(ValueError):
    pass


@dataclass
class CommandConfig:
    command: str
    r: int | None = None
    n: int | None = None
    weights: tuple[Fraction, ...] | None = None
    k: int | None = None
    l: int | None = None
    fmt: str = "json"
    force: bool = False
    extra: dict = field(default_factory=dict)

    def to_argv(self) -> list[str]:
        """Flag list understood by :func:`run`; ``extra`` maps flag names to values (``True`` for switches)."""
        argv = [self.command]
        for name in ("r", "n", "k", "l"):
            val = getattr(self, name)
            if val is not None:
                argv += [f"--{name}", str(val)]
        if self.weights is not None:
            argv += ["--weights", ",".join(str(Fraction(x)) for x in self.weights)]
        argv += ["--format", self.fmt]
        if self.force:
            argv.append("--force")
        for key, val in self.extra.items():
            if key.startswith("_"):
                argv.append(str(val))
            elif val is True:
                argv.append(f"--{key}")
            elif val not in (None, False):
                argv += [f"--{key}", str(val)]
        return argv


# ---------------------------------------------------------------------------
# argument handling


def _glue_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--weights -1/2,...`` into ``--weights=-1/2,...`` so argparse accepts it."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def parse_weights(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputParseError(str(exc)) from exc


def parse_pairs(text: str) -> dict[tuple[int, int], Fraction]:
    """``"1,2:1/2;2,3:-1"`` -> ``{(1,2): 1/2, (2,3): -1}``."""
    out = {}
    try:
        for item in filter(None, (s.strip() for s in text.split(";"))):
            ij, val = item.split(":")
            i, j = (int(x) for x in ij.split(","))
            if i > j:
                i, j = j, i
            out[(i, j)] = parse_rational(val)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputParseError(f"bad pair weights {text!r}: {exc}") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="osforest", description="Forest bases for Orlik-Solomon algebras and twisted cohomology.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, r=True, n=True, weights=False, kl=False):
        if r:
            sp.add_argument("--r", type=int, default=None)
        if n:
            sp.add_argument("--n", type=int, default=None)
        if weights:
            sp.add_argument("--weights", type=str, default=None, help="comma-separated exact fractions")
        if kl:
            sp.add_argument("--k", type=int, default=None)
            sp.add_argument("--l", type=int, default=None)
        sp.add_argument("--format", dest="fmt", choices=("json", "text", "latex"), default="json")
        sp.add_argument("--force", action="store_true", help="override size guards")

    sp = sub.add_parser("trees", help="enumerate labelled trees")
    common(sp)
    sp.add_argument("--rectified", action="store_true")
    sp.add_argument("--count", action="store_true", help="only report counts")

    sp = sub.add_parser("forests", help="enumerate decorated forests")
    common(sp, weights=True, kl=True)
    sp.add_argument("--rectified", action="store_true")
    sp.add_argument("--admissible", action="store_true", help="restrict to forests admissible for --weights")

    sp = sub.add_parser("rectify", help="express a tree in the rectified basis")
    common(sp)
    sp.add_argument("--tree", required=True)

    sp = sub.add_parser("os-reduce", help="express alpha(F) in the rectified forest basis")
    common(sp)
    sp.add_argument("--forest", required=True)
    sp.add_argument("--graded", action="store_true")

    sp = sub.add_parser("dims", help="graded dimensions of the OS algebra")
    common(sp)

    sp = sub.add_parser("betti", help="twisted Betti numbers")
    common(sp, weights=True)

    sp = sub.add_parser("form", help="the twisted-cohomology form of an admissible forest")
    common(sp, weights=True)
    sp.add_argument("--forest", required=True)

    sp = sub.add_parser("generators", help="module generators of the twisted cohomology")
    common(sp, weights=True)
    sp.add_argument("--literal", action="store_true", help="only the no-closed-root, no-breakable-edge rule")

    sp = sub.add_parser("resonant", help="resonance test for a weight vector")
    common(sp, r=False, weights=True)
    sp.add_argument("--pairs", type=str, default=None, help='pair weights "i,j:q;..."')

    sp = sub.add_parser("character", help="characters as class functions")
    common(sp, weights=True, kl=True)
    sp.add_argument("kind", choices=("os", "module", "isotypic", "cyclic"))
    sp.add_argument("--decompose", action="store_true", help="irreducible multiplicities (S_n only)")

    sp = sub.add_parser("verify", help="run a named check")
    common(sp, kl=True)
    sp.add_argument("case")
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--s", type=int, default=None)
    sp.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-identical output)")
    return p


# ---------------------------------------------------------------------------
# helpers


def _weights_for(args, need=True):
    from .local_system import WeightVector

    if args.weights is None:
        if need:
            raise ValidationError("--weights is required")
        return None
    a = parse_weights(args.weights)
    if args.n is not None and len(a) != args.n:
        raise ValidationError(f"--n {args.n} but {len(a)} weights given")
    try:
        return WeightVector.of(a, args.r)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ValidationError(f"--{name} is required")


def _guard_n(n: int, limit: int, force: bool) -> None:
    if n > limit and not force:
        raise SizeGuardError(f"n = {n} exceeds the guard {limit}; pass --force to override")


def _guard_group(r: int, n: int, force: bool) -> None:
    from math import factorial

    order = r**n * factorial(n)
    if order > MAX_GROUP_ORDER and not force:
        raise SizeGuardError(f"|W({r},{n})| = {order} exceeds {MAX_GROUP_ORDER}; pass --force to override")


def _element_json(x: dict) -> list[dict]:
    items = sorted(x.items(), key=lambda kv: kv[0].sort_key() if hasattr(kv[0], "sort_key") else (kv[0].parent, kv[0].label))
    return [{"forest": forest_text(f), "coeff": scalar_text(c)} for f, c in items]


def _character_json(ch) -> dict:
    return {"group": repr(ch.group), "values": ch.to_json()}


def _emit(doc, fmt: str, text: str | None = None, latex: str | None = None) -> None:
    if fmt == "json" or (fmt == "text" and text is None) or (fmt == "latex" and latex is None):
        print(json.dumps(doc, indent=2, sort_keys=False))
    elif fmt == "text":
        print(text)
    else:
        print(latex)


# ---------------------------------------------------------------------------
# subcommands


def cmd_trees(args) -> int:
    from .forests import count_trees, enumerate_trees

    _need(args, "n")
    r = args.r or 1
    _guard_n(args.n, MAX_ENUM_N, args.force)
    if args.count:
        doc = {"r": r, "n": args.n, "rectified": args.rectified, "count": count_trees(r, args.n, args.rectified)}
        _emit(doc, args.fmt, text=str(doc["count"]))
        return EXIT_OK
    trees = [forest_text(t) for t in enumerate_trees(r, args.n, args.rectified)]
    doc = {"r": r, "n": args.n, "rectified": args.rectified, "count": len(trees), "trees": trees}
    _emit(doc, args.fmt, text="\n".join(trees))
    return EXIT_OK


def cmd_forests(args) -> int:
    from .forests import enumerate_forests
    from .local_system import admissible_forests

    if args.admissible:
        w = _weights_for(args)
        n, r = w.n, 1
        _guard_n(n, MAX_ENUM_N, args.force)
        forests = list(admissible_forests(w, args.k, args.l, rectified_only=args.rectified))
    else:
        _need(args, "n")
        n, r = args.n, args.r or 1
        _guard_n(n, MAX_ENUM_N, args.force)
        forests = list(enumerate_forests(r, n, args.k, args.l, args.rectified))
    doc = {
        "r": r,
        "n": n,
        "count": len(forests),
        "forests": [{"forest": forest_text(f), "k": f.k, "l": f.l} for f in forests],
    }
    _emit(doc, args.fmt, text="\n".join(forest_text(f) for f in forests), latex="\\\\\n".join(forest_latex(f) for f in forests))
    return EXIT_OK


def cmd_rectify(args) -> int:
    from .tree_module import rectify_tree

    t = parse_tree(args.tree, args.n, args.r or 1)
    _guard_n(t.n, MAX_ENUM_N, args.force)
    v = rectify_tree(t)
    terms = sorted(v.items(), key=lambda kv: (kv[0].parent, kv[0].label))
    doc = {"input": forest_text(t), "terms": [{"tree": forest_text(x), "coeff": scalar_text(c)} for x, c in terms]}
    text = " + ".join(f"{scalar_text(c)}*[{forest_text(x)}]" for x, c in terms).replace("+ -", "- ") or "0"
    _emit(doc, args.fmt, text=text)
    return EXIT_OK


def cmd_os_reduce(args) -> int:
    from .os_algebra import reduce_alpha

    f = parse_forest(args.forest, args.n, args.r or 1)
    _guard_n(f.n, MAX_ENUM_N, args.force)
    x = reduce_alpha(f, graded=args.graded)
    doc = {"input": forest_text(f), "graded": args.graded, "terms": _element_json(x)}
    text = " + ".join(f"{t['coeff']}*a[{t['forest']}]" for t in doc["terms"]).replace("+ -", "- ") or "0"
    _emit(doc, args.fmt, text=text)
    return EXIT_OK


def cmd_dims(args) -> int:
    from .os_algebra import graded_dimension, poincare_coefficients

    _need(args, "n")
    r = args.r or 1
    _guard_n(args.n, MAX_ENUM_N, args.force)
    table = {f"{k},{l}": graded_dimension(r, args.n, k, l) for k in range(args.n) for l in range(args.n - k + 1)}
    by_p: dict[int, int] = {}
    for kl, d in table.items():
        k, l = map(int, kl.split(","))
        by_p[k + l] = by_p.get(k + l, 0) + d
    doc = {
        "r": r,
        "n": args.n,
        "graded": table,
        "by_degree": {str(p): by_p[p] for p in sorted(by_p)},
        "poincare": poincare_coefficients(r, args.n),
    }
    _emit(doc, args.fmt, text="\n".join(f"A^{{{kl}}}: {d}" for kl, d in table.items()))
    return EXIT_OK


def cmd_betti(args) -> int:
    from .local_system import betti_numbers

    w = _weights_for(args)
    _guard_n(w.n, MAX_ENUM_N, args.force)
    b = betti_numbers(w)
    doc = {str(p): d for p, d in b.items()}
    _emit(doc, args.fmt, text="\n".join(f"H^{p}: {d}" for p, d in b.items()))
    return EXIT_OK


def cmd_form(args) -> int:
    from .forms import beta_bar_form
    from .local_system import b_exponents, breakable_edges, is_admissible

    w = _weights_for(args)
    _guard_n(w.n, MAX_FORM_N, args.force)
    f = parse_forest(args.forest, w.n, 1)
    if not is_admissible(f, w):
        raise ValidationError(f"{forest_text(f)} is not admissible for {w}")
    form = beta_bar_form(f, w).cancel()
    doc = {
        "forest": forest_text(f),
        "weights": [str(x) for x in w.a],
        "r": w.r,
        "b": list(b_exponents(f, w)),
        "breakable_edges": [f"{i}->{j}" for i, j in breakable_edges(f, w)],
        "text": form.text(),
        "latex": form.latex(),
        "forest_latex": forest_latex(f),
    }
    _emit(doc, args.fmt, text=form.text(), latex=form.latex())
    return EXIT_OK


def cmd_generators(args) -> int:
    from .local_system import module_generator_candidates, module_generators

    w = _weights_for(args)
    if args.literal:
        _guard_n(w.n, MAX_ENUM_N, args.force)
        cands = module_generator_candidates(w)
        doc = {"rule": "literal", "generators": [{"forest": forest_text(f), "degree": f.degree} for f in cands]}
    else:
        _guard_n(w.n, MAX_FORM_N, args.force)
        rep = module_generators(w, max_n=w.n)
        doc = {
            "rule": "minimal",
            "generators": [{"forest": forest_text(f), "degree": f.degree} for f in rep.generators],
            "by_degree": {str(p): c for p, c in sorted(rep.by_degree.items())},
            "literal_candidates": [forest_text(f) for f in rep.candidates],
        }
    _emit(doc, args.fmt, text="\n".join(f"{g['forest']}  (degree {g['degree']})" for g in doc["generators"]))
    return EXIT_OK


def cmd_resonant(args) -> int:
    from .local_system import is_resonant

    if args.weights is None:
        raise ValidationError("--weights is required")
    a = parse_weights(args.weights)
    pairs = parse_pairs(args.pairs) if args.pairs else None
    res, bullet, subset = is_resonant(a, pairs)
    doc = {"resonant": res, "condition": bullet, "witness": list(subset) if subset else None}
    _emit(doc, args.fmt, text=("resonant" if res else "not resonant") + (f" (condition {bullet}, subset {list(subset)})" if res else ""))
    return EXIT_OK


def cmd_character(args) -> int:
    from . import characters as ch
    from .local_system import isotypic_character
    from .os_algebra import os_character

    if args.kind == "isotypic":
        w = _weights_for(args)
        _need(args, "k", "l")
        _guard_n(w.n, MAX_ENUM_N, args.force)
        _guard_group(1, w.n, args.force)
        chi = isotypic_character(w, args.k, args.l)
    else:
        _need(args, "n")
        r = args.r or 1
        _guard_n(args.n, MAX_ENUM_N, args.force)
        _guard_group(r, args.n, args.force)
        if args.kind == "os":
            _need(args, "k", "l")
            chi = os_character(r, args.n, args.k, args.l, guard=None)
        elif args.kind == "module":
            chi = ch.module_character(r, args.n)
        else:
            chi = ch.cyclic_induced(args.n)
    doc = _character_json(chi)
    if args.decompose:
        doc["decomposition"] = {",".join(map(str, lam)): scalar_text(m) for lam, m in chi.decompose().items()}
    lines = [f"{k}: {v}" for k, v in doc["values"].items()]
    latex = " & ".join(f"{k}: {scalar_latex(chi[lab])}" for lab, k in zip(chi.group.classes(), doc["values"]))
    _emit(doc, args.fmt, text="\n".join(lines), latex=latex)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import characters as ch
    from .verify import CHECKS

    case = args.case
    if case in CHECKS or case == "all":
        names = list(CHECKS) if case == "all" else [case]
        results = [CHECKS[nm]() for nm in names]
        doc = {"results": [{"check": r_.name, "passed": r_.passed} for r_ in results]}
        if args.timing:
            for entry, r_ in zip(doc["results"], results):
                entry["seconds"] = round(r_.seconds, 3)
        lines = [r_.line() if args.timing else f"[{'PASS' if r_.passed else 'FAIL'}] {r_.name}" for r_ in results]
        _emit(doc, args.fmt, text="\n".join(lines))
        return EXIT_OK if all(r_.passed for r_ in results) else EXIT_VERIFY
    if case == "double-cyclic":
        _need(args, "r", "m")
        _guard_group(1, args.r * args.m, args.force)
        params = (args.r, args.m)
    elif case == "cyclic-induction":
        _need(args, "n")
        _guard_group(1, args.n, args.force)
        params = (args.n,)
    elif case == "wreath-cyclic":
        _need(args, "r", "n")
        _guard_group(args.r, args.n, args.force)
        params = (args.r, args.n)
    elif case == "graded-induction":
        _need(args, "r", "n", "k", "l")
        _guard_group(args.r, args.n, args.force)
        params = (args.r, args.n, args.k, args.l)
    elif case in ("isotypic-induction", "isotypic-wreath"):
        _need(args, "r", "n", "k", "l", "s")
        _guard_group(1, args.n, args.force)
        params = (args.r, args.n, args.k, args.l, args.s)
    else:
        raise ValidationError(f"unknown verify case {case!r}")
    ok = ch.verify_identity(case, *params)
    doc = {"case": case, "params": list(params), "passed": ok}
    _emit(doc, args.fmt, text=f"{case}{params}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "trees": cmd_trees,
    "forests": cmd_forests,
    "rectify": cmd_rectify,
    "os-reduce": cmd_os_reduce,
    "dims": cmd_dims,
    "betti": cmd_betti,
    "form": cmd_form,
    "generators": cmd_generators,
    "resonant": cmd_resonant,
    "character": cmd_character,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return COMMANDS[args.command](args)
    except (ForestSyntaxError, InputParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def run_config(config: CommandConfig) -> int:
    return run(config.to_argv())


def main() -> None:
    sys.exit(run())
