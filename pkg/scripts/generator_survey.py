"""Minimal module generators of the twisted cohomology next to the literal candidate rule.

    python3 scripts/generator_survey.py
"""
import argparse
from fractions import Fraction as F

from osforest.forests import forest_text
from osforest.local_system import module_generators

DEFAULT = [
    [F(1, 2)] * 4,
    [F(-1, 2)] * 4,
    [F(1, 3)] * 3,
    [F(2, 3)] * 3,
    [F(1, 4)] * 4,
    [F(1, 2), F(1, 2), F(-1), F(0)],
    [F(0)] * 3,
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--weights", action="append", help="comma-separated fractions; repeatable")
    args = ap.parse_args()
    cases = [[F(x) for x in w.split(",")] for w in args.weights] if args.weights else DEFAULT
    for a in cases:
        rep = module_generators(a)
        gens = ", ".join(forest_text(f) for f in rep.generators)
        literal = {forest_text(f) for f in rep.candidates}
        extra = sorted(literal - {forest_text(f) for f in rep.generators})
        print(f"a=({','.join(map(str, a))})  by degree {rep.by_degree}")
        print(f"  minimal: {gens}")
        if extra:
            print(f"  literal rule also lists: {', '.join(extra)}")


if __name__ == "__main__":
    main()
