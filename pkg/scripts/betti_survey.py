"""Betti numbers for constant weights s/n, with the predicted nonvanishing window.

    python3 scripts/betti_survey.py --max-n 6
"""
import argparse
import json
from fractions import Fraction
from math import gcd

from osforest.local_system import betti_numbers


def survey(max_n: int):
    rows = []
    for n in range(1, max_n + 1):
        for s in range(-n, n + 1):
            b = betti_numbers([Fraction(s, n)] * n)
            g = gcd(s, n) if s else n
            window = sorted(b)
            rows.append(
                {
                    "n": n,
                    "s": s,
                    "betti": {str(p): d for p, d in b.items()},
                    "lowest_degree": window[0] if window else None,
                    "predicted_lowest": n - g,
                    "in_window": all(n - g <= p <= n for p in b),
                }
            )
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = survey(args.max_n)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        flag = "ok" if r["in_window"] and r["lowest_degree"] == r["predicted_lowest"] else "MISMATCH"
        print(f"n={r['n']} s={r['s']:>3}  {r['betti']}  lowest={r['lowest_degree']} predicted={r['predicted_lowest']}  {flag}")


if __name__ == "__main__":
    main()
