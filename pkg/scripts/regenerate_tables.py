"""Print the F(2,2) catalog and the top-degree forms for weights (-1/2)^4.

    python3 scripts/regenerate_tables.py [--format text|latex]
"""
import argparse
from fractions import Fraction

from osforest.forests import enumerate_forests, forest_latex, forest_text
from osforest.forms import alpha_form, beta_bar_form
from osforest.local_system import admissible_forests


def two_two_rows():
    for f in enumerate_forests(2, 2):
        yield f, alpha_form(f)


def top_degree_rows(a):
    for f in admissible_forests(a):
        if f.degree == len(a):
            yield f, beta_bar_form(f, a).cancel()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--format", choices=("text", "latex"), default="text")
    args = ap.parse_args()
    latex = args.format == "latex"

    def row(f, form):
        if latex:
            return f"{forest_latex(f)} & {form.latex()} \\\\"
        return f"{forest_text(f):<22} {form.text()}"

    print("% twelve forests of F(2,2)" if latex else "# twelve forests of F(2,2)")
    for f, form in two_two_rows():
        print(row(f, form))
    print()
    a = [Fraction(-1, 2)] * 4
    print("% top degree, weights (-1/2)^4" if latex else "# top degree, weights (-1/2)^4")
    for f, form in top_degree_rows(a):
        print(row(f, form))


if __name__ == "__main__":
    main()
