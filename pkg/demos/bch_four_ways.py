"""Compute the BCH series four independent ways and print the first few terms.

    python demos/bch_four_ways.py [max_degree]
"""
import sys

from pbwlie.bch import FORMULAS, agreement_report
from pbwlie.freeassoc import to_text
from pbwlie.freelie import canonical_coordinates, from_canonical, lie_text

N = int(sys.argv[1]) if len(sys.argv) > 1 else 5

series = FORMULAS["magnus"](N)
for n, term in series.items():
    lie = lie_text(from_canonical(canonical_coordinates(term)).terms)
    print(f"BCH_{n} = {lie}")
    if n <= 3:
        print(f"    expanded: {to_text(term)}")

rep = agreement_report(N, dynkin_max=min(N, 6))
print()
print("degree  " + "  ".join(f"{f:>14}" for f in rep["formulas"] if f != "logexp") + "     lie")
for row in rep["agreement"]:
    cells = [row[f] for f in rep["formulas"] if f != "logexp"]
    print(f"{row['degree']:>6}  " + "  ".join(f"{str(c):>14}" for c in cells) + f"  {row['lie']!s:>6}")
print("all agree:", rep["pass"])
