"""Products in the symmetric model of the enveloping algebra of a free nilpotent Lie algebra.

Basis words are written X<letters>, so X12 is the basis element for [X1,X2].
Shows X1.X2 at nilpotency class 2 and 3, then runs the associativity suite
and prints the BCH structure constants together with their denominators.
"""
from pbwlie.exactnum import format_rational
from pbwlie.nilenv import associativity_suite, gen, u_dir_mul


def text(p):
    terms = []
    for mono, c in sorted(p.items()):
        body = ".".join("X" + "".join(map(str, w)) for w in mono) or "1"
        terms.append(body if c == 1 else f"{format_rational(c)}*{body}")
    return " + ".join(terms)


for k in (2, 3):
    print(f"k={k}: X1 . X2 = {text(u_dir_mul(gen(1), gen(2), k))}")
    print(f"k={k}: X1 . X1 . X2 = {text(u_dir_mul(u_dir_mul(gen(1), gen(1), k), gen(2), k))}")

for k in (2, 3):
    rep = associativity_suite(k, 2)
    print()
    print(f"k={k}: suite pass={rep['pass']}")
    for c in rep["checks"]:
        print(f"    {c['check']}: {c['pass']}")
    print("    mixed BCH constants:")
    for row in rep["bch_table"]:
        if row["a"] and row["b"]:
            a = ",".join("X" + "".join(map(str, w)) for w in row["a"])
            b = ",".join("X" + "".join(map(str, w)) for w in row["b"])
            print(f"      bch({a}; {b}) has {row['coeff']} on X{''.join(map(str, row['word']))}")
