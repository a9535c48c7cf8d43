"""Primitive words, their factorizations, and the bracket trees they index."""
from pbwlie.freelie import tree_text
from pbwlie.wordbasis import (break_word, evaluate_primitive, is_primitive, primitives_of_grade,
                              registry_build)


def show(w):
    return "".join(map(str, w))


for w in [(1, 2, 1, 2, 2), (2, 1, 1), (1, 1, 2, 1, 2), (3, 1, 2, 3)]:
    parts = break_word(w)
    print(f"{show(w):>6} -> " + " | ".join(show(p) for p in parts))

print()
for md in [((1, 2), (2, 1)), ((1, 2), (2, 2)), ((1, 1), (2, 1), (3, 1))]:
    prims = primitives_of_grade(md)
    print(f"grade {md}: {len(prims)} primitive words")
    for p in prims:
        assert is_primitive(p)
        print(f"    {show(p):>5}  {tree_text(evaluate_primitive(p))}")

reg = registry_build(2, 5, verify=True)
print()
print("dimensions by degree over 2 letters:",
      [sum(gb.dimension for md, gb in reg.grades.items() if sum(m for _, m in md) == d) for d in range(1, 6)])
