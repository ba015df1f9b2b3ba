"""Cutting a Kirwan polytope with a non-universal outward-positive set.

The admissibility test only looks at the part of the cutting set that the
Kirwan polytope can see, so a cut that fails universality can still be
a valid cut.

    python3 demos/kirwan_cut.py
"""
import warnings

from symcut import LabeledPolyhedron, build_root_datum, is_universal, kirwan_cut
from symcut.coxvinberg import KirwanCutWarning
from symcut.polyhedra import contains

a2 = build_root_datum("A2")
kirwan = LabeledPolyhedron.from_inequalities(a2, [((1, 0), 12), ((0, 1), 12), ((-1, -1), -12)])
P = LabeledPolyhedron.from_inequalities(a2, [((3, 2), 48)])

print("cutting set universal:", bool(is_universal(P)), is_universal(P).certificate)
cut = kirwan_cut(kirwan, P)
print("admissible against this Kirwan polytope:", cut.admissible)
R = cut.polyhedron
print(f"cut polytope: {len(R.facets)} facets")
for f in R.facets:
    print(f"    <{f.beta}, x> <= {f.xi}   label {f.label}")
print("vertices:", sorted(tuple(int(c) for c in v) for v in R.vertices()))
print("inside both inputs:", contains(kirwan, R) and contains(P, R))

# move the cut so it crosses a wall inside the Kirwan polytope
square = LabeledPolyhedron.from_inequalities(a2, [((1, 0), 12), ((0, 1), 12)])
bad = LabeledPolyhedron.from_inequalities(a2, [((3, 2), 30)])
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    res = kirwan_cut(square, bad)
print("\nshifted cut admissible:", res.admissible, res.certificate)
print("warnings:", [w.category.__name__ for w in caught if issubclass(w.category, KirwanCutWarning)])
