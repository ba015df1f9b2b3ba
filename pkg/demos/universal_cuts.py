"""Rank-2 walk-through: labeled polyhedra in the A2 chamber.

Builds a few polyhedra, asks which ones are universal and outward-positive,
extends one to a Weyl-invariant hexagon and writes SVG pictures.

    python3 demos/universal_cuts.py [output-dir]
"""
import sys
from pathlib import Path

from symcut import (
    LabeledPolyhedron,
    build_root_datum,
    is_outward_positive,
    is_simple,
    is_universal,
    stacky_normal_fan,
    w_invariant_extension,
)
from symcut.svgplot import plot_rank2

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)
a2 = build_root_datum("A2")

# each facet is <beta, x> <= xi with beta in simple-coroot coordinates
shapes = {
    "triangle": [((2, 1), 6), ((1, 2), 6)],  # meets both walls perpendicularly
    "three normals": [((2, 1), 8), ((1, 1), 5), ((1, 2), 8)],
    "skewed": [((1, 0), 3), ((1, 2), 6)],  # x1 = 3 hits the wall x2 = 0 at an angle
}
for name, rows in shapes.items():
    P = LabeledPolyhedron.from_inequalities(a2, rows)
    uni = is_universal(P)
    print(f"{name:14s} simple={bool(is_simple(P))!s:5s} universal={bool(uni)!s:5s} "
          f"outward-positive={bool(is_outward_positive(P))!s:5s} vertices={[tuple(map(str, v)) for v in P.vertices()]}")
    if not uni:
        print(f"{'':14s} certificate: {uni.certificate}")
    (out / f"{name.replace(' ', '_')}.svg").write_text(plot_rank2(a2, [P]))

# outward-positive sets extend to W-invariant polyhedra of t*
P = LabeledPolyhedron.from_inequalities(a2, shapes["triangle"])
WP = w_invariant_extension(P)
print(f"\nW-invariant extension of the triangle: {len(WP.facets)} facets, vertices")
for v in sorted(WP.vertices()):
    print("   ", tuple(int(c) for c in v))
(out / "hexagon.svg").write_text(plot_rank2(a2, [WP]))

# a labeled polygon and its stacky fan: labels become ray multiplicities
Q = LabeledPolyhedron.from_inequalities(a2, [((0, 2), 1), ((1, 1), 1), ((3, -3), 1)], "full")
fan = stacky_normal_fan(Q)
print("\nstacky fan rays (primitive generator, label):", fan.rays)
(out / "stacky_fan.svg").write_text(plot_rank2(a2, [Q], fan=True))
print(f"\nSVG files written to {out}/")
