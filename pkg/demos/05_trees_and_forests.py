"""Balanced trees count t - R; a signed forest sum over quartic maps does too."""

from eulerian_orientations.closedform import series_R
from eulerian_orientations.trees import check_forest_link, count_balanced_trees, tree_R

for family, top in (("quartic", 4), ("general", 5)):
    R = series_R(family, top)
    print(family, "primitive:", [int(count_balanced_trees(family, n)) for n in range(2, top + 1)],
          " -R:", [int(-R[n]) for n in range(2, top + 1)])
    Ru = tree_R(family, 2, top)
    print("   marked at u=2:", [str(count_balanced_trees(family, n, "marked", 2)) for n in range(2, top + 1)],
          " R(t,2):", [str(Ru[n]) for n in range(2, top + 1)])

for n, (brute, from_r, from_q) in check_forest_link(2).items():
    print(f"forest sum, {n + 1} faces: {brute}  predicted {from_r}")
