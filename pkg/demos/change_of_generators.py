"""Removing the generator (1,1) from N0 x N0 leaves the verdict matrix unchanged.

Run: python demos/change_of_generators.py
"""

from semigroup_ends.catalog import RunConfig, change_gen_matrices, grid_spec
from semigroup_ends.ends import format_ray

before, after, translated = change_gen_matrices(RunConfig())
nxn = grid_spec()
ext = grid_spec(extra_diagonal=True)
for old, new in zip(before.rays, translated):
    print(f"{format_ray(ext, old):40s} -> {format_ray(nxn, new)}")
same = [[v.value for v in r] for r in before.matrix] == [[v.value for v in r] for r in after.matrix]
print(f"\nverdict matrices identical: {same}")
