"""Ends of Z and of N0 x N0, read off disjoint-path counts.

Run: python demos/integers_and_grid.py
"""

from semigroup_ends.catalog import NXN_RAYS, grid_spec, integers_spec
from semigroup_ends.ends import end_compare, end_poset, enumerate_periodic_rays, format_ray, parse_ray

z = integers_spec()
up, down = enumerate_periodic_rays(z, 1, 16)
ev = end_compare(z, up, down)
print("Z:", format_ray(z, up), "vs", format_ray(z, down), "->", ev.verdict)
print("  forward counts", ev.forward.counts, "cut at", ev.forward.separator)
print("  backward counts", ev.backward.counts, "cut at", ev.backward.separator)

# rows i: (i, 0) then rightward; columns j: (0, j) then upward; the diagonal on top
nxn = grid_spec()
rep = end_poset(nxn, [parse_ray(nxn, t) for t in NXN_RAYS])
s = rep.summary
print(f"\nN0 x N0: {len(s.classes)} classes, shape {s.shape}, width {s.width}, height {s.height}")
for lo, hi in s.hasse:
    print(f"  {format_ray(nxn, rep.rays[s.classes[lo][0]])}  <  {format_ray(nxn, rep.rays[s.classes[hi][0]])}")
