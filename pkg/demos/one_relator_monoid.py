"""The monoid <a,b | aba = b>: rewriting, its ends and its anti-rays.

The rules aba -> b and bba -> abb keep the number of b's fixed, so the
Cayley graph splits into layers by b-count.  Rays of the form b^i a^w
live in separate layers and form two chains (even and odd i).

Run: python demos/one_relator_monoid.py
"""

from semigroup_ends.catalog import aba_spec, ray_antichain
from semigroup_ends.cayley import build_ball
from semigroup_ends.ends import ANTI_RAY, end_poset, enumerate_periodic_rays, format_ray, parse_ray
from semigroup_ends.green import relative_r_classes

spec = aba_spec()
report = spec.system.is_locally_confluent()
print(f"critical pairs {report.pairs_checked}, all joinable: {report.confluent}")

layers = [parse_ray(spec, f"base={'b' * i};period=a") for i in range(6)]
rep = end_poset(spec, layers)
print("\nlayer rays b^i a^w, i = 0..5:")
for lo, hi in rep.summary.hasse:
    print(f"  i={lo} below i={hi}")
print(f"  width {rep.summary.width}: two incomparable chains")

rays = enumerate_periodic_rays(spec, 2, 16)
anti = enumerate_periodic_rays(spec, 2, 16, kind=ANTI_RAY)
rep = end_poset(spec, rays + anti)
s = rep.summary
print(f"\n{len(rays)} enumerated rays and {len(anti)} anti-rays give {len(s.classes)} classes")
for c, members in enumerate(s.classes):
    print(f"  class {c} ({s.kinds[c]}): {format_ray(spec, rep.rays[members[0]])} and {len(members) - 1} more")
print(f"largest set of pairwise incomparable ray classes: {ray_antichain(rep)}")

classes, _ = relative_r_classes(build_ball(spec, 8))
print(f"\nR-classes in the radius-8 ball: {len(classes)}, all trivial: {all(len(c) == 1 for c in classes)}")
