"""Rees index and Green index evidence for a few subsemigroups.

Run: python demos/subsemigroups_and_indices.py
"""

from semigroup_ends.catalog import grid_spec, zz01_spec, zzn_spec
from semigroup_ends.green import SubsemigroupPredicate, green_index_evidence, rees_index_evidence

radii = (3, 4, 5, 6)

nxn = grid_spec()
ev = rees_index_evidence(nxn, SubsemigroupPredicate.complement_of(nxn, [(0, 0)]), radii)
print(f"N0^2 without the identity: complement sizes {ev.counts}, Rees index {ev.verdict}")

zz01 = zz01_spec()
flag1 = SubsemigroupPredicate.coordinate(zz01, 2, values=[1])
ev = rees_index_evidence(zz01, flag1, radii)
print(f"Z^2 x {{0,1}} over its flag-1 part: complement sizes {ev.counts}, Rees index {ev.verdict}")
gi = green_index_evidence(zz01, flag1, radii)
print(f"  but the complement is {gi.verdict} H^T-class (counts {gi.h_counts})")

zzn = zzn_spec()
gi = green_index_evidence(zzn, SubsemigroupPredicate.coordinate(zzn, 2, not_values=[1]), radii)
print(f"Z^2 x N0 without layer 1: complement H^T-classes {gi.verdict} (counts {gi.h_counts})")
