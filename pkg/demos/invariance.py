"""Twisting the bounded singular solid torus and cancelling back.

Box the Dehn twist bimodule with the bounded model, show the identity edges
that appear, then reduce and compare with the unbounded cycle.
"""

import sys

from hfo import build_dn, build_dn_bounded, cfda_dehn_twist, reduce
from hfo.io import type_d_to_dot
from hfo.reduction import isomorphic
from hfo.tensor import box_da_d

n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
mid = box_da_d(cfda_dehn_twist(), build_dn_bounded(n))
print(f"n={n}: {len(mid.generators)} generators after boxing")
for e in sorted(mid.edges):
    if e[1] == "1":
        print("  identity edge", e[0], "->", e[2])
small = reduce(mid)
print("reduced:", sorted(small.edges))
print("isomorphic to the cycle:", isomorphic(small, build_dn(n)) is not None)
print(type_d_to_dot(small, f"dn_{n}"))
