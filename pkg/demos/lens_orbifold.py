"""Lens space orbifolds from surgery on the unknot.

Prints the rank of the orbifold invariant for p-surgery on the unknot with a
singular core of order n, next to n * p.
"""

from hfo import OrbifoldSurgerySpec, compute_hfo
from hfo.io import load_fixture

unknot = load_fixture("unknot")
print(" p  n  rank  n*p")
for p in (1, 2, 3, 5):
    for n in range(1, 5):
        rank = compute_hfo(OrbifoldSurgerySpec(unknot, p, n)).rank
        print(f"{p:2d} {n:2d} {rank:5d} {n * p:4d}")

res = compute_hfo(OrbifoldSurgerySpec(unknot, 0, 3))
print("\nr = 0, n = 3: rank", res.rank, "generators", res.complex.generators)
print("bounded replacement used:", res.bounded_substitute)
