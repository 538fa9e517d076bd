"""Trefoil and figure-eight: rank growth in n and the epsilon correction."""

from hfo import OrbifoldSurgerySpec, check_theorem2
from hfo.io import load_fixture

for name in ("trefoil_lh", "figure_eight"):
    cfk = load_fixture(name)
    print(f"{name}: tau={cfk.tau} epsilon={cfk.epsilon}")
    for r in (-1, 0, 1):
        row = []
        for n in range(1, 6):
            rep = check_theorem2(OrbifoldSurgerySpec(cfk, r, n))
            row.append(f"{rep['rank_orbifold']}{'' if rep['theorem2_ok'] else '!'}")
        print(f"  r={r:2d}  ranks for n=1..5: {' '.join(row)}")
