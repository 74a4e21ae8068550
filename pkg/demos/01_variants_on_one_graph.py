"""Build a cycle basis of one random 8-regular graph with each variant.

Run with ``python3 demos/01_variants_on_one_graph.py``.
"""

from cyclebasis import (
    VARIANTS, build_cycle_basis, girth_lower_bound, random_connected_regular, verify_basis,
    verify_weakly_fundamental,
)
from cyclebasis.baselines import fundamental_basis
from cyclebasis.gf2 import max_edge_participation

g = random_connected_regular(512, 8, seed=1)
print(f"graph: n={g.n} m={g.m}, cycle space dimension {g.m - g.n + 1}")
print(f"no basis can do better than mu >= {float(girth_lower_bound(g)):.2f}")

# A plain BFS tree basis for comparison: every cycle goes back through the root.
tree = fundamental_basis(g, "bfs")
print(f"BFS fundamental basis: mu={max_edge_participation(tree)}")

for v, cfg in VARIANTS.items():
    basis, stats = build_cycle_basis(g, v, seed=7)
    report = verify_basis(g, basis)
    assert report.is_basis and verify_weakly_fundamental(basis)
    shares = stats.case_shares()
    print(f"V{v} {cfg.root:>8} root, {cfg.cross_edge:>12} cross edge, {cfg.removal:>20} removal:"
          f" mu={stats.mu:>3}  longest case-3 cycle {stats.max_case3_cycle_len:>2}"
          f"  case 3 share {shares['case3']:.0f}%")
