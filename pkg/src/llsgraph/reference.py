"""A pinned rho_hat = 0 instance whose space has two connected components.

g=2, r=2, d=6, a=(0,2,3), b=(0,3,5) on a chain of two elliptic curves.
"""

from __future__ import annotations

from .chain import ChainConfig
from .graph import build_graph, connected_component_count
from .moves import bump_candidates, meets_bumped_locus
from .sequences import BNProblem, rho, rho_hat

PROBLEM = BNProblem(2, 2, 6, (0, 2, 3), (0, 3, 5))
CHAIN = ChainConfig((1, 1))

EXPECTED = {
    "rho": 1,
    "rho_hat": 0,
    "components": [(1, 3, 6), (1, 4, 5), (2, 3, 6), (2, 4, 5)],
    "edges": [((1, 3, 6), (2, 3, 6)), ((1, 4, 5), (2, 4, 5))],
    "connected_components": 2,
    "bump_candidates": [(2, (0, 2, 4))],
    "bump_met": [(1, 3, 6), (1, 4, 5)],
    "every_component_meets_bump": True,
}


def observed() -> dict:
    gr = build_graph(PROBLEM, CHAIN)
    b1 = [c.node_b[0].entries for c in gr.vertices]
    candidates = bump_candidates(PROBLEM)
    met = []
    every = bool(candidates)
    for _, abar in candidates:
        hits = [meets_bumped_locus(c, abar, PROBLEM, CHAIN) for c in gr.vertices]
        met.extend(b1[k] for k, hit in enumerate(hits) if hit)
        every &= all(any(hits[k] for k in block) for block in gr.partition())
    return {
        "rho": rho(PROBLEM),
        "rho_hat": rho_hat(PROBLEM),
        "components": b1,
        "edges": sorted(tuple(sorted((b1[u], b1[v]))) for u, v in gr.edges),
        "connected_components": connected_component_count(gr),
        "bump_candidates": [(j0, abar.entries) for j0, abar in candidates],
        "bump_met": sorted(set(met)),
        "every_component_meets_bump": every,
    }


def pinned_example_checks() -> list[tuple[str, object, object]]:
    got = observed()
    return [(name, expected, got[name]) for name, expected in EXPECTED.items()]
