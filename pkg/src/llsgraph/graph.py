"""Intersection graph of the irreducible components.

Two components meet iff on every ``Z_i`` the locus with the entrywise-max
of their ramification data is nonempty: a limit linear series in both
closures has aspects dominating both tuples.  Connected components of this
graph are the connected components of the limit linear series space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from networkx.utils import UnionFind

from .chain import ChainConfig, LLSComponent, enumerate_components
from .nonemptiness import is_nonempty_component
from .sequences import BNProblem, merge_max


def components_intersect(
    c1: LLSComponent, c2: LLSComponent, cfg: ChainConfig, p: BNProblem
) -> bool:
    for genus, (a1, b1), (a2, b2) in zip(cfg.genera, c1.aspects(p), c2.aspects(p)):
        if not is_nonempty_component(genus, p.r, p.d, merge_max(a1, a2), merge_max(b1, b2)):
            return False
    return True


def _aspect_arrays(vertices: list[LLSComponent], cfg: ChainConfig, p: BNProblem):
    """Per chain component, ``(V, r+1)`` arrays of the ``a^i`` and reversed ``b^i``."""
    r1 = p.r + 1
    V = len(vertices)
    out = []
    for i in range(cfg.n):
        A = np.empty((V, r1), dtype=np.int64)
        B = np.empty((V, r1), dtype=np.int64)
        for k, c in enumerate(vertices):
            a_i = p.a.entries if i == 0 else tuple(p.d - x for x in reversed(c.node_b[i - 1].entries))
            b_i = p.b.entries if i == cfg.n - 1 else c.node_b[i].entries
            A[k] = a_i
            B[k] = b_i[::-1]
        out.append((A, B))
    return out


def intersection_matrix(
    vertices: list[LLSComponent], cfg: ChainConfig, p: BNProblem
) -> np.ndarray:
    """Boolean ``(V, V)`` matrix of :func:`components_intersect`, vectorised."""
    V = len(vertices)
    ok = np.ones((V, V), dtype=bool)
    if V == 0:
        return ok
    for genus, (A, B) in zip(cfg.genera, _aspect_arrays(vertices, cfg, p)):
        sums = np.maximum(A[:, None, :], A[None, :, :]) + np.maximum(B[:, None, :], B[None, :, :])
        good = (sums <= p.d).all(axis=2)
        if genus == 1:
            good &= (sums == p.d).sum(axis=2) <= 1
        ok &= good
    return ok


@dataclass(frozen=True)
class ComponentGraph:
    problem: BNProblem
    chain: ChainConfig
    vertices: tuple[LLSComponent, ...]
    edges: frozenset[tuple[int, int]]
    _partition: tuple[tuple[int, ...], ...] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not 0 <= u < v < len(self.vertices):
                raise ValueError(f"edge {(u, v)} must satisfy 0 <= u < v < {len(self.vertices)}")

    def neighbors(self, k: int) -> list[int]:
        return sorted({v for u, v in self.edges if u == k} | {u for u, v in self.edges if v == k})

    def partition(self) -> tuple[tuple[int, ...], ...]:
        """Vertex-index blocks of the connected components, each sorted, ordered
        by smallest member."""
        if self._partition is None:
            object.__setattr__(self, "_partition", _union_find_blocks(len(self.vertices), self.edges))
        return self._partition

    def to_json(self) -> dict:
        return {
            "problem": self.problem.to_json(),
            "chain": list(self.chain.genera),
            "vertices": [c.to_json() for c in self.vertices],
            "edges": [list(e) for e in sorted(self.edges)],
            "partition": [list(b) for b in self.partition()],
            "connected_components": len(self.partition()),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ComponentGraph":
        p = BNProblem.from_json(data["problem"])
        return cls(
            p,
            ChainConfig(tuple(data["chain"])),
            tuple(LLSComponent.from_json(c, p.d) for c in data["vertices"]),
            frozenset((u, v) for u, v in data["edges"]),
        )

    def to_dot(self) -> str:
        lines = [
            "graph lls {",
            f'  label="{self.problem}  chain=({self.chain})";',
        ]
        for k, c in enumerate(self.vertices):
            lines.append(f'  v{k} [label="{c.label()}"];')
        for u, v in sorted(self.edges):
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _union_find_blocks(n: int, edges) -> tuple[tuple[int, ...], ...]:
    uf = UnionFind(range(n))
    for u, v in edges:
        uf.union(u, v)
    blocks = sorted(tuple(sorted(s)) for s in uf.to_sets())
    return tuple(blocks)


def build_graph(p: BNProblem, cfg: ChainConfig) -> ComponentGraph:
    vertices = enumerate_components(p, cfg)
    m = intersection_matrix(vertices, cfg, p)
    us, vs = np.nonzero(np.triu(m, k=1))
    edges = frozenset(zip(us.tolist(), vs.tolist()))
    return ComponentGraph(p, cfg, tuple(vertices), edges)


def connected_component_count(gr: ComponentGraph) -> int:
    return len(gr.partition())


def is_connected(gr: ComponentGraph) -> bool:
    """Connected and nonempty; the empty space does not count as connected."""
    return connected_component_count(gr) == 1
