"""Chains of genus-0/1 curves and the components of their limit linear series.

The chain ``Z_1 - Z_2 - ... - Z_n`` is glued at ``Q_i ~ P_{i+1}``.  A refined
limit linear series with imposed vanishing ``a`` at ``P_1`` and ``b`` at
``Q_n`` is determined, up to the choice of a point in an irreducible
product, by the vanishing sequences ``b^i`` at the nodes; the vanishing at
``P_{i+1}`` is then ``complement(b^i)``.  So irreducible components are
indexed by node tuples ``(b^1, ..., b^{n-1})`` for which every factor is
nonempty.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Sequence

from .nonemptiness import component_ok
from .sequences import BNProblem, VanishingSeq, complement, rho

log = logging.getLogger(__name__)

DEFAULT_ORACLE_GUARD = 10**7


class OracleTooLarge(RuntimeError):
    """The brute-force enumeration would exceed its work guard."""


@dataclass(frozen=True)
class ChainConfig:
    genera: tuple[int, ...]

    def __post_init__(self) -> None:
        genera = tuple(self.genera)
        object.__setattr__(self, "genera", genera)
        if not genera:
            raise ValueError("a chain needs at least one component")
        bad = [x for x in genera if x not in (0, 1) or isinstance(x, bool)]
        if bad:
            raise ValueError(f"component genera must be 0 or 1, got {genera}")

    @property
    def n(self) -> int:
        return len(self.genera)

    @property
    def genus(self) -> int:
        return sum(self.genera)

    def __str__(self) -> str:
        return ",".join(map(str, self.genera))


def default_chain(g: int) -> ChainConfig:
    """``g`` elliptic components, or a single rational one when ``g == 0``."""
    return ChainConfig((1,) * g if g > 0 else (0,))


def _check_compatible(p: BNProblem, cfg: ChainConfig) -> None:
    if cfg.genus != p.g:
        raise ValueError(f"chain {cfg} has total genus {cfg.genus}, problem has g={p.g}")


@dataclass(frozen=True, order=True)
class LLSComponent:
    """Node vanishing sequences ``(b^1, ..., b^{n-1})``; empty when ``n == 1``."""

    node_b: tuple[VanishingSeq, ...]

    def aspects(self, p: BNProblem) -> list[tuple[VanishingSeq, VanishingSeq]]:
        """``(a^i, b^i)`` for ``i = 1..n`` with ``a^1 = p.a`` and ``b^n = p.b``."""
        a_seqs = [p.a] + [complement(s) for s in self.node_b]
        b_seqs = list(self.node_b) + [p.b]
        return list(zip(a_seqs, b_seqs))

    def label(self) -> str:
        if not self.node_b:
            return "(no nodes)"
        return "|".join(f"b{i}={s}" for i, s in enumerate(self.node_b, 1))

    def to_json(self) -> dict:
        return {"node_b": [s.to_json() for s in self.node_b]}

    @classmethod
    def from_json(cls, data: dict, d: int) -> "LLSComponent":
        return cls(tuple(VanishingSeq(tuple(s), d) for s in data["node_b"]))


def local_problem(c: LLSComponent, i: int, cfg: ChainConfig, p: BNProblem) -> BNProblem:
    """The two-pointed problem on ``Z_i`` (1-based ``i``)."""
    if not 1 <= i <= cfg.n:
        raise IndexError(f"component index {i} out of range 1..{cfg.n}")
    if len(c.node_b) != cfg.n - 1:
        raise ValueError(f"component has {len(c.node_b)} nodes, chain has {cfg.n - 1}")
    a_i, b_i = c.aspects(p)[i - 1]
    return BNProblem(cfg.genera[i - 1], p.r, p.d, a_i, b_i)


def _tuples(r: int, d: int) -> list[tuple[int, ...]]:
    return list(combinations(range(d + 1), r + 1))


def _tcomplement(s: tuple[int, ...], d: int) -> tuple[int, ...]:
    return tuple(d - x for x in reversed(s))


def _wrap(raw: list[tuple[tuple[int, ...], ...]], d: int) -> list[LLSComponent]:
    return [LLSComponent(tuple(VanishingSeq(s, d) for s in t)) for t in raw]


def enumerate_raw(p: BNProblem, cfg: ChainConfig) -> list[tuple[tuple[int, ...], ...]]:
    """Node tuples as plain integer tuples, in lexicographic order."""
    _check_compatible(p, cfg)
    r, d, genera, n = p.r, p.d, cfg.genera, cfg.n
    if r > d:
        log.info("r=%d > d=%d: no vanishing sequences exist", r, d)
        return []
    candidates = _tuples(r, d)
    b_last = p.b.entries

    # suffixes from node i onward, keyed on the incoming vanishing a^i
    @lru_cache(maxsize=None)
    def suffixes(i: int, a_i: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
        if i == n - 1:
            return ((),) if component_ok(genera[i], d, a_i, b_last) else ()
        out = []
        for b_i in candidates:
            if component_ok(genera[i], d, a_i, b_i):
                out.extend((b_i,) + rest for rest in suffixes(i + 1, _tcomplement(b_i, d)))
        return tuple(out)

    return list(suffixes(0, p.a.entries))


def enumerate_components(p: BNProblem, cfg: ChainConfig) -> list[LLSComponent]:
    """Irreducible components of the limit linear series space on the chain.

    Left-to-right sweep over the nodes, sharing suffix results between
    branches that reach the same incoming sequence.
    """
    return _wrap(enumerate_raw(p, cfg), p.d)


def enumerate_components_bruteforce(
    p: BNProblem, cfg: ChainConfig, guard: int = DEFAULT_ORACLE_GUARD
) -> list[LLSComponent]:
    """Filter the full Cartesian product of node sequences.  Independent of
    :func:`enumerate_components`; intended as a test oracle."""
    _check_compatible(p, cfg)
    r, d = p.r, p.d
    if r > d:
        return []
    candidates = _tuples(r, d)
    size = comb(d + 1, r + 1) ** (cfg.n - 1)
    if size > guard:
        raise OracleTooLarge(f"{size} candidate tuples exceeds oracle guard {guard}")
    found = []
    for node_b in product(candidates, repeat=cfg.n - 1):
        a_seqs = [p.a.entries] + [_tcomplement(s, d) for s in node_b]
        b_seqs = list(node_b) + [p.b.entries]
        if all(component_ok(gi, d, ai, bi) for gi, ai, bi in zip(cfg.genera, a_seqs, b_seqs)):
            found.append(node_b)
    found.sort()
    return _wrap(found, d)


class NodeStatus(Enum):
    REFINED = "refined"
    UNREFINED = "unrefined"
    INVALID = "invalid"


def node_status(aspects: Sequence[tuple[VanishingSeq, VanishingSeq]]) -> NodeStatus:
    """Check ``b^i_j + a^{i+1}_{r-j} >= d`` at every node of arbitrary aspect data.

    ``aspects[i] = (a^{i+1}, b^{i+1})`` per component.  Equality everywhere
    means refined.
    """
    refined = True
    for (_, b_i), (a_next, _) in zip(aspects, aspects[1:]):
        d, r = b_i.d, b_i.r
        for j in range(r + 1):
            s = b_i[j] + a_next[r - j]
            if s < d:
                return NodeStatus.INVALID
            if s > d:
                refined = False
    return NodeStatus.REFINED if refined else NodeStatus.UNREFINED


def is_refined(c: LLSComponent | Sequence[tuple[VanishingSeq, VanishingSeq]],
               p: BNProblem | None = None) -> bool:
    """True for a component (node data is complementary by construction), or
    for external aspect data that meets every node inequality with equality."""
    if isinstance(c, LLSComponent):
        if p is None:
            return True
        return node_status(c.aspects(p)) is NodeStatus.REFINED
    return node_status(c) is NodeStatus.REFINED


def rho_additivity_check(c: LLSComponent, cfg: ChainConfig, p: BNProblem) -> bool:
    total = sum(rho(local_problem(c, i, cfg, p)) for i in range(1, cfg.n + 1))
    return total == rho(p)


def enumeration_to_json(p: BNProblem, cfg: ChainConfig, comps: list[LLSComponent]) -> dict:
    return {
        "problem": p.to_json(),
        "chain": list(cfg.genera),
        "components": [c.to_json() for c in comps],
    }


def enumeration_from_json(data: dict) -> tuple[BNProblem, ChainConfig, list[LLSComponent]]:
    p = BNProblem.from_json(data["problem"])
    cfg = ChainConfig(tuple(data["chain"]))
    return p, cfg, [LLSComponent.from_json(c, p.d) for c in data["components"]]
