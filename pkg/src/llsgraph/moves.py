"""Moves between node pairs on a two-component degeneration.

The chain is split at a single node into an elliptic ``Z_1`` (genus
``g1 = 1``) and a general ``Z_2`` of genus ``g2 = g - 1``.  A node pair is a
complementary ``(b1, a2)`` with both sides nonempty.  Every move raises one
entry of ``b1`` by one and lowers the matching entry of ``a2``:

* ``TYPE1`` raises the smallest pair sum on ``Z_1`` (needs ``rho_1 > 0``).
* ``TYPE2`` lowers ``a2`` where ``Z_2`` has the largest pair sum, landing in
  ``rho_hat_2 > 0`` (needs ``rho_hat_2 == 0``).
* ``RELEASE`` connects a pair with ``rho_hat_1 == 0`` to the pair obtained by
  lowering ``b1`` at its saturated index; it is stored in canonical
  orientation, so its ``after`` is the pair it was generated from.

Failures that the connectedness argument rules out raise
:class:`FalsificationError` instead of :class:`MoveUnavailable`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from .chain import ChainConfig, LLSComponent
from .nonemptiness import is_nonempty_component
from .sequences import (
    BNProblem,
    InvalidSequence,
    VanishingSeq,
    all_sequences,
    complement,
    merge_max,
    pair_sums,
    rho,
    rho_hat,
    rho_hat_raw,
)

log = logging.getLogger(__name__)


class MoveUnavailable(ValueError):
    """The move's preconditions do not hold for this pair."""


class FalsificationError(RuntimeError):
    """A claimed property of the moves failed; carries the offending data."""


class MoveGraphDisconnected(RuntimeError):
    """No sequence of moves joins the two pairs."""


class InvalidNodePair(ValueError):
    pass


@dataclass(frozen=True, order=True)
class NodePair:
    b1: VanishingSeq
    a2: VanishingSeq
    split: tuple[int, int]

    @classmethod
    def make(cls, b1, split: tuple[int, int], p: BNProblem) -> "NodePair":
        if not isinstance(b1, VanishingSeq):
            b1 = VanishingSeq(tuple(b1), p.d)
        pair = cls(b1, complement(b1), tuple(split))
        pair.validate(p)
        return pair

    def validate(self, p: BNProblem) -> None:
        g1, g2 = self.split
        if g1 < 0 or g2 < 0 or g1 + g2 != p.g:
            raise InvalidNodePair(f"split {self.split} does not partition g={p.g}")
        if self.a2 != complement(self.b1):
            raise InvalidNodePair(f"a2={self.a2} is not complementary to b1={self.b1}")
        if rho_hat(self.side1(p)) < 0 or rho_hat(self.side2(p)) < 0:
            raise InvalidNodePair(f"b1={self.b1} leaves a side with negative rho_hat")

    def side1(self, p: BNProblem) -> BNProblem:
        return BNProblem(self.split[0], p.r, p.d, p.a, self.b1)

    def side2(self, p: BNProblem) -> BNProblem:
        return BNProblem(self.split[1], p.r, p.d, self.a2, p.b)

    def to_json(self) -> dict:
        return {"b1": self.b1.to_json(), "a2": self.a2.to_json(), "split": list(self.split)}

    @classmethod
    def from_json(cls, data: dict, p: BNProblem) -> "NodePair":
        pair = cls.make(tuple(data["b1"]), tuple(data["split"]), p)
        if pair.a2.to_json() != list(data["a2"]):
            raise InvalidNodePair("a2 does not match complement of b1")
        return pair


def default_split(p: BNProblem) -> tuple[int, int]:
    return (1, p.g - 1)


def valid_pairs(p: BNProblem, split: tuple[int, int] | None = None) -> list[NodePair]:
    split = split or default_split(p)
    out = []
    for b1 in all_sequences(p.r, p.d):
        try:
            out.append(NodePair.make(b1, split, p))
        except InvalidNodePair:
            pass
    return out


class MoveKind(str, Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"
    RELEASE = "release"


@dataclass(frozen=True)
class MoveStep:
    kind: MoveKind
    j0: int
    before: NodePair
    after: NodePair
    inverse: bool = False

    def __post_init__(self) -> None:
        r = self.before.b1.r
        diff = [y - x for x, y in zip(self.before.b1, self.after.b1)]
        expected = [1 if k == r - self.j0 else 0 for k in range(r + 1)]
        if diff != expected:
            raise ValueError(f"step must raise b1[{r - self.j0}] by exactly one, got {diff}")

    @property
    def source(self) -> NodePair:
        return self.after if self.inverse else self.before

    @property
    def target(self) -> NodePair:
        return self.before if self.inverse else self.after

    def reversed(self) -> "MoveStep":
        return MoveStep(self.kind, self.j0, self.before, self.after, not self.inverse)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "j0": self.j0,
            "inverse": self.inverse,
            "before": self.before.to_json(),
            "after": self.after.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, p: BNProblem) -> "MoveStep":
        return cls(
            MoveKind(data["kind"]),
            data["j0"],
            NodePair.from_json(data["before"], p),
            NodePair.from_json(data["after"], p),
            bool(data.get("inverse", False)),
        )


def _shift(np_: NodePair, j0: int, delta: int, p: BNProblem) -> NodePair:
    """Move ``b1[r-j0]`` by ``delta`` (and ``a2[j0]`` by ``-delta``)."""
    entries = list(np_.b1.entries)
    entries[p.r - j0] += delta
    return NodePair.make(tuple(entries), np_.split, p)


def _require_elliptic_first(np_: NodePair) -> None:
    if np_.split[0] != 1:
        raise MoveUnavailable(f"moves need an elliptic first component, split={np_.split}")


def move_type1(np_: NodePair, p: BNProblem) -> MoveStep:
    _require_elliptic_first(np_)
    side1 = np_.side1(p)
    rho1 = rho(side1)
    if rho1 <= 0:
        raise MoveUnavailable(f"type1 needs rho_1 > 0, have {rho1}")
    s1 = pair_sums(p.a, np_.b1)
    j0 = s1.index(min(s1))
    try:
        after = _shift(np_, j0, +1, p)
    except (InvalidSequence, InvalidNodePair) as exc:
        raise FalsificationError(f"type1 from {np_} under {p} is invalid: {exc}") from exc
    if rho(after.side1(p)) != rho1 - 1:
        raise FalsificationError(f"type1 from {np_} under {p} did not lower rho_1 by one")
    return MoveStep(MoveKind.TYPE1, j0, np_, after)


def move_type2(np_: NodePair, p: BNProblem) -> MoveStep:
    _require_elliptic_first(np_)
    g1, g2 = np_.split
    if g2 < 1:
        raise MoveUnavailable("type2 needs a second component of positive genus")
    if rho_hat(np_.side2(p)) != 0:
        raise MoveUnavailable("type2 needs rho_hat_2 == 0")
    d, r = p.d, p.r
    s1 = pair_sums(p.a, np_.b1)
    s2 = pair_sums(np_.a2, p.b)
    rh1 = rho_hat(np_.side1(p))
    # past this point an obstruction contradicts the argument only if rho_hat >= 1
    fail = FalsificationError if rho_hat(p) >= 1 else MoveUnavailable

    if rh1 == 0:
        saturated = [j for j in range(r + 1) if s1[j] > d - g1]
        if any(s2[j] < d - g2 for j in saturated):
            raise MoveUnavailable("type2 side condition fails at the saturated index")
        allowed = [j for j in range(r + 1) if s1[j] < d - 1]
    else:
        allowed = list(range(r + 1))
    if not allowed:
        raise fail(f"type2 from {np_} under {p}: no admissible index")
    best = max(s2[j] for j in allowed)
    j0 = min(j for j in allowed if s2[j] == best)

    problems = []
    if s1[j0] > d - 1:
        problems.append("a_j0 + b1_{r-j0} > d-1")
    if s2[j0] <= d - g2:
        problems.append("a2_j0 + b_{r-j0} <= d-g2")
    if j0 > 0 and not np_.a2[j0 - 1] < np_.a2[j0] - 1:
        problems.append("a2_{j0-1} >= a2_j0 - 1")
    if problems:
        raise fail(f"type2 from {np_} under {p}, j0={j0}: " + "; ".join(problems))
    try:
        after = _shift(np_, j0, +1, p)
    except (InvalidSequence, InvalidNodePair) as exc:
        raise fail(f"type2 from {np_} under {p} is invalid: {exc}") from exc
    if rho_hat(after.side2(p)) <= 0:
        raise fail(f"type2 from {np_} under {p} did not reach rho_hat_2 > 0")
    return MoveStep(MoveKind.TYPE2, j0, np_, after)


def move_release(np_: NodePair, p: BNProblem) -> MoveStep:
    """Step from a ``rho_hat_1 == 0`` pair down to ``rho_hat_1 > 0``."""
    _require_elliptic_first(np_)
    if rho_hat(np_.side1(p)) != 0:
        raise MoveUnavailable("release needs rho_hat_1 == 0")
    s1 = pair_sums(p.a, np_.b1)
    j0 = s1.index(max(s1))
    try:
        lower = _shift(np_, j0, -1, p)
    except (InvalidSequence, InvalidNodePair) as exc:
        raise MoveUnavailable(f"release from {np_} is blocked: {exc}") from exc
    return MoveStep(MoveKind.RELEASE, j0, lower, np_)


MOVES = (move_type1, move_type2, move_release)


def generated_moves(p: BNProblem, split: tuple[int, int] | None = None) -> list[MoveStep]:
    """All moves available from every valid pair, deduplicated."""
    seen: dict[tuple[NodePair, NodePair], MoveStep] = {}
    for np_ in valid_pairs(p, split):
        for fn in MOVES:
            try:
                step = fn(np_, p)
            except MoveUnavailable:
                continue
            seen.setdefault((step.before, step.after), step)
    return list(seen.values())


def move_graph(p: BNProblem, split: tuple[int, int] | None = None) -> nx.Graph:
    """Undirected graph on valid pairs; each edge carries its ``step``."""
    G = nx.Graph()
    G.add_nodes_from(valid_pairs(p, split))
    for step in generated_moves(p, split):
        G.add_edge(step.before, step.after, step=step)
    return G


def find_path(src: NodePair, dst: NodePair, p: BNProblem,
              graph: nx.Graph | None = None) -> list[MoveStep]:
    """Shortest sequence of moves (each possibly traversed backwards) from
    ``src`` to ``dst``."""
    if rho_hat(p) < 1:
        raise ValueError(f"find_path needs rho_hat >= 1, {p} has rho_hat={rho_hat(p)}")
    if src.split != dst.split:
        raise ValueError(f"pairs have different splits {src.split} and {dst.split}")
    src.validate(p)
    dst.validate(p)
    G = graph if graph is not None else move_graph(p, src.split)
    try:
        nodes = nx.shortest_path(G, src, dst)
    except nx.NetworkXNoPath:
        raise MoveGraphDisconnected(f"no move path from {src.b1} to {dst.b1} under {p}") from None
    path = []
    for u, v in zip(nodes, nodes[1:]):
        step = G.edges[u, v]["step"]
        path.append(step if step.before == u else step.reversed())
    return path


def path_to_json(path: list[MoveStep]) -> list[dict]:
    return [s.to_json() for s in path]


def path_from_json(data: list[dict], p: BNProblem) -> list[MoveStep]:
    return [MoveStep.from_json(s, p) for s in data]


def parts_meet(x: NodePair, y: NodePair, p: BNProblem) -> bool:
    """Whether the products indexed by two pairs intersect, with ``Z_2`` a
    general curve of genus ``g2``."""
    g1, g2 = x.split
    left = BNProblem(g1, p.r, p.d, p.a, merge_max(x.b1, y.b1))
    right = BNProblem(g2, p.r, p.d, merge_max(x.a2, y.a2), p.b)
    return rho_hat(left) >= 0 and rho_hat(right) >= 0


def pair_component(np_: NodePair) -> LLSComponent:
    """The chain component of a two-component split, when both genera are <= 1."""
    return LLSComponent((np_.b1,))


def subadditivity_equality_expected(p: BNProblem, b1: VanishingSeq, split: tuple[int, int]) -> bool:
    """The index conditions under which ``rho_hat == rho_hat_1 + rho_hat_2``."""
    g1, g2 = split
    d = p.d
    a2 = tuple(d - x for x in reversed(b1.entries))
    s1 = pair_sums(p.a.entries, b1.entries)
    s2 = pair_sums(a2, p.b.entries)
    forward = all(s2[j] >= d - g2 for j in range(p.r + 1) if s1[j] > d - g1)
    backward = all(s1[j] >= d - g1 for j in range(p.r + 1) if s2[j] > d - g2)
    return forward and backward


def split_rho_hats(p: BNProblem, b1: VanishingSeq, split: tuple[int, int]) -> tuple[int, int]:
    g1, g2 = split
    a2 = tuple(p.d - x for x in reversed(b1.entries))
    return (
        rho_hat_raw(g1, p.d, p.a.entries, b1.entries),
        rho_hat_raw(g2, p.d, a2, p.b.entries),
    )


def bump_candidates(p: BNProblem) -> list[tuple[int, VanishingSeq]]:
    """Indices ``j0`` where raising ``a_j0`` by one keeps a valid sequence with
    ``rho_hat == 0``."""
    if rho_hat(p) != 0:
        log.info("bump candidates need rho_hat == 0; %s has rho_hat=%d", p, rho_hat(p))
        return []
    out = []
    for j0 in range(p.r + 1):
        entries = list(p.a.entries)
        entries[j0] += 1
        try:
            abar = VanishingSeq(tuple(entries), p.d)
        except InvalidSequence:
            continue
        if rho_hat(p.replace(a=abar)) == 0:
            out.append((j0, abar))
    return out


def meets_bumped_locus(c: LLSComponent, abar: VanishingSeq, p: BNProblem, cfg: ChainConfig) -> bool:
    aspects = c.aspects(p)
    a1, b1 = aspects[0]
    aspects[0] = (merge_max(abar, a1), b1)
    return all(
        is_nonempty_component(genus, p.r, p.d, a_i, b_i)
        for genus, (a_i, b_i) in zip(cfg.genera, aspects)
    )
