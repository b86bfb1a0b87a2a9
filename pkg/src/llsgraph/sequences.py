"""Vanishing sequences and the Brill-Noether numbers rho and rho-hat.

A vanishing sequence of rank ``r`` and degree ``d`` is a strictly increasing
tuple ``a_0 < ... < a_r`` of integers in ``[0, d]``.  Everything here is
immutable; the functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class InvalidSequence(ValueError):
    """Raised when data does not satisfy the vanishing-sequence invariants."""


class ContextMismatch(ValueError):
    """Raised when two sequences with different (r, d) are combined."""


@dataclass(frozen=True, order=True)
class VanishingSeq:
    entries: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise InvalidSequence("sequence must have at least one entry (r >= 0)")
        if any(isinstance(x, bool) or not isinstance(x, int) for x in entries):
            raise InvalidSequence(f"entries must be integers: {entries}")
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 0:
            raise InvalidSequence(f"degree must be a nonnegative integer, got {self.d!r}")
        if any(x >= y for x, y in zip(entries, entries[1:])):
            raise InvalidSequence(f"{entries} is not strictly increasing")
        if len(entries) - 1 > self.d:
            raise InvalidSequence(f"rank r={len(entries) - 1} exceeds degree d={self.d}")
        if entries[0] < 0:
            raise InvalidSequence(f"{entries} has an entry below 0")
        if entries[-1] > self.d:
            raise InvalidSequence(f"{entries} has an entry above d={self.d}")

    @property
    def r(self) -> int:
        return len(self.entries) - 1

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> int:
        return self.entries[j]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"

    def to_json(self) -> list[int]:
        return list(self.entries)

    @classmethod
    def from_json(cls, data: Sequence[int], d: int) -> "VanishingSeq":
        return cls(tuple(data), d)


def _check_context(s: VanishingSeq, t: VanishingSeq) -> None:
    if s.r != t.r or s.d != t.d:
        raise ContextMismatch(
            f"context mismatch: (r={s.r}, d={s.d}) vs (r={t.r}, d={t.d})"
        )


def all_sequences(r: int, d: int) -> list[VanishingSeq]:
    """Every vanishing sequence of rank ``r`` and degree ``d`` in lexicographic
    order.  Empty when ``r > d``."""
    if r < 0 or r > d:
        return []
    return [VanishingSeq(c, d) for c in combinations(range(d + 1), r + 1)]


def complement(s: VanishingSeq) -> VanishingSeq:
    """The complementary sequence ``t_j = d - s_{r-j}``."""
    return VanishingSeq(tuple(s.d - x for x in reversed(s.entries)), s.d)


def dominates(s: VanishingSeq, t: VanishingSeq) -> bool:
    _check_context(s, t)
    return all(x >= y for x, y in zip(s.entries, t.entries))


def merge_max(s: VanishingSeq, t: VanishingSeq) -> VanishingSeq:
    """Entrywise maximum: the least sequence dominating both ``s`` and ``t``."""
    _check_context(s, t)
    return VanishingSeq(tuple(map(max, s.entries, t.entries)), s.d)


@dataclass(frozen=True)
class BNProblem:
    """Genus, rank, degree and the imposed vanishing at the two marked points.

    ``a`` and ``b`` may be given as plain integer sequences; they are coerced
    to :class:`VanishingSeq` with degree ``d``.
    """

    g: int
    r: int
    d: int
    a: VanishingSeq
    b: VanishingSeq

    def __post_init__(self) -> None:
        for name in ("g", "r", "d"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise InvalidSequence(f"{name} must be a nonnegative integer, got {v!r}")
        for name in ("a", "b"):
            s = getattr(self, name)
            if not isinstance(s, VanishingSeq):
                s = VanishingSeq(tuple(s), self.d)
                object.__setattr__(self, name, s)
            if s.d != self.d:
                raise ContextMismatch(f"{name} has degree {s.d}, problem has d={self.d}")
            if s.r != self.r:
                raise ContextMismatch(
                    f"{name}={s} has length {len(s)}, expected r+1={self.r + 1}"
                )

    def replace(self, **changes) -> "BNProblem":
        data = {"g": self.g, "r": self.r, "d": self.d, "a": self.a, "b": self.b}
        data.update(changes)
        return BNProblem(**data)

    def swapped(self) -> "BNProblem":
        return self.replace(a=self.b, b=self.a)

    def __str__(self) -> str:
        return f"g={self.g} r={self.r} d={self.d} a={self.a} b={self.b}"

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "r": self.r,
            "d": self.d,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BNProblem":
        return cls(data["g"], data["r"], data["d"], tuple(data["a"]), tuple(data["b"]))


def pair_sums(a: Iterable[int], b: Sequence[int]) -> list[int]:
    """``a_j + b_{r-j}`` for ``j = 0..r``."""
    a = tuple(a)
    r = len(a) - 1
    return [a[j] + b[r - j] for j in range(r + 1)]


def rho(p: BNProblem) -> int:
    """Brill-Noether number with ramification imposed at both points."""
    weight_a = sum(x - j for j, x in enumerate(p.a.entries))
    weight_b = sum(x - j for j, x in enumerate(p.b.entries))
    return p.g - (p.r + 1) * (p.r + p.g - p.d) - weight_a - weight_b


def rho_hat(p: BNProblem) -> int:
    """Truncated Brill-Noether number: only positive deficiencies
    ``a_j + b_{r-j} - (d - g)`` are subtracted from ``g``."""
    return rho_hat_raw(p.g, p.d, p.a.entries, p.b.entries)


def rho_hat_raw(g: int, d: int, a: Sequence[int], b: Sequence[int]) -> int:
    threshold = d - g
    r = len(a) - 1
    total = g
    for j in range(r + 1):
        s = a[j] + b[r - j]
        if s > threshold:
            total -= s - threshold
    return total
