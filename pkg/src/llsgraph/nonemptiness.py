"""Nonemptiness of two-pointed Brill-Noether loci.

The genus-0 and genus-1 tests are written in terms of the pair sums
``a_j + b_{r-j}`` and never call :func:`~llsgraph.sequences.rho_hat`, so that
agreement with the rho-hat criterion is a real check.
"""

from __future__ import annotations

from .sequences import BNProblem, VanishingSeq, _check_context, rho_hat


def genus0_ok(d: int, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    r = len(a) - 1
    return all(a[j] + b[r - j] <= d for j in range(r + 1))


def genus1_ok(d: int, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    r = len(a) - 1
    equalities = 0
    for j in range(r + 1):
        s = a[j] + b[r - j]
        if s > d:
            return False
        if s == d:
            equalities += 1
            if equalities > 1:
                return False
    return True


_TUPLE_TESTS = {0: genus0_ok, 1: genus1_ok}


def component_ok(genus: int, d: int, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Tuple-level dispatch used by the enumeration hot loops."""
    try:
        test = _TUPLE_TESTS[genus]
    except KeyError:
        raise ValueError(f"component genus must be 0 or 1, got {genus!r}") from None
    return test(d, a, b)


def _check(r: int, d: int, a: VanishingSeq, b: VanishingSeq) -> None:
    _check_context(a, b)
    if a.r != r or a.d != d:
        raise ValueError(f"sequences have (r={a.r}, d={a.d}), expected (r={r}, d={d})")


def is_nonempty_general(p: BNProblem) -> bool:
    """Nonemptiness on a general two-marked curve of genus ``p.g``."""
    return rho_hat(p) >= 0


def is_nonempty_genus0(r: int, d: int, a: VanishingSeq, b: VanishingSeq) -> bool:
    _check(r, d, a, b)
    return genus0_ok(d, a.entries, b.entries)


def is_nonempty_genus1(r: int, d: int, a: VanishingSeq, b: VanishingSeq) -> bool:
    """Every ``a_j + b_{r-j} <= d``, with equality for at most one ``j``.

    Assumes ``P - Q`` is not torsion of order at most ``d``.
    """
    _check(r, d, a, b)
    return genus1_ok(d, a.entries, b.entries)


def is_nonempty_component(
    genus: int, r: int, d: int, a: VanishingSeq, b: VanishingSeq
) -> bool:
    if genus == 0:
        return is_nonempty_genus0(r, d, a, b)
    if genus == 1:
        return is_nonempty_genus1(r, d, a, b)
    raise ValueError(f"component genus must be 0 or 1, got {genus!r}")
