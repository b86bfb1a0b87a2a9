"""Exhaustive sweeps over small (g, r, d, a, b).

Each ``verify_*`` function walks every problem within :class:`SweepBounds`
and returns a :class:`SweepReport`; an empty violation list means the
checked statement held on every instance.  Work is split into independent
``(g, r, d)`` units which may run in worker processes; results are sorted
before they are returned, so reports do not depend on scheduling.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import product
from math import comb
from typing import Callable, Iterator

import networkx as nx

from .chain import (
    ChainConfig,
    NodeStatus,
    OracleTooLarge,
    default_chain,
    enumerate_components,
    enumerate_components_bruteforce,
    enumerate_raw,
    node_status,
    rho_additivity_check,
)
from .graph import build_graph, components_intersect, connected_component_count, is_connected
from .moves import (
    FalsificationError,
    MoveGraphDisconnected,
    MoveKind,
    bump_candidates,
    find_path,
    generated_moves,
    meets_bumped_locus,
    pair_component,
    parts_meet,
    split_rho_hats,
    subadditivity_equality_expected,
    valid_pairs,
)
from .sequences import BNProblem, all_sequences, rho, rho_hat

DEFAULT_MAX_WORK = 10**8
CHAIN_POLICIES = ("all-genus-1", "all-splits")


class ResourceGuardExceeded(RuntimeError):
    pass


def max_work() -> int:
    return int(os.environ.get("LLS_MAX_WORK", DEFAULT_MAX_WORK))


@dataclass(frozen=True)
class SweepBounds:
    g_max: int = 4
    r_max: int = 2
    d_max: int = 6
    chain_policy: str = "all-genus-1"

    def __post_init__(self) -> None:
        if self.g_max < 0 or self.r_max < 0:
            raise ValueError("g_max and r_max must be nonnegative")
        if self.r_max > self.d_max:
            raise ValueError(f"r_max={self.r_max} exceeds d_max={self.d_max}")
        if self.chain_policy not in CHAIN_POLICIES:
            raise ValueError(f"chain_policy must be one of {CHAIN_POLICIES}")

    def units(self) -> list[tuple[int, int, int]]:
        return [
            (g, r, d)
            for g in range(self.g_max + 1)
            for r in range(self.r_max + 1)
            for d in range(r, self.d_max + 1)
        ]

    def chains(self, g: int) -> list[ChainConfig]:
        return chains_for(g, self.chain_policy)

    def to_json(self) -> dict:
        return {"g_max": self.g_max, "r_max": self.r_max, "d_max": self.d_max,
                "chain_policy": self.chain_policy}


def chains_for(g: int, policy: str) -> list[ChainConfig]:
    """``all-splits`` means every 0/1 arrangement of total genus ``g`` with
    between ``max(g, 1)`` and ``g + 1`` components."""
    if policy == "all-genus-1":
        return [default_chain(g)]
    out = []
    for n in range(max(g, 1), g + 2):
        for genera in product((0, 1), repeat=n):
            if sum(genera) == g:
                out.append(ChainConfig(genera))
    return out


def problems_in_unit(g: int, r: int, d: int) -> Iterator[BNProblem]:
    seqs = all_sequences(r, d)
    for a in seqs:
        for b in seqs:
            yield BNProblem(g, r, d, a, b)


def estimate_work(bounds: SweepBounds) -> int:
    """Rough count of elementary sequence operations for one sweep."""
    total = 0
    for g, r, d in bounds.units():
        n_seq = comb(d + 1, r + 1)
        for cfg in bounds.chains(g):
            total += n_seq ** 3 * max(cfg.n - 1, 1)
    return total


@dataclass(frozen=True)
class Violation:
    check: str
    problem: BNProblem
    chain: tuple[int, ...] | None
    detail: str

    def sort_key(self):
        p = self.problem
        return (self.check, p.g, p.r, p.d, p.a.entries, p.b.entries, self.chain or (), self.detail)

    def to_json(self) -> dict:
        return {"check": self.check, "problem": self.problem.to_json(),
                "chain": list(self.chain) if self.chain is not None else None,
                "detail": self.detail}

    def reproducer(self) -> str:
        p = self.problem
        cmd = (f"llsgraph components -g {p.g} -r {p.r} -d {p.d} "
               f"-a {','.join(map(str, p.a))} -b {','.join(map(str, p.b))}")
        if self.chain is not None:
            cmd += " --chain " + ",".join(map(str, self.chain))
        return cmd


@dataclass
class SweepReport:
    check: str
    bounds: SweepBounds
    instances_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    disconnected_rho_hat_zero: list[tuple[BNProblem, tuple[int, ...], int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"{status} {self.check}: {self.instances_checked} instances, "
                f"{len(self.violations)} violations")

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "bounds": self.bounds.to_json(),
            "instances_checked": self.instances_checked,
            "violations": [v.to_json() for v in self.violations],
            "disconnected_rho_hat_zero": [
                {"problem": p.to_json(), "chain": list(c), "components": k}
                for p, c, k in self.disconnected_rho_hat_zero
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SweepReport":
        return cls(
            data["check"],
            SweepBounds(**data["bounds"]),
            data["instances_checked"],
            [Violation(v["check"], BNProblem.from_json(v["problem"]),
                       tuple(v["chain"]) if v["chain"] is not None else None, v["detail"])
             for v in data["violations"]],
            [(BNProblem.from_json(e["problem"]), tuple(e["chain"]), e["components"])
             for e in data["disconnected_rho_hat_zero"]],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["check", "g", "r", "d", "a", "b", "chain", "detail"])
        for v in self.violations:
            p = v.problem
            w.writerow([v.check, p.g, p.r, p.d, ",".join(map(str, p.a)), ",".join(map(str, p.b)),
                        ",".join(map(str, v.chain)) if v.chain is not None else "", v.detail])
        return buf.getvalue()


# --- per-unit workers: (g, r, d, policy) -> (count, violations, extras) -------------

UnitResult = tuple[int, list[Violation], list]


def _unit_nonemptiness(g, r, d, policy) -> UnitResult:
    count, bad = 0, []
    for p in problems_in_unit(g, r, d):
        expected = rho_hat(p) >= 0
        for cfg in chains_for(g, policy):
            count += 1
            found = bool(enumerate_raw(p, cfg))
            if found != expected:
                bad.append(Violation("nonemptiness", p, cfg.genera,
                                     f"enumeration nonempty={found} but rho_hat={rho_hat(p)}"))
    return count, bad, []


def _unit_connectedness(g, r, d, policy) -> UnitResult:
    count, bad, disconnected = 0, [], []
    for p in problems_in_unit(g, r, d):
        rh = rho_hat(p)
        if rh < 0:
            continue
        for cfg in chains_for(g, policy):
            gr = build_graph(p, cfg)
            if not gr.vertices:
                continue
            k = connected_component_count(gr)
            if rh >= 1:
                count += 1
                if not is_connected(gr):
                    bad.append(Violation("connectedness", p, cfg.genera,
                                         f"rho_hat={rh} but {k} connected components"))
            elif k >= 2:
                disconnected.append((p, cfg.genera, k))
    return count, bad, disconnected


def _unit_disconnected(g, r, d, policy) -> UnitResult:
    count, found = 0, []
    for p in problems_in_unit(g, r, d):
        if rho_hat(p) != 0:
            continue
        for cfg in chains_for(g, policy):
            count += 1
            gr = build_graph(p, cfg)
            k = connected_component_count(gr)
            if k >= 2:
                found.append((p, cfg.genera, k))
    return count, [], found


def _unit_subadditivity(g, r, d, policy) -> UnitResult:
    count, bad = 0, []
    seqs = all_sequences(r, d)
    for p in problems_in_unit(g, r, d):
        total = rho_hat(p)
        for g1 in range(g + 1):
            split = (g1, g - g1)
            for b1 in seqs:
                count += 1
                rh1, rh2 = split_rho_hats(p, b1, split)
                expected = subadditivity_equality_expected(p, b1, split)
                if total < rh1 + rh2:
                    bad.append(Violation("subadditivity", p, None,
                                         f"split={split} b1={b1}: {total} < {rh1}+{rh2}"))
                elif (total == rh1 + rh2) != expected:
                    bad.append(Violation("subadditivity", p, None,
                                         f"split={split} b1={b1}: equality={total == rh1 + rh2} "
                                         f"but index conditions={expected}"))
    return count, bad, []


def _unit_additivity(g, r, d, policy) -> UnitResult:
    count, bad = 0, []
    for p in problems_in_unit(g, r, d):
        if rho_hat(p) < 0:
            continue
        for cfg in chains_for(g, policy):
            for c in enumerate_components(p, cfg):
                count += 1
                if not rho_additivity_check(c, cfg, p):
                    bad.append(Violation("additivity", p, cfg.genera, f"{c.label()}: sum of rho_i != rho"))
                if node_status(c.aspects(p)) is not NodeStatus.REFINED:
                    bad.append(Violation("additivity", p, cfg.genera, f"{c.label()}: not refined"))
    return count, bad, []


def _check_moves(p: BNProblem) -> list[str]:
    split = (1, p.g - 1)
    problems = []
    try:
        steps = generated_moves(p, split)
    except FalsificationError as exc:
        return [f"falsified: {exc}"]
    for step in steps:
        before, after = step.before, step.after
        if step.kind is MoveKind.TYPE1:
            if rho(after.side1(p)) != rho(before.side1(p)) - 1:
                problems.append(f"type1 {before.b1}->{after.b1} does not lower rho_1 by 1")
            if rho_hat(after.side1(p)) < 0:
                problems.append(f"type1 {before.b1}->{after.b1} leaves rho_hat_1 < 0")
        elif step.kind is MoveKind.TYPE2:
            if rho_hat(after.side2(p)) <= 0:
                problems.append(f"type2 {before.b1}->{after.b1} lands with rho_hat_2 <= 0")
        if not parts_meet(before, after, p):
            problems.append(f"{step.kind.value} {before.b1}->{after.b1}: parts do not meet")
        if split == (1, 1):
            cfg = ChainConfig((1, 1))
            if not components_intersect(pair_component(before), pair_component(after), cfg, p):
                problems.append(f"{step.kind.value} {before.b1}->{after.b1}: not a graph edge")
    G = nx.Graph()
    pairs = valid_pairs(p, split)
    G.add_nodes_from(pairs)
    for step in steps:
        G.add_edge(step.before, step.after, step=step)
    if pairs:
        src = pairs[0]
        for dst in pairs[1:]:
            try:
                path = find_path(src, dst, p, graph=G)
            except MoveGraphDisconnected:
                problems.append(f"no move path from {src.b1} to {dst.b1}")
                continue
            pos = src
            for s in path:
                if s.source != pos:
                    problems.append(f"broken path from {src.b1} to {dst.b1}")
                    break
                pos = s.target
            else:
                if pos != dst:
                    problems.append(f"path from {src.b1} ends at {pos.b1}, not {dst.b1}")
    return problems


def _unit_moves(g, r, d, policy) -> UnitResult:
    count, bad = 0, []
    if g < 2:
        return 0, [], []
    for p in problems_in_unit(g, r, d):
        if rho_hat(p) < 1:
            continue
        count += 1
        for msg in _check_moves(p):
            bad.append(Violation("moves", p, None, msg))
    return count, bad, []


def _unit_bump(g, r, d, policy) -> UnitResult:
    count, bad = 0, []
    for p in problems_in_unit(g, r, d):
        if rho_hat(p) != 0:
            continue
        candidates = bump_candidates(p)
        if not candidates:
            continue
        if rho(p) < 1:
            bad.append(Violation("bump", p, None, f"bump candidates exist but rho={rho(p)}"))
        for cfg in chains_for(g, policy):
            gr = build_graph(p, cfg)
            for j0, abar in candidates:
                count += 1
                if rho(p.replace(a=abar)) < 0:
                    bad.append(Violation("bump", p, cfg.genera, f"abar={abar} has rho < 0"))
                for block in gr.partition():
                    if not any(meets_bumped_locus(gr.vertices[k], abar, p, cfg) for k in block):
                        labels = [gr.vertices[k].label() for k in block]
                        bad.append(Violation("bump", p, cfg.genera,
                                             f"abar={abar}: component {labels} misses the bumped locus"))
    return count, bad, []


def _unit_oracle(g, r, d, policy) -> UnitResult:
    count, bad = 0, []
    for p in problems_in_unit(g, r, d):
        for cfg in chains_for(g, policy):
            count += 1
            fast = enumerate_components(p, cfg)
            try:
                slow = enumerate_components_bruteforce(p, cfg)
            except OracleTooLarge as exc:
                bad.append(Violation("oracle", p, cfg.genera, str(exc)))
                continue
            if fast != slow:
                bad.append(Violation("oracle", p, cfg.genera,
                                     f"memoized gives {len(fast)} components, brute force {len(slow)}"))
    return count, bad, []


def _run_unit(worker: Callable, policy: str, unit: tuple[int, int, int]) -> UnitResult:
    return worker(*unit, policy)


def _sweep(name: str, worker: Callable, bounds: SweepBounds, jobs: int = 1,
           units: list[tuple[int, int, int]] | None = None) -> SweepReport:
    work = estimate_work(bounds)
    limit = max_work()
    if work > limit:
        raise ResourceGuardExceeded(f"estimated work {work} exceeds limit {limit} (set LLS_MAX_WORK)")
    units = bounds.units() if units is None else units
    fn = partial(_run_unit, worker, bounds.chain_policy)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, units))
    else:
        results = [fn(u) for u in units]
    report = SweepReport(name, bounds)
    for count, bad, extras in results:
        report.instances_checked += count
        report.violations.extend(bad)
        report.disconnected_rho_hat_zero.extend(extras)
    report.violations.sort(key=Violation.sort_key)
    report.disconnected_rho_hat_zero.sort(key=_extra_key)
    return report


def _extra_key(entry):
    p, chain, k = entry
    return (p.g, p.r, p.d, p.a.entries, p.b.entries, chain)


def verify_nonemptiness(bounds: SweepBounds = SweepBounds(), jobs: int = 1) -> SweepReport:
    return _sweep("nonemptiness", _unit_nonemptiness, bounds, jobs)


def verify_connectedness(bounds: SweepBounds = SweepBounds(), jobs: int = 1) -> SweepReport:
    """Connectedness when ``rho_hat >= 1``; also collects the disconnected
    ``rho_hat == 0`` instances met along the way."""
    return _sweep("connectedness", _unit_connectedness, bounds, jobs)


def verify_subadditivity(bounds: SweepBounds = SweepBounds(), jobs: int = 1) -> SweepReport:
    return _sweep("subadditivity", _unit_subadditivity, bounds, jobs)


def verify_additivity(bounds: SweepBounds = SweepBounds(), jobs: int = 1) -> SweepReport:
    return _sweep("additivity", _unit_additivity, bounds, jobs)


def verify_moves(bounds: SweepBounds = SweepBounds(), jobs: int = 1) -> SweepReport:
    return _sweep("moves", _unit_moves, bounds, jobs)


def verify_bump(bounds: SweepBounds = SweepBounds(), jobs: int = 1) -> SweepReport:
    return _sweep("bump", _unit_bump, bounds, jobs)


def verify_oracle(bounds: SweepBounds = SweepBounds(g_max=3), jobs: int = 1) -> SweepReport:
    return _sweep("oracle", _unit_oracle, bounds, jobs)


def find_disconnected(bounds: SweepBounds = SweepBounds(), jobs: int = 1
                      ) -> list[tuple[BNProblem, int]]:
    """Nonempty ``rho_hat == 0`` instances whose component graph has at least
    two connected components."""
    report = _sweep("disconnected", _unit_disconnected, bounds, jobs)
    return [(p, k) for p, _, k in report.disconnected_rho_hat_zero]


CHECKS: dict[str, Callable[..., SweepReport]] = {
    "nonemptiness": verify_nonemptiness,
    "connectedness": verify_connectedness,
    "subadditivity": verify_subadditivity,
    "additivity": verify_additivity,
    "moves": verify_moves,
    "bump": verify_bump,
    "oracle": verify_oracle,
}
