"""Batch invariant checks over generated foliation instances."""
from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .barcode import Barcode, bottleneck_distance, normalize
from .beta_map import categorized_bars, compute_B, saddle_checks
from .foliation import GeneratorParams, generate_full
from .generic import GenericInstance, build_complex, check_d_squared, compute_B_gen
from .graph import (CLOSED, SUB, SUPER, ActionGraph, VertexKind, classify_vertex,
                    partition)
from .persistence import barcode_via_ranks, compute_barcode

INVARIANTS = (
    "d_squared",
    "bar_counts",
    "semi_infinite",
    "saddle_inequality",
    "equality",
    "order_stability",
    "partition_insensitivity",
    "oracle",
)

MAX_DUMPS = 3


def endpoint_counts(b: Barcode) -> Counter:
    """How many bars each value ends: births of all bars plus finite deaths."""
    return Counter(b.endpoints())


def bar_count_defects(g: ActionGraph, b: Barcode) -> list[str]:
    counts = endpoint_counts(b)
    out = []
    for v in sorted(g.vertices):
        kind = classify_vertex(g, v)
        expected = abs(g.index(v)) if kind is VertexKind.SADDLE else 1
        got = counts[g.action(v)]
        if got != expected:
            out.append(f"{kind.value} {v} at {g.action(v)!r} ends {got} bars, expected {expected}")
    return out


def perturb_actions(g: ActionGraph, rng: random.Random, fraction: float = 0.1):
    """Order-preserving perturbation by at most ``fraction`` of the minimal action gap."""
    values = g.action_values()
    gap = min(b - a for a, b in zip(values, values[1:])) if len(values) > 1 else 1.0
    eps = fraction * gap * rng.uniform(0.1, 1.0)
    shifted = {v: x.action + rng.uniform(-eps, eps) for v, x in g.vertices.items()}
    return g.with_actions(shifted), eps


def edge_preserves_partitions(g: ActionGraph, u: str, v: str) -> bool:
    """True when adding ``u -> v`` leaves every threshold partition unchanged.

    Sublevels admitting both ends are nested above the one closed at
    ``A(u)``, superlevels above the one closed at ``A(v)``; being connected
    in the smallest one settles all the others.
    """
    sub = partition(g, g.action(u), SUB, CLOSED)
    sup = partition(g, g.action(v), SUPER, CLOSED)
    return sub.block_of(u) == sub.block_of(v) and sup.block_of(u) == sup.block_of(v)


def neutral_edges(g: ActionGraph) -> list[tuple[str, str]]:
    """Edges that change no partition and no sink/source/saddle label."""
    out = []
    for u in sorted(g.vertices):
        if not g.out_edges(u):
            continue
        for v in sorted(g.vertices):
            if g.action(u) > g.action(v) and g.in_edges(v) and edge_preserves_partitions(g, u, v):
                out.append((u, v))
    return out


@dataclass
class InstanceResult:
    genus: int
    seed: int
    failures: dict = field(default_factory=dict)
    skipped: tuple = ()


def drop_one_category3(g: ActionGraph) -> Barcode:
    bars = categorized_bars(g)
    for i, b in enumerate(bars):
        if b.category == 3:
            del bars[i]
            break
    return normalize(b.interval for b in bars)


MUTANTS: dict[str, Callable[[ActionGraph], Barcode]] = {"drop-cat3": drop_one_category3}


def check_instance(gi: GenericInstance, rng: random.Random,
                   beta: Callable[[ActionGraph], Barcode] = compute_B,
                   with_oracle: bool = True) -> tuple[dict, tuple]:
    """Run every invariant on one instance; returns (failures, skipped)."""
    g = gi.graph
    fail: dict[str, str] = {}
    skipped = []
    if not check_d_squared(gi):
        fail["d_squared"] = "boundary of boundary is nonzero"
        return fail, tuple(n for n in INVARIANTS if n != "d_squared")
    b_graph = beta(g)
    b_gen = compute_B_gen(gi)
    defects = bar_count_defects(g, b_graph) + bar_count_defects(g, b_gen)
    if defects:
        fail["bar_counts"] = "; ".join(defects)
    expected_inf = 4 - sum(x.index for x in g.vertices.values())
    got = (len(b_graph.infinite_bars), len(b_gen.infinite_bars))
    if got != (expected_inf, expected_inf):
        fail["semi_infinite"] = f"semi-infinite bars {got}, expected {expected_inf}"
    bad = [c for c in saddle_checks(g) if not c.holds]
    if bad:
        fail["saddle_inequality"] = "; ".join(
            f"{c.vertex}: {c.sub_count}+{c.super_count} > {c.bound}" for c in bad)
    if b_graph != b_gen:
        fail["equality"] = f"B_gen {b_gen} != graph barcode {b_graph}"
    moved, eps = perturb_actions(g, rng)
    dist = bottleneck_distance(b_graph, beta(moved))
    if not dist <= eps + 1e-12:
        fail["order_stability"] = f"distance {dist!r} > eps {eps!r}"
    candidates = neutral_edges(g)
    if candidates:
        extra = rng.choice(candidates)
        widened = g.with_edges(g.edges + (extra,))
        if beta(widened) != b_graph:
            fail["partition_insensitivity"] = f"adding {extra[0]}->{extra[1]} changed the barcode"
    else:
        skipped.append("partition_insensitivity")
    if with_oracle:
        c = build_complex(gi)
        if barcode_via_ranks(c) != compute_barcode(c):
            fail["oracle"] = "rank oracle disagrees with column reduction"
    else:
        skipped.append("oracle")
    return fail, tuple(skipped)


def _run_one(job) -> InstanceResult:
    genus, seed, mutant, with_oracle = job
    gen = generate_full(GeneratorParams(genus, rng_seed=seed))
    beta = MUTANTS[mutant] if mutant else compute_B
    failures, skipped = check_instance(gen.instance, random.Random(seed), beta, with_oracle)
    if failures:
        failures["instance"] = gen.instance.graph.to_dict()
    return InstanceResult(genus, seed, failures, skipped)


@dataclass
class Report:
    instances: int = 0
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    skipped: Counter = field(default_factory=Counter)
    dumps: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failed

    def lines(self) -> list[str]:
        out = [f"instances: {self.instances}"]
        for name in INVARIANTS:
            status = "FAIL" if self.failed[name] else "PASS"
            extra = f", skipped {self.skipped[name]}" if self.skipped[name] else ""
            out.append(f"{status} {name}: {self.passed[name]} passed, "
                       f"{self.failed[name]} failed{extra}")
        return out

    def to_dict(self) -> dict:
        return {
            "instances": self.instances,
            "ok": self.ok,
            "invariants": {n: {"passed": self.passed[n], "failed": self.failed[n],
                               "skipped": self.skipped[n]} for n in INVARIANTS},
            "counterexamples": self.dumps,
        }


def run_verification(n_seeds: int, genus_max: int, seed_base: int = 0,
                     mutant: str | None = None, jobs: int = 1,
                     with_oracle: bool = True) -> Report:
    jobs_list = [(genus, seed_base + i, mutant, with_oracle)
                 for genus in range(genus_max + 1) for i in range(n_seeds)]
    if jobs > 1 and len(jobs_list) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_one, jobs_list, chunksize=8))
    else:
        results = [_run_one(j) for j in jobs_list]
    report = Report(instances=len(results))
    for r in results:
        for name in INVARIANTS:
            if name in r.skipped:
                report.skipped[name] += 1
            elif name in r.failures:
                report.failed[name] += 1
                dumps = report.dumps.setdefault(name, [])
                if len(dumps) < MAX_DUMPS:
                    dumps.append({"genus": r.genus, "seed": r.seed,
                                  "detail": r.failures[name],
                                  "instance": r.failures["instance"]})
            else:
                report.passed[name] += 1
    return report
