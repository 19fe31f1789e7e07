"""Pinning predicates and exact searches on multiloops.

A region set P pins the multiloop when the self-intersection of the
multicurve in the P-punctured sphere equals the double-point count; the
pinning sets form an ideal under union.  Searches below are exact and
deterministic, with monotone pruning and a configurable size bound
(the problem is NP-hard).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .combmap import Multiloop
from .presentation import self_intersection

EXHAUSTIVE_BOUND = 24


class BudgetExceeded(RuntimeError):
    pass


class NotPinning(ValueError):
    pass


@dataclass
class PinningOracle:
    """Memoized is_pinning oracle with monotone shortcuts."""

    loop: Multiloop
    cache: dict[frozenset, bool] = field(default_factory=dict)
    calls: int = 0

    def __call__(self, pins: Iterable[int]) -> bool:
        key = frozenset(pins)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        value = self_intersection(self.loop, key) == self.loop.n_double_points
        self.cache[key] = value
        return value


def is_pinning(loop: Multiloop, pins: Iterable[int]) -> bool:
    return self_intersection(loop, pins) == loop.n_double_points


def minimal_pinning_from(loop: Multiloop, pins: Iterable[int],
                         order: Iterable[int] | None = None,
                         oracle: Callable | None = None) -> frozenset[int]:
    """Shrink a pinning set to a minimal one, trying removals in order.

    Each region of P is tried for removal exactly once; different orders
    reach different minimal sets (jointly they reach all of them).
    """
    oracle = oracle or PinningOracle(loop)
    current = frozenset(pins)
    if not oracle(current):
        raise NotPinning(f"{sorted(current)} is not pinning")
    trial_order = list(order) if order is not None else sorted(current)
    if set(trial_order) != set(current):
        raise ValueError("order must be a permutation of the pin set")
    for r in trial_order:
        smaller = current - {r}
        if oracle(smaller):
            current = smaller
    return current


def _check_bound(loop: Multiloop, budget: int | None):
    bound = EXHAUSTIVE_BOUND if budget is None else budget
    n = len(loop.map.regions)
    if n > bound:
        raise BudgetExceeded(
            f"{n} regions exceed the exhaustive bound {bound}")


def enumerate_minimal_pinning_sets(loop: Multiloop, budget: int | None = None,
                                   oracle: Callable | None = None) -> list[frozenset[int]]:
    """All inclusion-minimal pinning sets, in deterministic order.

    Sweeps subsets by increasing cardinality; a set containing a known
    minimal set is pinning but not minimal, and a pinning set none of
    whose proper subsets pin is minimal by induction on the sweep.
    """
    _check_bound(loop, budget)
    oracle = oracle or PinningOracle(loop)
    n = len(loop.map.regions)
    regions = list(range(n))
    minimal: list[frozenset[int]] = []
    from itertools import combinations
    for k in range(0, n + 1):
        for combo in combinations(regions, k):
            s = frozenset(combo)
            if any(m <= s for m in minimal):
                continue
            if oracle(s):
                minimal.append(s)
    return sorted(minimal, key=lambda s: (len(s), sorted(s)))


def forced_regions(loop: Multiloop, budget: int | None = None,
                   oracle: Callable | None = None) -> frozenset[int]:
    """Regions belonging to every pinning set: r is forced iff R - {r} fails."""
    _check_bound(loop, budget)
    oracle = oracle or PinningOracle(loop)
    n = len(loop.map.regions)
    everything = frozenset(range(n))
    return frozenset(r for r in range(n) if not oracle(everything - {r}))


@dataclass(frozen=True)
class PinningReport:
    pinning_number: int
    optimal_sets: tuple[frozenset[int], ...]
    minimal_sets: tuple[frozenset[int], ...]
    forced: frozenset[int]

    def to_json(self) -> dict:
        return {
            "pinning_number": self.pinning_number,
            "optimal_sets": [sorted(s) for s in self.optimal_sets],
            "minimal_sets": [sorted(s) for s in self.minimal_sets],
            "forced_regions": sorted(self.forced),
        }


def pinning_number_exact(loop: Multiloop, budget: int | None = None) -> PinningReport:
    """Exact pinning number via branch and bound over region sets.

    Branches on the highest-degree undecided region (degree correlates
    with pinning, which helps the bound; exactness does not depend on
    the heuristic).  Returns one optimal witness; the full minimal-set
    antichain is computed separately when needed.
    """
    _check_bound(loop, budget)
    oracle = PinningOracle(loop)
    n = len(loop.map.regions)
    everything = frozenset(range(n))
    if not oracle(everything):
        raise NotPinning("the full region set does not pin; corrupted map")
    forced = forced_regions(loop, budget, oracle=oracle)
    by_degree = sorted(range(n), key=lambda r: (-loop.map.regions[r].degree, r))

    best: dict = {"size": n + 1, "witness": None}

    def search(included: frozenset, excluded: frozenset):
        if len(included) >= best["size"]:
            return
        if oracle(included):
            best["size"] = len(included)
            best["witness"] = included
            return
        if not oracle(everything - excluded):
            return
        branch = next((r for r in by_degree
                       if r not in included and r not in excluded), None)
        if branch is None:
            return
        search(included | {branch}, excluded)
        search(included, excluded | {branch})

    search(forced, frozenset())
    witness = best["witness"]
    minimal = minimal_pinning_from(loop, witness, oracle=oracle)
    return PinningReport(pinning_number=len(witness),
                         optimal_sets=(frozenset(minimal),),
                         minimal_sets=(frozenset(minimal),),
                         forced=forced)


def full_report(loop: Multiloop, budget: int | None = None) -> PinningReport:
    """Pinning number plus the complete minimal-set antichain."""
    oracle = PinningOracle(loop)
    minimal = enumerate_minimal_pinning_sets(loop, budget, oracle=oracle)
    if not minimal:
        raise NotPinning("no pinning sets found; corrupted map")
    pn = min(len(s) for s in minimal)
    optimal = tuple(s for s in minimal if len(s) == pn)
    forced = frozenset.intersection(*minimal) if minimal else frozenset()
    return PinningReport(pinning_number=pn, optimal_sets=optimal,
                         minimal_sets=tuple(minimal), forced=forced)


# -- semi-lattice ---------------------------------------------------------

@dataclass(frozen=True)
class SemiLattice:
    nodes: tuple[frozenset[int], ...]
    covers: tuple[tuple[int, int], ...]   # (lower, upper) node indices
    generators: tuple[frozenset[int], ...]
    optimal: tuple[frozenset[int], ...]


def semilattice(loop: Multiloop, budget: int | None = None,
                report: PinningReport | None = None) -> SemiLattice:
    """Union closure of the minimal pinning sets, plus the full region set."""
    rep = report or full_report(loop, budget)
    gens = list(rep.minimal_sets)
    closure = {frozenset(range(len(loop.map.regions)))}
    closure.update(gens)
    frontier = list(closure)
    while frontier:
        s = frontier.pop()
        for g in gens:
            u = s | g
            if u not in closure:
                closure.add(u)
                frontier.append(u)
    nodes = sorted(closure, key=lambda s: (len(s), sorted(s)))
    index = {s: i for i, s in enumerate(nodes)}
    covers = []
    for i, lo in enumerate(nodes):
        for j, hi in enumerate(nodes):
            if lo < hi and not any(lo < mid < hi for mid in nodes):
                covers.append((i, j))
    return SemiLattice(nodes=tuple(nodes), covers=tuple(covers),
                       generators=tuple(gens), optimal=tuple(rep.optimal_sets))


def semilattice_dot(lat: SemiLattice, labels: dict[int, str] | None = None) -> str:
    """Graphviz DOT with cardinality as rank; red optimal and green minimal generators."""
    labels = labels or {}

    def name(s: frozenset) -> str:
        return "{" + ",".join(labels.get(r, str(r)) for r in sorted(s)) + "}"

    lines = ["digraph pinning_semilattice {", "  rankdir=BT;",
             '  node [shape=box, fontsize=10];']
    by_card: dict[int, list[int]] = {}
    for i, s in enumerate(lat.nodes):
        by_card.setdefault(len(s), []).append(i)
        if s in lat.optimal:
            style = ' style=filled fillcolor="#e08080"'
        elif s in lat.generators:
            style = ' style=filled fillcolor="#90d090"'
        else:
            style = ""
        lines.append(f'  n{i} [label="{name(lat.nodes[i])}"{style}];')
    for card, members in sorted(by_card.items()):
        row = "; ".join(f"n{i}" for i in members)
        lines.append(f"  {{ rank=same; {row}; }}")
    for lo, hi in lat.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines)
