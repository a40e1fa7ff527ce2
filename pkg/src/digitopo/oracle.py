"""Bounded brute-force searches over loop space and self-map space.

States are tuples of point indices. One move changes every coordinate of a
state at once, each to an equal or adjacent point, subject to the row being
continuous; this is exactly one time step of a digital homotopy. Searches
report ``Reached`` with a machine-checked certificate, ``Exhausted`` when the
reachable set closed without hitting the target, or ``BudgetExceeded``.

An ``Exhausted`` answer is bounded evidence only: it speaks about one loop
length and one move kind, never about all trivial extensions at once.
"""
from __future__ import annotations

import heapq
import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Sequence

from .core import DigitalImage, DigitopoError, Point, components, is_connected
from .homotopy import (
    Certificate,
    DigitalLoop,
    DigitalPath,
    HomotopyGrid,
    NullhomotopyCertificate,
    pad,
    verify_contraction,
)

ENDPOINT_FIXED = "endpoint_fixed"
LOOP_PRESERVING = "loop_preserving"
FREE_ENDS = "fixed_ends"  # both ends pinned, ends may differ (window searches)

DEFAULT_MAP_CAP = 7


class Status(str, Enum):
    REACHED = "Reached"
    EXHAUSTED = "Exhausted"
    BUDGET_EXCEEDED = "BudgetExceeded"


class CapExceeded(DigitopoError, ValueError):
    pass


class SearchBudgetExceeded(DigitopoError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 10**7
    max_depth: int = 10**6
    pad_len: int = 16

    def __post_init__(self):
        if self.max_states <= 0 or self.max_depth <= 0 or self.pad_len < 0:
            raise ValueError("budget values must be positive")


@dataclass
class ExplorationReport:
    status: Status
    states_visited: int
    frontier_depth: int
    certificate: Certificate | HomotopyGrid | None = None
    rows: list | None = field(default=None, repr=False)

    @property
    def reached(self) -> bool:
        return self.status is Status.REACHED

    def to_json(self) -> dict:
        from . import io as dio

        cert = None
        if isinstance(self.certificate, Certificate):
            cert = dio.certificate_to_json(self.certificate)
        elif isinstance(self.certificate, HomotopyGrid):
            cert = dio.homotopy_to_json(self.certificate)
        return {"status": self.status.value, "states": self.states_visited,
                "depth": self.frontier_depth, "certificate": cert}


class _Space:
    """Index-level view of an image: closed neighborhoods and the step relation."""

    def __init__(self, X: DigitalImage):
        self.X = X
        self.pts = X.points
        self.idx = X.index
        adj = X.adjacency_lists
        self.closed = [tuple(sorted([i] + [self.idx[q] for q in adj[p]])) for i, p in enumerate(self.pts)]
        self.step = [frozenset(c) for c in self.closed]

    def encode(self, seq: Iterable[Point]) -> tuple[int, ...]:
        return tuple(self.idx[tuple(p)] for p in seq)

    def decode(self, state: Sequence[int]) -> tuple[Point, ...]:
        return tuple(self.pts[i] for i in state)


def _path_moves(sp: _Space, state: tuple[int, ...], mode: str) -> Iterator[tuple[int, ...]]:
    """Every row one homotopy step away from ``state``, lazily, in canonical order."""
    m = len(state) - 1
    opts = [sp.closed[i] for i in state]
    if mode in (ENDPOINT_FIXED, FREE_ENDS):
        opts[0] = (state[0],)
        opts[m] = (state[m],)
    if mode == LOOP_PRESERVING and m > 0:
        # the last entry must equal the first, so only the shared options survive
        opts[0] = tuple(v for v in opts[0] if v in sp.step[state[m]])
        opts[m] = None
    step = sp.step
    cur = [0] * (m + 1)

    def rec(i):
        if i == m:
            if opts[m] is None:
                v = cur[0]
                if v in step[cur[m - 1]]:
                    cur[m] = v
                    yield tuple(cur)
                return
            for v in opts[m]:
                if m == 0 or v in step[cur[m - 1]]:
                    cur[m] = v
                    yield tuple(cur)
            return
        for v in opts[i]:
            if i == 0 or v in step[cur[i - 1]]:
                cur[i] = v
                yield from rec(i + 1)

    return rec(0)


def _map_moves(sp: _Space, state: tuple[int, ...], dom_nbrs: list[list[int]], pinned: int | None) -> Iterator[tuple[int, ...]]:
    """Continuous maps one step from ``state``; dom_nbrs[i] lists earlier domain neighbors of i."""
    n = len(state)
    step = sp.step
    cur = [0] * n

    def rec(i):
        if i == n:
            yield tuple(cur)
            return
        opts = (state[i],) if i == pinned else sp.closed[state[i]]
        for v in opts:
            sv = step[v]
            if all(cur[j] in sv for j in dom_nbrs[i]):
                cur[i] = v
                yield from rec(i + 1)

    return rec(0)


def _search(start, moves: Callable, target: Callable | None, budget: SearchBudget, strategy: str = "bfs",
            heuristic: Callable | None = None):
    """Generic search; returns (status, path of states or visited set, states, depth)."""
    parent = {start: None}
    if target is not None and target(start):
        return Status.REACHED, [start], 1, 0
    depth = {start: 0}
    max_depth = 0

    def trace(s):
        out = []
        while s is not None:
            out.append(s)
            s = parent[s]
        return out[::-1]

    if strategy == "bfs":
        frontier = [start]
        level = 0
        while frontier:
            if level >= budget.max_depth:
                return Status.BUDGET_EXCEEDED, parent, len(parent), level
            level += 1
            nxt = []
            for st in frontier:
                for nb in moves(st):
                    if nb in parent:
                        continue
                    parent[nb] = st
                    if target is not None and target(nb):
                        return Status.REACHED, trace(nb), len(parent), level
                    if len(parent) >= budget.max_states:
                        return Status.BUDGET_EXCEEDED, parent, len(parent), level
                    nxt.append(nb)
            frontier = nxt
            if nxt:
                max_depth = level
        return Status.EXHAUSTED, parent, len(parent), max_depth

    # lazy best-first: each heap entry holds a state's move generator, and
    # only one child is drawn per pop, so dense neighborhoods are not expanded
    # in full before the most promising child is looked at
    counter = itertools.count()
    heap = [(heuristic(start), next(counter), start, None)]
    while heap:
        h, _, st, gen = heapq.heappop(heap)
        if gen is None:
            if depth[st] >= budget.max_depth:
                continue
            gen = iter(moves(st))
        for nb in gen:
            if nb in parent:
                continue
            parent[nb] = st
            depth[nb] = depth[st] + 1
            max_depth = max(max_depth, depth[nb])
            if target is not None and target(nb):
                return Status.REACHED, trace(nb), len(parent), depth[nb]
            if len(parent) >= budget.max_states:
                return Status.BUDGET_EXCEEDED, parent, len(parent), max_depth
            heapq.heappush(heap, (heuristic(nb), next(counter), nb, None))
            heapq.heappush(heap, (h, next(counter), st, gen))
            break
    return Status.EXHAUSTED, parent, len(parent), max_depth


def _distinct(state) -> int:
    return len(set(state))


def search_paths(X: DigitalImage, seq: Sequence[Point], moves: str, target: Callable[[tuple[Point, ...]], bool] | None,
                 budget: SearchBudget | None = None, strategy: str = "bfs") -> ExplorationReport:
    """Search fixed-length rows reachable from ``seq`` by homotopy steps.

    On ``Reached`` the report's ``rows`` hold the row sequence from ``seq`` to
    the first row satisfying ``target``. On ``Exhausted`` (only possible with a
    target, or when closing the whole set) ``rows`` holds every reachable row.
    """
    budget = budget or SearchBudget()
    sp = _Space(X)
    start = sp.encode(seq)
    tgt = None if target is None else (lambda st: target(sp.decode(st)))
    status, res, states, depth = _search(start, lambda st: _path_moves(sp, st, moves), tgt, budget,
                                         strategy, _distinct)
    if status is Status.REACHED:
        rows = [sp.decode(st) for st in res]
    else:
        rows = sorted(sp.decode(st) for st in res)
    return ExplorationReport(status, states, depth, None, rows)


@dataclass
class ReachableSet:
    loops: tuple[tuple[Point, ...], ...]
    report: ExplorationReport

    @property
    def complete(self) -> bool:
        return self.report.status is Status.EXHAUSTED


def loop_reachable_set(X: DigitalImage, f: DigitalLoop, moves: str = ENDPOINT_FIXED,
                       budget: SearchBudget | None = None) -> ReachableSet:
    """Every same-length loop reachable from f by one-step moves, in sorted order."""
    if moves not in (ENDPOINT_FIXED, LOOP_PRESERVING):
        raise ValueError(f"unknown move kind {moves!r}")
    rep = search_paths(X, f.seq, moves, None, budget)
    loops = tuple(rep.rows)
    rep.rows = None
    return ReachableSet(loops, rep)


def _constant_at(p):
    return lambda row: all(q == p for q in row)


def _any_constant(row) -> bool:
    return all(q == row[0] for q in row)


def is_nullhomotopic_bounded(X: DigitalImage, f: DigitalLoop, budget: SearchBudget | None = None,
                             strategy: str = "bfs") -> ExplorationReport:
    """Pad f to ``budget.pad_len`` and search endpoint-fixed moves for the constant loop."""
    budget = budget or SearchBudget()
    if f.image.points != X.points:
        f = DigitalLoop(X, f.seq)
    fp = pad(f, max(f.m, budget.pad_len))
    rep = search_paths(X, fp.seq, ENDPOINT_FIXED, _constant_at(f.basepoint), budget, strategy)
    if rep.reached:
        grid = HomotopyGrid(tuple(rep.rows), X, loop_preserving=True, endpoint_fixed=True)
        cert = NullhomotopyCertificate(f, fp, grid, ENDPOINT_FIXED)
        check = cert.check()
        if not check.valid:
            raise AssertionError(f"search produced an invalid certificate: {check}")
        rep.certificate = cert
    rep.rows = None
    return rep


def _map_search(P: DigitalImage, Y: DigitalImage, start: Sequence[Point], pinned: Point | None,
                target: Callable, budget: SearchBudget, cap: int) -> ExplorationReport:
    if len(P) > cap:
        raise CapExceeded(f"map search is limited to {cap} domain points, got {len(P)}")
    sp = _Space(Y)
    order = P.points
    pos = {p: i for i, p in enumerate(order)}
    dom_nbrs = [[pos[q] for q in P.adjacency_lists[p] if pos[q] < i] for i, p in enumerate(order)]
    pin = pos[tuple(pinned)] if pinned is not None else None
    st0 = sp.encode(start)
    status, res, states, depth = _search(st0, lambda st: _map_moves(sp, st, dom_nbrs, pin),
                                         lambda st: target(sp.decode(st)), budget)
    rows = [sp.decode(st) for st in res] if status is Status.REACHED else None
    return ExplorationReport(status, states, depth, None, rows)


def contractibility_search(X: DigitalImage, pointed_at: Point | None = None, budget: SearchBudget | None = None,
                           cap: int = DEFAULT_MAP_CAP) -> ExplorationReport:
    """Search from the identity of X for a constant self-map (at ``pointed_at`` if given)."""
    budget = budget or SearchBudget()
    if len(X) == 0:
        return ExplorationReport(Status.REACHED, 0, 0)
    if pointed_at is not None:
        pointed_at = X.require(pointed_at)
    target = _any_constant if pointed_at is None else _constant_at(pointed_at)
    rep = _map_search(X, X, X.points, pointed_at, target, budget, cap)
    if rep.reached:
        grid = HomotopyGrid(tuple(rep.rows), X, domain_order=X.points, pointed_at=pointed_at)
        check = verify_contraction(X, grid)
        if not check.valid:
            raise AssertionError(f"search produced an invalid contraction: {check}")
        rep.certificate = grid
    rep.rows = None
    return rep


def connected_subsets(X: DigitalImage) -> Iterable[tuple[Point, ...]]:
    pts = X.points
    for r in range(1, len(pts) + 1):
        for combo in itertools.combinations(pts, r):
            if is_connected(DigitalImage(combo, X.kappa)):
                yield combo


def find_hole(X: DigitalImage, budget: SearchBudget | None = None, cap: int = DEFAULT_MAP_CAP):
    """First connected subset whose inclusion is not nullhomotopic in X, or None."""
    budget = budget or SearchBudget()
    if len(X) > cap:
        raise CapExceeded(f"hole search is limited to {cap} points, got {len(X)}")
    for P in connected_subsets(X):
        rep = _map_search(DigitalImage(P, X.kappa), X, P, None, _any_constant, budget, cap)
        if rep.status is Status.BUDGET_EXCEEDED:
            raise SearchBudgetExceeded(f"budget exhausted while contracting {P}")
        if rep.status is Status.EXHAUSTED:
            return P
    return None


def has_hole_direct(X: DigitalImage, budget: SearchBudget | None = None, cap: int = DEFAULT_MAP_CAP) -> bool:
    return find_hole(X, budget, cap) is not None


def components_contractible(X: DigitalImage, budget: SearchBudget | None = None, cap: int = DEFAULT_MAP_CAP) -> bool:
    for comp in components(X):
        rep = contractibility_search(DigitalImage(comp, X.kappa), None, budget, cap)
        if rep.status is Status.BUDGET_EXCEEDED:
            raise SearchBudgetExceeded(f"budget exhausted while contracting component {comp}")
        if not rep.reached:
            return False
    return True


def no_hole_equiv_check(sample: Iterable[DigitalImage], budget: SearchBudget | None = None,
                        cap: int = DEFAULT_MAP_CAP) -> bool:
    """No hole holds exactly when every component is contractible, on each sampled image."""
    return all(has_hole_direct(X, budget, cap) == (not components_contractible(X, budget, cap)) for X in sample)


def reduced_loops(X: DigitalImage, max_len: int) -> Iterable[tuple[Point, ...]]:
    """Closed walks without stutters or backtracking (cyclically), one per rotation class.

    Lengths run from 3 to ``max_len``, shortest first. Any loop reduces to
    one of these (or to a constant) by one-step folds, so a loop that fails to
    contract has a reduced representative that fails too.
    """
    sp = _Space(X)
    nbrs = [[j for j in sp.closed[i] if j != i] for i in range(len(sp.pts))]
    for length in range(3, max_len + 1):
        seen = set()
        for v in range(len(sp.pts)):
            walk = [v]

            def rec():
                if len(walk) == length:
                    if v in nbrs[walk[-1]] and walk[-1] != walk[0] and walk[1] != walk[-1] and walk[-2] != v:
                        rots = [tuple(walk[i:] + walk[:i]) for i in range(length) if walk[i] == v]
                        canon = min(rots)
                        if canon not in seen:
                            seen.add(canon)
                            out.append(canon)
                    return
                last = walk[-1]
                for u in nbrs[last]:
                    if u < v or (len(walk) >= 2 and u == walk[-2]):
                        continue
                    walk.append(u)
                    rec()
                    walk.pop()

            out: list = []
            rec()
            for canon in out:
                yield sp.decode(canon + (canon[0],))


@dataclass
class LoopholeReport:
    witness: DigitalLoop | None
    loops_checked: int
    complete: bool
    budget_hits: int = 0
    sampled: bool = False


def has_loophole_bounded(X: DigitalImage, loop_len: int, budget: SearchBudget | None = None,
                         limit: int | None = None, loops: Iterable[Sequence[Point]] | None = None) -> LoopholeReport:
    """Look for a loop that no loop-preserving homotopy takes to a constant.

    Loops come from ``loops`` if given, else from :func:`reduced_loops` up to
    ``loop_len``; ``limit`` caps how many are tried (the report is then flagged
    as sampled). Each loop's search runs best-first toward fewer distinct points.
    """
    budget = budget or SearchBudget(max_states=10**6)
    source = loops if loops is not None else reduced_loops(X, loop_len)
    checked = hits = 0
    sampled = limit is not None or loops is not None
    for seq in source:
        if limit is not None and checked >= limit:
            return LoopholeReport(None, checked, False, hits, True)
        checked += 1
        rep = search_paths(X, seq, LOOP_PRESERVING, _any_constant, budget, strategy="greedy")
        if rep.status is Status.EXHAUSTED:
            return LoopholeReport(DigitalLoop(X, seq), checked, True, hits, sampled)
        if rep.status is Status.BUDGET_EXCEEDED:
            hits += 1
    return LoopholeReport(None, checked, hits == 0 and not sampled, hits, sampled)


def random_loop(X: DigitalImage, base: Point, max_len: int, rng: random.Random) -> DigitalLoop:
    """A random walk that returns to ``base``; length is uniform in [0, max_len]."""
    base = X.require(base)
    dist = {base: 0}
    queue = deque([base])
    while queue:
        p = queue.popleft()
        for q in X.adjacency_lists[p]:
            if q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    length = rng.randint(0, max_len)
    seq = [base]
    for remaining in range(length - 1, -1, -1):
        cur = seq[-1]
        options = [q for q in (cur,) + X.adjacency_lists[cur] if dist[q] <= remaining]
        seq.append(rng.choice(options))
    return DigitalLoop(X, seq)
