"""Constructive nullhomotopies of loops that come with checkable certificates.

Every generator here returns a :class:`NullhomotopyCertificate` (or a plain
:class:`Certificate` for intermediate rewrites) whose grid is built row by row
and then verified before it is handed back.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import Adjacency, DigitalImage, DigitopoError, Point, components
from .homotopy import (
    Certificate,
    DigitalLoop,
    HomotopyGrid,
    NullhomotopyCertificate,
    certificate_from_rows,
    reparametrization,
    stutter_columns,
)
from .oracle import FREE_ENDS, SearchBudget, Status, search_paths


class NoSubstitution(DigitopoError):
    def __init__(self, t: int, point: Point):
        super().__init__(f"no single-point substitute for {point} at index {t}")
        self.t = t
        self.point = point


class WindowUnsolvable(DigitopoError):
    pass


class BudgetExceeded(DigitopoError):
    pass


class HypothesisFailed(DigitopoError):
    def __init__(self, pair):
        super().__init__(f"no path of length 2 joins {pair[0]} and {pair[1]}")
        self.pair = pair


class NotATree(DigitopoError):
    pass


class WrongImage(DigitopoError, ValueError):
    pass


@dataclass
class AvoidRewriteTrace:
    """How a loop was pushed off a forbidden point, step by step."""

    input: DigitalLoop
    output: DigitalLoop
    substitutions: list[tuple[int, Point, Point]] = field(default_factory=list)
    certificate: Certificate | None = None


def _finish(original: DigitalLoop, rows, cls=NullhomotopyCertificate) -> Certificate:
    cert = certificate_from_rows(original, rows, "endpoint_fixed", cls)
    rep = cert.check()
    if not rep.valid:
        raise AssertionError(f"generated certificate does not verify: {rep}")
    return cert


def _substitute(X: DigitalImage, seq: list[Point], t: int, p: Point) -> Point:
    """Lexicographically first c != p adjacent to p that fits between the run's flanks."""
    end = t
    while seq[end + 1] == p:
        end += 1
    left, right = seq[t - 1], seq[end + 1]
    for c in X.adjacency_lists[p]:
        if X.adjacent_or_equal(left, c) and X.adjacent_or_equal(c, right):
            return c
    raise NoSubstitution(t, p)


def _rewrite(X: DigitalImage, rows: list[tuple[Point, ...]], p: Point, subs: list, window: int | None,
             budget: SearchBudget) -> list[tuple[Point, ...]]:
    """Push the last row off p; may insert stutter columns into all rows."""
    while True:
        cur = list(rows[-1])
        if p not in cur:
            return rows
        t = cur.index(p)
        try:
            c = _substitute(X, cur, t, p)
        except NoSubstitution:
            if window is None:
                raise
            rows = _window_step(X, rows, t, p, window, budget)
            continue
        cur[t] = c
        subs.append((t, p, c))
        rows.append(tuple(cur))


def _window_step(X, rows, t, p, w, budget):
    cur = rows[-1]
    m = len(cur) - 1
    end = t
    while cur[end + 1] == p:
        end += 1
    lo, hi = max(0, t - w), min(m, end + w)
    # a pinned end sitting on p could never be cleared
    while cur[hi] == p:
        hi += 1
    # w stutters on each side of the window give the search room to move
    rows = stutter_columns(rows, hi, w)
    rows = stutter_columns(rows, lo, w)
    cur = rows[-1]
    lo2, hi2 = lo, hi + 2 * w
    window = cur[lo2: hi2 + 1]
    rep = search_paths(X, window, FREE_ENDS, lambda row: p not in row, budget)
    if rep.status is Status.BUDGET_EXCEEDED:
        raise BudgetExceeded(f"window search at index {t} ran out of budget ({rep.states_visited} states)")
    if rep.status is not Status.REACHED:
        raise WindowUnsolvable(f"no window path around index {t} avoids {p} (w={w})")
    for wrow in rep.rows[1:]:
        rows.append(tuple(cur[:lo2]) + tuple(wrow) + tuple(cur[hi2 + 1:]))
    return rows


def avoid_point(X: DigitalImage, f: DigitalLoop, p: Point) -> tuple[DigitalLoop, AvoidRewriteTrace]:
    """Replace visits to p one index at a time; every step is endpoint-fixed.

    Raises :class:`NoSubstitution` when some visit has no single replacement.
    """
    p = X.require(p)
    if f.basepoint == p:
        raise ValueError("the basepoint cannot be the avoided point")
    subs: list = []
    rows = _rewrite(X, [f.seq], p, subs, None, SearchBudget())
    out = DigitalLoop(X, rows[-1])
    cert = _finish(f, rows, Certificate) if subs else None
    return out, AvoidRewriteTrace(f, out, subs, cert)


def window_avoid(X: DigitalImage, f: DigitalLoop, p: Point, w: int = 2,
                 budget: SearchBudget | None = None) -> tuple[DigitalLoop, AvoidRewriteTrace]:
    """Like :func:`avoid_point`, but falls back to a local search around stuck visits.

    The window reaches w entries past each side of the run of visits at t; it
    is widened by w stutters on each side and searched
    with its two ends pinned for a row that avoids p. The returned loop is a
    trivial extension's image, so it may be longer than f.
    """
    p = X.require(p)
    if f.basepoint == p:
        raise ValueError("the basepoint cannot be the avoided point")
    budget = budget or SearchBudget(max_states=200_000)
    subs: list = []
    rows = _rewrite(X, [f.seq], p, subs, w, budget)
    out = DigitalLoop(X, rows[-1])
    cert = _finish(f, rows, Certificate) if len(rows) > 1 else None
    return out, AvoidRewriteTrace(f, out, subs, cert)


@dataclass(frozen=True)
class ClampStage:
    axis: int
    kind: str  # "min" or "max"
    threshold: int

    def __call__(self, p: Point) -> Point:
        v = min(p[self.axis], self.threshold) if self.kind == "min" else max(p[self.axis], self.threshold)
        return p[: self.axis] + (v,) + p[self.axis + 1:]


@dataclass(frozen=True)
class ClampSchedule:
    """Coordinate clamps applied one homotopy step each, then a final collapse."""

    stages: tuple[ClampStage, ...]
    collapse: frozenset
    target: Point

    def rows(self, row: Sequence[Point]) -> list[tuple[Point, ...]]:
        out = []
        cur = tuple(row)
        for stage in self.stages:
            cur = tuple(stage(q) for q in cur)
            out.append(cur)
        if any(q not in self.collapse for q in cur):
            raise DigitopoError("clamped loop left the collapse set")
        out.append((self.target,) * len(cur))
        return out


def _require_catalog(X: DigitalImage, f: DigitalLoop, name: str, alias: str, base: Point):
    from .catalog import build

    ref = build(name).image
    if X.points != ref.points or X.kappa != Adjacency.parse(alias, 3):
        raise WrongImage(f"expected {name} under {alias}-adjacency")
    if f.basepoint != base:
        raise WrongImage(f"loop must be based at {base}, got {f.basepoint}")
    if f.image != X:
        f = DigitalLoop(X, f.seq)
    return f


MSS18_SCHEDULE = ClampSchedule(
    (ClampStage(1, "min", 1),),
    frozenset({(0, 0, 0), (1, 1, 0), (-1, 1, 0), (0, 1, -1), (0, 1, 1)}),
    (0, 0, 0),
)

MSS6_SCHEDULE = ClampSchedule(
    (ClampStage(1, "min", 1), ClampStage(1, "min", 0), ClampStage(0, "min", 1), ClampStage(0, "min", 0)),
    frozenset({(0, 0, 0), (0, 0, 1), (0, 0, 2)}),
    (0, 0, 1),
)


def clamp_contract_mss18(f: DigitalLoop, X: DigitalImage | None = None) -> NullhomotopyCertificate:
    """Contract a c0-based 18-loop in MSS_18: avoid c3, clamp b to 1, collapse."""
    X = X or f.image
    f = _require_catalog(X, f, "MSS_18", "18", (0, 0, 0))
    subs: list = []
    rows = _rewrite(X, [f.seq], (0, 3, 0), subs, None, SearchBudget())
    rows += MSS18_SCHEDULE.rows(rows[-1])
    return _finish(f, rows)


def clamp_contract_mss6(f: DigitalLoop, X: DigitalImage | None = None, w: int = 2,
                        budget: SearchBudget | None = None) -> NullhomotopyCertificate:
    """Contract a (0,0,1)-based 6-loop in MSS_6: avoid (1,2,1), clamp b then a, collapse."""
    X = X or f.image
    f = _require_catalog(X, f, "MSS_6", "6", (0, 0, 1))
    budget = budget or SearchBudget(max_states=200_000)
    subs: list = []
    rows = _rewrite(X, [f.seq], (1, 2, 1), subs, w, budget)
    rows += MSS6_SCHEDULE.rows(rows[-1])
    return _finish(f, rows)


def _midpoint(X: DigitalImage, Xk: DigitalImage, x: Point, y: Point) -> Point | None:
    for z in X.points:
        if Xk.adjacent_or_equal(x, z) and Xk.adjacent_or_equal(z, y):
            return z
    return None


def check_lift_hypothesis(X: DigitalImage, kappa) -> DigitalImage:
    """The image under kappa, if kappa-steps are lambda-steps and lambda-steps split in two."""
    kappa = Adjacency.parse(kappa, X.n)
    Xk = X.with_adjacency(kappa)
    if kappa.u > X.kappa.u:
        raise HypothesisFailed(next(iter(Xk.edges()), (None, None)))
    for x, y in X.edges():
        if _midpoint(X, Xk, x, y) is None:
            raise HypothesisFailed((x, y))
    return Xk


def adjacency_lift(X: DigitalImage, f: DigitalLoop, kappa,
                   inner: Callable[[DigitalLoop], NullhomotopyCertificate]) -> NullhomotopyCertificate:
    """Contract a loop of X (under X's adjacency) using a contractor for a finer adjacency.

    The loop is slowed to double length, every other entry is replaced by a
    midpoint so the result is a kappa-loop, ``inner`` contracts that loop, and
    the pieces are glued into one endpoint-fixed certificate in X.
    """
    Xk = check_lift_hypothesis(X, kappa)
    if f.image != X:
        f = DigitalLoop(X, f.seq)
    h = f.seq
    doubled = [h[s // 2] for s in range(2 * f.m + 1)]
    lifted = list(doubled)
    for u in range(f.m):
        lifted[2 * u + 1] = _midpoint(X, Xk, h[u], h[u + 1])
    hk = DigitalLoop(Xk, lifted)
    inner_cert = inner(hk)
    phi = reparametrization(inner_cert.padded.seq, hk.seq)
    if phi is None:
        raise DigitopoError("inner certificate does not start from a trivial extension of the lifted loop")
    first = tuple(doubled[j] for j in phi)
    rows = [first] + list(inner_cert.grid.rows)
    return _finish(f, rows)


def tree_fold_contract(X: DigitalImage, f: DigitalLoop) -> NullhomotopyCertificate:
    """Contract a loop in an acyclic image by folding back spikes one at a time."""
    n_edges = len(X.edges())
    if n_edges != len(X) - len(components(X)):
        raise NotATree("the adjacency graph has a cycle")
    if f.image != X:
        f = DigitalLoop(X, f.seq)
    rows = [f.seq]
    cur = list(f.seq)
    while len(set(cur)) > 1:
        t = 1
        while t < len(cur) - 1:
            end = t
            while end + 1 < len(cur) and cur[end + 1] == cur[t]:
                end += 1
            if end + 1 < len(cur) and cur[t - 1] == cur[end + 1] != cur[t]:
                break
            t = end + 1
        else:
            raise AssertionError("no spike found in a nonconstant tree loop")
        cur[t:end + 1] = [cur[t - 1]] * (end + 1 - t)
        rows.append(tuple(cur))
    return _finish(f, rows)


def basepoint_fix(f: DigitalLoop, H: HomotopyGrid) -> NullhomotopyCertificate:
    """Turn a loop-preserving contraction of f into one holding the basepoint.

    Conjugates each stage of H by the track of the basepoint, then undoes
    that track; the first row is f padded with constants on both sides.
    """
    from .homotopy import verify_homotopy

    X = f.image
    x0 = f.basepoint
    H = H.with_flags(loop_preserving=True, endpoint_fixed=False, pointed_at=None)
    rep = verify_homotopy(H, f, H.rows[-1])
    if not rep.valid:
        raise DigitopoError(f"H is not a loop-preserving homotopy from f: {rep}")
    if any(q != x0 for q in H.rows[-1]):
        raise DigitopoError("H must end at the constant loop at the basepoint of f")
    k = f.m
    m = H.steps
    track = [row[0] for row in H.rows]

    def p_t(t):
        return [track[min(s, t)] for s in range(m + 1)]

    rows = []
    for t in range(m + 1):
        pt = p_t(t)
        rows.append(tuple(pt + list(H.rows[t][1:]) + pt[::-1][1:]))
    for t in range(m - 1, -1, -1):
        pt = p_t(t)
        rows.append(tuple(pt + [track[t]] * k + pt[::-1][1:]))
    return _finish(f, rows)
