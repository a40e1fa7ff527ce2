"""Digital paths and loops, their products, and checking homotopy grids.

A homotopy is stored as an explicit table of rows; ``rows[t][s]`` is H(s, t).
For path homotopies the domain is the digital interval [0, m]; for homotopies
of self-maps (contractions) ``domain_order`` names the point of X sitting in
each column. Verification never trusts whoever produced the grid.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import DigitalImage, DigitopoError, NotInImageError, Point, is_continuous_map


class PathError(DigitopoError, ValueError):
    pass


@dataclass(frozen=True)
class DigitalPath:
    """A (2, kappa)-continuous function [0, m] -> image, stored as a sequence."""

    image: DigitalImage
    seq: tuple[Point, ...]

    def __post_init__(self):
        seq = tuple(tuple(p) for p in self.seq)
        if not seq:
            raise PathError("a path needs at least one point")
        object.__setattr__(self, "seq", seq)
        for i, p in enumerate(seq):
            if p not in self.image:
                raise NotInImageError(f"path entry {i} = {p} is not in the image")
        for i in range(len(seq) - 1):
            if not self.image.adjacent_or_equal(seq[i], seq[i + 1]):
                raise PathError(f"entries {i} and {i + 1} ({seq[i]}, {seq[i + 1]}) are neither equal nor adjacent")

    @property
    def m(self) -> int:
        return len(self.seq) - 1

    def __len__(self):
        return len(self.seq)

    def __getitem__(self, i):
        return self.seq[i]

    @property
    def start(self) -> Point:
        return self.seq[0]

    @property
    def end(self) -> Point:
        return self.seq[-1]

    @property
    def is_loop(self) -> bool:
        return self.seq[0] == self.seq[-1]

    @property
    def is_constant(self) -> bool:
        return len(set(self.seq)) == 1

    def visits(self, p: Point) -> int:
        return sum(1 for q in self.seq if q == p)


class DigitalLoop(DigitalPath):
    """A digital path whose two ends coincide; that point is the basepoint."""

    def __post_init__(self):
        super().__post_init__()
        if self.seq[0] != self.seq[-1]:
            raise PathError(f"loop must end where it starts: {self.seq[0]} != {self.seq[-1]}")

    @property
    def basepoint(self) -> Point:
        return self.seq[0]


def _like(f: DigitalPath, seq) -> DigitalPath:
    """Same class as f when that still fits (loops stay loops), else a plain path."""
    seq = tuple(seq)
    if isinstance(f, DigitalLoop) and seq[0] == seq[-1]:
        return DigitalLoop(f.image, seq)
    return DigitalPath(f.image, seq)


def constant_loop(X: DigitalImage, p: Point, m: int = 0) -> DigitalLoop:
    return DigitalLoop(X, (tuple(p),) * (m + 1))


def concat(f: DigitalPath, g: DigitalPath) -> DigitalPath:
    """Follow f, then g. f must end where g starts."""
    if f.image != g.image:
        raise PathError("paths live in different images")
    if f.end != g.start:
        raise PathError(f"f ends at {f.end} but g starts at {g.start}")
    return _like(f, f.seq + g.seq[1:])


def reverse(f: DigitalPath) -> DigitalPath:
    return _like(f, f.seq[::-1])


def pad(f: DigitalPath, length: int) -> DigitalPath:
    """Trivial extension to domain [0, length] that rests at f(m)."""
    if length < f.m:
        raise PathError(f"cannot pad a path of length {f.m} down to {length}")
    return _like(f, f.seq + (f.end,) * (length - f.m))


def reparametrization(fp: Sequence[Point], f: Sequence[Point]) -> list[int] | None:
    """A map phi with fp[s] == f[phi(s)], phi(0) = 0, phi(p) = m, steps in {0, 1}.

    Returns None if no such phi exists. When several exist, the one that
    advances as early as possible is returned.
    """
    fp, f = list(fp), list(f)
    p, m = len(fp) - 1, len(f) - 1
    if p < m or fp[0] != f[0]:
        return None
    # reach[s] = set of j with a valid prefix phi(0..s) ending at phi(s) = j
    reach = [{0}]
    for s in range(1, p + 1):
        nxt = set()
        for j in reach[-1]:
            if fp[s] == f[j]:
                nxt.add(j)
            if j + 1 <= m and fp[s] == f[j + 1]:
                nxt.add(j + 1)
        if not nxt:
            return None
        reach.append(nxt)
    if m not in reach[-1]:
        return None
    phi = [m]
    for s in range(p, 0, -1):
        j = phi[-1]
        phi.append(j if j in reach[s - 1] else j - 1)
    phi.reverse()
    return phi


def is_trivial_extension(fp: DigitalPath, f: DigitalPath) -> bool:
    """Whether fp follows f with pauses inserted."""
    if fp.image.points != f.image.points:
        return False
    return reparametrization(fp.seq, f.seq) is not None


@dataclass(frozen=True)
class HomotopyGrid:
    """Explicit homotopy table; ``rows[t][s]`` is H(s, t).

    ``domain_order`` is None for homotopies of paths (columns are 0..m) and a
    tuple of points for homotopies of maps X -> Y. ``pointed_at`` is a domain
    element: a point for maps, the 1-tuple ``(s,)`` for paths.
    """

    rows: tuple[tuple[Point, ...], ...]
    codomain: DigitalImage
    domain_order: tuple[Point, ...] | None = None
    pointed_at: Point | None = None
    loop_preserving: bool = False
    endpoint_fixed: bool = False

    def __post_init__(self):
        rows = tuple(tuple(tuple(p) for p in row) for row in self.rows)
        if not rows:
            raise PathError("a homotopy grid needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise PathError("all rows of a homotopy grid must have the same length")
        if self.domain_order is not None:
            order = tuple(tuple(p) for p in self.domain_order)
            if len(order) != width:
                raise PathError("domain_order does not match the row width")
            object.__setattr__(self, "domain_order", order)
        if self.pointed_at is not None:
            object.__setattr__(self, "pointed_at", tuple(self.pointed_at))
        object.__setattr__(self, "rows", rows)

    @property
    def steps(self) -> int:
        return len(self.rows) - 1

    @property
    def domain_len(self) -> int:
        return len(self.rows[0]) - 1

    def column(self, s: int) -> tuple[Point, ...]:
        return tuple(row[s] for row in self.rows)

    def then(self, other: "HomotopyGrid") -> "HomotopyGrid":
        """Run self, then other; the last row of self must be the first of other."""
        if self.rows[-1] != other.rows[0]:
            raise PathError("cannot splice grids: rows differ at the junction")
        return HomotopyGrid(self.rows + other.rows[1:], self.codomain, self.domain_order,
                            self.pointed_at, self.loop_preserving, self.endpoint_fixed)

    def with_flags(self, **flags) -> "HomotopyGrid":
        kw = dict(domain_order=self.domain_order, pointed_at=self.pointed_at,
                  loop_preserving=self.loop_preserving, endpoint_fixed=self.endpoint_fixed)
        kw.update(flags)
        return HomotopyGrid(self.rows, self.codomain, **kw)


@dataclass(frozen=True)
class Violation:
    condition: str
    s: int | None
    t: int | None
    detail: str


@dataclass
class HomotopyReport:
    ends: bool = True
    rows: bool = True
    columns: bool = True
    flags: dict[str, bool] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.ends and self.rows and self.columns and all(self.flags.values())

    def fail(self, condition, s, t, detail):
        if not any(v.condition == condition for v in self.violations):
            self.violations.append(Violation(condition, s, t, detail))

    def __str__(self):
        if self.valid:
            return "valid"
        return "; ".join(f"{v.condition} at (s={v.s}, t={v.t}): {v.detail}" for v in self.violations)


def _check_entries(G: HomotopyGrid):
    Y = G.codomain
    for t, row in enumerate(G.rows):
        for s, p in enumerate(row):
            if p not in Y:
                raise NotInImageError(f"grid entry (s={s}, t={t}) = {p} is outside the codomain")


def _check_columns(G: HomotopyGrid, rep: HomotopyReport):
    Y = G.codomain
    for t in range(G.steps):
        a, b = G.rows[t], G.rows[t + 1]
        for s in range(len(a)):
            if not Y.adjacent_or_equal(a[s], b[s]):
                rep.columns = False
                rep.fail("column", s, t + 1, f"{a[s]} -> {b[s]} is not a step")
                return


def _check_loop_flags(G: HomotopyGrid, rep: HomotopyReport):
    if G.loop_preserving or G.endpoint_fixed:
        bad = next((t for t, r in enumerate(G.rows) if r[0] != r[-1]), None)
        rep.flags["loop_preserving"] = bad is None
        if bad is not None:
            rep.fail("loop_preserving", 0, bad, f"H(0,t)={G.rows[bad][0]} but H(m,t)={G.rows[bad][-1]}")
    if G.endpoint_fixed:
        x0 = G.rows[0][0]
        bad = next((t for t, r in enumerate(G.rows) if r[0] != x0 or r[-1] != x0), None)
        rep.flags["endpoint_fixed"] = bad is None
        if bad is not None:
            rep.fail("endpoint_fixed", 0, bad, f"an end of row {bad} left the basepoint {x0}")


def _check_pointed(G: HomotopyGrid, rep: HomotopyReport, col: int | None):
    if G.pointed_at is None:
        return
    if col is None:
        rep.flags["pointed"] = False
        rep.fail("pointed", None, None, f"{G.pointed_at} is not in the domain")
        return
    x = G.rows[0][col]
    bad = next((t for t, r in enumerate(G.rows) if r[col] != x), None)
    rep.flags["pointed"] = bad is None
    if bad is not None:
        rep.fail("pointed", col, bad, f"column of {G.pointed_at} moved to {G.rows[bad][col]}")


def verify_homotopy(G: HomotopyGrid, f: DigitalPath | Sequence[Point], g: DigitalPath | Sequence[Point]) -> HomotopyReport:
    """Check that G is a digital homotopy of paths from f to g, with its flags."""
    fseq = tuple(f.seq if isinstance(f, DigitalPath) else map(tuple, f))
    gseq = tuple(g.seq if isinstance(g, DigitalPath) else map(tuple, g))
    if len(fseq) != len(G.rows[0]) or len(gseq) != len(G.rows[0]):
        raise PathError(f"grid width {len(G.rows[0])} does not match paths of {len(fseq)} and {len(gseq)} points")
    _check_entries(G)
    rep = HomotopyReport()
    if G.rows[0] != fseq:
        rep.ends = False
        s = next(i for i, (a, b) in enumerate(zip(G.rows[0], fseq)) if a != b)
        rep.fail("start", s, 0, "first row differs from f")
    if G.rows[-1] != gseq:
        rep.ends = False
        s = next(i for i, (a, b) in enumerate(zip(G.rows[-1], gseq)) if a != b)
        rep.fail("end", s, G.steps, "last row differs from g")
    Y = G.codomain
    for t, row in enumerate(G.rows):
        bad = next((s for s in range(len(row) - 1) if not Y.adjacent_or_equal(row[s], row[s + 1])), None)
        if bad is not None:
            rep.rows = False
            rep.fail("row", bad, t, f"{row[bad]} -> {row[bad + 1]} breaks the path")
            break
    _check_columns(G, rep)
    _check_loop_flags(G, rep)
    col = None
    if G.pointed_at is not None and len(G.pointed_at) == 1 and 0 <= G.pointed_at[0] < len(fseq):
        col = G.pointed_at[0]
    _check_pointed(G, rep, col)
    return rep


def verify_contraction(X: DigitalImage, G: HomotopyGrid, pointed_at: Point | None = None) -> HomotopyReport:
    """Check that G contracts X: identity first, a constant last, continuous rows.

    The domain is ``X`` with columns ordered by ``G.domain_order`` (default:
    X's canonical order); the codomain is ``G.codomain``.
    """
    order = G.domain_order if G.domain_order is not None else X.points
    if sorted(order) != list(X.points):
        raise PathError("grid columns do not enumerate the image")
    if pointed_at is not None:
        G = G.with_flags(pointed_at=tuple(pointed_at))
    _check_entries(G)
    rep = HomotopyReport()
    if G.rows[0] != tuple(order):
        rep.ends = False
        s = next(i for i, (a, b) in enumerate(zip(G.rows[0], order)) if a != b)
        rep.fail("start", s, 0, "first row is not the identity")
    if len(set(G.rows[-1])) > 1:
        rep.ends = False
        rep.fail("end", None, G.steps, "last row is not constant")
    for t, row in enumerate(G.rows):
        if not is_continuous_map(dict(zip(order, row)), X, G.codomain):
            rep.rows = False
            rep.fail("row", None, t, f"stage {t} is not a continuous map")
            break
    _check_columns(G, rep)
    col = order.index(G.pointed_at) if G.pointed_at is not None and G.pointed_at in order else None
    _check_pointed(G, rep, col)
    return rep


def stutter_columns(rows: Sequence[Sequence[Point]], index: int, count: int) -> list[tuple[Point, ...]]:
    """Repeat column ``index`` ``count`` extra times in every row."""
    return [tuple(r[: index + 1]) + (r[index],) * count + tuple(r[index + 1:]) for r in rows]


@dataclass(frozen=True)
class Certificate:
    """A homotopy from a trivial extension of ``original`` (``padded``) to its last row."""

    original: DigitalPath
    padded: DigitalPath
    grid: HomotopyGrid
    kind: str = "endpoint_fixed"

    @property
    def result(self) -> tuple[Point, ...]:
        return self.grid.rows[-1]

    def check(self) -> HomotopyReport:
        grid = self.grid.with_flags(
            loop_preserving=self.kind in ("loop_preserving", "endpoint_fixed"),
            endpoint_fixed=self.kind == "endpoint_fixed",
        )
        rep = verify_homotopy(grid, self.padded, self.grid.rows[-1])
        if not is_trivial_extension(self.padded, self.original):
            rep.ends = False
            rep.fail("extension", None, 0, "first row is not a trivial extension of the original")
        return rep


@dataclass(frozen=True)
class NullhomotopyCertificate(Certificate):
    """A certificate whose final row is a constant loop."""

    def check(self) -> HomotopyReport:
        rep = super().check()
        if len(set(self.grid.rows[-1])) != 1:
            rep.ends = False
            rep.fail("end", None, self.grid.steps, "final row is not constant")
        return rep


def certificate_from_rows(original: DigitalPath, rows, kind="endpoint_fixed", cls=NullhomotopyCertificate):
    rows = [tuple(r) for r in rows]
    grid = HomotopyGrid(tuple(rows), original.image,
                        loop_preserving=kind in ("loop_preserving", "endpoint_fixed"),
                        endpoint_fixed=kind == "endpoint_fixed")
    return cls(original, _like(original, rows[0]), grid, kind)
