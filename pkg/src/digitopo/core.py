"""Lattice geometry: points of Z^n, c_u adjacencies, finite digital images."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Mapping, Tuple

Point = Tuple[int, ...]

MAX_DIM = 16

# (n, alias) -> u
_ALIASES = {
    (1, "2"): 1,
    (2, "4"): 1,
    (2, "8"): 2,
    (3, "6"): 1,
    (3, "18"): 2,
    (3, "26"): 3,
}


class DigitopoError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(DigitopoError, ValueError):
    pass


class NotInImageError(DigitopoError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class Adjacency:
    """The c_u adjacency of Z^n."""

    n: int
    u: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIM:
            raise DimensionError(f"dimension {self.n} outside [1, {MAX_DIM}]")
        if not 1 <= self.u <= self.n:
            raise ValueError(f"c_u adjacency needs 1 <= u <= n, got u={self.u}, n={self.n}")

    @classmethod
    def parse(cls, spec, n: int) -> "Adjacency":
        """Accept an alias ("4", "18", 26, ...), a dict {"u": u}, or an Adjacency."""
        if isinstance(spec, Adjacency):
            if spec.n != n:
                raise DimensionError(f"adjacency is for Z^{spec.n}, image is in Z^{n}")
            return spec
        if isinstance(spec, Mapping):
            return cls(n, int(spec["u"]))
        key = (n, str(spec))
        if key not in _ALIASES:
            raise ValueError(f"unknown adjacency alias {spec!r} in Z^{n}")
        return cls(n, _ALIASES[key])

    @property
    def alias(self) -> str | None:
        for (n, name), u in _ALIASES.items():
            if n == self.n and u == self.u:
                return name
        return None

    @property
    def degree(self) -> int:
        """Number of c_u-neighbors of a point in Z^n."""
        return sum(comb(self.n, k) * 2**k for k in range(1, self.u + 1))

    def offsets(self) -> list[Point]:
        out = []
        for delta in itertools.product((-1, 0, 1), repeat=self.n):
            nz = sum(1 for d in delta if d)
            if 0 < nz <= self.u:
                out.append(delta)
        return out

    def __str__(self):
        return self.alias or f"c{self.u}(Z^{self.n})"


def adjacent(x: Point, y: Point, a: Adjacency) -> bool:
    """True iff x and y are distinct and c_u-adjacent."""
    if len(x) != a.n or len(y) != a.n:
        raise DimensionError(f"points {x}, {y} do not live in Z^{a.n}")
    changed = 0
    for xi, yi in zip(x, y):
        d = abs(xi - yi)
        if d > 1:
            return False
        changed += d
    return 0 < changed <= a.u


def adjacent_or_equal(x: Point, y: Point, a: Adjacency) -> bool:
    return x == y or adjacent(x, y, a)


@dataclass(frozen=True)
class DigitalImage:
    """A finite set of lattice points with a c_u adjacency.

    Points are stored sorted lexicographically; the image is immutable and
    every set-valued query returns points in that order.
    """

    points: tuple[Point, ...]
    kappa: Adjacency
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __init__(self, points: Iterable[Iterable[int]], kappa):
        pts = [tuple(int(c) for c in p) for p in points]
        if not isinstance(kappa, Adjacency):
            if not pts:
                raise ValueError("cannot infer dimension of an empty image from an alias")
            kappa = Adjacency.parse(kappa, len(pts[0]))
        for p in pts:
            if len(p) != kappa.n:
                raise DimensionError(f"point {p} is not in Z^{kappa.n}")
        members = frozenset(pts)
        if len(members) != len(pts):
            raise ValueError("duplicate points in image")
        object.__setattr__(self, "points", tuple(sorted(members)))
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "_members", members)

    @property
    def n(self) -> int:
        return self.kappa.n

    def __len__(self):
        return len(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._members

    def __iter__(self):
        return iter(self.points)

    def with_adjacency(self, kappa) -> "DigitalImage":
        return DigitalImage(self.points, Adjacency.parse(kappa, self.n))

    def subimage(self, pts: Iterable[Point]) -> "DigitalImage":
        pts = list(pts)
        for p in pts:
            self.require(p)
        return DigitalImage(pts, self.kappa)

    def require(self, p: Point) -> Point:
        p = tuple(p)
        if p not in self._members:
            raise NotInImageError(f"{p} is not a point of the image")
        return p

    def adjacent(self, x: Point, y: Point) -> bool:
        return adjacent(x, y, self.kappa)

    def adjacent_or_equal(self, x: Point, y: Point) -> bool:
        return x == y or adjacent(x, y, self.kappa)

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def adjacency_lists(self) -> dict[Point, tuple[Point, ...]]:
        """Image-restricted open neighborhoods, each sorted."""
        offsets = self.kappa.offsets() if 3**self.n <= 4 * max(len(self), 1) else None
        nbrs = {}
        for p in self.points:
            if offsets is not None:
                cand = (tuple(a + b for a, b in zip(p, d)) for d in offsets)
                nbrs[p] = tuple(sorted(q for q in cand if q in self._members))
            else:
                nbrs[p] = tuple(q for q in self.points if adjacent(p, q, self.kappa))
        return nbrs

    def edges(self) -> list[tuple[Point, Point]]:
        return [(p, q) for p in self.points for q in self.adjacency_lists[p] if p < q]


def neighborhood(X: DigitalImage, x: Point, closed: bool = False, ambient: bool = False) -> tuple[Point, ...]:
    """N_kappa(x), or N*_kappa(x) when ``closed``.

    By default the result is restricted to X; ``ambient=True`` returns the
    neighborhood in all of Z^n.
    """
    x = X.require(x)
    if ambient:
        pts = {tuple(a + b for a, b in zip(x, d)) for d in X.kappa.offsets()}
    else:
        pts = set(X.adjacency_lists[x])
    if closed:
        pts.add(x)
    return tuple(sorted(pts))


def boundary(X: DigitalImage) -> tuple[Point, ...]:
    """Points of X with at least one kappa-neighbor in Z^n outside X."""
    full = X.kappa.degree
    return tuple(p for p in X.points if len(X.adjacency_lists[p]) < full)


def components(X: DigitalImage) -> list[tuple[Point, ...]]:
    """Maximal connected subsets, ordered by their lexicographic minimum."""
    seen: set[Point] = set()
    blocks = []
    for start in X.points:
        if start in seen:
            continue
        seen.add(start)
        block = [start]
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for q in X.adjacency_lists[p]:
                if q not in seen:
                    seen.add(q)
                    block.append(q)
                    queue.append(q)
        blocks.append(tuple(sorted(block)))
    return blocks


def is_connected(X: DigitalImage) -> bool:
    return len(components(X)) <= 1


def is_continuous_map(f: Mapping[Point, Point], X: DigitalImage, Y: DigitalImage) -> bool:
    """Adjacent points of X must go to equal or adjacent points of Y.

    Raises if ``f`` is not total on X or takes a value outside Y.
    """
    for x in X.points:
        if x not in f:
            raise NotInImageError(f"map is undefined at {x}")
        Y.require(f[x])
    for x, y in X.edges():
        if not Y.adjacent_or_equal(f[x], f[y]):
            return False
    return True


def box(*ranges: tuple[int, int]) -> list[Point]:
    """All lattice points of a product of closed integer intervals."""
    return list(itertools.product(*(range(lo, hi + 1) for lo, hi in ranges)))
