"""Clique census, Euler characteristic, connected-sum bookkeeping, isomorphism."""
from __future__ import annotations

from dataclasses import dataclass

from .core import DigitalImage, Point

# chi of the three digital disks used to form connected sums
DISK_CHI = {"MSC8s": 1, "MSC8ps": 1, "MSC4s": -3}


@dataclass(frozen=True)
class SimplexCensus:
    alpha: tuple[int, ...]

    @property
    def chi(self) -> int:
        return sum((-1) ** q * a for q, a in enumerate(self.alpha))

    @property
    def dimension(self) -> int:
        return len(self.alpha) - 1

    @property
    def legacy_vef(self) -> int:
        """V - E + F, which ignores simplices of dimension 3 and up."""
        a = self.alpha + (0, 0, 0)
        return a[0] - a[1] + a[2]

    @property
    def differs(self) -> bool:
        return self.legacy_vef != self.chi

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "chi": self.chi, "legacy_vef": self.legacy_vef, "differs": self.differs}


def cliques(X: DigitalImage, size: int | None = None):
    """Yield every clique (as a sorted tuple of points), or only those of ``size`` points."""
    idx = X.index
    later = {p: [q for q in X.adjacency_lists[p] if idx[q] > idx[p]] for p in X.points}

    def extend(clique, cands):
        if size is None or len(clique) == size:
            yield tuple(clique)
            if size is not None:
                return
        for i, q in enumerate(cands):
            nxt = [r for r in cands[i + 1:] if X.adjacent(q, r)]
            yield from extend(clique + [q], nxt)

    for p in X.points:
        yield from extend([p], later[p])


def simplex_census(X: DigitalImage) -> SimplexCensus:
    """Count q-simplices (cliques of q+1 mutually adjacent points) for every q."""
    counts: list[int] = []
    for cl in cliques(X):
        q = len(cl) - 1
        while len(counts) <= q:
            counts.append(0)
        counts[q] += 1
    return SimplexCensus(tuple(counts))


def euler_characteristic(X: DigitalImage) -> int:
    return simplex_census(X).chi


@dataclass(frozen=True)
class DigitalDisk:
    """A minimal simple closed curve plus its interior."""

    curve: DigitalImage
    interior: frozenset
    kind: str

    def __post_init__(self):
        if self.kind not in DISK_CHI:
            raise ValueError(f"unknown disk kind {self.kind!r}")
        for p in self.curve.points:
            if len(self.curve.adjacency_lists[p]) != 2:
                raise ValueError(f"curve point {p} does not have exactly two curve neighbors")
        if set(self.interior) & set(self.curve.points):
            raise ValueError("interior overlaps the curve")

    @property
    def image(self) -> DigitalImage:
        return DigitalImage(list(self.curve.points) + sorted(self.interior), self.curve.kappa)


def connected_sum_chi(chi_x: int, chi_y: int, disk: DigitalDisk | str) -> int:
    """chi(X # Y) = chi(X) + chi(Y) - 2 chi(A_k)."""
    kind = disk.kind if isinstance(disk, DigitalDisk) else disk
    if kind not in DISK_CHI:
        raise ValueError(f"unknown disk kind {kind!r}")
    return chi_x + chi_y - 2 * DISK_CHI[kind]


def boundary_curve_chi(disk: DigitalDisk) -> int:
    return simplex_census(disk.curve).chi


def is_isomorphic(X: DigitalImage, Y: DigitalImage) -> dict[Point, Point] | None:
    """A bijection X -> Y preserving adjacency both ways, or None.

    Backtracking over X in order of decreasing degree, with candidates
    filtered by degree and by consistency with already placed neighbors.
    """
    if len(X) != len(Y) or len(X.edges()) != len(Y.edges()):
        return None
    adjX, adjY = X.adjacency_lists, Y.adjacency_lists
    if sorted(len(v) for v in adjX.values()) != sorted(len(v) for v in adjY.values()):
        return None
    if simplex_census(X) != simplex_census(Y):
        return None
    setY = {p: set(v) for p, v in adjY.items()}
    order = []
    placed = set()
    # grow the order along edges so constraints bite early
    for root in sorted(X.points, key=lambda p: (-len(adjX[p]), p)):
        if root in placed:
            continue
        stack = [root]
        while stack:
            p = stack.pop(0)
            if p in placed:
                continue
            placed.add(p)
            order.append(p)
            stack.extend(sorted((q for q in adjX[p] if q not in placed), key=lambda q: (-len(adjX[q]), q)))
    fwd: dict[Point, Point] = {}
    used: set[Point] = set()

    def rec(i):
        if i == len(order):
            return True
        p = order[i]
        mapped_nbrs = [fwd[q] for q in adjX[p] if q in fwd]
        for cand in Y.points:
            if cand in used or len(adjY[cand]) != len(adjX[p]):
                continue
            if any(r not in setY[cand] for r in mapped_nbrs):
                continue
            # placed non-neighbors must stay non-adjacent
            n_mapped_adj = sum(1 for r in setY[cand] if r in used)
            if n_mapped_adj != len(mapped_nbrs):
                continue
            fwd[p] = cand
            used.add(cand)
            if rec(i + 1):
                return True
            del fwd[p]
            used.discard(cand)
        return False

    return dict(fwd) if rec(0) else None
