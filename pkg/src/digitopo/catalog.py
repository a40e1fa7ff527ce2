"""Named images, loops and homotopy tables used across the library and its tests.

Coordinates are integer tuples. The connected-sum images are transcribed
from drawings as (a, b, c) boxes and checked through their Euler
characteristics.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .core import DigitalImage, Point, boundary, box
from .euler import DigitalDisk
from .homotopy import DigitalLoop, DigitalPath, HomotopyGrid


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    image: DigitalImage
    adjacencies: tuple[str, ...]
    artifacts: dict = field(default_factory=dict, compare=False)
    note: str = ""


MSS18_POINTS = {
    "c0": (0, 0, 0), "c1": (1, 1, 0), "c2": (1, 2, 0), "c3": (0, 3, 0), "c4": (-1, 2, 0),
    "c5": (-1, 1, 0), "c6": (0, 1, -1), "c7": (0, 2, -1), "c8": (0, 2, 1), "c9": (0, 1, 1),
}
C = [MSS18_POINTS[f"c{i}"] for i in range(10)]

MSS18_FACES = [
    (0, 1, 9), (0, 1, 6), (0, 5, 6), (0, 5, 9),
    (2, 3, 7), (2, 3, 8), (3, 4, 7), (3, 4, 8),
]

MSS18P_POINTS = [(0, 0, 0), (1, 1, 0), (0, 2, 0), (-1, 1, 0), (0, 1, -1), (0, 1, 1)]

D_LOOP = ((0, 0, 1), (1, 0, 1), (2, 0, 1), (2, 1, 1), (2, 2, 1), (1, 2, 1), (0, 2, 1), (0, 1, 1), (0, 0, 1))

D_TABLE = (
    ((0, 0, 1), (0, 0, 1), (1, 0, 1), (2, 0, 1), (2, 1, 1), (2, 2, 1), (1, 2, 1), (0, 2, 1), (0, 1, 1), (0, 0, 1), (0, 0, 1)),
    ((0, 0, 1), (0, 0, 2), (1, 0, 2), (2, 0, 2), (2, 1, 2), (2, 2, 2), (1, 2, 2), (0, 2, 2), (0, 1, 2), (0, 0, 2), (0, 0, 1)),
    ((0, 0, 1), (0, 0, 2), (1, 0, 2), (2, 0, 2), (2, 1, 2), (2, 1, 2), (1, 1, 2), (0, 1, 2), (0, 1, 2), (0, 0, 2), (0, 0, 1)),
    ((0, 0, 1), (0, 0, 2), (1, 0, 2), (2, 0, 2), (2, 0, 2), (2, 0, 2), (1, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 1)),
    ((0, 0, 1), (0, 0, 2), (1, 0, 2), (1, 0, 2), (1, 0, 2), (1, 0, 2), (1, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 1)),
    ((0, 0, 1), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 2), (0, 0, 1)),
    ((0, 0, 1),) * 11,
)

LOOPHOLE_LOOP = ((4, 1, 1), (4, 2, 1), (4, 3, 1), (4, 3, 2), (4, 3, 3), (4, 2, 3), (4, 1, 3), (4, 1, 2), (4, 1, 1))

FIG48_CYCLE = ((0, 0), (1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1), (0, 0))


def mss18() -> DigitalImage:
    return DigitalImage(C, "18")


def mss18p(adj="18") -> DigitalImage:
    return DigitalImage(MSS18P_POINTS, adj)


def mss6() -> DigitalImage:
    return DigitalImage([p for p in box((0, 2), (0, 2), (0, 2)) if p != (1, 1, 1)], "6")


def x_cnp() -> DigitalImage:
    return DigitalImage([p for p in box((0, 2), (0, 2), (0, 1)) if p != (1, 1, 1)], "6")


def x_cnp_contraction() -> HomotopyGrid:
    X = x_cnp()

    def H(p, t):
        a, b, _ = p
        if t == 0:
            return p
        if t == 1:
            return (a, b, 0)
        if t in (2, 3):
            return (a, max(0, b + 1 - t), 0)
        return (max(0, a + 3 - t), 0, 0)

    rows = tuple(tuple(H(p, t) for p in X.points) for t in range(6))
    return HomotopyGrid(rows, X, domain_order=X.points)


def mss18p_contraction() -> HomotopyGrid:
    X = mss18p()
    stage1 = {(0, 2, 0): (0, 1, 1), (0, 1, -1): (0, 0, 0)}
    rows = (
        X.points,
        tuple(stage1.get(p, p) for p in X.points),
        ((0, 0, 0),) * len(X),
    )
    return HomotopyGrid(rows, X, domain_order=X.points, pointed_at=(0, 0, 0))


def fig48(adj="4") -> DigitalImage:
    pts = [(x, 0) for x in range(3)] + [(0, x) for x in range(1, 3)] + [(1, 2), (2, 1)]
    return DigitalImage(pts, adj)


def loophole_x() -> DigitalImage:
    cube = DigitalImage(box((0, 4), (0, 4), (0, 4)), "6")
    return DigitalImage([p for p in boundary(cube) if p != (4, 2, 2)], "6")


def mss6_sharp() -> DigitalImage:
    hole = {(1, 1, 1), (2, 1, 1), (3, 1, 1)}
    return DigitalImage([p for p in box((0, 4), (0, 2), (0, 2)) if p not in hole], "6")


def mss18_sharp() -> DigitalImage:
    pts = [(y, 1, x) for y in range(1, 4) for x in (0, 2)]
    pts += [(y, z, 1) for y in range(1, 4) for z in (0, 2)]
    pts += [(0, 1, 1), (4, 1, 1)]
    return DigitalImage(pts, "18")


def disk_msc8s() -> DigitalDisk:
    curve = [(-1, 0), (-1, 1), (1, 0), (1, 1), (0, -1), (0, 2)]
    return DigitalDisk(DigitalImage(curve, "8"), frozenset({(0, 0), (0, 1)}), "MSC8s")


def disk_msc8ps() -> DigitalDisk:
    curve = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    return DigitalDisk(DigitalImage(curve, "8"), frozenset({(0, 0)}), "MSC8ps")


def disk_msc4s() -> DigitalDisk:
    curve = [p for p in box((0, 2), (0, 2)) if p != (1, 1)]
    return DigitalDisk(DigitalImage(curve, "4"), frozenset({(1, 1)}), "MSC4s")


@lru_cache(maxsize=None)
def build(id: str) -> CatalogEntry:
    if id == "MSS_18":
        X = mss18()
        return CatalogEntry(id, X, ("18", "6", "26"), {"points": dict(MSS18_POINTS)}, "digital 2-sphere MSS_18")
    if id == "MSS_18p":
        return CatalogEntry(id, mss18p(), ("18", "26", "6"), {}, "MSS'_18 = MSS'_26")
    if id == "MSS_6":
        return CatalogEntry(id, mss6(), ("6", "18", "26"), {}, "[0,2]^3 minus its center")
    if id in ("MSC8s", "MSC8ps", "MSC4s"):
        disk = {"MSC8s": disk_msc8s, "MSC8ps": disk_msc8ps, "MSC4s": disk_msc4s}[id]()
        return CatalogEntry(id, disk.image, (str(disk.curve.kappa),), {"disk": disk}, "digital disk")
    if id == "X_cnp":
        X = x_cnp()
        arts = {"H": x_cnp_contraction(), "x0": (0, 0, 1)}
        return CatalogEntry(id, X, ("6",), arts, "contractible but not pointed contractible at x0")
    if id == "FIG48":
        X = fig48()
        arts = {"7cycle": DigitalLoop(fig48("8"), FIG48_CYCLE)}
        return CatalogEntry(id, X, ("4", "8"), arts, "tree under 4, a 7-cycle under 8")
    if id == "LOOPHOLE_X":
        X = loophole_x()
        return CatalogEntry(id, X, ("6",), {"loop": DigitalLoop(X, LOOPHOLE_LOOP)}, "cube surface with a punctured face")
    if id == "MSS6_SHARP":
        return CatalogEntry(id, mss6_sharp(), ("6",), {}, "MSS_6 # MSS_6 along MSC4*")
    if id == "MSS18_SHARP":
        return CatalogEntry(id, mss18_sharp(), ("18",), {}, "MSS_18 # MSS_18 along MSC'8*")
    if id == "D_LOOP":
        X = mss6()
        return CatalogEntry(id, X, ("6",), {"loop": DigitalLoop(X, D_LOOP)}, "equatorial 8-loop of MSS_6")
    if id == "D_TABLE":
        X = mss6()
        grid = HomotopyGrid(D_TABLE, X, loop_preserving=True, endpoint_fixed=True)
        arts = {"loop": DigitalLoop(X, D_LOOP), "grid": grid}
        return CatalogEntry(id, X, ("6",), arts, "seven-row contraction of D holding the ends")
    if id == "MSS18p_CONTRACTION":
        return CatalogEntry(id, mss18p(), ("18",), {"grid": mss18p_contraction()},
                            "pointed 18-contraction of MSS'_18 at the origin (constructed here)")
    raise KeyError(f"unknown catalog id {id!r}")


IDS = ("MSS_18", "MSS_18p", "MSS_6", "MSC8s", "MSC8ps", "MSC4s", "X_cnp", "FIG48", "LOOPHOLE_X",
       "MSS6_SHARP", "MSS18_SHARP", "D_LOOP", "D_TABLE", "MSS18p_CONTRACTION")


def loops(id: str) -> dict[str, DigitalPath]:
    """Named loops attached to an entry."""
    return {k: v for k, v in build(id).artifacts.items() if isinstance(v, DigitalPath)}
