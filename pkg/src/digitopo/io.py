"""JSON formats for images, paths, homotopies and certificates.

Images:      {"dim": n, "adjacency": "<alias>" | {"u": u}, "points": [[...], ...]}
Paths:       {"image": <image>, "seq": [[...], ...]}
Homotopies:  {"image": <image>, "codomain": <image>, "rows": [[[...], ...], ...],
              "flags": {"pointed_at": [...] | null, "loop_preserving": b, "endpoint_fixed": b},
              "domain_order": [[...], ...]}            (domain_order only for maps)

An ``<image>`` reference is an inline image object, a catalog id, or a file
path resolved against the referring file's directory. Dumps carry
``image_hash`` / ``codomain_hash`` so a certificate can't be silently
re-pointed at a different image; loads check them when present.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .core import Adjacency, DigitalImage, DigitopoError, Point
from .homotopy import (
    Certificate,
    DigitalLoop,
    DigitalPath,
    HomotopyGrid,
    NullhomotopyCertificate,
)


class LoadError(DigitopoError, ValueError):
    """Malformed file or a violated invariant, with a location."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


class BindingError(LoadError):
    pass


@dataclass(frozen=True)
class ContentRef:
    hash: str
    path: str | None = None


def _point(obj, where: str, dim: int | None = None) -> Point:
    if not isinstance(obj, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
        raise LoadError(where, f"expected a list of integers, got {obj!r}")
    if dim is not None and len(obj) != dim:
        raise LoadError(where, f"expected {dim} coordinates, got {len(obj)}")
    return tuple(obj)


def _points(obj, where: str, dim: int | None = None) -> list[Point]:
    if not isinstance(obj, list):
        raise LoadError(where, "expected a list of points")
    return [_point(p, f"{where}[{i}]", dim) for i, p in enumerate(obj)]


def _adjacency_json(a: Adjacency):
    return a.alias if a.alias is not None else {"u": a.u}


def image_to_json(X: DigitalImage) -> dict:
    return {"dim": X.n, "adjacency": _adjacency_json(X.kappa), "points": [list(p) for p in X.points]}


def canonical_bytes(X: DigitalImage) -> bytes:
    return json.dumps(image_to_json(X), sort_keys=True, separators=(",", ":")).encode()


def image_hash(X: DigitalImage) -> str:
    return hashlib.sha256(canonical_bytes(X)).hexdigest()


def content_ref(X: DigitalImage, path: str | None = None) -> ContentRef:
    return ContentRef(image_hash(X), path)


def image_from_json(obj: Any, where: str = "image") -> DigitalImage:
    if not isinstance(obj, dict):
        raise LoadError(where, "expected an object")
    for key in ("dim", "adjacency", "points"):
        if key not in obj:
            raise LoadError(where, f"missing field {key!r}")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise LoadError(f"{where}.dim", "expected an integer")
    pts = _points(obj["points"], f"{where}.points", dim)
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise LoadError(f"{where}.points[{i}]", f"duplicate of point {seen[p]}: {list(p)}")
        seen[p] = i
    try:
        kappa = Adjacency.parse(obj["adjacency"], dim)
        return DigitalImage(pts, kappa)
    except (ValueError, TypeError, KeyError) as e:
        raise LoadError(f"{where}.adjacency", str(e)) from None


def _resolve_image(ref: Any, base: Path | None, where: str) -> DigitalImage:
    if isinstance(ref, dict):
        return image_from_json(ref, where)
    if isinstance(ref, str):
        from .catalog import IDS, build

        if ref in IDS:
            return build(ref).image
        path = Path(ref) if base is None else base / ref
        if not path.exists():
            raise LoadError(where, f"{ref!r} is neither a catalog id nor a readable file")
        return load_image(path)
    raise LoadError(where, "expected an inline image, a catalog id or a file name")


def _check_hash(obj: dict, key: str, X: DigitalImage, where: str):
    want = obj.get(key)
    if want is not None and want != image_hash(X):
        raise BindingError(where, f"{key} {want[:12]}... does not match the referenced image ({image_hash(X)[:12]}...)")


def _read(src) -> tuple[Any, Path | None]:
    if isinstance(src, (str, Path)):
        path = Path(src)
        try:
            return json.loads(path.read_text(encoding="utf-8")), path.parent
        except json.JSONDecodeError as e:
            raise LoadError(str(path), f"not valid JSON ({e})") from None
    return src, None


def _write(obj: dict, dst) -> str:
    text = json.dumps(obj, indent=1, sort_keys=True)
    if dst is not None:
        Path(dst).write_text(text + "\n", encoding="utf-8")
    return text


def load_image(src) -> DigitalImage:
    obj, _ = _read(src)
    return image_from_json(obj, str(src) if isinstance(src, (str, Path)) else "image")


def dump_image(X: DigitalImage, dst=None) -> str:
    return _write(image_to_json(X), dst)


# paths

def path_to_json(f: DigitalPath, image_ref: Any = None) -> dict:
    return {
        "image": image_to_json(f.image) if image_ref is None else image_ref,
        "image_hash": image_hash(f.image),
        "seq": [list(p) for p in f.seq],
    }


def path_from_json(obj: Any, base: Path | None = None, where: str = "path") -> DigitalPath:
    if not isinstance(obj, dict) or "image" not in obj or "seq" not in obj:
        raise LoadError(where, "expected an object with 'image' and 'seq'")
    X = _resolve_image(obj["image"], base, f"{where}.image")
    _check_hash(obj, "image_hash", X, where)
    seq = _points(obj["seq"], f"{where}.seq", X.n)
    if not seq:
        raise LoadError(f"{where}.seq", "a path needs at least one point")
    for i, p in enumerate(seq):
        if p not in X:
            raise LoadError(f"{where}.seq[{i}]", f"{list(p)} is not a point of the image")
    for i in range(len(seq) - 1):
        if not X.adjacent_or_equal(seq[i], seq[i + 1]):
            raise LoadError(f"{where}.seq[{i + 1}]", f"{list(seq[i])} -> {list(seq[i + 1])} is not a step")
    cls = DigitalLoop if seq[0] == seq[-1] else DigitalPath
    return cls(X, seq)


def load_path(src) -> DigitalPath:
    obj, base = _read(src)
    return path_from_json(obj, base, str(src) if isinstance(src, (str, Path)) else "path")


def dump_path(f: DigitalPath, dst=None) -> str:
    return _write(path_to_json(f), dst)


# homotopies

def homotopy_to_json(G: HomotopyGrid, image: DigitalImage | None = None) -> dict:
    dom = image if image is not None else G.codomain
    out = {
        "image": image_to_json(dom),
        "image_hash": image_hash(dom),
        "codomain": image_to_json(G.codomain),
        "codomain_hash": image_hash(G.codomain),
        "rows": [[list(p) for p in row] for row in G.rows],
        "flags": {
            "pointed_at": None if G.pointed_at is None else list(G.pointed_at),
            "loop_preserving": G.loop_preserving,
            "endpoint_fixed": G.endpoint_fixed,
        },
    }
    if G.domain_order is not None:
        out["domain_order"] = [list(p) for p in G.domain_order]
    return out


def homotopy_from_json(obj: Any, base: Path | None = None, where: str = "homotopy") -> tuple[HomotopyGrid, DigitalImage]:
    """The grid together with its domain image."""
    if not isinstance(obj, dict):
        raise LoadError(where, "expected an object")
    for key in ("image", "rows"):
        if key not in obj:
            raise LoadError(where, f"missing field {key!r}")
    dom = _resolve_image(obj["image"], base, f"{where}.image")
    _check_hash(obj, "image_hash", dom, where)
    cod = _resolve_image(obj["codomain"], base, f"{where}.codomain") if "codomain" in obj else dom
    _check_hash(obj, "codomain_hash", cod, where)
    raw = obj["rows"]
    if not isinstance(raw, list) or not raw:
        raise LoadError(f"{where}.rows", "expected a nonempty list of rows")
    rows = [tuple(_points(r, f"{where}.rows[{t}]", cod.n)) for t, r in enumerate(raw)]
    width = len(rows[0])
    for t, r in enumerate(rows):
        if len(r) != width:
            raise LoadError(f"{where}.rows[{t}]", f"has {len(r)} entries, row 0 has {width}")
        for s, p in enumerate(r):
            if p not in cod:
                raise LoadError(f"{where}.rows[{t}][{s}]", f"{list(p)} is not a point of the codomain")
    flags = obj.get("flags") or {}
    if not isinstance(flags, dict):
        raise LoadError(f"{where}.flags", "expected an object")
    pa = flags.get("pointed_at")
    pointed = None if pa is None else _point(pa, f"{where}.flags.pointed_at")
    order = None
    if "domain_order" in obj:
        order = tuple(_points(obj["domain_order"], f"{where}.domain_order", dom.n))
        if sorted(order) != list(dom.points):
            raise LoadError(f"{where}.domain_order", "does not enumerate the image points exactly once")
        if len(order) != width:
            raise LoadError(f"{where}.domain_order", f"has {len(order)} points, rows have {width}")
    for key in ("loop_preserving", "endpoint_fixed"):
        if not isinstance(flags.get(key, False), bool):
            raise LoadError(f"{where}.flags.{key}", "expected a boolean")
    G = HomotopyGrid(tuple(rows), cod, order, pointed,
                     flags.get("loop_preserving", False), flags.get("endpoint_fixed", False))
    return G, dom


def load_homotopy(src) -> tuple[HomotopyGrid, DigitalImage]:
    obj, base = _read(src)
    return homotopy_from_json(obj, base, str(src) if isinstance(src, (str, Path)) else "homotopy")


def dump_homotopy(G: HomotopyGrid, dst=None, image: DigitalImage | None = None) -> str:
    return _write(homotopy_to_json(G, image), dst)


# certificates

def certificate_to_json(cert: Certificate) -> dict:
    return {
        "kind": cert.kind,
        "nullhomotopy": isinstance(cert, NullhomotopyCertificate),
        "original": [list(p) for p in cert.original.seq],
        "padded": [list(p) for p in cert.padded.seq],
        "homotopy": homotopy_to_json(cert.grid),
    }


def certificate_from_json(obj: Any, base: Path | None = None, where: str = "certificate") -> Certificate:
    if not isinstance(obj, dict) or "homotopy" not in obj:
        raise LoadError(where, "expected an object with a 'homotopy' field")
    G, X = homotopy_from_json(obj["homotopy"], base, f"{where}.homotopy")
    out = []
    for key in ("original", "padded"):
        seq = _points(obj.get(key), f"{where}.{key}", X.n)
        out.append(path_from_json({"image": image_to_json(X), "seq": [list(p) for p in seq]}, where=f"{where}.{key}"))
    cls = NullhomotopyCertificate if obj.get("nullhomotopy", False) else Certificate
    return cls(out[0], out[1], G, obj.get("kind", "endpoint_fixed"))


def load_certificate(src) -> Certificate:
    obj, base = _read(src)
    return certificate_from_json(obj, base, str(src) if isinstance(src, (str, Path)) else "certificate")


def dump_certificate(cert: Certificate, dst=None) -> str:
    return _write(certificate_to_json(cert), dst)


def entry_to_json(entry) -> dict:
    """A catalog entry with every artifact in its file format."""
    from .euler import DigitalDisk

    arts: dict[str, Any] = {}
    for name, a in sorted(entry.artifacts.items()):
        if isinstance(a, DigitalPath):
            arts[name] = path_to_json(a)
        elif isinstance(a, HomotopyGrid):
            arts[name] = homotopy_to_json(a)
        elif isinstance(a, DigitalDisk):
            arts[name] = {"kind": a.kind, "curve": image_to_json(a.curve),
                          "interior": [list(p) for p in sorted(a.interior)]}
        elif isinstance(a, dict):
            arts[name] = {k: list(v) for k, v in a.items()}
        else:
            arts[name] = list(a)
    return {"id": entry.id, "image": image_to_json(entry.image), "image_hash": image_hash(entry.image),
            "adjacencies": list(entry.adjacencies), "note": entry.note, "artifacts": arts}
