"""Command-line front end.

Exit codes: 0 success, 1 verification or semantic failure, 2 usage error,
3 search budget exhausted or search closed without reaching its target.
"""
from __future__ import annotations

import argparse
import contextlib
import io as _stdio
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import catalog as cat
from . import io as dio
from .core import DigitalImage, DigitopoError, components
from .euler import is_isomorphic, simplex_census
from .homotopy import DigitalLoop, DigitalPath, pad, verify_contraction, verify_homotopy
from .oracle import (
    ENDPOINT_FIXED,
    LOOP_PRESERVING,
    CapExceeded,
    SearchBudget,
    SearchBudgetExceeded,
    Status,
    components_contractible,
    find_hole,
    search_paths,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "DIGITOPO_BUDGET"
BOUNDED = "bounded evidence"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    max_states: int = 10**6
    seed: int = 0
    threads: int = 1
    machine: bool = False


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return 10**6
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def resolve_image(ref: str) -> DigitalImage:
    """A catalog id or an image file, optionally suffixed with ``@<adjacency>``."""
    name, _, adj = ref.partition("@")
    if name in cat.IDS:
        X = cat.build(name).image
    elif Path(name).exists():
        X = dio.load_image(name)
    else:
        raise UsageError(f"{name!r} is neither a catalog id nor an image file")
    return X.with_adjacency(adj) if adj else X


def resolve_loop(ref: str, image_ref: str | None, X: DigitalImage | None) -> DigitalPath:
    """A path file, or the name of a loop attached to the catalog entry ``image_ref``."""
    if Path(ref).exists():
        f = dio.load_path(ref)
    else:
        name = (image_ref or "").partition("@")[0]
        arts = cat.loops(name) if name in cat.IDS else {}
        if ref not in arts:
            known = ", ".join(sorted(arts)) or "none"
            raise UsageError(f"{ref!r} is not a file or a loop of {name or 'the image'} (known: {known})")
        f = arts[ref]
    if X is not None and f.image != X:
        if "@" not in (image_ref or "") and f.image.points == X.points:
            return f  # no adjacency asked for: keep the loop's own
        if set(f.seq) - set(X.points):
            raise UsageError("the loop leaves the image")
        f = type(f)(X, f.seq)
    return f


def emit(cfg: RunConfig, payload: dict, human: list[str] | None = None):
    if cfg.machine:
        print(json.dumps(payload, sort_keys=True))
        return
    if human is None:
        human = [f"{k}: {v}" for k, v in payload.items()]
    print("\n".join(human))


# commands

def cmd_chi(cfg, args):
    X = resolve_image(args.image)
    census = simplex_census(X)
    emit(cfg, census.to_json(), [
        f"alpha: {list(census.alpha)}",
        f"chi: {census.chi}",
        f"legacy_vef: {census.legacy_vef}",
        f"differs: {census.differs}",
    ])
    return EXIT_OK


def _load_grid(ref: str):
    name, _, art = ref.partition(":")
    if name in cat.IDS:
        arts = cat.build(name).artifacts
        key = art or next((k for k in ("grid", "H") if k in arts), None)
        if key not in arts or not hasattr(arts[key], "rows"):
            raise UsageError(f"catalog entry {name} has no homotopy {art or ''}")
        G = arts[key]
        return G, cat.build(name).image
    if not Path(ref).exists():
        raise UsageError(f"{ref!r} is neither a homotopy file nor a catalog id")
    return dio.load_homotopy(ref)


def cmd_verify(cfg, args):
    G, X = _load_grid(args.homotopy)
    if G.domain_order is not None:
        rep = verify_contraction(X, G)
        kind = "contraction"
    else:
        rep = verify_homotopy(G, G.rows[0], G.rows[-1])
        kind = "path homotopy"
    flags = [k for k, v in (("pointed", G.pointed_at is not None), ("loop-preserving", G.loop_preserving),
                            ("endpoint-fixed", G.endpoint_fixed)) if v]
    payload = {
        "valid": rep.valid, "kind": kind, "steps": G.steps, "flags": rep.flags,
        "violations": [{"condition": v.condition, "s": v.s, "t": v.t, "detail": v.detail} for v in rep.violations],
    }
    human = [f"{'valid' if rep.valid else 'INVALID'} {kind}, {G.steps} steps"
             + (f", {', '.join(flags)}" if flags else "")]
    human += [f"  {v.condition} at (s={v.s}, t={v.t}): {v.detail}" for v in rep.violations]
    emit(cfg, payload, human)
    return EXIT_OK if rep.valid else EXIT_FAIL


def contractor_for(X: DigitalImage):
    """Pick the constructive generator that applies to this image and adjacency."""
    from .pi1tools import adjacency_lift, clamp_contract_mss6, clamp_contract_mss18, tree_fold_contract

    pts, u = X.points, X.kappa.u
    if X.n == 3 and pts == cat.mss18().points:
        if u == 2:
            return "clamp_contract_mss18", clamp_contract_mss18
        if u == 3:
            return "adjacency_lift(18) + clamp_contract_mss18", lambda f: adjacency_lift(X, f, "18", clamp_contract_mss18)
    if X.n == 3 and pts == cat.mss6().points:
        X18 = X.with_adjacency("18")

        def via18(h):
            return adjacency_lift(X18, h, "6", clamp_contract_mss6)

        if u == 1:
            return "clamp_contract_mss6", clamp_contract_mss6
        if u == 2:
            return "adjacency_lift(6) + clamp_contract_mss6", via18
        return "adjacency_lift(18) + adjacency_lift(6) + clamp_contract_mss6", lambda f: adjacency_lift(X, f, "18", via18)
    if len(X.edges()) == len(X) - len(components(X)):
        return "tree_fold_contract", lambda f: tree_fold_contract(X, f)
    return None, None


def cmd_contract(cfg, args):
    X = resolve_image(args.image)
    f = resolve_loop(args.loop, args.image, X)
    X = f.image
    if not isinstance(f, DigitalLoop):
        raise UsageError("contract needs a loop")
    name, gen = contractor_for(X)
    if gen is None:
        emit(cfg, {"contracted": False, "reason": "no constructive contractor for this image"},
             ["no constructive contractor applies to this image; try `explore`"])
        return EXIT_FAIL
    cert = gen(f)
    rep = cert.check()
    if args.out:
        dio.dump_certificate(cert, args.out)
    payload = {"contracted": rep.valid, "generator": name, "steps": cert.grid.steps,
               "padded_length": cert.padded.m, "certificate": dio.certificate_to_json(cert) if cfg.machine else None}
    emit(cfg, payload, [f"{'verified' if rep.valid else 'INVALID'} endpoint-fixed nullhomotopy via {name}",
                        f"steps: {cert.grid.steps}", f"padded length: {cert.padded.m}"]
         + ([f"certificate written to {args.out}"] if args.out else []))
    return EXIT_OK if rep.valid else EXIT_FAIL


def cmd_explore(cfg, args):
    X = resolve_image(args.image)
    f = resolve_loop(args.loop, args.image, X)
    X = f.image
    if not isinstance(f, DigitalLoop):
        raise UsageError("explore needs a loop")
    if args.pad is not None and args.pad < f.m:
        raise UsageError(f"--pad {args.pad} is shorter than the loop ({f.m})")
    fp = pad(f, args.pad if args.pad is not None else f.m)
    moves = ENDPOINT_FIXED if args.moves == "fixed" else LOOP_PRESERVING
    if moves == ENDPOINT_FIXED:
        target = lambda row: all(q == f.basepoint for q in row)  # noqa: E731
    else:
        target = lambda row: len(set(row)) == 1  # noqa: E731
    rep = search_paths(X, fp.seq, moves, target, SearchBudget(max_states=cfg.max_states), args.strategy)
    payload = rep.to_json()
    payload["length"] = fp.m
    payload["moves"] = moves
    payload["label"] = BOUNDED
    human = [f"status: {rep.status.value}", f"states: {rep.states_visited}", f"depth: {rep.frontier_depth}",
             f"length: {fp.m}", f"moves: {moves}"]
    if rep.reached:
        human.append(f"a constant loop is reachable in {len(rep.rows) - 1} steps")
        payload["certificate"] = [[list(p) for p in row] for row in rep.rows]
    elif rep.status is Status.EXHAUSTED:
        human.append(f"{BOUNDED}: no constant loop is reachable at length {fp.m} with {moves} moves; "
                     "other lengths are not covered")
    else:
        human.append(f"{BOUNDED}: budget of {cfg.max_states} states ran out; nothing is concluded")
    emit(cfg, payload, human)
    return EXIT_OK if rep.reached else EXIT_BUDGET


def cmd_nohole(cfg, args):
    X = resolve_image(args.image)
    budget = SearchBudget(max_states=cfg.max_states)
    try:
        hole = find_hole(X, budget, args.cap)
        contractible = components_contractible(X, budget, args.cap)
    except CapExceeded as e:
        raise UsageError(str(e)) from None
    except SearchBudgetExceeded as e:
        emit(cfg, {"status": "BudgetExceeded", "detail": str(e), "label": BOUNDED}, [f"{BOUNDED}: {e}"])
        return EXIT_BUDGET
    payload = {"has_hole": hole is not None, "witness": None if hole is None else [list(p) for p in hole],
               "components_contractible": contractible, "agree": (hole is None) == contractible, "label": BOUNDED}
    human = [f"has hole: {hole is not None}" + (f" (subset {list(hole)} does not contract)" if hole else ""),
             f"every component contractible: {contractible}",
             f"the two answers agree: {payload['agree']}",
             f"{BOUNDED}: exhaustive over self-map moves of this image only"]
    emit(cfg, payload, human)
    return EXIT_OK if payload["agree"] else EXIT_FAIL


def cmd_iso(cfg, args):
    X, Y = resolve_image(args.a), resolve_image(args.b)
    w = is_isomorphic(X, Y)
    payload = {"isomorphic": w is not None,
               "witness": None if w is None else [[list(p), list(q)] for p, q in sorted(w.items())]}
    human = [f"isomorphic: {w is not None}"]
    if w is not None:
        human += [f"  {p} -> {q}" for p, q in sorted(w.items())]
    emit(cfg, payload, human)
    return EXIT_OK if w is not None else EXIT_FAIL


def cmd_catalog(cfg, args):
    if args.action == "list":
        rows = [{"id": i, "points": len(cat.build(i).image), "adjacencies": list(cat.build(i).adjacencies),
                 "artifacts": sorted(cat.build(i).artifacts), "note": cat.build(i).note} for i in cat.IDS]
        if cfg.machine:
            print(json.dumps(rows, sort_keys=True))
        else:
            for r in rows:
                arts = f" [{', '.join(r['artifacts'])}]" if r["artifacts"] else ""
                print(f"{r['id']:<20} {r['points']:>3} pts  {'/'.join(r['adjacencies']):<9} {r['note']}{arts}")
        return EXIT_OK
    if args.id not in cat.IDS:
        raise UsageError(f"unknown catalog id {args.id!r}")
    print(json.dumps(dio.entry_to_json(cat.build(args.id)), sort_keys=True, indent=None if cfg.machine else 1))
    return EXIT_OK


def cmd_reproduce(cfg, args):
    from .acceptance import AcceptanceConfig, run_all

    results = run_all(AcceptanceConfig(seed=cfg.seed), args.only)
    if cfg.machine:
        print(json.dumps([r.to_json() for r in results], sort_keys=True))
    else:
        for r in results:
            print(r.line())
            for name, ok, detail in r.checks:
                print(f"      {'ok ' if ok else 'BAD'} {name}" + (f"  ({detail})" if detail else ""))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="accepted; searches run single-threaded")
    common.add_argument("--budget", type=int, default=None, help=f"max search states (default ${BUDGET_ENV} or 10^6)")

    p = argparse.ArgumentParser(prog="digitopo", description="Digital topology of finite lattice images.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chi", parents=[common], help="simplex census and Euler characteristic")
    s.add_argument("image", help="catalog id or image file, optionally ID@adjacency")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("verify", parents=[common], help="check a homotopy file (or catalog id[:artifact])")
    s.add_argument("homotopy")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("contract", parents=[common], help="build a certified nullhomotopy")
    s.add_argument("image")
    s.add_argument("--loop", required=True, help="path file or name of a loop in the catalog entry")
    s.add_argument("--out", help="write the certificate here")
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("explore", parents=[common], help="bounded search for a contraction of a loop")
    s.add_argument("image")
    s.add_argument("--loop", required=True)
    s.add_argument("--moves", choices=("fixed", "looppres"), default="fixed")
    s.add_argument("--pad", type=int, default=None)
    s.add_argument("--strategy", choices=("bfs", "greedy"), default="bfs")
    s.set_defaults(func=cmd_explore)

    s = sub.add_parser("nohole", parents=[common], help="hole check on a tiny image, both ways")
    s.add_argument("image")
    s.add_argument("--cap", type=int, default=7)
    s.set_defaults(func=cmd_nohole)

    s = sub.add_parser("iso", parents=[common], help="adjacency-graph isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("catalog", parents=[common], help="list or dump catalog entries")
    s.add_argument("action", choices=("list", "dump"))
    s.add_argument("id", nargs="?")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("reproduce", parents=[common], help="run every acceptance criterion")
    s.add_argument("--only", type=int, nargs="*", default=None)
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        if args.command == "catalog" and args.action == "dump" and not args.id:
            raise UsageError("catalog dump needs an id")
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        budget = args.budget if args.budget is not None else _default_budget()
        if budget < 1:
            raise UsageError("the budget must be positive")
        cfg = RunConfig(args.command, [], budget, args.seed, args.threads, args.json)
        return args.func(cfg, args)
    except UsageError as e:
        print(f"digitopo: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DigitopoError as e:
        print(f"digitopo: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


def main_capture(argv: list[str]) -> tuple[int, str]:
    """Run main and return (exit code, stdout)."""
    buf = _stdio.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(_stdio.StringIO()):
        code = main(argv)
    return code, buf.getvalue()


def entry() -> None:
    sys.exit(main())
