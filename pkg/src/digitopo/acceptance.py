"""The reproduction checklist: ten criteria, each a list of named sub-checks.

Used by ``digitopo reproduce`` and by the acceptance test. A criterion
passes when every sub-check passes and, where a time limit is set, it ran
within that limit.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import catalog as cat
from .core import DigitalImage, box, components
from .euler import boundary_curve_chi, cliques, connected_sum_chi, euler_characteristic, simplex_census
from .homotopy import DigitalLoop, pad, verify_contraction, verify_homotopy
from .oracle import (
    ENDPOINT_FIXED,
    LOOP_PRESERVING,
    SearchBudget,
    Status,
    connected_subsets,
    has_hole_direct,
    has_loophole_bounded,
    loop_reachable_set,
    no_hole_equiv_check,
    random_loop,
    search_paths,
)
from .pi1tools import (
    HypothesisFailed,
    adjacency_lift,
    clamp_contract_mss6,
    clamp_contract_mss18,
    tree_fold_contract,
)

BOUNDED_LABEL = "bounded evidence"

# claims that no finite search settles, and the criteria that give bounded support
NON_REPRODUCIBLE = {
    "the 8-adjacency fundamental group of FIG48 is nontrivial": (7,),
    "MSS_6 is not 6-contractible": (9,),
    "X_cnp is not pointed 6-contractible at (0,0,1)": (4,),
}


@dataclass
class AcceptanceConfig:
    seed: int = 0
    n_loops: int = 200
    n_tree_loops: int = 50
    mss18_len: int = 20
    mss6_len: int = 24
    fig48_pad: int = 10
    fig48_states: int = 10**6
    subset_points: int = 5
    loophole_len: int = 8


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    seconds: float = 0.0
    limit: float | None = None

    @property
    def passed(self) -> bool:
        timely = self.limit is None or self.seconds < self.limit
        return timely and all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:g}s)" if self.limit is not None else ""
        bad = [n for n, ok, _ in self.checks if not ok]
        tail = f"  failing: {', '.join(bad)}" if bad else ""
        if self.limit is not None and self.seconds >= self.limit:
            tail += "  over time limit"
        return f"[{mark}] {self.number:2d}. {self.title}  {self.seconds:.2f}s{limit}{tail}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "limit": self.limit,
                "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks]}


def crit_euler_table(cfg: AcceptanceConfig, r: CriterionResult):
    census = simplex_census(cat.mss18())
    r.add("MSS_18 census (10,20,8), no 3-simplices", census.alpha == (10, 20, 8), str(census.alpha))
    r.add("chi(MSS_18) = -2", census.chi == -2, str(census.chi))
    r.add("chi(MSS'_18) = 2", euler_characteristic(cat.mss18p()) == 2)
    for id_, alpha, chi in (("MSC8s", (8, 17, 12, 2), 1), ("MSC8ps", (5, 8, 4), 1), ("MSC4s", (9, 12), -3)):
        c = simplex_census(cat.build(id_).image)
        r.add(f"{id_} census {alpha}, chi {chi}", c.alpha == alpha and c.chi == chi, f"{c.alpha} chi={c.chi}")
    r.add("chi(MSS18_SHARP) = -6", euler_characteristic(cat.mss18_sharp()) == -6)


def crit_faces(cfg: AcceptanceConfig, r: CriterionResult):
    found = {frozenset(c) for c in cliques(cat.mss18(), 3)}
    want = {frozenset(cat.C[i] for i in tri) for tri in cat.MSS18_FACES}
    r.add("2-simplices of MSS_18 = the 8 listed faces", found == want, f"{len(found)} found")


def crit_connected_sums(cfg: AcceptanceConfig, r: CriterionResult):
    chi6 = euler_characteristic(cat.mss6())
    direct = euler_characteristic(cat.mss6_sharp())
    formula = connected_sum_chi(chi6, chi6, "MSC4s")
    r.add("MSS6_SHARP census = chi+chi+6", direct == formula == chi6 + chi6 + 6, f"direct {direct}, formula {formula}")
    chi18 = euler_characteristic(cat.mss18())
    direct = euler_characteristic(cat.mss18_sharp())
    formula = connected_sum_chi(chi18, chi18, "MSC8ps")
    r.add("MSS18_SHARP census = chi+chi-2 = -6", direct == formula == -6, f"direct {direct}, formula {formula}")
    for id_ in ("MSC8s", "MSC8ps", "MSC4s"):
        r.add(f"boundary curve of {id_} has chi 0", boundary_curve_chi(cat.build(id_).artifacts["disk"]) == 0)


def crit_certificates(cfg: AcceptanceConfig, r: CriterionResult):
    G = cat.D_TABLE
    grid = cat.build("D_TABLE").artifacts["grid"]
    rep = verify_homotopy(grid, G[0], G[-1])
    r.add("D_TABLE verifies endpoint-fixed", rep.valid and rep.flags.get("endpoint_fixed"), str(rep))
    X = cat.x_cnp()
    H = cat.x_cnp_contraction()
    rep = verify_contraction(X, H)
    r.add("X_cnp H is a 6-contraction", rep.valid, str(rep))
    rep = verify_contraction(X, H, pointed_at=(0, 0, 1))
    r.add("X_cnp H fails pointed at (0,0,1)", not rep.valid and rep.flags.get("pointed") is False, str(rep))
    rep = verify_contraction(cat.mss18p(), cat.mss18p_contraction())
    r.add("MSS18p_CONTRACTION verifies pointed", rep.valid and rep.flags.get("pointed"), str(rep))


def _all_valid(certs) -> tuple[bool, str]:
    bad = [i for i, c in enumerate(certs) if not c.check().valid]
    return not bad, f"{len(certs) - len(bad)}/{len(certs)} verify"


def crit_generators(cfg: AcceptanceConfig, r: CriterionResult):
    rng = random.Random(cfg.seed)
    X18 = cat.mss18()
    c0 = cat.C[0]
    ok, d = _all_valid([clamp_contract_mss18(random_loop(X18, c0, cfg.mss18_len, rng)) for _ in range(cfg.n_loops)])
    r.add("MSS_18 18-loops contract endpoint-fixed", ok, d)
    X26 = X18.with_adjacency("26")
    ok, d = _all_valid([adjacency_lift(X26, random_loop(X26, c0, cfg.mss18_len, rng), "18", clamp_contract_mss18)
                        for _ in range(cfg.n_loops)])
    r.add("MSS_18 26-loops contract through the 18 lift", ok, d)
    X6 = cat.mss6()
    b6 = (0, 0, 1)
    ok, d = _all_valid([clamp_contract_mss6(random_loop(X6, b6, cfg.mss6_len, rng)) for _ in range(cfg.n_loops)])
    r.add("MSS_6 6-loops contract endpoint-fixed", ok, d)
    X6_18 = X6.with_adjacency("18")
    X6_26 = X6.with_adjacency("26")

    def via18(h):
        return adjacency_lift(X6_18, h, "6", clamp_contract_mss6)

    certs = [via18(random_loop(X6_18, b6, cfg.mss6_len, rng)) for _ in range(cfg.n_loops)]
    certs += [adjacency_lift(X6_26, random_loop(X6_26, b6, cfg.mss6_len, rng), "18", via18)
              for _ in range(cfg.n_loops)]
    ok, d = _all_valid(certs)
    r.add("MSS_6 18- and 26-loops contract through the 6 -> 18 -> 26 chain", ok, d)


def crit_singletons(cfg: AcceptanceConfig, r: CriterionResult):
    for label, X, want in (("MSS_18", cat.mss18(), 10), ("MSS'_18", cat.mss18p(), 6)):
        comps = components(X.with_adjacency("6"))
        pairs = [list(c) for c in comps if len(c) > 1]
        r.add(f"{label} under 6: {want} singletons", len(comps) == want and not pairs,
              f"{len(comps)} components" + (f", non-singletons {pairs}" if pairs else ""))


def crit_fig48(cfg: AcceptanceConfig, r: CriterionResult):
    X4 = cat.fig48("4")
    r.add("FIG48 under 4 is a tree", len(X4.edges()) == len(X4) - 1 and len(components(X4)) == 1)
    rng = random.Random(cfg.seed + 7)
    ok, d = _all_valid([tree_fold_contract(X4, random_loop(X4, (0, 0), 16, rng)) for _ in range(cfg.n_tree_loops)])
    r.add("tree folding contracts random 4-loops", ok, d)
    f = cat.build("FIG48").artifacts["7cycle"]
    fp = pad(f, cfg.fig48_pad)
    rep = search_paths(f.image, fp.seq, ENDPOINT_FIXED, lambda row: all(q == f.basepoint for q in row),
                       SearchBudget(max_states=cfg.fig48_states))
    r.add(f"8-adjacency 7-cycle padded to {cfg.fig48_pad}: Exhausted ({BOUNDED_LABEL})",
          rep.status is Status.EXHAUSTED,
          f"{rep.status.value} after {rep.states_visited} states, depth {rep.frontier_depth}")
    try:
        adjacency_lift(cat.fig48("8"), f, "4", tree_fold_contract)
        r.add("adjacency_lift (4, 8) raises HypothesisFailed", False, "no error")
    except HypothesisFailed as e:
        r.add("adjacency_lift (4, 8) raises HypothesisFailed", True, str(e))


def crit_loophole(cfg: AcceptanceConfig, r: CriterionResult):
    entry = cat.build("LOOPHOLE_X")
    f = entry.artifacts["loop"]
    rs = loop_reachable_set(entry.image, f, LOOP_PRESERVING)
    body = list(f.seq[:-1])
    rotations = {tuple(body[i:] + body[:i] + [body[i]]) for i in range(len(body))}
    r.add("reachable set closes", rs.complete, rs.report.status.value)
    r.add("exactly 8 loops, the rotations of f", set(rs.loops) == rotations and len(rs.loops) == 8,
          f"{len(rs.loops)} loops")
    r.add("no constant loop reachable", not any(len(set(q)) == 1 for q in rs.loops))


def small_sample(adj: str, max_points: int) -> list[DigitalImage]:
    grid = DigitalImage(box((0, 2), (0, 2)), adj)
    return [DigitalImage(P, adj) for P in connected_subsets(grid) if len(P) <= max_points]


def crit_no_hole(cfg: AcceptanceConfig, r: CriterionResult):
    for adj in ("4", "8"):
        sample = small_sample(adj, cfg.subset_points)
        r.add(f"no hole <=> components contractible on {len(sample)} subsets under {adj}",
              no_hole_equiv_check(sample))
        bad = [X.points for X in sample
               if not has_hole_direct(X) and has_loophole_bounded(X, cfg.loophole_len).witness is not None]
        r.add(f"no hole => no loophole up to length {cfg.loophole_len} under {adj}", not bad,
              f"{len(bad)} counterexamples")


def crit_labels(cfg: AcceptanceConfig, r: CriterionResult):
    from .cli import main_capture

    for claim, crits in NON_REPRODUCIBLE.items():
        r.add(f"'{claim}' backed by criteria {crits}", all(1 <= c <= 9 for c in crits))
    code, out = main_capture(["explore", "LOOPHOLE_X", "--loop", "loop", "--moves", "looppres", "--pad", "8"])
    r.add("explore output carries the bounded-evidence label", BOUNDED_LABEL in out, f"exit {code}")
    code, out = main_capture(["nohole", "MSC8ps"])
    r.add("nohole output carries the bounded-evidence label", BOUNDED_LABEL in out, f"exit {code}")


CRITERIA: list[tuple[int, str, Callable, float | None]] = [
    (1, "Euler characteristic table", crit_euler_table, 1.0),
    (2, "MSS_18 faces", crit_faces, None),
    (3, "connected-sum cross-check", crit_connected_sums, None),
    (4, "certificate suite", crit_certificates, 1.0),
    (5, "generator round trip", crit_generators, 60.0),
    (6, "6-components are singletons", crit_singletons, None),
    (7, "FIG48 counterexample evidence", crit_fig48, None),
    (8, "loophole example", crit_loophole, 120.0),
    (9, "no-hole equivalence at desk scale", crit_no_hole, None),
    (10, "non-reproducible items labeled", crit_labels, None),
]


def run_criterion(number: int, cfg: AcceptanceConfig | None = None) -> CriterionResult:
    cfg = cfg or AcceptanceConfig()
    _, title, fn, limit = next(c for c in CRITERIA if c[0] == number)
    r = CriterionResult(number, title, limit=limit)
    t0 = time.perf_counter()
    try:
        fn(cfg, r)
    except Exception as e:  # a crash is a failed check, not a crashed report
        r.add(f"raised {type(e).__name__}", False, str(e))
    r.seconds = time.perf_counter() - t0
    return r


def run_all(cfg: AcceptanceConfig | None = None, only: list[int] | None = None) -> list[CriterionResult]:
    return [run_criterion(n, cfg) for n, *_ in CRITERIA if only is None or n in only]
