"""Contract many random loops on the two spheres and report certificate sizes."""
import argparse
import random
import statistics
import time

from digitopo import catalog
from digitopo.oracle import random_loop
from digitopo.pi1tools import adjacency_lift, clamp_contract_mss6, clamp_contract_mss18


def contractors():
    X18 = catalog.mss18()
    X6 = catalog.mss6()
    X6_18 = X6.with_adjacency("18")

    def via18(h):
        return adjacency_lift(X6_18, h, "6", clamp_contract_mss6)

    yield "MSS_18 @18", X18, catalog.C[0], clamp_contract_mss18
    yield "MSS_18 @26", X18.with_adjacency("26"), catalog.C[0], \
        lambda f: adjacency_lift(X18.with_adjacency("26"), f, "18", clamp_contract_mss18)
    yield "MSS_6 @6", X6, (0, 0, 1), clamp_contract_mss6
    yield "MSS_6 @18", X6_18, (0, 0, 1), via18
    yield "MSS_6 @26", X6.with_adjacency("26"), (0, 0, 1), \
        lambda f: adjacency_lift(X6.with_adjacency("26"), f, "18", via18)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--max-len", type=int, default=24)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'image':12s} {'loops':>6s} {'valid':>6s} {'rows':>10s} {'length':>10s} {'secs':>6s}")
    for name, X, base, gen in contractors():
        rng = random.Random(args.seed)
        t0 = time.perf_counter()
        certs = [gen(random_loop(X, base, args.max_len, rng)) for _ in range(args.n)]
        valid = sum(c.check().valid for c in certs)
        rows = [c.grid.steps + 1 for c in certs]
        lens = [c.padded.m for c in certs]
        print(f"{name:12s} {args.n:6d} {valid:6d} {statistics.mean(rows):6.1f}/{max(rows):<3d} "
              f"{statistics.mean(lens):6.1f}/{max(lens):<3d} {time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    main()
