"""Search for a contraction of the 8-adjacency FIG48 cycle at a range of padded lengths."""
import argparse

from digitopo import catalog
from digitopo.homotopy import pad
from digitopo.oracle import ENDPOINT_FIXED, LOOP_PRESERVING, SearchBudget, search_paths


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-pad", type=int, default=12)
    ap.add_argument("--budget", type=int, default=10**6)
    args = ap.parse_args()
    f = catalog.build("FIG48").artifacts["7cycle"]
    X = f.image
    print("chords under 8:", [e for e in X.edges() if not catalog.fig48("4").adjacent(*e)
                              and e != ((1, 2), (2, 1))])
    for mode in (ENDPOINT_FIXED, LOOP_PRESERVING):
        for n in range(f.m, args.max_pad + 1):
            rep = search_paths(X, pad(f, n).seq, mode, lambda row: len(set(row)) == 1,
                               SearchBudget(max_states=args.budget))
            print(f"{mode:15s} length {n:2d}: {rep.status.value:15s} states {rep.states_visited:8d} depth {rep.frontier_depth}")


if __name__ == "__main__":
    main()
