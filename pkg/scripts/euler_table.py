"""Print the simplex census and Euler characteristic of every catalog image."""
import argparse
import json

from digitopo import catalog
from digitopo.euler import simplex_census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for id_ in catalog.IDS:
        e = catalog.build(id_)
        for adj in e.adjacencies:
            c = simplex_census(e.image.with_adjacency(adj))
            rows.append({"id": id_, "adjacency": adj, **c.to_json()})
    if args.json:
        print(json.dumps(rows, indent=1))
        return
    print(f"{'image':20s} {'adj':>4s}  {'alpha':36s} {'chi':>5s} {'V-E+F':>6s}")
    for r in rows:
        flag = "  *" if r["differs"] else ""
        print(f"{r['id']:20s} {r['adjacency']:>4s}  {str(tuple(r['alpha'])):36s} {r['chi']:5d} {r['legacy_vef']:6d}{flag}")
    print("* V-E+F disagrees with the full alternating sum")


if __name__ == "__main__":
    main()
