"""Count admissible permutations and distinct graphs for small (q, r).

    python scripts/count_permutations.py [--max-order 200]
"""

import argparse

from ddcayley.construction import build_generating_set, enumerate_star_permutations
from ddcayley.errors import DDGError, NotPrimePower
from ddcayley.field import field_for, prime_power
from ddcayley.graphs import cayley_graph
from ddcayley.groups import AffineGroup
from ddcayley.iso import MAX_N, classify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=200, help="skip groups larger than this")
    args = ap.parse_args()
    print(f"{'q':>3} {'r':>2} {'t':>3} {'raw':>5} {'phi_1=1':>8} {'classes':>8}")
    for q in range(2, 10):
        try:
            prime_power(q)
        except NotPrimePower:
            continue
        for r in range(2, 5):
            try:
                f = field_for(q, r)
                if f.t * f.order > args.max_order:
                    continue
                raw = enumerate_star_permutations(f, normalize=False)
                norm = enumerate_star_permutations(f)
            except DDGError:
                continue
            classes = "-"
            if f.t * f.order <= MAX_N:
                G = AffineGroup(f)
                classes = len(classify([cayley_graph(G, build_generating_set(p, G)) for p in raw]))
            print(f"{q:>3} {r:>2} {f.t:>3} {len(raw):>5} {len(norm):>8} {classes:>8}")


if __name__ == "__main__":
    main()
