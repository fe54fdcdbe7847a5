"""Normal-pair verdicts for catalog atoms of one fiber size, each checked by the word model.

usage: python3 scripts/normal_pairs.py [fiber]
"""

import sys
from collections import Counter

from oligogrowth.acceptance import normal_pair_consistency
from oligogrowth.cli import print_expr
from oligogrowth.expr import Atom
from oligogrowth.qatoms import classify_normal_pair, enumerate_S_catalog


def main() -> None:
    k = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    specs = [e.spec for e in enumerate_S_catalog(k)]
    tally = Counter()
    for a in specs:
        for b in specs:
            r = classify_normal_pair(a, b)
            ok, why = normal_pair_consistency(a, b)
            tally[(r.verdict, ok)] += 1
            if r.is_normal and a != b:
                print(f"{print_expr(Atom(a))}  <|  {print_expr(Atom(b))}: case {r.matched_case}, "
                      f"quotient {r.quotient_iso_tag}, word model {'agrees' if ok else 'DISAGREES'}")
            elif not ok:
                print(f"INCONSISTENT {print_expr(Atom(a))} in {print_expr(Atom(b))}: {why}")
    for (verdict, ok), n in sorted(tally.items()):
        print(f"{verdict:10s} consistent={ok}: {n}")


if __name__ == "__main__":
    main()
