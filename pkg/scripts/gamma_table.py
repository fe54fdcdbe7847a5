"""Growth constants against measured ratios u_N/u_(N-1) of the S_d order-base atom."""

import sys

from oligogrowth.classify import gamma
from oligogrowth.expr import Atom, profile
from oligogrowth.permgrp import symmetric_group
from oligogrowth.qatoms import make_spec


def main() -> None:
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    N = 60
    print("d,gamma,lo,hi,ratio_at_60,deviation")
    for d in range(1, top + 1):
        g = gamma(d)
        u = profile(Atom(make_spec(d, symmetric_group(d))), N)
        r = u[N] / u[N - 1]
        j = g.to_json()
        print(f"{d},{g.value:.12f},{j['lo'][:16]},{j['hi'][:16]},{r:.12f},{abs(r - g.value):.1e}")


if __name__ == "__main__":
    main()
