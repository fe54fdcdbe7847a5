"""Run the acceptance criteria and print one line per criterion.

usage: python3 scripts/run_acceptance.py [quick|full] [numbers, e.g. 1,6,8]
"""

import sys

from oligogrowth.acceptance import CRITERIA, run


def main() -> int:
    level = sys.argv[1] if len(sys.argv) > 1 else "full"
    numbers = [int(x) for x in sys.argv[2].split(",")] if len(sys.argv) > 2 else [c[0] for c in CRITERIA]
    results = [run(n, level) for n in numbers]
    for r in results:
        print(r.line(), flush=True)
    print(f"{sum(r.ok for r in results)}/{len(results)} passed")
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
