"""Brute-force search for highly set-transitive subgroups of S_n, compared with the catalog.

usage: python3 scripts/hst_search.py [max_degree]
"""

import sys

from oligogrowth.permgrp import all_subgroups_up_to_conjugacy, is_highly_set_transitive, symmetric_group
from oligogrowth.qatoms import hst_catalog, hst_name


def main() -> None:
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    for n in range(1, top + 1):
        hits = [H for H in all_subgroups_up_to_conjugacy(symmetric_group(n)) if is_highly_set_transitive(H)]
        found = sorted((H.order, hst_name(H)) for H in hits)
        listed = sorted((G.order, hst_name(G)) for G in hst_catalog(n))
        print(f"n={n}: search {found}; catalog agrees: {found == listed}")


if __name__ == "__main__":
    main()
