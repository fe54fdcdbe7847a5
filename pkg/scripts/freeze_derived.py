"""Recompute the derived reference values with the naive oracle and write them
to tests/data/derived_values.json."""

import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracle as o  # noqa: E402

S2, S3, S4 = o.group(2, "(0 1)"), o.group(3, "(0 1)", "(0 1 2)"), o.group(4, "(0 1)", "(0 1 2 3)")
A3 = o.group(3, "(0 1 2)")
Z4 = o.group(4, "(0 1 2 3)")
ONE2, ONE3 = o.group(2), o.group(3)

ATOMS = {
    "cover{F=2; H=(0 1); L=(0 1); base=<}": (2, ("(0 1)",), ("(0 1)",), "order", None, None),
    "cover{F=2; H=(); L=(0 1); base=<}": (2, ("()",), ("(0 1)",), "order", None, None),
    "cover{F=2; H=(); L=(); base=betw; flip=(0 1)}": (2, ("()",), ("()",), "betw", "(0 1)", None),
    "cover{F=2; H=(0 1); L=(0 1); base=sym}": (2, ("(0 1)",), ("(0 1)",), "eq", None, None),
    "cover{F=3; H=(0 1 2); L=(0 1 2), (0 1); base=cyc; turn=(0 1)}": (3, ("(0 1 2)",), ("(0 1 2)", "(0 1)"), "cyc", None, "(0 1)"),
    "cover{F=3; H=(0 1 2); L=(0 1 2); base=sep; flip=(0 1); turn=()}": (3, ("(0 1 2)",), ("(0 1 2)",), "sep", "(0 1)", "()"),
    "cover{F=3; H=(0 1 2), (0 1); L=(0 1 2), (0 1); base=<}": (3, ("(0 1 2)", "(0 1)"), ("(0 1 2)", "(0 1)"), "order", None, None),
    "Q <": (1, ("()",), ("()",), "order", None, None),
    "Q sym": (1, ("()",), ("()",), "eq", None, None),
    "cover{F=4; H=(0 1 2 3); L=(0 1 2 3); base=<}": (4, ("(0 1 2 3)",), ("(0 1 2 3)",), "order", None, None),
}


def main() -> None:
    atoms = {}
    for text, args in ATOMS.items():
        a = o.atom_from_cycles(*args)
        N = 6 if args[0] <= 3 else 5
        atoms[text] = {"u": [a.u(n) for n in range(N + 1)], "ell": [a.ell(n) for n in range(5)]}
    s2wr = o.wreath_elements(S2, 2, S4, 4)
    data = {
        "finite": {
            "S4_n2": [o.subset_orbits(S4, 4, 2), o.tuple_orbits(S4, 4, 2, True), o.tuple_orbits(S4, 4, 2, False)],
            "Z4_u": [o.subset_orbits(Z4, 4, n) for n in range(5)],
            "AGL15_order": len(o.group(5, "(0 1 2 3 4)", "(1 2 4 3)")),
            "S2xS2_u2": o.subset_orbits(o.direct_product_elements(S2, 2, S2, 2), 4, 2),
            "S2wrS3_order": len(o.wreath_elements(S2, 2, S3, 3)),
            "congruences": {"id2": o.congruence_count(ONE2, 2), "S3": o.congruence_count(S3, 3),
                            "S2xS2": o.congruence_count(o.direct_product_elements(S2, 2, S2, 2), 4),
                            "S4": o.congruence_count(S4, 4)},
            "subgroup_class_orders": {"S3": o.subgroup_classes(S3), "Z4": o.subgroup_classes(Z4)},
            "kernel_orders": {"S2_S2_3": o.kernel_order(2, S2, S2, 3), "1_S2_3": o.kernel_order(2, ONE2, S2, 3),
                              "A3_S3_2": o.kernel_order(3, A3, S3, 2)},
        },
        "atoms": atoms,
        "series": {
            "partitions": o.partitions(9),
            "euler_two_singletons_n2": o.multiset_count([1, 2], 2),
            "bell": [o.bell(n) for n in range(5)],
            "S2wrSym_u": [o.subset_orbits(s2wr, 8, n) for n in range(5)],
        },
    }
    path = ROOT / "tests" / "data" / "derived_values.json"
    path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
