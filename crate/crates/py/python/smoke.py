"""Smoke test for the ccwg extension module.

    pip install -e crates/py --no-build-isolation
    python3 crates/py/python/smoke.py
"""

import json
import sys

import ccwg


def check(label, got, want):
    ok = got == want
    print(f"{'ok  ' if ok else 'FAIL'} {label}: {got!r}" + ("" if ok else f" (expected {want!r})"))
    return ok


def main():
    results = [
        check("catalog has R_fI", "R_fI" in ccwg.catalog_names(), True),
        check("R_fI is a YBO", ccwg.is_ybo("R_fI"), True),
        check("R_fI is CCwg", ccwg.is_ccwg("fI"), True),
        check("restriction to {1,3} is not a YBO", ccwg.anomaly_nnz("aa0_restricted_13") > 0, True),
        check("heart minimal polynomial", ccwg.minimal_polynomial("R_heart"), "(x - 1)^3 (x + 1)"),
        check("fI n=4 dims", ccwg.tower_dims("R_fI", 4, "Q", 3), (35, 14, [21, 1, 0])),
        check("fff glue n=4 over Fp2", ccwg.tower_dims("R_fff_glue", 4, "Fp2")[:2], (24, 5)),
        check("diamond commutant n=3", ccwg.commutant_dims("R_diamond", 3), (8, 6)),
        check("fI summands n=4", ccwg.summands("R_fI", 4), (2, [8, 8])),
        check("fI ~ diamond to k=4", ccwg.k_equivalent("fI", "diamond", 4, "Fp"), "equivalent"),
        check("R_ag_x_solved at 20 points", ccwg.verify_family("R_ag_x_solved", 20, 1), (20, 20)),
        check("heart table n<=4", json.loads(ccwg.run_table("heart", 4))["all_match"], True),
        check("closure suite", all(c["failures"] == 0 for c in json.loads(ccwg.run_suite("closure", 5, 100))["checks"]), True),
        check("matrix JSON round trip", json.loads(ccwg.matrix_json(ccwg.matrix_json("R_fI")))["N"], 2),
    ]
    try:
        ccwg.is_ybo("R_nosuch")
        results.append(check("unknown name raises", False, True))
    except ValueError:
        results.append(check("unknown name raises", True, True))
    passed = sum(results)
    print(f"{passed}/{len(results)} passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
