"""Smoke test for the pydsemion extension.

Build it first:  pip install --no-build-isolation -e crates/py
"""

import json
import sys

import pydsemion


def check(name, report):
    ok = report["passed"]
    print(f"{'PASS' if ok else 'FAIL'} {name} (convention {report['convention']['resolved']})")
    return ok


def main():
    results = [
        check("groundstate verify n=1", pydsemion.groundstate_verify(1)),
        check("category check", pydsemion.category_check()),
        check("tqd compare", pydsemion.tqd_compare()),
        check("purity schmidt n=1", pydsemion.purity_schmidt(1, seed=3)),
        check("purity parity n=1", pydsemion.purity_parity(1)),
    ]

    # Deterministic for a fixed seed.
    a = pydsemion.purity_schmidt(1, seed=11)
    b = pydsemion.purity_schmidt(1, seed=11)
    same = json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    print(f"{'PASS' if same else 'FAIL'} repeatable output")
    results.append(same)

    # A sign on F(e,e,e) alone breaks the hexagons; reported, not raised.
    toric = {
        "labels": ["1", "e", "m", "f"],
        "unit": 0,
        "fusion": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
        "f": [0] * 64,
        "r": [0] * 16,
    }
    toric["f"][1 * 16 + 1 * 4 + 1] = 2
    rejected = not pydsemion.category_check(json.dumps(toric))["passed"]
    print(f"{'PASS' if rejected else 'FAIL'} inconsistent data rejected")
    results.append(rejected)

    try:
        pydsemion.groundstate_verify(1, convention="nope")
        bad_arg = False
    except ValueError:
        bad_arg = True
    print(f"{'PASS' if bad_arg else 'FAIL'} unknown convention raises")
    results.append(bad_arg)

    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
