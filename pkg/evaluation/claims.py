"""
Claims reproduced by `reproduce`. Each suite checks one family of closed forms
over a parameter grid; defaults are the grids the tables are published for.
"""

CLAIMS = [
    # --- Degrees ---
    {
        "suite": "detdeg",
        "claim": "deg M_q(n) = m^(n(n-1)/2) for odd m",
        "defaults": {"max_n": 3, "moduli": (3, 5, 7)},
    },
    {
        "suite": "gcd",
        "claim": "corank J(M_q(n,r)) = s = gcd(n,r) if n/s and r/s are odd, else 0",
        "defaults": {"max_n": 8},
    },
    {
        "suite": "goodlabel",
        "claim": "deg M_q(n,r) = m^((nr - c)/2) for good m",
        "defaults": {"max_n": 4, "moduli": (3, 5, 7)},
    },
    {
        "suite": "bl1",
        "claim": "deg M_q(n,r) at m = 2 is 2^floor((n+r-1)/2)",
        "defaults": {"max_n": 6},
    },

    # --- Block structure ---
    {
        "suite": "blocks",
        "claim": "rectangle divisors lie in {1,2,4} with d0 ones and max(0,(nr-c)/2-d0) twos/fours",
        "defaults": {"max_n": 6},
    },
    {
        "suite": "blocks-rprime",
        "claim": "for prime r, four-blocks appear iff r is odd and n = z*r with z even, (r-1)/2 of them",
        "defaults": {"max_n": 12, "r_values": (2, 3, 5)},
    },
    {
        "suite": "hook",
        "claim": "deg A(n,r) = m^(nr - r(r+1)/2) for odd m, m^(n-1) (m/2)^(nr - r(r+1)/2 - (n-1)) for even m",
        "defaults": {"max_n": 5, "moduli": (2, 3, 4, 5)},
    },

    # --- Centers ---
    {
        "suite": "centrality",
        "claim": "det_q, Z_a, corner, quarter and theta-chain candidates are central",
        "defaults": {"max_n": 7},
    },
    {
        "suite": "oracle",
        "claim": "normal-form image size equals brute-force enumeration; normal form invariants hold",
        "defaults": {"cases": 200},
    },
    {
        "suite": "center-gen",
        "claim": "Z_a leading exponents and m-th powers generate the kernel mod m",
        "defaults": {"cells": ((2, 2, 3), (3, 3, 5), (6, 2, 3))},
    },
]

SUITE_NAMES = [c["suite"] for c in CLAIMS]


def claim_for(suite):
    for c in CLAIMS:
        if c["suite"] == suite:
            return c
    raise ValueError(f"Unknown suite: {suite}. Use: {SUITE_NAMES + ['all']}")
