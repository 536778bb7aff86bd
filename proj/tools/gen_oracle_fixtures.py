#!/usr/bin/env python3
"""Writes tests/fixtures/tate_oracle.json and tests/fixtures/rank_oracle.json from PARI.

Needs the passagemath-pari wheel (pip install passagemath-pari). The C++ library
never calls PARI; these files are independent reference data for the test suite.
"""
import json
import random
import sys
from pathlib import Path

import cypari2

pari = cypari2.Pari()
pari.allocatemem(10**9)


def kodaira(kod):
    kod = int(kod)
    if kod == 1:
        return "I0"
    if kod in (2, 3, 4):
        return {2: "II", 3: "III", 4: "IV"}[kod]
    if kod > 4:
        return "I%d" % (kod - 4)
    if kod in (-2, -3, -4):
        return {-2: "II*", -3: "III*", -4: "IV*"}[kod]
    if kod == -1:
        return "I0*"
    return "I%d*" % (-kod - 4)


def local_rows(ainvs):
    E = pari.ellinit(ainvs)
    if len(E) == 0 or E[11] == 0:
        return None
    disc = E[11]
    Emin = pari.ellminimalmodel(E)
    dmin = Emin[11]
    rows = []
    for p in pari.factor(pari.abs(disc))[0]:
        red = pari.elllocalred(E, p)
        rows.append({
            "p": str(p),
            "conductor_exponent": int(red[0]),
            "kodaira": kodaira(red[1]),
            "tamagawa": int(red[3]),
            "min_disc_valuation": int(pari.valuation(dmin, p)),
        })
    return rows


def main(out_dir):
    rng = random.Random(20240611)
    cases = []
    seen = set()

    def add(ainvs, tag):
        key = tuple(ainvs)
        if key in seen:
            return
        rows = local_rows([int(x) for x in ainvs])
        if rows is None:
            return
        seen.add(key)
        cases.append({"ainvs": [str(x) for x in ainvs], "tag": tag, "places": rows})

    # Two-torsion models y^2 = x^3 + a x^2 + b x.
    while len([c for c in cases if c["tag"] == "two_torsion"]) < 150:
        a, b = rng.randint(-60, 60), rng.randint(-200, 200)
        if b != 0 and a * a - 4 * b != 0:
            add([0, a, 0, b, 0], "two_torsion")
    # Non-minimal scalings at small primes.
    for p in (2, 3, 5, 7):
        for _ in range(8):
            a, b = rng.randint(-20, 20), rng.randint(-40, 40)
            if b != 0 and a * a - 4 * b != 0:
                k = rng.randint(1, 2)
                add([0, a * p ** (2 * k), 0, b * p ** (4 * k), 0], "scaled")
    # General Weierstrass models, exercising every residue characteristic branch.
    while len([c for c in cases if c["tag"] == "general"]) < 150:
        ai = [rng.randint(-3, 3), rng.randint(-6, 6), rng.randint(-4, 4),
              rng.randint(-300, 300), rng.randint(-3000, 3000)]
        add(ai, "general")
    # Additive fibres of many types at 2 and 3.
    for p in (2, 3):
        for _ in range(60):
            ai = [p * rng.randint(-2, 2), p * rng.randint(-3, 3), p ** 2 * rng.randint(-3, 3),
                  p ** rng.randint(2, 4) * rng.randint(-5, 5), p ** rng.randint(3, 6) * rng.randint(-9, 9)]
            add(ai, "additive_small_char")
    # Large primes for root finding over big residue fields.
    big = [1000003, 1000033, 999983, 2147483647, 1000000007]
    for q in big:
        for _ in range(4):
            a = rng.randint(-10**6, 10**6)
            b = q * rng.randint(1, 50) * rng.choice([1, -1])
            add([0, a, 0, b, 0], "large_prime")
            add([0, a * q, 0, b * q, 0], "large_prime")
            add([0, a * q, 0, b * q * q, 0], "large_prime")

    Path(out_dir, "tate_oracle.json").write_text(json.dumps({"cases": cases}, indent=0) + "\n")

    # Rank bounds from PARI's 2-descent, for sanity bracketing.
    rank_cases = []
    seen_ab = set()
    while len(rank_cases) < 60:
        a, b = rng.randint(-20, 20), rng.randint(-20, 20)
        if b == 0 or a * a - 4 * b == 0 or (a, b) in seen_ab:
            continue
        seen_ab.add((a, b))
        E = pari.ellinit([0, a, 0, b, 0])
        r = pari.ellrank(E)
        rank_cases.append({"a": a, "b": b, "rank_lo": int(r[0]), "rank_hi": int(r[1])})
    Path(out_dir, "rank_oracle.json").write_text(json.dumps({"cases": rank_cases}, indent=0) + "\n")
    print("wrote", len(cases), "local cases and", len(rank_cases), "rank cases")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
