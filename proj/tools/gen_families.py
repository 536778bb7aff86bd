"""Regenerates data/families.json from the factored curve data below.

Every polynomial is expanded with sympy and written constant term first as
"num/den" strings. The script refuses to write if any point is off its curve
or a discriminant disagrees with its factored form.
"""
import json
import sys
from sympy import Rational as R, expand, symbols, Poly, factor

T = symbols("T")


def coeffs(expr):
    p = Poly(expand(expr), T)
    cs = list(reversed(p.all_coeffs()))
    return [f"{R(c).p}/{R(c).q}" for c in cs]


def disc_spec(const, roots):
    return {"constant": f"{R(const).p}/{R(const).q}",
            "roots": [[f"{R(e).p}/{R(e).q}", k] for e, k in roots]}


def disc_expr(spec):
    c = R(spec["constant"])
    out = c
    for e, k in spec["roots"]:
        out *= (T - R(e)) ** k
    return out


c3 = R(3161, 280)
families = [
    dict(name="rank0", target_rank=0,
         a=2, b=T,
         points_E=[], points_Edual=[], extra_points_E=[],
         disc=disc_spec(-2**6, [(0, 2), (1, 1)]),
         disc_dual=disc_spec(2**12, [(0, 1), (1, 2)]),
         A=["inf"], M=["0"], Mp=["1"]),
    dict(name="rank1", target_rank=1,
         a=T * (T - 3), b=T,
         points_E=[], points_Edual=[(T * (T - 1), 2 * T * (T - 1))], extra_points_E=[],
         disc=disc_spec(2**4, [(0, 3), (1, 2), (4, 1)]),
         disc_dual=disc_spec(2**8, [(0, 3), (1, 4), (4, 2)]),
         A=["0"], M=["inf"], Mp=["1", "4"]),
    dict(name="rank2", target_rank=2,
         a=10 * (T + 16), b=9 * T * (T + 16),
         points_E=[(-T, 4 * T)], points_Edual=[(4 * (T + 16), 48 * (T + 16))], extra_points_E=[],
         disc=disc_spec(2**10 * 3**4, [(0, 2), (-16, 3), (-25, 1)]),
         disc_dual=disc_spec(2**20 * 3**2, [(0, 1), (-16, 3), (-25, 2)]),
         A=["-16", "inf"], M=["0"], Mp=["-25"]),
    dict(name="rank3", target_rank=3,
         a=-(98 * T**2 - 9725), b=7**4 * (T**2 - 4) * (T**2 - 121),
         points_E=[(7**4 * (T - 2) * (T + 2), 115248 * T * (T - 2) * (T + 2)),
                   (7**2 * (T - 2) * (T + 11), 4263 * (T - 2) * (T + 11))],
         points_Edual=[(630 * T + R(28449, 4), 8820 * T**2 + R(177093, 2) * T - R(995715, 8))],
         extra_points_E=[],
         disc=disc_spec(-2**10 * 3**2 * 5**2 * 7**10, [(-11, 2), (-2, 2), (2, 2), (11, 2), (-c3, 1), (c3, 1)]),
         disc_dual=disc_spec(2**20 * 3**4 * 5**4 * 7**8, [(-11, 1), (-2, 1), (2, 1), (11, 1), (-c3, 2), (c3, 2)]),
         A=[], M=["-11", "-2", "2", "11"], Mp=["-3161/280", "3161/280", "inf"]),
    dict(name="rank4", target_rank=4,
         a=-70 * (T**2 - 625), b=2**4 * 7**2 * (T**2 - 121) * (T**2 - 625),
         points_E=[(14 * (T - 11) * (T + 11), 1176 * (T - 11) * (T + 11)),
                   (2 * (T - 11) * (T - 25), (36 * T + 780) * (T - 11) * (T - 25))],
         points_Edual=[(2 * (T - 25) * (T - 39), (64 * T + 1760) * (T - 25) * (T - 39)),
                       (-14 * (T - 25) * (T + 25), 4704 * (T - 25) * (T + 25))],
         extra_points_E=[(14 * (T - 25) * (T + 25), 2352 * (T - 25) * (T + 25)),
                         (8 * (T + 11) * (T + 25), -48 * (T + 11) * (T + 25) * (T - 45))],
         disc=disc_spec(2**14 * 3**2 * 7**6, [(-39, 1), (-25, 3), (-11, 2), (11, 2), (25, 3), (39, 1)]),
         disc_dual=disc_spec(2**16 * 3**4 * 7**6, [(-39, 2), (-25, 3), (-11, 1), (11, 1), (25, 3), (39, 2)]),
         A=["-25", "25"], M=["-11", "11"], Mp=["-39", "39"]),
]

out = []
ok = True
for f in families:
    a, b = expand(f["a"]), expand(f["b"])
    ad, bd = -2 * a, expand(a**2 - 4 * b)
    chk = [("disc", expand(16 * (a**2 - 4 * b) * b**2 - disc_expr(f["disc"]))),
           ("disc_dual", expand(256 * (a**2 - 4 * b) ** 2 * b - disc_expr(f["disc_dual"])))]
    for (x, y) in f["points_E"] + f["extra_points_E"]:
        chk.append(("onE", expand(y**2 - (x**3 + a * x**2 + b * x))))
    for (x, y) in f["points_Edual"]:
        chk.append(("onEdual", expand(y**2 - (x**3 + ad * x**2 + bd * x))))
    for tag, v in chk:
        if v != 0:
            ok = False
            print(f["name"], tag, "FAILED:", factor(v), file=sys.stderr)
    pts = lambda L: [{"x": coeffs(x), "y": coeffs(y)} for x, y in L]
    out.append({
        "name": f["name"],
        "target_rank": f["target_rank"],
        "a": coeffs(a), "b": coeffs(b),
        "points_E": pts(f["points_E"]),
        "points_E_dual": pts(f["points_Edual"]),
        "extra_points_E": pts(f["extra_points_E"]),
        "discriminant": f["disc"],
        "dual_discriminant": f["disc_dual"],
        "expected": {"A": f["A"], "M": f["M"], "M_prime": f["Mp"]},
    })

if not ok:
    sys.exit(1)
path = sys.argv[1] if len(sys.argv) > 1 else "data/families.json"
with open(path, "w") as fh:
    json.dump({"families": out}, fh, indent=1)
    fh.write("\n")
print("wrote", path)
