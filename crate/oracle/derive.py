"""Independent reference values for the Rust test suite.

Everything here is recomputed from scratch with sympy: transvectants by
symbolic differentiation, ranks with sympy's exact Matrix.rank, and the
b=5 and b=7 certificate vectors typed in from their printed form. None of
the crate's code or transcriptions is used.

Run:  python3 oracle/derive.py > crates/core/tests/fixtures/derived.json
"""

import json
import random
from math import comb, factorial

import sympy as sp

x, y, X, Y = sp.symbols("x y X Y")


def transvect(f, g, d, e, r, u, v):
    """Transvectant of binary forms f (degree d), g (degree e) in u, v."""
    pre = sp.Rational(factorial(d - r) * factorial(e - r), factorial(d) * factorial(e))
    acc = 0
    for i in range(r + 1):
        df = sp.diff(f, u, r - i, v, i) if r else f
        dg = sp.diff(g, u, i, v, r - i) if r else g
        acc += (-1) ** i * comb(r, i) * df * dg
    return sp.expand(pre * acc)


def bi_transvect(p, q, ab, ab2, r, s):
    """Tensor of the x,y transvectant of order r and the X,Y one of order s."""
    (a, b), (a2, b2) = ab, ab2
    pre = sp.Rational(
        factorial(a - r) * factorial(a2 - r) * factorial(b - s) * factorial(b2 - s),
        factorial(a) * factorial(a2) * factorial(b) * factorial(b2),
    )
    acc = 0
    for i in range(r + 1):
        for k in range(s + 1):
            dp = sp.diff(p, x, r - i, y, i, X, s - k, Y, k)
            dq = sp.diff(q, x, i, y, r - i, X, k, Y, s - k)
            acc += (-1) ** (i + k) * comb(r, i) * comb(s, k) * dp * dq
    return sp.expand(pre * acc)


def grid(p, a, b):
    """Coefficient vector in the crate's row-major grid order."""
    poly = sp.Poly(p, x, y, X, Y) if p != 0 else None
    out = []
    for i in range(a + 1):
        for j in range(b + 1):
            c = poly.coeff_monomial(x ** (a - i) * y**i * X ** (b - j) * Y**j) if poly else 0
            out.append(str(sp.Rational(c)))
    return out


def basis(a, b):
    return [x ** (a - i) * y**i * X ** (b - j) * Y**j for i in range(a + 1) for j in range(b + 1)]


def right_slot(v, ab, ab2, r, s):
    target = (ab[0] + ab2[0] - 2 * r, ab[1] + ab2[1] - 2 * s)
    cols = [grid(bi_transvect(v, m, ab, ab2, r, s), *target) for m in basis(*ab2)]
    return sp.Matrix(cols).T.applyfunc(sp.Rational)


def stacked_left(ws, ab, ab2, r, s):
    target = (ab[0] + ab2[0] - 2 * r, ab[1] + ab2[1] - 2 * s)
    blocks = []
    for w in ws:
        cols = [grid(bi_transvect(m, w, ab, ab2, r, s), *target) for m in basis(*ab)]
        blocks.append(sp.Matrix(cols).T.applyfunc(sp.Rational))
    return sp.Matrix.vstack(*blocks)


def certificate(v, ws, ab, ab2, r, s):
    right = right_slot(v, ab, ab2, r, s)
    kernel = right.nullspace()
    wmat = sp.Matrix([[sp.Rational(c) for c in grid(w, *ab2)] for w in ws])
    # span{w} = ker T(v,.) iff stacking them does not raise the rank
    joint = sp.Matrix.vstack(wmat, sp.Matrix([list(k) for k in kernel])) if kernel else wmat
    return {
        "vanishing": all(bi_transvect(v, w, ab, ab2, r, s) == 0 for w in ws),
        "rank_w": wmat.rank(),
        "rank_iii": right.rank(),
        "kernel_dim": len(kernel),
        "kernel_equals_span": joint.rank() == wmat.rank() == len(kernel),
        "rank_iv": stacked_left(ws, ab, ab2, r, s).rank(),
    }


out = {}

# Group action by substitution (x, y) -> (x, y) M with M = [[1,1],[0,1]].
m = sp.Matrix([[1, 1], [0, 1]])
img = sp.Matrix([[x, y]]) * m
out["act_y"] = grid(sp.expand(y.subs({x: img[0], y: img[1]}, simultaneous=True)), 1, 0)

# Binary transvectant examples. Inputs are [X-exponent, Y-exponent]; outputs
# are coefficient lists indexed by the Y-exponent.
def bvec(f, d):
    p = sp.Poly(f, X, Y) if f != 0 else None
    return [str(p.coeff_monomial(X ** (d - i) * Y**i)) if p else "0" for i in range(d + 1)]


out["transvect"] = [
    {"f": [2, 0], "g": [0, 2], "r": 1, "out": bvec(transvect(X**2, Y**2, 2, 2, 1, X, Y), 2)},
    {"f": [2, 2], "g": [1, 1], "r": 2, "out": bvec(transvect(X**2 * Y**2, X * Y, 4, 2, 2, X, Y), 2)},
    {"f": [2, 2], "g": [1, 1], "r": 1, "out": bvec(transvect(X**2 * Y**2, X * Y, 4, 2, 1, X, Y), 4)},
    {"f": [1, 2], "g": [1, 1], "r": 1, "out": bvec(transvect(X * Y**2, X * Y, 3, 2, 1, X, Y), 3)},
    # apolar (d,i,e,j) = (2,1,1,0): T^(1)(X Y, X)
    {"f": [1, 1], "g": [1, 0], "r": 1, "out": bvec(transvect(X * Y, X, 2, 1, 1, X, Y), 1)},
]

# Exhaustive small table: every monomial pair with d <= 6, e <= d, all orders.
table = []
for d in range(7):
    for e in range(d + 1):
        for r in range(e + 1):
            for p in range(d + 1):
                for q in range(e + 1):
                    t = transvect(X**p * Y ** (d - p), X**q * Y ** (e - q), d, e, r, X, Y)
                    table.append([d, p, e, q, r, bvec(t, d + e - 2 * r)])
out["transvect_table"] = table

out["bi_transvect"] = grid(bi_transvect(x**2 * X**2, y**2 * Y**2, (2, 2), (2, 2), 1, 1), 2, 2)

# b = 5 certificate as printed (n = 1): T^(3,1) : V(3,5) x V(3,1) -> V(0,4).
v5 = 5 * X * Y**4 * x**3 + 30 * X**2 * Y**3 * x**2 * y + 30 * X**3 * Y**2 * x * y**2 + 5 * X**4 * Y * y**3
w5 = [Y * x**3 - X * x**2 * y, Y * x**2 * y - X * x * y**2, Y * x * y**2 - X * y**3]
out["b5"] = {"v": grid(v5, 3, 5), "ws": [grid(w, 3, 1) for w in w5], **certificate(v5, w5, (3, 5), (3, 1), 3, 1)}

# b = 7 certificate as printed: T^(2,3) : V(3,7) x V(3,3) -> V(2,4).
v7 = 35 * X**3 * Y**4 * x**3 - 9 * Y**7 * x**2 * y + 7 * X**6 * Y * x * y**2 + 35 * X**4 * Y**3 * y**3
w7 = [Y**3 * x**3 + X**3 * x * y**2 + (X * Y**2 + Y**3) * y**3]
out["b7"] = {"v": grid(v7, 3, 7), "ws": [grid(w, 3, 3) for w in w7], **certificate(v7, w7, (3, 7), (3, 3), 2, 3)}

# b = 9 second-slot vector as printed: w in V(1,7).
w9 = (X**7 + Y**7) * x + (X**5 * Y**2 + X**2 * Y**5) * y
out["b9_w"] = grid(w9, 1, 7)

# Kernel dimension of T(v, .) for a random integer v at b = 13, T^(3,2) : V(3,13) x V(3,3) -> V(0,12).
rng = random.Random(0)
v13 = sum(rng.randint(-10, 10) * mono for mono in basis(3, 13))
out["b13_generic_kernel_dim"] = len(right_slot(v13, (3, 13), (3, 3), 3, 2).nullspace())

out["moduli_dimension"] = {str(b): 4 * (b + 1) - 1 - 6 for b in (1, 5, 7)}

print(json.dumps(out, indent=1))
