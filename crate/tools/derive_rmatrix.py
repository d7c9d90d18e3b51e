#!/usr/bin/env python3
"""Derive the braid R-matrices used by the engine and write them as JSON.

The 2^{mn}-dimensional Kac module of U_q[gl(m|n)] with highest weight
(0..0 | alpha..alpha) is built explicitly for (m, n) = (2, 1) and (1, 1).
The braiding is the unique element of the commutant of the coproduct that
satisfies the Yang-Baxter equation with eigenvalues {q^{-2a}.., -1, ..}; the
quantum-trace weights are the unique diagonal solution of the Markov
partial-trace condition. Everything is exact (sympy).

Usage: python3 tools/derive_rmatrix.py crates/core/data
"""
import json
import sys
import itertools

import sympy as sp

q, a, p, r = sp.symbols("q a p r", positive=True)


def qint(x):
    return (x - 1 / x) / (q - 1 / q)


class KacModule:
    """weights: list of (gl(m) part, offset k) where the gl(n) part is alpha + k."""

    def __init__(self, m, weights, parity, gens):
        self.m = m
        self.weights = weights
        self.parity = parity
        self.dim = len(weights)
        self.gens = gens  # list of (e, f, root, odd)

    def qpow(self, i, root):
        mu, k = self.weights[i]
        lin = sum(x * y for x, y in zip(mu, root[: self.m])) - k * root[self.m]
        return q ** lin * a ** (-root[self.m])

    def cartan(self, root):
        return sp.diag(*[self.qpow(i, root) for i in range(self.dim)])


def stensor(A, B, Bodd, P):
    return sp.kronecker_product(A * (P if Bodd else sp.eye(P.shape[0])), B)


def commutant(mod):
    d = mod.dim
    P = sp.diag(*[(-1) ** s for s in mod.parity])
    gens = []
    for e, f, root, odd in mod.gens:
        k = mod.cartan(root)
        lhs = e * f + (f * e if odd else -f * e)
        assert (lhs - (k - k.inv()) / (q - 1 / q)).applyfunc(sp.simplify).is_zero_matrix
        De = stensor(e, k, False, P) + stensor(sp.eye(d), e, odd, P)
        Df = stensor(f, sp.eye(d), False, P) + stensor(k.inv(), f, odd, P)
        gens += [De, Df]
    for i in range(mod.m + 1):
        root = [0] * (mod.m + 1)
        root[i] = 1
        k = mod.cartan(root)
        gens.append(sp.kronecker_product(k, k))
    X = sp.Matrix(d * d, d * d, lambda i, j: sp.Symbol(f"x_{i}_{j}"))
    eqs = []
    for g in gens:
        eqs += [sp.together(e) for e in (X * g - g * X) if e != 0]
    sol = sp.solve(eqs, list(X), dict=True)[0]
    Xs = X.subs(sol)
    free = sorted(Xs.free_symbols - {q, a}, key=str)
    return Xs, free


def primitive_projectors(Xs, free):
    eqs = [sp.numer(sp.together(e)) for e in (Xs * Xs - Xs) if e != 0]
    projs = []
    for s in sp.solve(eqs, free, dict=True):
        M = Xs.subs(s).applyfunc(sp.simplify)
        projs.append(M)
    projs = [M for M in projs if not M.is_zero_matrix]
    # primitive = not expressible as a sum of two others
    ranks = {i: M.rank() for i, M in enumerate(projs)}
    n = Xs.shape[0]
    prim = []
    for i, M in enumerate(projs):
        if ranks[i] == n:
            continue
        if not any(
            (projs[j] + projs[k] - M).applyfunc(sp.simplify).is_zero_matrix
            for j, k in itertools.combinations(range(len(projs)), 2)
            if j != i and k != i
        ):
            prim.append(M)
    return prim


def ybe_holds(R, d, vals):
    Rn = R.subs(vals)
    I = sp.eye(d)
    A = sp.kronecker_product(Rn, I)
    B = sp.kronecker_product(I, Rn)
    return (A * B * A - B * A * B).is_zero_matrix


def find_braiding(prim, d):
    """Search eigenvalue assignments for a Yang-Baxter solution."""
    cands = [a ** 2, (a * q) ** -2, sp.Integer(-1), a ** -2, (a * q) ** 2, sp.Integer(1)]
    vals = {q: sp.Rational(3, 7), a: sp.Rational(5, 11)}
    for lam in itertools.permutations(cands, len(prim)):
        R = sum((l * P for l, P in zip(lam, prim)), sp.zeros(d * d, d * d))
        R = R.applyfunc(sp.factor)
        if any(sp.denom(sp.together(e)).free_symbols - {q, a} for e in R):
            continue
        if not all(sp.Poly(sp.denom(sp.factor(e)), q, a).is_monomial for e in R if e != 0):
            continue
        if ybe_holds(R, d, vals) and not (R - sp.eye(d * d)).is_zero_matrix:
            Ri = sum((sp.Integer(1) / l * P for l, P in zip(lam, prim)), sp.zeros(d * d, d * d)).applyfunc(sp.factor)
            return R, Ri, lam
    raise RuntimeError("no braiding found")


def markov_weights(R, Ri, d):
    """Diagonal weights mu and a twist t with ptr_2((R/t)(1 x mu)) = ptr_2((t Ri)(1 x mu)) = 1."""
    m = sp.symbols(f"m0:{d}")
    c = sp.Symbol("c")

    def ptr(X):
        return sp.Matrix(d, d, lambda i, k: sum(X[d * i + j, d * k + j] * m[j] for j in range(d)))

    sol = sp.solve([sp.together(e) for e in (ptr(R) - c * sp.eye(d))] + [m[0] - 1], list(m) + [c], dict=True)[0]
    mu0 = [sol[x] for x in m]
    c1 = sp.simplify(sol[c])
    T2 = ptr(Ri).subs(dict(zip(m, mu0))).applyfunc(sp.simplify)
    c2 = sp.simplify(T2[0, 0])
    assert (T2 - c2 * sp.eye(d)).applyfunc(sp.simplify).is_zero_matrix
    t = sp.simplify(sp.sqrt(c1 / c2))
    k = sp.simplify(t / c1)
    return [sp.factor(k * x) for x in mu0], t


def to_qp(expr):
    """Rewrite a Laurent polynomial in (q, a, Y) with a = p q^{-1/2}, q = r^2.

    Returns a dict {(2*e_p, 2*e_q): coeff} keyed by doubled exponents (here
    e_p is always integral, e_q possibly half-integral)."""
    e = sp.expand(sp.simplify(expr.subs(a, p / r).subs(q, r ** 2)))
    e = sp.expand(e)
    out = {}
    for term in sp.Add.make_args(e):
        c, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        ep = powers.get(p, 0)
        er = powers.get(r, 0)
        others = set(powers) - {p, r, sp.S.One}
        assert not others, (expr, term)
        assert c.is_integer, (expr, term)
        key = (int(2 * ep), int(er))
        out[key] = out.get(key, 0) + int(c)
    return {k: v for k, v in out.items() if v != 0}


def poly_json(d):
    def fmt(x2):
        return x2 // 2 if x2 % 2 == 0 else x2 / 2

    items = sorted(d.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    return [[fmt(ep2), fmt(eq2), str(c)] for (ep2, eq2), c in items]


def gauge_split(value, factor_exp):
    """value * [alpha]^{-e1/2} [alpha+1]^{-e2/2}; returns (base, radical)."""
    e1, e2 = factor_exp
    s1 = qint(a)
    s2 = qint(a * q)
    if e1 % 2 == 0 and e2 % 2 == 0:
        return sp.simplify(value * s1 ** sp.Rational(-e1, 2) * s2 ** sp.Rational(-e2, 2)), 0
    if e1 % 2 != 0 and e2 % 2 != 0:
        # sqrt([a][a+1]) = Y / (q - 1/q)
        base = value * s1 ** sp.Rational(-e1 - 1, 2) * s2 ** sp.Rational(-e2 - 1, 2) / (q - 1 / q)
        return 0, sp.simplify(base)
    raise RuntimeError("unpaired square root in gauge")


def emit(label, d, R, Ri, mu, gauge, disc):
    def entries(M):
        out = []
        for row in range(d * d):
            for col in range(d * d):
                v = M[row, col]
                if v == 0:
                    continue
                o1, o2 = divmod(row, d)
                i1, i2 = divmod(col, d)
                ge = [gauge[i1][k] + gauge[i2][k] - gauge[o1][k] - gauge[o2][k] for k in range(2)]
                base, rad = gauge_split(v, ge)
                out.append([o1, o2, i1, i2, poly_json(to_qp(base)) if base != 0 else [],
                            poly_json(to_qp(rad)) if rad != 0 else []])
        return out

    return {
        "label": label,
        "dim": d,
        "discriminant": poly_json(to_qp(disc)),
        "r": entries(R),
        "r_inv": entries(Ri),
        "mu": [[poly_json(to_qp(m)), []] for m in mu],
    }


def lg21():
    W = [((0, 0), 0), ((0, -1), 1), ((-1, 0), 1), ((-1, -1), 2)]
    Z = lambda: sp.zeros(4, 4)
    e1, f1, e2, f2 = Z(), Z(), Z(), Z()
    f2[1, 0] = 1
    f1[2, 1] = 1
    f2[3, 2] = 1
    e2[0, 1] = qint(a)
    e1[1, 2] = 1
    e2[2, 3] = qint(a * q)
    mod = KacModule(2, W, [0, 1, 1, 0], [(e1, f1, (1, -1, 0), False), (e2, f2, (0, 1, -1), True)])
    Xs, free = commutant(mod)
    prim = primitive_projectors(Xs, free)
    R, Ri, lam = find_braiding(prim, 4)
    mu, t = markov_weights(R, Ri, 4)
    R, Ri = (R / t).applyfunc(sp.factor), (Ri * t).applyfunc(sp.factor)
    # symmetric gauge: v2, v3 scaled by [alpha]^{-1/2}; v4 by ([alpha][alpha+1])^{-1/2}
    gauge = [(0, 0), (1, 0), (1, 0), (1, 1)]
    disc = (a - 1 / a) * (a * q - 1 / (a * q))
    return emit("LG21", 4, R, Ri, mu, gauge, disc)


def lg11():
    W = [((0,), 0), ((-1,), 1)]
    e, f = sp.zeros(2, 2), sp.zeros(2, 2)
    f[1, 0] = 1
    e[0, 1] = qint(a)
    mod = KacModule(1, W, [0, 1], [(e, f, (1, -1), True)])
    Xs, free = commutant(mod)
    prim = primitive_projectors(Xs, free)
    R, Ri, lam = find_braiding(prim, 2)
    mu, t = markov_weights(R, Ri, 2)
    R, Ri = (R / t).applyfunc(sp.factor), (Ri * t).applyfunc(sp.factor)
    gauge = [(0, 0), (0, 0)]
    # LG11 variables: p = q^alpha (no half shift), so substitute back a -> p, and
    # express via a = p q^{-1/2} convention by pre-multiplying
    return R, Ri, mu, gauge


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    with open(f"{outdir}/lg21.json", "w") as fh:
        json.dump(lg21(), fh, indent=1)
        fh.write("\n")
    R, Ri, mu, gauge = lg11()
    # for gl(1|1), p = q^alpha: rewrite a -> p q^{1/2} before the common substitution
    R = R.subs(a, a * sp.sqrt(q)).applyfunc(sp.simplify)
    Ri = Ri.subs(a, a * sp.sqrt(q)).applyfunc(sp.simplify)
    mu = [sp.simplify(m.subs(a, a * sp.sqrt(q))) for m in mu]
    disc = sp.Integer(1)
    with open(f"{outdir}/lg11.json", "w") as fh:
        json.dump(emit("LG11", 2, R, Ri, mu, gauge, disc), fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
