"""Entry-by-entry axiom checks on dense structure constants.

These only index into the raw tables and add/multiply scalars, so they share no
code path with the library's matrix-level invariant suites.
"""

import itertools


def dense(M):
    return [list(r) for r in M.rows]


class Scalars:
    def __init__(self, field):
        self.f = field

    def zero(self, x) -> bool:
        return self.f.reduce(x) == 0

    def eq(self, x, y) -> bool:
        return self.zero(x - y)

    def vec_eq(self, u, v) -> bool:
        return all(self.eq(a, b) for a, b in zip(u, v))


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def _apply(m, v):
    return [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m))]


def _compose(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


# algebras -----------------------------------------------------------------------

def product_table(mult, n):
    """t[i][j] = coefficients of e_i e_j."""
    m = dense(mult)
    return [[[m[k][i * n + j] for k in range(n)] for j in range(n)] for i in range(n)]


def times(t, x, y):
    n = len(x)
    out = [0] * n
    for i in range(n):
        if x[i]:
            for j in range(n):
                if y[j]:
                    for k in range(n):
                        out[k] += x[i] * y[j] * t[i][j][k]
    return out


def algebra_ok(field, n, mult, unit) -> bool:
    S = Scalars(field)
    t = product_table(mult, n)
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for x, y, z in itertools.product(basis, repeat=3):
        if not S.vec_eq(times(t, times(t, x, y), z), times(t, x, times(t, y, z))):
            return False
    u = list(unit)
    return all(S.vec_eq(times(t, u, x), x) and S.vec_eq(times(t, x, u), x) for x in basis)


def is_commutative(field, n, mult) -> bool:
    S = Scalars(field)
    t = product_table(mult, n)
    return all(S.vec_eq(t[i][j], t[j][i]) for i in range(n) for j in range(n))


# coalgebras ---------------------------------------------------------------------

def coproduct_table(comult, n):
    """d[i][(j, k)] = coefficient of e_j (x) e_k in Delta(e_i)."""
    d = dense(comult)
    return [{(j, k): d[j * n + k][i] for j in range(n) for k in range(n) if d[j * n + k][i]} for i in range(n)]


def coalgebra_ok(field, n, comult, counit) -> bool:
    S = Scalars(field)
    d = coproduct_table(comult, n)
    e = dense(counit)[0]
    for i in range(n):
        left, right = {}, {}
        for (j, k), c in d[i].items():
            for (a, b), c2 in d[j].items():
                left[(a, b, k)] = left.get((a, b, k), 0) + c * c2
            for (a, b), c2 in d[k].items():
                right[(j, a, b)] = right.get((j, a, b), 0) + c * c2
        if any(not S.eq(left.get(key, 0), right.get(key, 0)) for key in set(left) | set(right)):
            return False
        for r in range(n):
            lc = sum(c * e[j] for (j, k), c in d[i].items() if k == r)
            rc = sum(c * e[k] for (j, k), c in d[i].items() if j == r)
            want = 1 if r == i else 0
            if not (S.eq(lc, want) and S.eq(rc, want)):
                return False
    return True


def bialgebra_ok(field, n, mult, unit, comult, counit) -> bool:
    if not (algebra_ok(field, n, mult, unit) and coalgebra_ok(field, n, comult, counit)):
        return False
    S = Scalars(field)
    t = product_table(mult, n)
    d = coproduct_table(comult, n)
    e = dense(counit)[0]

    def delta(x):
        out = {}
        for i in range(n):
            if x[i]:
                for key, c in d[i].items():
                    out[key] = out.get(key, 0) + x[i] * c
        return out

    def eps(x):
        return sum(e[i] * x[i] for i in range(n))

    def mult_pairs(p, q):
        out = {}
        for (a, b), c in p.items():
            for (a2, b2), c2 in q.items():
                x, y = t[a][a2], t[b][b2]
                for k in range(n):
                    for l in range(n):
                        if x[k] and y[l]:
                            out[(k, l)] = out.get((k, l), 0) + c * c2 * x[k] * y[l]
        return out

    for i in range(n):
        for j in range(n):
            lhs = delta(t[i][j])
            rhs = mult_pairs(d[i], d[j])
            if any(not S.eq(lhs.get(k, 0), rhs.get(k, 0)) for k in set(lhs) | set(rhs)):
                return False
            if not S.eq(eps(t[i][j]), e[i] * e[j]):
                return False
    u = list(unit)
    du = delta(u)
    uu = {(a, b): u[a] * u[b] for a in range(n) for b in range(n) if u[a] and u[b]}
    if any(not S.eq(du.get(k, 0), uu.get(k, 0)) for k in set(du) | set(uu)):
        return False
    return S.eq(eps(u), 1)


def antipode_ok(field, n, mult, unit, comult, counit, S_mat) -> bool:
    Sc = Scalars(field)
    t = product_table(mult, n)
    d = coproduct_table(comult, n)
    e = dense(counit)[0]
    s = dense(S_mat)
    col = [[s[r][c] for r in range(n)] for c in range(n)]
    for i in range(n):
        left, right = [0] * n, [0] * n
        for (j, k), c in d[i].items():
            ek = [1 if r == k else 0 for r in range(n)]
            ej = [1 if r == j else 0 for r in range(n)]
            left = [a + c * b for a, b in zip(left, times(t, col[j], ek))]
            right = [a + c * b for a, b in zip(right, times(t, ej, col[k]))]
        want = [e[i] * x for x in unit]
        if not (Sc.vec_eq(left, want) and Sc.vec_eq(right, want)):
            return False
    return True


# comodule algebras ----------------------------------------------------------------

def comodule_algebra_ok(CA, nu) -> bool:
    """Left H-comodule algebra axioms for ``nu`` plus B inside the coinvariants."""
    f = CA.field
    S = Scalars(f)
    H, A = CA.H, CA.A
    h, a = H.dim, A.dim
    v = dense(nu)
    tH = product_table(H.mult, h)
    tA = product_table(A.mult, a)
    dH = coproduct_table(H.comult, h)
    eH = dense(H.counit)[0]

    def coact(x):
        """nu(x) as {(hi, ai): c}."""
        out = {}
        for i in range(a):
            if x[i]:
                for hi in range(h):
                    for ai in range(a):
                        c = v[hi * a + ai][i]
                        if c:
                            out[(hi, ai)] = out.get((hi, ai), 0) + x[i] * c
        return out

    def same(p, q):
        return all(S.eq(p.get(k, 0), q.get(k, 0)) for k in set(p) | set(q))

    basis = [[1 if i == j else 0 for j in range(a)] for i in range(a)]
    for x in basis:
        nx = coact(x)
        lhs, rhs = {}, {}
        for (hi, ai), c in nx.items():
            for (p, q), c2 in dH[hi].items():
                lhs[(p, q, ai)] = lhs.get((p, q, ai), 0) + c * c2
            for (hj, aj), c2 in coact(basis[ai]).items():
                rhs[(hi, hj, aj)] = rhs.get((hi, hj, aj), 0) + c * c2
        if not same(lhs, rhs):
            return False
        counit = [0] * a
        for (hi, ai), c in nx.items():
            counit[ai] += eH[hi] * c
        if not S.vec_eq(counit, x):
            return False
        for y in basis:
            prod = {}
            for (h1, a1), c1 in nx.items():
                for (h2, a2), c2 in coact(y).items():
                    hp, ap = tH[h1][h2], tA[a1][a2]
                    for k in range(h):
                        for l in range(a):
                            if hp[k] and ap[l]:
                                prod[(k, l)] = prod.get((k, l), 0) + c1 * c2 * hp[k] * ap[l]
            if not same(coact(times(tA, x, y)), prod):
                return False
    u1 = {(k, l): H.alg.unit[k] * A.unit[l] for k in range(h) for l in range(a) if H.alg.unit[k] and A.unit[l]}
    if not same(coact(list(A.unit)), u1):
        return False
    emb = dense(CA.Binc.embed)
    for j in range(CA.B.dim):
        b = [emb[i][j] for i in range(a)]
        want = {(k, l): H.alg.unit[k] * b[l] for k in range(h) for l in range(a) if H.alg.unit[k] and b[l]}
        if not same(coact(b), want):
            return False
    return True


# Hopf modules ---------------------------------------------------------------------

def hopf_module_ok(N, action, coaction) -> bool:
    CA, Z = N.CA, N.Z
    f = CA.field
    S = Scalars(f)
    A, H = CA.A, CA.H
    a, h, z, n = A.dim, H.dim, Z.dim, N.dim
    L = dense(action)
    zeta = dense(coaction)
    nu = dense(CA.nu)
    zact = dense(Z.action)
    dZ = coproduct_table(Z.Z.comult, z)
    eZ = dense(Z.Z.counit)[0]
    tA = product_table(A.mult, a)

    def act(x, m):
        out = [0] * n
        for i in range(a):
            for j in range(n):
                if x[i] and m[j]:
                    for k in range(n):
                        out[k] += x[i] * m[j] * L[k][i * n + j]
        return out

    def co(m):
        out = {}
        for j in range(n):
            if m[j]:
                for zi in range(z):
                    for k in range(n):
                        c = zeta[zi * n + k][j]
                        if c:
                            out[(zi, k)] = out.get((zi, k), 0) + m[j] * c
        return out

    def same(p, q):
        return all(S.eq(p.get(k, 0), q.get(k, 0)) for k in set(p) | set(q))

    ea = [[1 if i == j else 0 for j in range(a)] for i in range(a)]
    em = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for x, y, m in itertools.product(ea, ea, em):
        if not S.vec_eq(act(times(tA, x, y), m), act(x, act(y, m))):
            return False
    if not all(S.vec_eq(act(list(A.unit), m), m) for m in em):
        return False
    for m in em:
        cm = co(m)
        lhs, rhs = {}, {}
        for (zi, k), c in cm.items():
            for (p, q), c2 in dZ[zi].items():
                lhs[(p, q, k)] = lhs.get((p, q, k), 0) + c * c2
            for (zj, l), c2 in co(em[k]).items():
                rhs[(zi, zj, l)] = rhs.get((zi, zj, l), 0) + c * c2
        if not same(lhs, rhs):
            return False
        back = [0] * n
        for (zi, k), c in cm.items():
            back[k] += eZ[zi] * c
        if not S.vec_eq(back, m):
            return False
        for i in range(a):
            # zeta(e_i m) = sum (e_i)_-1 . z (x) (e_i)_0 . m'
            want = {}
            for hi in range(h):
                for ai in range(a):
                    c = nu[hi * a + ai][i]
                    if not c:
                        continue
                    for (zi, k), c2 in cm.items():
                        zz = [zact[r][hi * z + zi] for r in range(z)]
                        mm = act(ea[ai], em[k])
                        for r in range(z):
                            for s in range(n):
                                if zz[r] and mm[s]:
                                    want[(r, s)] = want.get((r, s), 0) + c * c2 * zz[r] * mm[s]
            if not same(co(act(ea[i], m)), want):
                return False
    return True


# group actions and cocycles ---------------------------------------------------------

def action_ok(act, maps) -> bool:
    G, A = act.G, act.A
    S = Scalars(A.field)
    n = A.dim
    t = product_table(A.mult, n)
    ms = [dense(m) for m in maps]
    if not is_commutative(A.field, n, A.mult):
        return False
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for g in G.elements():
        m = ms[g]
        if S.zero(_det(m)):
            return False
        for x, y in itertools.product(basis, repeat=2):
            if not S.vec_eq(_apply(m, times(t, x, y)), times(t, _apply(m, x), _apply(m, y))):
                return False
        if not S.vec_eq(_apply(m, list(A.unit)), list(A.unit)):
            return False
        for k in G.elements():
            comp = _compose(m, ms[k])
            if not all(S.vec_eq(r1, r2) for r1, r2 in zip(comp, ms[G.mul(g, k)])):
                return False
    ident = ms[G.identity]
    return all(S.eq(ident[i][j], 1 if i == j else 0) for i in range(n) for j in range(n))


def cocycle_ok(phi, values) -> bool:
    """phi(1) = id, each value an A-linear automorphism, phi(fg) = phi(f) T_f phi(g) T_f^-1."""
    N = phi.N
    G = N.act.G
    A = N.act.A
    S = Scalars(A.field)
    n, a = N.dim, A.dim
    L = dense(N.carrier.left)
    vs = [dense(v) for v in values]
    T = [dense(t) for t in N.T]

    def matrix_eq(x, y):
        return all(S.eq(x[i][j], y[i][j]) for i in range(len(x)) for j in range(len(x[0])))

    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if not matrix_eq(vs[G.identity], eye):
        return False
    for g in G.elements():
        v = vs[g]
        if S.zero(_det(v)):
            return False
        for i in range(a):
            Li = [[L[r][i * n + c] for c in range(n)] for r in range(n)]
            if not matrix_eq(_compose(v, Li), _compose(Li, v)):
                return False
    for f_, g in itertools.product(G.elements(), repeat=2):
        rhs = _compose(_compose(vs[f_], T[f_]), _compose(vs[g], T[G.inverse[f_]]))
        if not matrix_eq(vs[G.mul(f_, g)], rhs):
            return False
    return True
