"""Congruence transfer machinery for ternary forms.

R(g,d,a) is the set of residue vectors v in (Z/dZ)^3 with v M_g v^t = a
mod d.  A scaling isometry T satisfies T^t M_f T = d^2 M_g; a vector
v in R(g,d,a) is good when some scaling isometry maps it to 0 mod d, so
a representation of m by g in the class a mod d can be pushed down to a
representation by f.  B_f(g,d,a) collects the bad (non-good) vectors.
"""

from dataclasses import dataclass

import numpy as np

from .qforms import TernaryForm, q_eval, vectors_with_value, rep_bitmap, _det3, _mat_mul, _mat_t


@dataclass(frozen=True)
class ResidueSet:
    d: int
    members: tuple

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return tuple(x % self.d for x in v) in set(self.members)


def r_set(g, d, a):
    """All v in (Z/dZ)^3 with Q_g(v) = a mod d."""
    if d < 1:
        raise ValueError("modulus must be positive")
    gm = np.array(g.gram, dtype=np.int64)
    x = np.arange(d, dtype=np.int64)
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    q = (
        gm[0, 0] * X * X + gm[1, 1] * Y * Y + gm[2, 2] * Z * Z
        + 2 * (gm[0, 1] * X * Y + gm[0, 2] * X * Z + gm[1, 2] * Y * Z)
    ) % d
    mask = q == a % d
    members = tuple(
        (int(i), int(j), int(k)) for i, j, k in zip(X[mask], Y[mask], Z[mask])
    )
    return ResidueSet(d, tuple(sorted(members)))


def scaling_isometries(f, g, d):
    """All integer T with T^t M_f T = d^2 M_g, as row-tuple matrices."""
    mg = g.gram
    d2 = d * d
    cols = [vectors_with_value(f, d2 * mg[j][j]) for j in range(3)]
    if not all(cols):
        return []
    mf = np.array(f.gram, dtype=np.int64)
    c1 = np.array(cols[1], dtype=np.int64)
    c2 = np.array(cols[2], dtype=np.int64)
    out = []
    for t0 in cols[0]:
        w0 = mf @ np.array(t0, dtype=np.int64)
        m1 = c1 @ w0 == d2 * mg[0][1]
        if not m1.any():
            continue
        m2base = c2 @ w0 == d2 * mg[0][2]
        if not m2base.any():
            continue
        for t1 in c1[m1]:
            w1 = mf @ t1
            m2 = m2base & (c2 @ w1 == d2 * mg[1][2])
            for t2 in c2[m2]:
                t = tuple(
                    (int(t0[i]), int(t1[i]), int(t2[i])) for i in range(3)
                )
                out.append(t)
    return out


def _apply_mod(T, vecs, d):
    """Rows of vecs mapped by T, reduced mod d."""
    tm = np.array(T, dtype=np.int64)
    return (vecs @ tm.T) % d


def b_set(f, g, d, a):
    """Bad vectors B_f(g,d,a) = R(g,d,a) minus the good ones."""
    r = r_set(g, d, a)
    bad = np.array(r.members, dtype=np.int64).reshape(-1, 3)
    for T in scaling_isometries(f, g, d):
        if len(bad) == 0:
            break
        good = (_apply_mod(T, bad, d) == 0).all(axis=1)
        bad = bad[~good]
    members = tuple(sorted(tuple(int(x) for x in row) for row in bad))
    return ResidueSet(d, members)


def precedes(g, f, d, a):
    """Whether every vector of R(g,d,a) is good for the pair (f,g)."""
    return len(b_set(f, g, d, a)) == 0


def verify_good(f, g, d, a, bound):
    """Check the transfer: m = a mod d and m -> g imply m -> f, m <= bound."""
    fb = rep_bitmap(f, bound)
    gb = rep_bitmap(g, bound)
    m = np.arange(bound + 1)
    mask = (m % d == a % d) & gb & ~fb
    bad = [int(x) for x in m[mask]]
    return {"check": "good-transfer", "d": d, "a": a, "bound": bound,
            "counterexamples": bad, "ok": not bad}


@dataclass(frozen=True)
class PmeCertificate:
    t_matrix: tuple
    d: int
    a: int
    eigenvectors: tuple
    values: tuple
    ok: bool
    failures: tuple


def _mat_pow(T, n):
    out = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    base = T
    while n:
        if n & 1:
            out = _mat_mul(out, base)
        base = _mat_mul(base, base)
        n >>= 1
    return out


def _primitive_eigenvectors(T):
    """Primitive integer eigenvectors of T, one per +- pair."""
    tr = T[0][0] + T[1][1] + T[2][2]
    det = _det3(T)
    c2 = sum(
        T[i][i] * T[j][j] - T[i][j] * T[j][i]
        for i in range(3) for j in range(3) if i < j
    )

    def charpoly(lam):
        return lam ** 3 - tr * lam ** 2 + c2 * lam - det

    roots = set()
    for lam in _divisors_signed(det) + [0]:
        if charpoly(lam) == 0:
            roots.add(lam)
    out = []
    for lam in sorted(roots):
        a = tuple(
            tuple(T[i][j] - (lam if i == j else 0) for j in range(3))
            for i in range(3)
        )
        rows = [a[0], a[1], a[2]]
        kern = None
        for i in range(3):
            r1, r2 = rows[(i + 1) % 3], rows[(i + 2) % 3]
            cr = (
                r1[1] * r2[2] - r1[2] * r2[1],
                r1[2] * r2[0] - r1[0] * r2[2],
                r1[0] * r2[1] - r1[1] * r2[0],
            )
            if cr != (0, 0, 0):
                kern = cr
                break
        if kern is None:
            raise RuntimeError("eigenspace dimension exceeds one")
        g = 0
        for x in kern:
            g = _gcd(g, abs(x))
        kern = tuple(x // g for x in kern)
        for x in kern:
            if x != 0:
                if x < 0:
                    kern = tuple(-y for y in kern)
                break
        assert all(
            sum(a[i][j] * kern[j] for j in range(3)) == 0 for i in range(3)
        )
        if kern not in out:
            out.append(kern)
    return tuple(out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors_signed(n):
    n = abs(n)
    if n == 0:
        return []
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out += [i, -i, n // i, -(n // i)]
        i += 1
    return sorted(set(out))


def pme_certificate(T, g, d, a, f=None):
    """Check the three transfer conditions for T against g, with the bad
    set taken from the pair (f, g); f defaults to g."""
    if f is None:
        f = g
    T = tuple(tuple(int(x) for x in row) for row in T)
    failures = []
    d12 = d ** 12
    ident = tuple(tuple(d12 * (i == j) for j in range(3)) for i in range(3))
    if _mat_pow(T, 12) == ident:
        failures.append("finite-order")
    mg = g.gram
    lhs = _mat_mul(_mat_t(T), _mat_mul(mg, T))
    rhs = tuple(tuple(d * d * x for x in row) for row in mg)
    if lhs != rhs:
        failures.append("similitude")
    bad = b_set(f, g, d, a)
    for v in bad.members:
        img = tuple(sum(T[i][j] * v[j] for j in range(3)) % d for i in range(3))
        if img != (0, 0, 0):
            failures.append("bad-vector-%s-not-killed" % (v,))
    if failures:
        eig, values = (), ()
    else:
        eig = _primitive_eigenvectors(T)
        values = tuple(q_eval(g, z) for z in eig)
    return PmeCertificate(T, d, a, eig, values, not failures, tuple(failures))


def verify_pme(cert, f, g, d, a, bound):
    """Check the transfer with square exemptions: m = a mod d, m -> g, and
    m not of the form Q(z)*s^2 imply m -> f, for m <= bound."""
    if not cert.ok:
        raise ValueError("certificate invalid: %s" % (cert.failures,))
    fb = rep_bitmap(f, bound)
    gb = rep_bitmap(g, bound)
    exempt = np.zeros(bound + 1, dtype=bool)
    exempt[0] = True
    for q in cert.values:
        if q <= 0:
            continue
        s = 0
        while q * s * s <= bound:
            exempt[q * s * s] = True
            s += 1
    m = np.arange(bound + 1)
    mask = (m % d == a % d) & gb & ~exempt & ~fb
    bad = [int(x) for x in m[mask]]
    return {"check": "pme-transfer", "d": d, "a": a, "bound": bound,
            "counterexamples": bad, "ok": not bad}
