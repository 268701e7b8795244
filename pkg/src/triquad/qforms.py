"""Positive definite integral ternary quadratic forms.

Gram matrices are integer symmetric 3x3; Q(v) = v M v^t.  Provides exact
evaluation, canonical reduction, isometry testing with a transform witness,
enumeration of reduced forms by determinant, genus splitting via local
congruence-count fingerprints, and bounded representability bitmaps.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

ENUM_DET_CEILING = 10 ** 5
SHORT_VECTOR_CAP = 10 ** 4


@dataclass(frozen=True)
class TernaryForm:
    """Integer symmetric positive definite 3x3 Gram matrix."""

    gram: tuple

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        if len(g) != 3 or any(len(r) != 3 for r in g):
            raise ValueError("gram must be 3x3")
        for i in range(3):
            for j in range(3):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram must be symmetric")
        if not _positive_definite(g):
            raise ValueError("gram must be positive definite")

    @classmethod
    def diagonal(cls, a, b, c):
        return cls(((a, 0, 0), (0, b, 0), (0, 0, c)))

    def q(self, v):
        return q_eval(self, v)

    @property
    def det(self):
        return _det3(self.gram)

    @property
    def adjugate(self):
        return _adj3(self.gram)

    def __str__(self):
        g = self.gram
        if all(g[i][j] == 0 for i in range(3) for j in range(3) if i != j):
            return "<%d,%d,%d>" % (g[0][0], g[1][1], g[2][2])
        return str([list(r) for r in g])


def _det3(g):
    return (
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
    )


def _adj3(g):
    c = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            s = [k for k in range(3) if k != i]
            minor = g[r[0]][s[0]] * g[r[1]][s[1]] - g[r[0]][s[1]] * g[r[1]][s[0]]
            c[i][j] = minor if (i + j) % 2 == 0 else -minor
    return tuple(tuple(row) for row in c)


def _positive_definite(g):
    if g[0][0] <= 0:
        return False
    if g[0][0] * g[1][1] - g[0][1] * g[1][0] <= 0:
        return False
    return _det3(g) > 0


def q_eval(f, v):
    """Quadratic value v M_f v^t."""
    g = f.gram if isinstance(f, TernaryForm) else f
    x, y, z = v
    return (
        g[0][0] * x * x + g[1][1] * y * y + g[2][2] * z * z
        + 2 * (g[0][1] * x * y + g[0][2] * x * z + g[1][2] * y * z)
    )


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def _mat_t(a):
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def _transform_gram(g, u):
    """U^t G U for column-vector basis matrix U."""
    return _mat_mul(_mat_t(u), _mat_mul(g, u))


def _unimodular_inverse(u):
    d = _det3(u)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    adj = _adj3(_mat_t(u))
    inv = _mat_t(adj)
    if d == -1:
        inv = tuple(tuple(-x for x in row) for row in inv)
    return inv


_IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _size_reduce(g):
    """Greedy diagonal/size reduction; returns (gram, U) with U^t g U = gram."""
    g0 = tuple(tuple(r) for r in g)
    g = [list(r) for r in g0]
    u = [list(r) for r in _IDENTITY]

    def recompute():
        nonlocal g
        ut = tuple(tuple(r) for r in u)
        g = [list(r) for r in _transform_gram(g0, ut)]

    for _ in range(100):
        changed = False
        # sort columns by diagonal
        order = sorted(range(3), key=lambda j: g[j][j])
        if order != [0, 1, 2]:
            u = [[u[r][j] for j in order] for r in range(3)]
            recompute()
            changed = True
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                if g[i][i] == 0:
                    continue
                t = -round(g[i][j] / g[i][i])
                if t != 0:
                    for r in range(3):
                        u[r][j] += t * u[r][i]
                    recompute()
                    changed = True
        if not changed:
            break
    return tuple(tuple(r) for r in g), tuple(tuple(r) for r in u)


def _short_vectors(g, bound):
    """All nonzero v with q_eval(g, v) <= bound, cap-limited."""
    det = _det3(g)
    adj = _adj3(g)
    lims = []
    for i in range(3):
        lim = 0
        while (lim + 1) * (lim + 1) * det <= bound * adj[i][i]:
            lim += 1
        lims.append(lim)
    out = []
    for x in range(-lims[0], lims[0] + 1):
        for y in range(-lims[1], lims[1] + 1):
            for z in range(-lims[2], lims[2] + 1):
                if x == 0 and y == 0 and z == 0:
                    continue
                if q_eval(g, (x, y, z)) <= bound:
                    out.append((x, y, z))
                    if len(out) > SHORT_VECTOR_CAP:
                        raise RuntimeError("short-vector enumeration cap exceeded")
    out.sort(key=lambda v: (q_eval(g, v), v))
    return out


def _successive_minima(g, cands):
    """(m1, m2, m3) from a Q-sorted candidate list."""
    chosen = []
    minima = []
    for v in cands:
        if not chosen:
            chosen.append(v)
            minima.append(q_eval(g, v))
            continue
        if len(chosen) == 1:
            a = chosen[0]
            cross = (
                a[1] * v[2] - a[2] * v[1],
                a[2] * v[0] - a[0] * v[2],
                a[0] * v[1] - a[1] * v[0],
            )
            if cross != (0, 0, 0):
                chosen.append(v)
                minima.append(q_eval(g, v))
        elif len(chosen) == 2:
            if _det3((chosen[0], chosen[1], v)) != 0:
                chosen.append(v)
                minima.append(q_eval(g, v))
                break
    if len(minima) != 3:
        raise RuntimeError("could not find three independent short vectors")
    return tuple(minima)


def _canonical_key(gram):
    g = gram
    return (g[0][0], g[1][1], g[2][2], -g[0][1], -g[0][2], -g[1][2])


@lru_cache(maxsize=None)
def _canonicalize(gram):
    """Canonical gram per isometry class plus a witness basis U."""
    pre, u_pre = _size_reduce(gram)
    bound = max(pre[0][0], pre[1][1], pre[2][2])
    cands = _short_vectors(pre, bound)
    m1, m2, m3 = _successive_minima(pre, cands)
    by_value = {}
    for v in cands:
        by_value.setdefault(q_eval(pre, v), []).append(v)
    a1 = by_value[m1]
    a2 = by_value[m2]
    values = sorted(q for q in by_value if q >= m3)
    best = None
    best_u = None
    for q3 in values:
        a3 = by_value[q3]
        for v1 in a1:
            for v2 in a2:
                for v3 in a3:
                    basis = tuple(zip(v1, v2, v3))
                    if _det3(basis) not in (1, -1):
                        continue
                    cand = _transform_gram(pre, basis)
                    if best is None or _canonical_key(cand) < _canonical_key(best):
                        best = cand
                        best_u = basis
        if best is not None:
            break
    if best is None:
        raise RuntimeError("no unimodular basis found among short vectors")
    u = _mat_mul(u_pre, best_u)
    if best == gram:
        u = _IDENTITY
    return best, u


def reduce_form(f):
    """Canonical reduced equivalent of f with witness U^t M_f U = reduced."""
    gram, u = _canonicalize(f.gram)
    return TernaryForm(gram), u


def isometry_witness(f, g):
    """Unimodular U with U^t M_f U = M_g, or None."""
    cf, uf = _canonicalize(f.gram)
    cg, ug = _canonicalize(g.gram)
    if cf != cg:
        return None
    u = _mat_mul(uf, _unimodular_inverse(ug))
    assert _transform_gram(f.gram, u) == g.gram
    return u


def is_isometric(f, g):
    return isometry_witness(f, g) is not None


def vectors_with_value(f, m):
    """All integer vectors v with Q_f(v) = m."""
    if m < 0:
        return []
    if m == 0:
        return [(0, 0, 0)]
    g = f.gram
    det = _det3(g)
    adj = _adj3(g)
    lims = []
    for i in range(2):
        lim = 0
        while (lim + 1) * (lim + 1) * det <= m * adj[i][i]:
            lim += 1
        lims.append(lim)
    a, b, c = g[0][0], g[1][1], g[2][2]
    d, e, h = g[0][1], g[0][2], g[1][2]
    out = []
    for x in range(-lims[0], lims[0] + 1):
        for y in range(-lims[1], lims[1] + 1):
            # c z^2 + 2(e x + h y) z + (a x^2 + 2 d x y + b y^2 - m) = 0
            bb = e * x + h * y
            cc = a * x * x + 2 * d * x * y + b * y * y - m
            disc = bb * bb - c * cc
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc:
                continue
            for sign in ((s,) if s == 0 else (s, -s)):
                num = -bb + sign
                if num % c == 0:
                    out.append((x, y, num // c))
    out.sort()
    return out


def represents_form(f, m):
    """Whether f represents m over the integers."""
    if m < 0:
        return False
    return bool(vectors_with_value(f, m))


_BITMAP_CACHE = {}


def rep_bitmap(f, bound):
    """Boolean array b with b[n] = (f represents n), for 0 <= n <= bound."""
    key = (f.gram, bound)
    hit = _BITMAP_CACHE.get(key)
    if hit is not None:
        return hit
    g = f.gram
    det = _det3(g)
    adj = _adj3(g)
    lims = []
    for i in range(3):
        lim = 0
        while (lim + 1) * (lim + 1) * det <= bound * adj[i][i]:
            lim += 1
        lims.append(lim)
    a, b, c = g[0][0], g[1][1], g[2][2]
    d, e, h = g[0][1], g[0][2], g[1][2]
    y = np.arange(-lims[1], lims[1] + 1, dtype=np.int64)
    z = np.arange(-lims[2], lims[2] + 1, dtype=np.int64)
    yz = (
        b * y[:, None] * y[:, None]
        + c * z[None, :] * z[None, :]
        + 2 * h * y[:, None] * z[None, :]
    )
    lin = 2 * (d * y[:, None] + e * z[None, :])
    bitmap = np.zeros(bound + 1, dtype=bool)
    for x in range(lims[0] + 1):
        vals = yz + x * lin + a * x * x
        vals = vals[(vals >= 0) & (vals <= bound)]
        bitmap[vals] = True
    _BITMAP_CACHE[key] = bitmap
    return bitmap


@lru_cache(maxsize=None)
def enumerate_reduced(det):
    """One canonical form per isometry class among ternary forms of this
    determinant, complete via Minkowski reduction bounds."""
    if det <= 0:
        raise ValueError("determinant must be positive")
    if det > ENUM_DET_CEILING:
        raise ValueError("determinant exceeds enumeration ceiling")
    seen = set()
    out = []
    a = 1
    while a * a * a <= 2 * det:
        b = a
        while a * b * b <= 2 * det:
            for g12 in range(-(a // 2), a // 2 + 1):
                denom = a * b - g12 * g12
                if denom <= 0:
                    continue
                for g13 in range(-(a // 2), a // 2 + 1):
                    for g23 in range(-(b // 2), b // 2 + 1):
                        num = det + a * g23 * g23 + b * g13 * g13 \
                            - 2 * g12 * g13 * g23
                        if num % denom != 0:
                            continue
                        c = num // denom
                        if c < b:
                            continue
                        gram = ((a, g12, g13), (g12, b, g23), (g13, g23, c))
                        if _det3(gram) != det or not _positive_definite(gram):
                            continue
                        canon, _ = _canonicalize(gram)
                        if canon not in seen:
                            seen.add(canon)
                            out.append(TernaryForm(canon))
            b += 1
        a += 1
    out.sort(key=lambda fm: fm.gram)
    return out


def _p_val(n, p, cap):
    if n % (p ** cap) == 0:
        return cap
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _block_diagonalize(gram, p, prec):
    """Split the form into 1x1 and 2x2 blocks by a transform invertible
    over Z_p, working mod p^prec.  Returns a list of blocks."""
    pK = p ** prec
    g = [[x % pK for x in row] for row in gram]
    idx = [0, 1, 2]

    def val(x):
        return _p_val(x, p, prec) if x % pK != 0 else prec

    def inv_unit(u):
        return pow(u, -1, pK)

    blocks = []
    while idx:
        n = len(idx)
        if n == 1:
            blocks.append(("one", g[idx[0]][idx[0]] % pK))
            break
        entries = [(val(g[i][j]), i, j) for i in idx for j in idx if i <= j]
        vmin = min(e[0] for e in entries)
        if vmin >= prec:
            # degenerate to working precision; emit remaining diagonals
            for i in idx:
                blocks.append(("one", g[i][i] % pK))
            break
        diag_hits = [i for i in idx if val(g[i][i]) == vmin]
        if not diag_hits and p != 2:
            # push the minimum onto the diagonal and re-scan
            bi, bj = next((i, j) for v, i, j in entries if v == vmin and i != j)
            for sign in (1, -1):
                cand = g[bi][bi] + 2 * sign * g[bi][bj] + g[bj][bj]
                if val(cand) == vmin:
                    _add_col(g, bi, bj, sign, pK)
                    break
            else:
                raise RuntimeError("odd-p diagonal pivot not found")
            continue
        if diag_hits:
            piv = diag_hits[0]
            pv = val(g[piv][piv])
            unit = inv_unit(g[piv][piv] // p ** pv % pK)
            for j in idx:
                if j == piv:
                    continue
                t = g[piv][j]
                if t % pK == 0:
                    continue
                coef = (t // p ** pv) * unit % pK
                _add_col(g, piv, j, -coef, pK)
            blocks.append(("one", g[piv][piv] % pK))
            idx = [i for i in idx if i != piv]
        else:
            # p = 2, minimum strictly off-diagonal: keep the 2x2 block
            i, j = next((a, b) for v, a, b in entries if v == vmin and a != b)
            rest = [t for t in idx if t not in (i, j)]
            if rest:
                t = rest[0]
                det_b = g[i][i] * g[j][j] - g[i][j] * g[i][j]
                dv = val(det_b)
                unit = inv_unit(det_b // p ** dv % pK)
                x0 = -(g[j][j] * g[i][t] - g[i][j] * g[j][t])
                x1 = -(g[i][i] * g[j][t] - g[i][j] * g[i][t])
                if x0 % p ** dv or x1 % p ** dv:
                    raise RuntimeError("2x2 block clearing not integral")
                c0 = (x0 // p ** dv) * unit % pK
                c1 = (x1 // p ** dv) * unit % pK
                _add_col(g, i, t, c0, pK)
                _add_col(g, j, t, c1, pK)
            blocks.append(("two", (g[i][i] % pK, g[i][j] % pK, g[j][j] % pK)))
            idx = rest
    return blocks


def _add_col(g, src, dst, t, pK):
    """Basis change b_dst <- b_dst + t*b_src applied to the Gram, mod pK."""
    for r in range(3):
        g[r][dst] = (g[r][dst] + t * g[r][src]) % pK
    new_row = [(g[dst][r] + t * g[src][r]) % pK for r in range(3)]
    for r in range(3):
        g[dst][r] = new_row[r]
        g[r][dst] = new_row[r]


def _block_distribution(block, p, k):
    pk = p ** k
    kind, data = block
    if kind == "one":
        q = data % pk
        x = np.arange(pk, dtype=np.int64)
        vals = (q * x * x) % pk
        return np.bincount(vals, minlength=pk)
    a, b, c = (d % pk for d in data)
    counts = np.zeros(pk, dtype=np.int64)
    y = np.arange(pk, dtype=np.int64)
    ychunk = c * y * y % pk
    for x in range(pk):
        vals = (a * x * x + (2 * b * x) * y + ychunk) % pk
        counts += np.bincount(vals, minlength=pk)
    return counts


def _fold_convolve(c1, c2, pk):
    full = np.convolve(c1, c2)
    out = full[:pk].copy()
    tail = full[pk:]
    out[: len(tail)] += tail
    return out


@lru_cache(maxsize=None)
def _local_fingerprint(gram, p, k):
    """Counts of Q(v) = t mod p^k over v in (Z/p^k)^3, as a tuple."""
    prec = 2 * k + 4
    blocks = _block_diagonalize(gram, p, prec)
    pk = p ** k
    dist = None
    nvars = 0
    for block in blocks:
        nvars += 1 if block[0] == "one" else 2
        d = _block_distribution(block, p, k)
        dist = d if dist is None else _fold_convolve(dist, d, pk)
    assert nvars == 3
    assert int(dist.sum()) == pk ** 3
    return tuple(int(x) for x in dist)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def same_genus(f, g):
    """Local equivalence at every prime via congruence-count fingerprints."""
    if f.det != g.det:
        return False
    det = f.det
    for p in sorted(set([2] + _prime_factors(det))):
        k = _p_val(4 * det, p, 64) + 3
        if _local_fingerprint(f.gram, p, k) != _local_fingerprint(g.gram, p, k):
            return False
    return True


@dataclass(frozen=True)
class GenusSet:
    representative: TernaryForm
    classes: tuple
    class_count: int


def genus_classes(f):
    """All isometry classes in the genus of f."""
    det = f.det
    mine, _ = _canonicalize(f.gram)
    classes = [h for h in enumerate_reduced(det) if same_genus(f, h)]
    assert any(h.gram == mine for h in classes)
    return GenusSet(f, tuple(classes), len(classes))


def excluded_power_pattern(m, p, residues, parity="odd"):
    """Whether m = p^w * t with w of the stated parity, p not dividing t,
    and t mod p in residues."""
    if m <= 0:
        return False
    w = 0
    while m % p == 0:
        m //= p
        w += 1
    if parity == "odd" and w % 2 == 0:
        return False
    if parity == "even" and w % 2 == 1:
        return False
    return m % p in set(residues)


def parse_form(text):
    """Parse 'a,b,c' as a diagonal form or a JSON 3x3 array."""
    text = text.strip()
    if text.startswith("["):
        import json

        return TernaryForm(tuple(tuple(r) for r in json.loads(text)))
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ValueError("diagonal form needs exactly three entries")
    return TernaryForm.diagonal(*parts)
