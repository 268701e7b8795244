"""Shared brute-force oracles for the test suite."""

from itertools import product
from math import isqrt


def tri_values(bound):
    out = []
    x = 0
    while x * (x + 1) // 2 <= bound:
        out.append(x * (x + 1) // 2)
        x += 1
    return out


def brute_represented(coeffs, bound):
    """Represented set by direct enumeration over triangular values."""
    lists = [[c * t for t in tri_values(bound // c)] for c in coeffs]
    out = set()
    for combo in product(*lists):
        s = sum(combo)
        if s <= bound:
            out.add(s)
    return out


def odd_square_bits(coeffs, bound):
    """Bitset of sums of c*x^2 over odd x, built independently."""
    bits = 1
    for c in coeffs:
        step = 0
        x = 1
        while c * x * x <= bound:
            step |= 1 << (c * x * x)
            x += 2
        acc = 0
        b = bits
        pos = 0
        while b:
            if b & 1:
                acc |= step << pos
            b >>= 1
            pos += 1
        mask = (1 << (bound + 1)) - 1
        bits = acc & mask
    return bits


def multisets(max_k, max_alpha):
    """All nonempty ascending coefficient tuples."""

    def rec(k, lo):
        if k == 0:
            yield ()
            return
        for a in range(lo, max_alpha + 1):
            for rest in rec(k - 1, a):
                yield (a,) + rest

    for k in range(1, max_k + 1):
        for t in rec(k, 1):
            yield t


def brute_form_represents(gram, m):
    """Whether the ternary form with this Gram matrix represents m."""
    a, b, c = gram[0][0], gram[1][1], gram[2][2]
    r = isqrt(m) + 1
    lim = max(isqrt(m // min(a, b, c)) + 2, 2)
    for x in range(-lim, lim + 1):
        for y in range(-lim, lim + 1):
            for z in range(-lim, lim + 1):
                q = (a * x * x + b * y * y + c * z * z
                     + 2 * (gram[0][1] * x * y + gram[0][2] * x * z
                            + gram[1][2] * y * z))
                if q == m:
                    return True
    return False
