"""Representability sieves for weighted sums of triangular numbers.

A weighted sum with coefficients (a1, ..., ak) represents n when
n = a1*T(x1) + ... + ak*T(xk) has a solution in nonnegative integers,
where T(x) = x*(x+1)/2.  Representability up to a bound is computed as
a big-integer bitset: bit n is set iff n is represented.
"""

from dataclasses import dataclass
from functools import lru_cache


def tri(x):
    """Triangular number T(x) = x*(x+1)/2."""
    return x * (x + 1) // 2


def _tri_values(coeff, bound):
    """All a*T(x) <= bound for x >= 1."""
    vals = []
    x = 1
    while coeff * tri(x) <= bound:
        vals.append(coeff * tri(x))
        x += 1
    return vals


@lru_cache(maxsize=None)
def _sieve_bits(coeffs, bound):
    """Bitset of integers in [0, bound] represented by the sum with
    the given sorted coefficient tuple."""
    if not coeffs:
        return 1
    prev = _sieve_bits(coeffs[:-1], bound)
    mask = (1 << (bound + 1)) - 1
    bits = prev
    for v in _tri_values(coeffs[-1], bound):
        bits |= (prev << v) & mask
    return bits


@dataclass(frozen=True)
class RepSieve:
    """Representability of a triangular sum on [0, bound]."""

    coeffs: tuple
    bound: int
    bits: int

    def represents(self, n):
        if n < 0 or n > self.bound:
            raise ValueError("n outside sieve bound")
        return bool(self.bits >> n & 1)

    def missing(self):
        """Sorted list of integers in [0, bound] not represented."""
        mask = (1 << (self.bound + 1)) - 1
        gaps = ~self.bits & mask
        out = []
        while gaps:
            low = gaps & -gaps
            out.append(low.bit_length() - 1)
            gaps ^= low
        return out


def sieve(coeffs, bound):
    """Build a RepSieve for the given coefficients up to bound."""
    coeffs = tuple(sorted(coeffs))
    if any(a < 1 for a in coeffs):
        raise ValueError("coefficients must be positive")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    return RepSieve(coeffs, bound, _sieve_bits(coeffs, bound))


def represents(coeffs, n):
    """Whether the triangular sum with these coefficients represents n."""
    return sieve(coeffs, max(n, 0)).represents(n)


@dataclass(frozen=True)
class TruantResult:
    """First `count` integers missed by a sum, in increasing order.

    `exhausted` is set when fewer than `count` gaps exist below the
    search bound, so the list may be incomplete evidence.
    """

    coeffs: tuple
    truants: tuple
    exhausted: bool


def truants(coeffs, count=1, bound=10000):
    """The first `count` positive integers not represented by the sum.

    The empty sum represents only 0, so its first truant is 1.
    """
    coeffs = tuple(sorted(coeffs))
    if not coeffs:
        found = tuple(range(1, count + 1))
        return TruantResult(coeffs, found, False)
    gaps = [g for g in sieve(coeffs, bound).missing() if g > 0]
    return TruantResult(coeffs, tuple(gaps[:count]), len(gaps) < count)


def odd_square_solvable(coeffs, target):
    """Whether target = sum of a_i * x_i^2 with every x_i odd.

    This is the shifted form of representability: n is represented by
    the triangular sum iff 8n + sum(a_i) is such a sum of odd squares.
    """
    if target < 0:
        return False
    bits = 1
    mask = (1 << (target + 1)) - 1
    for a in coeffs:
        nxt = 0
        x = 1
        while a * x * x <= target:
            nxt |= (bits << (a * x * x)) & mask
            x += 2
        bits = nxt
    return bool(bits >> target & 1)


def shifted_target(coeffs, n):
    """The odd-square target 8n + sum(coeffs) for a represented n."""
    return 8 * n + sum(coeffs)


def _clear_cache():
    _sieve_bits.cache_clear()
