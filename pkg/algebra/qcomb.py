"""
q-combinatorial building blocks
Gaussian binomials, finite q-Pochhammer products, double binomials, triangular numbers
and the Andrews-Baxter trinomials T_{-1}, all as exact IntLaurentPoly values.
"""

import threading
from typing import Dict, Tuple

from cachetools import LRUCache, cached

from algebra.polycore import IntLaurentPoly, ONE, ZERO, poly_sum

# Shared by every identity evaluation; entries are immutable polynomials.
_binom_cache: LRUCache = LRUCache(maxsize=250_000)
_binom_lock = threading.RLock()


def triangular(j: int) -> int:
    """T(j) = j(j+1)/2, defined for every integer j."""
    return j * (j + 1) // 2


def _key(m: int, n: int) -> Tuple[int, int]:
    return (m, n) if m <= n else (n, m)


def q_binom(m: int, n: int) -> IntLaurentPoly:
    """
    The Gaussian binomial (q)_{m+n} / ((q)_m (q)_n), zero unless m, n >= 0.

    Built with the Pascal recurrence
        B(m, n) = B(m-1, n) + q^m B(m, n-1)
    filled bottom-up, so no recursion depth grows with the arguments.
    """
    if m < 0 or n < 0:
        return ZERO
    if m == 0 or n == 0:
        return ONE
    key = _key(m, n)
    with _binom_lock:
        hit = _binom_cache.get(key)
    if hit is not None:
        return hit

    a, b = key
    fresh: Dict[Tuple[int, int], IntLaurentPoly] = {}

    def lookup(i: int, j: int) -> IntLaurentPoly:
        if i == 0 or j == 0:
            return ONE
        return fresh[_key(i, j)]

    for i in range(1, a + 1):
        for j in range(i, b + 1):
            k = (i, j)
            if k in fresh:
                continue
            with _binom_lock:
                known = _binom_cache.get(k)
            if known is None:
                # symmetric in (i, j): the key is always stored with i <= j
                known = lookup(i - 1, j) + lookup(i, j - 1).shift(i)
            fresh[k] = known

    with _binom_lock:
        for k, v in fresh.items():
            _binom_cache[k] = v
    return fresh[key]


def q_binom_top_bottom(top: int, bottom: int) -> IntLaurentPoly:
    """[top; bottom]_q, zero when bottom < 0 or bottom > top."""
    return q_binom(bottom, top - bottom)


_poch_cache: LRUCache = LRUCache(maxsize=20_000)
_poch_lock = threading.RLock()


@cached(cache=_poch_cache, lock=_poch_lock)
def pochhammer(sign: int, s: int, t: int, m: int) -> IntLaurentPoly:
    """
    prod_{j=0}^{m-1} (1 - sign * q^(s + j t)), i.e. (a; q^t)_m with a = sign * q^s.

    pochhammer(-1, 1, 1, m) is (-q)_m and pochhammer(1, 1, 1, m) is (q)_m.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if s < 0 or t < 1 or m < 0:
        raise ValueError(f"pochhammer needs s >= 0, t >= 1, m >= 0; got s={s}, t={t}, m={m}")
    result = ONE
    for j in range(m):
        result = result - result.shift(s + j * t).scale(sign)
    return result


def q_pochhammer(m: int) -> IntLaurentPoly:
    """(q)_m."""
    return pochhammer(1, 1, 1, m)


def dyson_product(n: int) -> IntLaurentPoly:
    """(q^3; q^3)_n / (q)_n as the polynomial prod_{j=1}^n (1 + q^j + q^{2j})."""
    result = ONE
    for j in range(1, n + 1):
        result = result + result.shift(j) + result.shift(2 * j)
    return result


def double_binom(L: int, m: int, k: int) -> IntLaurentPoly:
    """[L; m, k]_q = [L; m]_q [L-m; k]_q."""
    first = q_binom_top_bottom(L, m)
    if first.is_zero():
        return ZERO
    return first * q_binom_top_bottom(L - m, k)


def floor_binom(top: int, offset: int) -> IntLaurentPoly:
    """[top; floor(offset/2)]_q with floor toward minus infinity."""
    return q_binom_top_bottom(top, offset // 2)


def trinomial_tm1(k: int, a: int) -> IntLaurentPoly:
    """
    Andrews-Baxter trinomial T_{-1}(k, a):
        sum over m >= 0, m = k + a (mod 2), of q^T(m) [k; m] [k-m; (k-m-a)/2].
    """
    if k < 0:
        raise ValueError(f"trinomial needs k >= 0, got {k}")
    terms = []
    for m in range((k + a) % 2, k + 1, 2):
        inner = q_binom_top_bottom(k - m, (k - m - a) // 2)
        if inner.is_zero():
            continue
        terms.append((q_binom_top_bottom(k, m) * inner).shift(triangular(m)))
    return poly_sum(terms)


def trinomial_pair_floor(k: int, a: int) -> IntLaurentPoly:
    """sum_{m>=0} q^T(m) [k; m] [k-m; floor((k-m-a)/2)], the floor form of T_{-1}(k,a) + T_{-1}(k,a+1)."""
    terms = []
    for m in range(0, k + 1):
        inner = floor_binom(k - m, k - m - a)
        if inner.is_zero():
            continue
        terms.append((q_binom_top_bottom(k, m) * inner).shift(triangular(m)))
    return poly_sum(terms)


def binomial_cache_size() -> int:
    with _binom_lock:
        return len(_binom_cache)
