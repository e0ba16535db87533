"""
Positivity-preserving transformations
The kernels C_{L,k}, W_{L,k}, O_{L,k}, the transform sum_k K_{L,k} F(k) and the
kernel summation identities they satisfy.
"""

import threading
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from cachetools import LRUCache, cached
from loguru import logger

from algebra.polycore import IntLaurentPoly, ZERO, first_mismatch, poly_sum
from algebra.qcomb import (
    floor_binom,
    pochhammer,
    q_binom_top_bottom,
    triangular,
    trinomial_tm1,
)
from models.parameters import KernelKind

KernelFamily = Callable[[int], IntLaurentPoly]


def k_max(kind: KernelKind, L: int) -> int:
    """Largest k with a nonzero kernel entry at L (-1 when the row is empty)."""
    if kind == KernelKind.C:
        return L
    if kind == KernelKind.W:
        return L // 2
    return (L - 1) // 2


_entry_cache: LRUCache = LRUCache(maxsize=20_000)
_entry_lock = threading.RLock()


@cached(cache=_entry_cache, lock=_entry_lock)
def _entry(kind: KernelKind, L: int, k: int) -> IntLaurentPoly:
    # [L; m, j] = [L; j] [L-j; m] pulls the m-independent binomial out of the sum
    if kind == KernelKind.C:
        width = k
        exponent = lambda m: triangular(m) + triangular(m + k)
    elif kind == KernelKind.W:
        width = 2 * k
        exponent = lambda m: (m + k) ** 2 + k * k
    else:
        width = 2 * k + 1
        exponent = lambda m: 2 * triangular(m + k) + 2 * triangular(k)
    outer = q_binom_top_bottom(L, width)
    if outer.is_zero():
        return ZERO
    rest = L - width
    inner = poly_sum(q_binom_top_bottom(rest, m).shift(exponent(m)) for m in range(rest + 1))
    return outer * inner


@dataclass(frozen=True)
class KernelMatrix:
    """One row of a kernel: entries[k] for 0 <= k <= k_max(kind, L)."""

    kind: KernelKind
    L: int
    entries: Tuple[IntLaurentPoly, ...]

    def __getitem__(self, k: int) -> IntLaurentPoly:
        if 0 <= k < len(self.entries):
            return self.entries[k]
        return ZERO

    def __len__(self) -> int:
        return len(self.entries)


_row_cache: LRUCache = LRUCache(maxsize=512)
_row_lock = threading.RLock()


@cached(cache=_row_cache, lock=_row_lock)
def kernel_row(kind: KernelKind, L: int) -> KernelMatrix:
    if L < 0:
        raise ValueError(f"kernel rows need L >= 0, got {L}")
    kind = KernelKind(kind)
    entries = tuple(_entry(kind, L, k) for k in range(k_max(kind, L) + 1))
    logger.debug("kernel row {} L={} built with {} entries", kind.value, L, len(entries))
    return KernelMatrix(kind=kind, L=L, entries=entries)


def kernel(kind: KernelKind, L: int, k: int) -> IntLaurentPoly:
    """K_{L,k}(q) for K in {C, W, O}; zero outside the support."""
    kind = KernelKind(kind)
    if L < 0:
        raise ValueError(f"kernels need L >= 0, got {L}")
    if k < 0 or k > k_max(kind, L):
        return ZERO
    return _entry(kind, L, k)


def apply_transform(kind: KernelKind, L: int, F: KernelFamily) -> IntLaurentPoly:
    """sum_k K_{L,k}(q) F(k), with F queried only inside the kernel support."""
    row = kernel_row(KernelKind(kind), L)
    terms = []
    for k, entry in enumerate(row.entries):
        value = F(k)
        if not value.is_zero():
            terms.append(entry * value)
    return poly_sum(terms)


def kernel_identity_sides(kind: KernelKind, L: int, a: int) -> Tuple[IntLaurentPoly, IntLaurentPoly]:
    """
    Both sides of the summation formula attached to a kernel:

        C:  sum_k C_{L,k} [k; floor((k-a)/2)] = q^T(a)  [2L+1; L-a]
        W:  sum_k W_{L,k} [2k; k-a]           = q^(2a^2) [2L; L-2a]
        O:  sum_k O_{L,k} [2k+1; k-a]         = q^(4T(a)) [2L; L-2a-1]
    """
    kind = KernelKind(kind)
    if kind == KernelKind.C:
        lhs = apply_transform(kind, L, lambda k: floor_binom(k, k - a))
        rhs = q_binom_top_bottom(2 * L + 1, L - a).shift(triangular(a))
    elif kind == KernelKind.W:
        lhs = apply_transform(kind, L, lambda k: q_binom_top_bottom(2 * k, k - a))
        rhs = q_binom_top_bottom(2 * L, L - 2 * a).shift(2 * a * a)
    else:
        lhs = apply_transform(kind, L, lambda k: q_binom_top_bottom(2 * k + 1, k - a))
        rhs = q_binom_top_bottom(2 * L, L - 2 * a - 1).shift(4 * triangular(a))
    return lhs, rhs


def verify_kernel_identity(kind: KernelKind, L: int, a: int) -> bool:
    lhs, rhs = kernel_identity_sides(kind, L, a)
    mismatch = first_mismatch(lhs, rhs)
    if mismatch is not None:
        logger.warning("kernel identity {} fails at L={}, a={} (q^{})", KernelKind(kind).value, L, a, mismatch)
    return mismatch is None


def berkovich_uncu_sides(L: int, a: int) -> Tuple[IntLaurentPoly, IntLaurentPoly]:
    """sum_k q^T(k) [L; k] (T_{-1}(k, a) + T_{-1}(k, a+1))  against  q^T(a) [2L+1; L-a]."""
    terms = []
    for k in range(L + 1):
        pair = trinomial_tm1(k, a) + trinomial_tm1(k, a + 1)
        if pair.is_zero():
            continue
        terms.append((q_binom_top_bottom(L, k) * pair).shift(triangular(k)))
    lhs = poly_sum(terms)
    rhs = q_binom_top_bottom(2 * L + 1, L - a).shift(triangular(a))
    return lhs, rhs


def verify_berkovich_uncu(L: int, a: int) -> bool:
    lhs, rhs = berkovich_uncu_sides(L, a)
    return lhs == rhs



def kernel_sum_sides(L: int) -> Tuple[IntLaurentPoly, IntLaurentPoly]:
    """sum_k C_{L,k}  against  sum_k q^T(k) [L; k] (-q)_k."""
    lhs = poly_sum(kernel_row(KernelKind.C, L).entries)
    rhs = poly_sum(
        (q_binom_top_bottom(L, k) * pochhammer(-1, 1, 1, k)).shift(triangular(k)) for k in range(L + 1)
    )
    return lhs, rhs


def kernel_row_witnesses(kind: KernelKind, L: int) -> Dict[int, int]:
    """k -> first negative exponent for every entry of the row that is not nonnegative."""
    row = kernel_row(KernelKind(kind), L)
    found = {}
    for k, entry in enumerate(row.entries):
        witness = entry.first_negative()
        if witness is not None:
            found[k] = witness
    return found
