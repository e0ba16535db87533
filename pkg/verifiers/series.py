"""
Truncated verification of the infinite identities
Product sides are expanded as truncated infinite products, sum sides as pruned multi-sums
whose terms divide exact numerators by finite Pochhammer products in the series ring.
"""

import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from cachetools import LRUCache, cached
from loguru import logger

from algebra.polycore import IntLaurentPoly, TruncSeries, first_series_mismatch, series_invert
from algebra.qcomb import dyson_product, pochhammer, q_binom_top_bottom, triangular
from models.reports import IdentityReport
from verifiers.errors import MissingParam, PruningBoundUnavailable, UnknownIdentity, VerificationError

Index = Tuple[int, ...]
# (s, t, m) stands for the finite product (q^s; q^t)_m
Denominator = Tuple[int, int, int]

DEFAULT_CAP = 100
CHAIN_CAP = 40
DEFAULT_RENDER_LIMIT = 400


@dataclass(frozen=True)
class ProductFactor:
    """(q^a, q^b, ...; q^modulus)_inf."""

    exponents: Tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"product modulus must be positive, got {self.modulus}")
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"product exponents must be nonnegative, got {self.exponents}")


@dataclass(frozen=True)
class ProductSideSpec:
    factors: Tuple[ProductFactor, ...]
    denominator: bool = True

    def describe(self) -> str:
        parts = []
        for factor in self.factors:
            inner = ",".join(f"q^{e}" for e in factor.exponents)
            parts.append(f"({inner}; q^{factor.modulus})_inf")
        text = " ".join(parts) or "1"
        return f"{text} / (q)_inf" if self.denominator else text


def product(exponents: Sequence[int], modulus: int, denominator: bool = True) -> ProductSideSpec:
    return ProductSideSpec((ProductFactor(tuple(exponents), modulus),), denominator)


_euler_cache: LRUCache = LRUCache(maxsize=64)
_euler_lock = threading.RLock()


@cached(cache=_euler_cache, lock=_euler_lock)
def euler_function(cap: int) -> TruncSeries:
    """(q)_inf to the cap."""
    series = TruncSeries.one(cap)
    for e in range(1, cap + 1):
        series = series.mul_factor(e)
    return series


_partition_cache: LRUCache = LRUCache(maxsize=64)
_partition_lock = threading.RLock()


@cached(cache=_partition_cache, lock=_partition_lock)
def partition_series(cap: int) -> TruncSeries:
    """1/(q)_inf to the cap."""
    return series_invert(euler_function(cap))


def product_side(spec: ProductSideSpec, cap: int) -> TruncSeries:
    if cap < 0:
        raise ValueError(f"cap must be nonnegative, got {cap}")
    series = TruncSeries.one(cap)
    for factor in spec.factors:
        for start in factor.exponents:
            e = start
            while e <= cap:
                series = series.mul_factor(e)
                if e == 0:
                    # (1; q^m)_inf vanishes identically
                    break
                e += factor.modulus
    if spec.denominator:
        series = series * partition_series(cap)
    return series


_inverse_cache: LRUCache = LRUCache(maxsize=4096)
_inverse_lock = threading.RLock()


@cached(cache=_inverse_cache, lock=_inverse_lock)
def inverse_pochhammer(s: int, t: int, m: int, cap: int) -> TruncSeries:
    """1 / (q^s; q^t)_m to the cap, for s >= 1."""
    if s < 1:
        raise ValueError(f"(q^{s}; q^{t})_m has no unit constant term")
    series = TruncSeries.one(cap)
    for j in range(m):
        e = s + j * t
        if e > cap:
            break
        series = series.mul_factor(e)
    return series_invert(series)


@dataclass(frozen=True)
class MultiSumSpec:
    """
    sum over index tuples of q^exponent(i) * numerator(i) / prod (q^s; q^t)_m.

    ``exponent`` must not decrease when any single index grows, so probing a prefix
    padded with zeros bounds every completion of it. With ``chain`` set the indices
    form a weakly decreasing chain N_1 >= N_2 >= ... >= 0.
    """

    identity_id: str
    dimension: int
    exponent: Callable[[Index], int]
    denominators: Callable[[Index], Sequence[Denominator]]
    numerator: Optional[Callable[[Index], IntLaurentPoly]] = None
    chain: bool = False

    def term(self, index: Index, cap: int) -> Optional[TruncSeries]:
        """The term at ``index`` to the cap, or None when it vanishes below the cap."""
        e = self.exponent(index)
        if e > cap:
            return None
        width = cap - e
        if self.numerator is None:
            series = TruncSeries.one(width)
        else:
            poly = self.numerator(index)
            if poly.is_zero():
                return None
            series = TruncSeries.from_poly(poly, width)
        for s, t, m in self.denominators(index):
            if m > 0:
                series = series * inverse_pochhammer(s, t, m, cap).with_cap(width)
        return TruncSeries((0,) * e + series.coeffs, cap)


def enumerate_indices(spec: MultiSumSpec, cap: int) -> Iterator[Index]:
    """Index tuples whose exponent lower bound stays within the cap."""
    dim = spec.dimension
    prefix: List[int] = []

    def walk() -> Iterator[Index]:
        depth = len(prefix)
        if depth == dim:
            yield tuple(prefix)
            return
        upper = prefix[-1] if spec.chain and prefix else None
        padding = (0,) * (dim - depth - 1)
        last = None
        stalled = 0
        i = 0
        while upper is None or i <= upper:
            probe = spec.exponent(tuple(prefix) + (i,) + padding)
            if probe > cap:
                break
            if last is not None and probe <= last:
                stalled += 1
                if stalled > cap + 1:
                    raise PruningBoundUnavailable(spec.identity_id, depth)
            else:
                stalled = 0
            last = probe
            prefix.append(i)
            yield from walk()
            prefix.pop()
            i += 1

    yield from walk()


def multi_sum_side(spec: MultiSumSpec, cap: int) -> TruncSeries:
    if cap < 0:
        raise ValueError(f"cap must be nonnegative, got {cap}")
    total = TruncSeries.zero(cap)
    visited = 0
    for index in enumerate_indices(spec, cap):
        visited += 1
        term = spec.term(index, cap)
        if term is not None:
            total = total + term
    logger.debug("{}: {} index tuples below q^{}", spec.identity_id, visited, cap)
    return total


def jtp_sides(s: int, cap: int) -> Tuple[TruncSeries, TruncSeries]:
    """
    sum_j (-1)^j q^(j^2+sj)  against  (q^2, q^(1-s), q^(1+s); q^2)_inf, i.e. the triple
    product at z = q^s. Only |s| <= 1 keeps both sides power series.
    """
    if s not in (-1, 0, 1):
        raise ValueError(f"jtp needs s in {{-1, 0, 1}}, got {s}")
    coeffs = [0] * (cap + 1)
    # j^2 + sj never decreases moving away from 0 on either side
    for direction in (1, -1):
        j = 0 if direction == 1 else -1
        while True:
            e = j * j + s * j
            if e > cap:
                break
            coeffs[e] += -1 if j % 2 else 1
            j += direction
    theta = TruncSeries(coeffs, cap)
    return theta, product_side(product((2, 1 - s, 1 + s), 2, denominator=False), cap)


def jtp_check(s: int, cap: int) -> bool:
    theta, prod = jtp_sides(s, cap)
    return theta == prod


# ----------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class SeriesIdentity:
    identity_id: str
    equation: str
    title: str
    product: ProductSideSpec
    sum_side: Optional[MultiSumSpec] = None
    default_cap: int = DEFAULT_CAP
    notes: Tuple[str, ...] = ()
    params: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "identityId": self.identity_id,
            "equation": self.equation,
            "title": self.title,
            "defaultCap": self.default_cap,
            "product": self.product.describe(),
        }


def _q(m: int) -> Denominator:
    return (1, 1, m)


def _chain_parts(N: Index) -> List[int]:
    """n_i = N_i - N_{i+1}, with N_{len+1} = 0."""
    return [N[i] - (N[i + 1] if i + 1 < len(N) else 0) for i in range(len(N))]


def _chain_exponent(N: Index) -> int:
    return sum(v * v for v in N) + N[-2] + N[-1]


def _mod21_pattern(exponent: Callable[[int, int, int], int], identity_id: str) -> MultiSumSpec:
    """sum_{m,k,n} q^e(m,k,n) [k; n] / ((q)_m (q)_{2k+1})."""
    return MultiSumSpec(
        identity_id,
        3,
        exponent=lambda i: exponent(*i),
        denominators=lambda i: (_q(i[0]), _q(2 * i[1] + 1)),
        numerator=lambda i: q_binom_top_bottom(i[1], i[2]),
    )


def T(j: int) -> int:
    return triangular(j)


_SERIES: Dict[str, SeriesIdentity] = {}


def _add(identity: SeriesIdentity) -> None:
    _SERIES[identity.identity_id] = identity


_add(SeriesIdentity(
    "eq2.17", "(2.17)", "Lebesgue: sum_m q^T(m) (-q)_m / (q)_m = (q^4; q^4)_inf / (q)_inf",
    product((4,), 4),
    MultiSumSpec(
        "eq2.17", 1,
        exponent=lambda i: T(i[0]),
        denominators=lambda i: (_q(i[0]),),
        numerator=lambda i: pochhammer(-1, 1, 1, i[0]),
    ),
))
_add(SeriesIdentity(
    "eq3.11", "(3.11)",
    "sum_{m,k,n} q^(T(m)+T(m+k)+n^2) [floor(k/2); n] / ((q)_m (q)_k) = (q^21, q^8, q^13; q^21)_inf / (q)_inf",
    product((21, 8, 13), 21),
    MultiSumSpec(
        "eq3.11", 3,
        exponent=lambda i: T(i[0]) + T(i[0] + i[1]) + i[2] * i[2],
        denominators=lambda i: (_q(i[0]), _q(i[1])),
        numerator=lambda i: q_binom_top_bottom(i[1] // 2, i[2]),
    ),
    notes=("product printed with subscript n in the limit statement; evaluated with subscript inf",),
))
_add(SeriesIdentity(
    "eq3.12", "(3.12)", "Andrews-Gordon mod 21: 9-fold sum = (q^21, q^8, q^13; q^21)_inf / (q)_inf",
    product((21, 8, 13), 21),
    MultiSumSpec(
        "eq3.12", 9,
        exponent=_chain_exponent,
        denominators=lambda N: tuple(_q(n) for n in _chain_parts(N)),
        chain=True,
    ),
    default_cap=CHAIN_CAP,
))
_add(SeriesIdentity(
    "eq3.13", "(3.13)",
    "sum_{m,k,n} q^(k^2+(m+k)^2+n^2) [k; n] / ((q)_m (q)_{2k}) = (q^21, q^10, q^11; q^21)_inf / (q)_inf",
    product((21, 10, 11), 21),
    MultiSumSpec(
        "eq3.13", 3,
        exponent=lambda i: i[1] ** 2 + (i[0] + i[1]) ** 2 + i[2] ** 2,
        denominators=lambda i: (_q(i[0]), _q(2 * i[1])),
        numerator=lambda i: q_binom_top_bottom(i[1], i[2]),
    ),
))
_add(SeriesIdentity(
    "eq3.14-as-printed", "(3.14)", "q^(2T(k)+2T(m+n)+2T(n)) reading = (q^21, q^5, q^16; q^21)_inf / (q)_inf",
    product((21, 5, 16), 21),
    _mod21_pattern(lambda m, k, n: 2 * T(k) + 2 * T(m + n) + 2 * T(n), "eq3.14-as-printed"),
    notes=("exponent 2T(m+n) taken as printed",),
))
_add(SeriesIdentity(
    "eq3.14-pattern", "(3.14)", "q^(2T(k)+2T(m+k)+2T(n)) reading = (q^21, q^5, q^16; q^21)_inf / (q)_inf",
    product((21, 5, 16), 21),
    _mod21_pattern(lambda m, k, n: 2 * T(k) + 2 * T(m + k) + 2 * T(n), "eq3.14-pattern"),
    notes=("exponent 2T(m+k) following the O-kernel limit",),
))
_add(SeriesIdentity(
    "eq3.15-as-printed", "(3.15)", "q^(2T(k)+2T(m+n)+n^2) reading = (q^21, q^6, q^15; q^21)_inf / (q)_inf",
    product((21, 6, 15), 21),
    _mod21_pattern(lambda m, k, n: 2 * T(k) + 2 * T(m + n) + n * n, "eq3.15-as-printed"),
    notes=("exponent 2T(m+n) taken as printed",),
))
_add(SeriesIdentity(
    "eq3.15-pattern", "(3.15)", "q^(2T(k)+2T(m+k)+n^2) reading = (q^21, q^6, q^15; q^21)_inf / (q)_inf",
    product((21, 6, 15), 21),
    _mod21_pattern(lambda m, k, n: 2 * T(k) + 2 * T(m + k) + n * n, "eq3.15-pattern"),
    notes=("exponent 2T(m+k) following the O-kernel limit",),
))
_add(SeriesIdentity(
    "eq3.20", "(3.20)",
    "sum_{m,k} q^(T(m)+T(m+k)) (-q; q^2)_{floor(k/2)} / ((q)_m (q)_k) = (q^20, q^8, q^12; q^20)_inf / (q)_inf",
    product((20, 8, 12), 20),
    MultiSumSpec(
        "eq3.20", 2,
        exponent=lambda i: T(i[0]) + T(i[0] + i[1]),
        denominators=lambda i: (_q(i[0]), _q(i[1])),
        numerator=lambda i: pochhammer(-1, 1, 2, i[1] // 2),
    ),
))
_add(SeriesIdentity(
    "eq3.21", "(3.21)", "Bressoud mod 20: 9-fold sum = (q^20, q^8, q^12; q^20)_inf / (q)_inf",
    product((20, 8, 12), 20),
    MultiSumSpec(
        "eq3.21", 9,
        exponent=_chain_exponent,
        denominators=lambda N: tuple(_q(n) for n in _chain_parts(N)[:-1]) + ((2, 2, _chain_parts(N)[-1]),),
        chain=True,
    ),
    default_cap=CHAIN_CAP,
))
_add(SeriesIdentity(
    "eq3.22", "(3.22)",
    "sum_{m,k} q^(k^2+(m+k)^2) (-q; q^2)_k / ((q)_m (q)_{2k}) = (q^20, q^10, q^10; q^20)_inf / (q)_inf",
    product((20, 10, 10), 20),
    MultiSumSpec(
        "eq3.22", 2,
        exponent=lambda i: i[1] ** 2 + (i[0] + i[1]) ** 2,
        denominators=lambda i: (_q(i[0]), _q(2 * i[1])),
        numerator=lambda i: pochhammer(-1, 1, 2, i[1]),
    ),
))
_add(SeriesIdentity(
    "eq3.23", "(3.23)",
    "sum_{m,k} q^(2T(k)+2T(m+k)) (-q; q^2)_k / ((q)_m (q)_{2k+1}) = (q^20, q^6, q^14; q^20)_inf / (q)_inf",
    product((20, 6, 14), 20),
    MultiSumSpec(
        "eq3.23", 2,
        exponent=lambda i: 2 * T(i[1]) + 2 * T(i[0] + i[1]),
        denominators=lambda i: (_q(i[0]), _q(2 * i[1] + 1)),
        numerator=lambda i: pochhammer(-1, 1, 2, i[1]),
    ),
))
_add(SeriesIdentity(
    "eq3.27", "(3.27)",
    "sum_{m,k} q^(2T(k)+2T(m+k)) (q^3; q^3)_k / ((q)_m (q)_{2k+1} (q)_k) = (q^15; q^15)_inf / (q)_inf",
    product((15,), 15),
    MultiSumSpec(
        "eq3.27", 2,
        exponent=lambda i: 2 * T(i[1]) + 2 * T(i[0] + i[1]),
        denominators=lambda i: (_q(i[0]), _q(2 * i[1] + 1)),
        numerator=lambda i: dyson_product(i[1]),
    ),
))
_add(SeriesIdentity(
    "jtp", "(JTP)", "Jacobi triple product at z = q^s: sum_j (-1)^j q^(j^2+sj) = (q^2, q^(1-s), q^(1+s); q^2)_inf",
    product((2, 1, 1), 2, denominator=False),
    params={"s": (-1, 0, 1)},
))

# Two readings of one printed identity; a group passes when any reading does.
READING_GROUPS: Dict[str, Tuple[str, ...]] = {
    "eq3.14": ("eq3.14-as-printed", "eq3.14-pattern"),
    "eq3.15": ("eq3.15-as-printed", "eq3.15-pattern"),
}


def series_list() -> List[SeriesIdentity]:
    return list(_SERIES.values())


def is_series_id(identity_id: str) -> bool:
    return identity_id in _SERIES or identity_id in READING_GROUPS


def resolve_series_id(identity_id: str) -> str:
    """Group ids resolve to their as-printed reading."""
    if identity_id in READING_GROUPS:
        return READING_GROUPS[identity_id][0]
    if identity_id not in _SERIES:
        raise UnknownIdentity(identity_id)
    return identity_id


def reading_group_of(identity_id: str) -> Optional[str]:
    for group, members in READING_GROUPS.items():
        if identity_id in members:
            return group
    return None


def series_sides(identity_id: str, cap: int, params: Optional[Dict[str, int]] = None) -> Tuple[TruncSeries, TruncSeries]:
    identity = _SERIES[resolve_series_id(identity_id)]
    if identity.identity_id == "jtp":
        params = params or {}
        if "s" not in params:
            raise MissingParam("jtp", "s")
        return jtp_sides(params["s"], cap)
    return multi_sum_side(identity.sum_side, cap), product_side(identity.product, cap)


def _render(series: TruncSeries, limit: int) -> Optional[str]:
    if sum(1 for c in series.coeffs if c) > limit:
        return None
    return series.render()


def verify_series(
    identity_id: str,
    cap: Optional[int] = None,
    params: Optional[Dict[str, int]] = None,
    render_limit: int = DEFAULT_RENDER_LIMIT,
) -> IdentityReport:
    """Compare both truncated sides of a series identity up to and including q^cap."""
    resolved = resolve_series_id(identity_id)
    identity = _SERIES[resolved]
    cap = identity.default_cap if cap is None else cap
    if cap < 0:
        raise VerificationError(f"cap must be nonnegative, got {cap}")
    values = {name: int(v) for name, v in (params or {}).items() if name in identity.params}

    started = time.perf_counter()
    lhs, rhs = series_sides(resolved, cap, values)
    mismatch = first_series_mismatch(lhs, rhs)
    witness = rhs.first_negative() if identity.product.denominator else None
    elapsed = int((time.perf_counter() - started) * 1000)

    notes = list(identity.notes)
    if resolved != identity_id:
        notes.append(f"{identity_id} resolved to {resolved}")
    if witness is not None:
        notes.append(f"product side has a negative coefficient at q^{witness}")
    passed = mismatch is None and witness is None
    if passed:
        logger.debug("{} passed to q^{} in {} ms", resolved, cap, elapsed)
    else:
        logger.warning("{} failed to q^{}: mismatch={} witness={}", resolved, cap, mismatch, witness)

    return IdentityReport(
        identity_id=resolved,
        params=values,
        passed=passed,
        lhs=_render(lhs, render_limit),
        rhs=_render(rhs, render_limit),
        first_mismatch_exp=mismatch,
        negative_witness=witness,
        elapsed_millis=elapsed,
        cap=cap,
        notes=notes,
    )


def bounded_agreement(bounded: IntLaurentPoly, identity_id: str, degree: int) -> Optional[int]:
    """
    First exponent <= degree where a bounded side at size L differs from the product side
    of its limit identity, or None. Sizes L >= degree are expected to agree.
    """
    identity = _SERIES[resolve_series_id(identity_id)]
    target = product_side(identity.product, degree)
    return first_series_mismatch(TruncSeries.from_poly(bounded, degree), target)
