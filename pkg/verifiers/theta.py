"""
Theta-like sums and the Foda-Quano multi-sum
A ThetaSumSpec describes sum_j (-1)^j q^(A j^2 + B j + C) [top; bottom(j)] as data, so the
same evaluator serves every bounded identity and the kernel images can be computed on specs.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, floor
from typing import Iterator, List, Tuple, Union

from loguru import logger

from algebra.polycore import IntLaurentPoly, ONE, poly_sum
from algebra.qcomb import q_binom_top_bottom
from models.parameters import FodaQuanoParams, KernelKind
from verifiers.errors import NegativeExponent, NonIntegerExponent, VerificationError
from verifiers.transforms import apply_transform


@dataclass(frozen=True)
class Affine:
    """coef * L + const."""

    coef: int = 0
    const: int = 0

    def at(self, L: int) -> int:
        return self.coef * L + self.const

    def __str__(self) -> str:
        if not self.coef:
            return str(self.const)
        head = "L" if self.coef == 1 else f"{self.coef}L"
        if self.const:
            return f"{head}{self.const:+d}"
        return head


@dataclass(frozen=True)
class Linear:
    """bottom = center - K j."""

    center: Affine
    K: int

    def bottom(self, L: int, top: int, j: int) -> int:
        return self.center.at(L) - self.K * j

    def j_range(self, L: int, top: int) -> range:
        c = self.center.at(L)
        return range(ceil(Fraction(c - top, self.K)), floor(Fraction(c, self.K)) + 1)


@dataclass(frozen=True)
class Floor:
    """bottom = floor((top - K j - s) / 2)."""

    K: int
    s: int = 0

    def bottom(self, L: int, top: int, j: int) -> int:
        return (top - self.K * j - self.s) // 2

    def j_range(self, L: int, top: int) -> range:
        # 0 <= floor((top - Kj - s)/2) <= top  <=>  -top-1-s <= Kj <= top-s
        return range(ceil(Fraction(-top - 1 - self.s, self.K)), floor(Fraction(top - self.s, self.K)) + 1)


Bottom = Union[Linear, Floor]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ThetaSumSpec:
    name: str
    top: Affine
    exponent: Tuple[Fraction, Fraction, Fraction]
    bottom: Bottom
    alternating: bool = True
    prefactor: Affine = field(default_factory=Affine)

    def __post_init__(self):
        object.__setattr__(self, "exponent", tuple(_frac(c) for c in self.exponent))
        if len(self.exponent) != 3:
            raise ValueError(f"{self.name}: exponent needs exactly (A, B, C)")

    def exponent_at(self, j: int) -> Fraction:
        A, B, C = self.exponent
        return A * j * j + B * j + C

    def describe(self) -> str:
        A, B, C = self.exponent
        if isinstance(self.bottom, Linear):
            low = f"{self.bottom.center}-{self.bottom.K}j"
        else:
            low = f"floor(({self.top}-{self.bottom.K}j-{self.bottom.s})/2)"
        head = f"q^({self.prefactor}) " if self.prefactor != Affine() else ""
        return f"{head}sum_j (-1)^j q^({A}j^2+{B}j+{C}) [{self.top}; {low}]"


def theta_terms(spec: ThetaSumSpec, L: int) -> Iterator[Tuple[int, int, IntLaurentPoly]]:
    """(j, exponent, binomial) for every j whose binomial is nonzero."""
    top = spec.top.at(L)
    if top < 0:
        return
    for j in spec.bottom.j_range(L, top):
        binom = q_binom_top_bottom(top, spec.bottom.bottom(L, top, j))
        if binom.is_zero():
            continue
        e = spec.exponent_at(j)
        if e.denominator != 1:
            raise NonIntegerExponent(j, e, f"{spec.name} at L={L}")
        if e < 0:
            raise NegativeExponent(j, int(e), f"{spec.name} at L={L}")
        yield j, int(e), binom


def theta_sum(spec: ThetaSumSpec, L: int) -> IntLaurentPoly:
    terms = []
    for j, e, binom in theta_terms(spec, L):
        term = binom.shift(e)
        terms.append(-term if spec.alternating and j % 2 else term)
    return poly_sum(terms).shift(spec.prefactor.at(L))


def transform_theta(kind: KernelKind, spec: ThetaSumSpec, name: str = "") -> ThetaSumSpec:
    """
    The ThetaSumSpec of sum_k K_{L,k} F(k) when F(k) is the theta sum of ``spec`` at size k.

    C takes floor((L - Kj - s)/2) bottoms over top L to q^T(Kj+s) [2L+1; L-Kj-s].
    W takes [2L; L-s'-Kj] to q^(2a^2) [2L; L-2a] with a = Kj+s'.
    O takes [2L+1; L-s'-Kj] to q^(4T(a)) [2L; L-2a-1] with a = Kj+s'.
    """
    kind = KernelKind(kind)
    if spec.prefactor != Affine():
        raise VerificationError(f"{spec.name}: only specs without a q^(...) prefactor can be transformed")
    A, B, C = spec.exponent
    bottom = spec.bottom
    label = name or f"{kind.value}({spec.name})"

    if kind == KernelKind.C:
        if not isinstance(bottom, Floor) or spec.top != Affine(1, 0):
            raise VerificationError(f"{spec.name}: the C kernel acts on floor((L-Kj-s)/2) bottoms over top L")
        K, s = bottom.K, bottom.s
        return replace(
            spec,
            name=label,
            top=Affine(2, 1),
            exponent=(A + Fraction(K * K, 2), B + Fraction(K * (2 * s + 1), 2), C + Fraction(s * (s + 1), 2)),
            bottom=Linear(Affine(1, -s), K),
        )

    want_top = Affine(2, 0) if kind == KernelKind.W else Affine(2, 1)
    if not isinstance(bottom, Linear) or spec.top != want_top or bottom.center.coef != 1:
        raise VerificationError(
            f"{spec.name}: the {kind.value} kernel acts on [{want_top}; L-s-Kj] bottoms"
        )
    K, sp = bottom.K, -bottom.center.const
    if kind == KernelKind.W:
        shifted = (A + 2 * K * K, B + 4 * K * sp, C + 2 * sp * sp)
        center = Affine(1, -2 * sp)
    else:
        shifted = (A + 2 * K * K, B + 2 * K * (2 * sp + 1), C + 2 * sp * (sp + 1))
        center = Affine(1, -2 * sp - 1)
    return replace(spec, name=label, top=Affine(2, 0), exponent=shifted, bottom=Linear(center, 2 * K))


def _f(num: int, den: int = 1) -> Fraction:
    return Fraction(num, den)


SCHUR = ThetaSumSpec("schur", Affine(1, 0), (_f(3, 2), _f(1, 2), _f(0)), Floor(3, 0))
LEBESGUE_BOUNDED = transform_theta(KernelKind.C, SCHUR, name="lebesgue-bounded")
PENTAGONAL_BOUNDED = ThetaSumSpec("pentagonal-bounded", Affine(2, 1), (_f(3), _f(1), _f(0)), Linear(Affine(1, 0), 3))

TRIANGULAR_EVEN = ThetaSumSpec("triangular-even", Affine(2, 0), (_f(1, 2), _f(1, 2), _f(0)), Linear(Affine(1, 0), 1))
TRIANGULAR_ODD = ThetaSumSpec("triangular-odd", Affine(2, 1), (_f(1, 2), _f(1, 2), _f(0)), Linear(Affine(1, 0), 1))
TRIANGULAR_FLOOR = ThetaSumSpec("triangular-floor", Affine(1, 0), (_f(1, 2), _f(1, 2), _f(0)), Floor(2, 0))

ROGERS_RAMANUJAN_FIRST = ThetaSumSpec(
    "rr-first", Affine(2, 0), (_f(5, 2), _f(1, 2), _f(0)), Linear(Affine(1, 0), 2)
)
ROGERS_RAMANUJAN_SECOND = ThetaSumSpec(
    "rr-second", Affine(2, 1), (_f(5, 2), _f(3, 2), _f(0)), Linear(Affine(1, 0), 2)
)
ROGERS_RAMANUJAN_VANISHING = ThetaSumSpec(
    "rr-vanishing", Affine(2, 0), (_f(5, 2), _f(5, 2), _f(0)), Linear(Affine(1, -1), 2), prefactor=Affine(1, 1)
)
ROGERS_RAMANUJAN_FIRST_ODD = ThetaSumSpec(
    "rr-first-odd", Affine(2, 1), (_f(5, 2), _f(1, 2), _f(0)), Linear(Affine(1, 0), 2)
)
ROGERS_RAMANUJAN_FLOOR = ThetaSumSpec("rr-floor", Affine(1, 0), (_f(5, 2), _f(1, 2), _f(0)), Floor(4, 0))
MOD21_BOUNDED = transform_theta(KernelKind.C, ROGERS_RAMANUJAN_FLOOR, name="mod21-bounded")

MOD20_EVEN = ThetaSumSpec("mod20-even", Affine(2, 0), (_f(2), _f(0), _f(0)), Linear(Affine(1, 0), 2))
MOD20_VANISHING = ThetaSumSpec(
    "mod20-vanishing", Affine(2, 0), (_f(2), _f(2), _f(0)), Linear(Affine(1, -1), 2), prefactor=Affine(1, 1)
)
MOD20_ODD = ThetaSumSpec("mod20-odd", Affine(2, 1), (_f(2), _f(0), _f(0)), Linear(Affine(1, 0), 2))
MOD20_FLOOR = ThetaSumSpec("mod20-floor", Affine(1, 0), (_f(2), _f(0), _f(0)), Floor(4, 0))
MOD20_BOUNDED = transform_theta(KernelKind.C, MOD20_FLOOR, name="mod20-bounded")

DYSON = ThetaSumSpec("dyson", Affine(2, 1), (_f(9, 2), _f(3, 2), _f(0)), Linear(Affine(1, 0), 3))
MOD15_BOUNDED = transform_theta(KernelKind.O, DYSON, name="mod15-bounded")

MOD21_EVEN_BOUNDED = transform_theta(KernelKind.W, ROGERS_RAMANUJAN_FIRST, name="mod21-even-bounded")
MOD21_ODD_BOUNDED = transform_theta(KernelKind.O, ROGERS_RAMANUJAN_SECOND, name="mod21-odd-bounded")
MOD21_ODD_FIRST_BOUNDED = transform_theta(KernelKind.O, ROGERS_RAMANUJAN_FIRST_ODD, name="mod21-odd-first-bounded")
MOD20_EVEN_BOUNDED = transform_theta(KernelKind.W, MOD20_EVEN, name="mod20-even-bounded")
MOD20_ODD_BOUNDED = transform_theta(KernelKind.O, MOD20_ODD, name="mod20-odd-bounded")


def foda_quano_spec(nu: int, s: int) -> ThetaSumSpec:
    """sum_j (-1)^j q^(((2nu+1)j^2 + (2s+1)j)/2) [L; floor((L-(2nu+1)j-s)/2)]."""
    K = 2 * nu + 1
    return ThetaSumSpec(f"foda-quano({nu},{s})", Affine(1, 0), (_f(K, 2), _f(2 * s + 1, 2), _f(0)), Floor(K, s))


def theorem1_spec(nu: int, s: int) -> ThetaSumSpec:
    return transform_theta(KernelKind.C, foda_quano_spec(nu, s), name=f"theorem1({nu},{s})")


def decreasing_chains(length: int, budget: int) -> Iterator[Tuple[int, ...]]:
    """Weakly decreasing N_1 >= ... >= N_length >= 0 with 2 * sum(N) <= budget."""
    if length == 0:
        if budget >= 0:
            yield ()
        return

    def extend(prefix: List[int], left: int, cap: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for value in range(min(cap, left // 2) + 1):
            prefix.append(value)
            yield from extend(prefix, left - 2 * value, value)
            prefix.pop()

    if budget >= 0:
        yield from extend([], budget, budget // 2)


def foda_quano_lhs(p: FodaQuanoParams) -> IntLaurentPoly:
    """
    sum over n_2..n_nu >= 0 of q^(N_2^2+...+N_nu^2 + N_{nu+1-s}+...+N_nu)
        prod_{i=2}^{nu} [n_i + L - 2(N_2+...+N_i) - E_i; n_i],   E_i = max(i+s-nu, 0),
    enumerated as decreasing chains N_2 >= ... >= N_nu. The last binomial has the
    smallest top, so 2(N_2+...+N_nu) <= L - s bounds every surviving chain.
    """
    nu, s, L = p.nu, p.s, p.L
    if nu == 1:
        return ONE
    terms = []
    for chain in decreasing_chains(nu - 1, L - s):
        # chain[i - 2] is N_i
        N = {i: chain[i - 2] for i in range(2, nu + 1)}
        exponent = sum(v * v for v in chain) + sum(N[i] for i in range(nu + 1 - s, nu + 1))
        factor = ONE
        running = 0
        for i in range(2, nu + 1):
            running += N[i]
            n_i = N[i] - N.get(i + 1, 0)
            free = L - 2 * running - max(i + s - nu, 0)
            factor = factor * q_binom_top_bottom(n_i + free, n_i)
            if factor.is_zero():
                break
        if not factor.is_zero():
            terms.append(factor.shift(exponent))
    result = poly_sum(terms)
    logger.debug("Foda-Quano nu={} s={} L={}: {} chains contributed", nu, s, L, len(terms))
    return result


def theorem1_lhs(p: FodaQuanoParams) -> IntLaurentPoly:
    """sum_k C_{L,k} times the Foda-Quano multi-sum at size k."""
    return apply_transform(KernelKind.C, p.L, lambda k: foda_quano_lhs(p.at_size(k)))


def transform_chain_sides(spec: ThetaSumSpec, kind: KernelKind, L: int) -> Tuple[IntLaurentPoly, IntLaurentPoly]:
    """Transform-then-sum against sum-then-transform for one kernel and size."""
    image = transform_theta(kind, spec)
    by_transform = apply_transform(kind, L, lambda k: theta_sum(spec, k))
    return by_transform, theta_sum(image, L)
