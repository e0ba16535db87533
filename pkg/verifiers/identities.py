"""
Finite identity registry
Every polynomial identity is registered with its parameter schema, a builder for both sides
and, where one exists, a cross-check against the Bressoud polynomial the identity proves
nonnegative. verify() turns one instance into an IdentityReport.
"""

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from algebra.polycore import IntLaurentPoly, ONE, ZERO, first_mismatch, poly_sum
from algebra.qcomb import (
    dyson_product,
    pochhammer,
    q_binom_top_bottom,
    triangular,
    trinomial_pair_floor,
    trinomial_tm1,
)
from models.parameters import FodaQuanoParams, GParams, KernelKind
from models.reports import IdentityReport
from models.run_config import IntRange
from verifiers import theta as th
from verifiers.bressoud import borwein_abc, borwein_sides, g_poly, theorem1_params
from verifiers.errors import MissingParam, UnknownIdentity, VerificationError
from verifiers.transforms import (
    apply_transform,
    berkovich_uncu_sides,
    kernel,
    kernel_identity_sides,
    kernel_row,
    kernel_sum_sides,
)

DEFAULT_RENDER_LIMIT = 400

Params = Dict[str, int]


def sizes_nonnegative(p: Params) -> bool:
    """Every size parameter (all but the shift a) is at least 0."""
    return all(value >= 0 for name, value in p.items() if name != "a")


@dataclass(frozen=True)
class ParamSchema:
    name: str
    default: IntRange


@dataclass
class Sides:
    """Both sides of one instance, plus what else must hold for it to pass."""

    lhs: IntLaurentPoly
    rhs: IntLaurentPoly
    cross: Optional[IntLaurentPoly] = None
    cross_label: str = ""
    nonnegative: Sequence[IntLaurentPoly] = ()
    notes: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class IdentityDescriptor:
    identity_id: str
    equation: str
    title: str
    params: Tuple[ParamSchema, ...]
    build: Callable[[Params], Sides]
    admissible: Callable[[Params], bool] = sizes_nonnegative
    positivity: bool = False

    @property
    def param_names(self) -> List[str]:
        return [schema.name for schema in self.params]

    def default_grid(self) -> Dict[str, IntRange]:
        return {schema.name: schema.default for schema in self.params}

    def summary(self) -> dict:
        return {
            "identityId": self.identity_id,
            "equation": self.equation,
            "title": self.title,
            "params": {schema.name: str(schema.default) for schema in self.params},
            "positivity": self.positivity,
        }


_REGISTRY: Dict[str, IdentityDescriptor] = {}


def _schema(**ranges: str) -> Tuple[ParamSchema, ...]:
    return tuple(ParamSchema(name, IntRange.parse(text)) for name, text in ranges.items())


def register(
    identity_id: str,
    equation: str,
    title: str,
    params: Tuple[ParamSchema, ...],
    admissible: Callable[[Params], bool] = sizes_nonnegative,
    positivity: bool = False,
):
    def wrap(build: Callable[[Params], Sides]) -> Callable[[Params], Sides]:
        _REGISTRY[identity_id] = IdentityDescriptor(
            identity_id=identity_id,
            equation=equation,
            title=title,
            params=params,
            build=build,
            admissible=admissible,
            positivity=positivity,
        )
        return build

    return wrap


def registry_list() -> List[IdentityDescriptor]:
    return list(_REGISTRY.values())


def describe(identity_id: str) -> IdentityDescriptor:
    try:
        return _REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(identity_id) from None


# ----------------------------------------------------------------------
# shared left-hand sides


def delta_zero(L: int) -> IntLaurentPoly:
    return ONE if L == 0 else ZERO


def rr_first_sum(L: int) -> IntLaurentPoly:
    """sum_n q^(n^2) [L; n]."""
    return poly_sum(q_binom_top_bottom(L, n).shift(n * n) for n in range(L + 1))


def rr_second_sum(L: int) -> IntLaurentPoly:
    """sum_n q^(n^2+n) [L; n]."""
    return poly_sum(q_binom_top_bottom(L, n).shift(n * n + n) for n in range(L + 1))


def lebesgue_bounded_sum(L: int) -> IntLaurentPoly:
    """sum_k q^T(k) [L; k] (-q)_k."""
    return poly_sum(
        (q_binom_top_bottom(L, k) * pochhammer(-1, 1, 1, k)).shift(triangular(k)) for k in range(L + 1)
    )


def pentagonal_bounded_sum(L: int) -> IntLaurentPoly:
    """sum_k (-q)_{L-k} q^((L+1)k) [L; k]."""
    return poly_sum(
        (pochhammer(-1, 1, 1, L - k) * q_binom_top_bottom(L, k)).shift((L + 1) * k) for k in range(L + 1)
    )


def odd_squares_product(n: int) -> IntLaurentPoly:
    """(-q; q^2)_n."""
    return pochhammer(-1, 1, 2, n)


def _bounded(lhs: IntLaurentPoly, spec: th.ThetaSumSpec, L: int, g: Optional[GParams] = None, shift: int = 0) -> Sides:
    rhs = th.theta_sum(spec, L)
    sides = Sides(lhs=lhs, rhs=rhs, nonnegative=(rhs,))
    if g is not None:
        sides.cross = g_poly(g).shift(shift)
        sides.cross_label = g.label()
    return sides


# ----------------------------------------------------------------------
# Borwein


@register(
    "eq1.6",
    "(1.5), (1.6)",
    "Borwein decomposition prod (1-q^(3k-1))(1-q^(3k-2)) = A_n(q^3) - q B_n(q^3) - q^2 C_n(q^3), "
    "with A_n, B_n, C_n nonnegative",
    _schema(n="0..20"),
    positivity=True,
)
def _borwein(p: Params) -> Sides:
    lhs, rhs = borwein_sides(p["n"])
    return Sides(lhs=lhs, rhs=rhs, nonnegative=borwein_abc(p["n"]))


# ----------------------------------------------------------------------
# kernel summation formulas


def _kernel_formula(kind: KernelKind):
    def build(p: Params) -> Sides:
        lhs, rhs = kernel_identity_sides(kind, p["L"], p["a"])
        return Sides(lhs=lhs, rhs=rhs, nonnegative=kernel_row(kind, p["L"]).entries)

    return build


register(
    "eq2.1", "(2.1)", "sum_k C_{L,k} [k; floor((k-a)/2)] = q^T(a) [2L+1; L-a]",
    _schema(L="0..12", a="-6..6"), positivity=True,
)(_kernel_formula(KernelKind.C))
register(
    "eq2.6d", "(2.6d)", "Warnaar: sum_k W_{L,k} [2k; k-a] = q^(2a^2) [2L; L-2a]",
    _schema(L="0..12", a="-6..6"), positivity=True,
)(_kernel_formula(KernelKind.W))
register(
    "eq2.6f", "(2.6f)", "Odd companion: sum_k O_{L,k} [2k+1; k-a] = q^(4T(a)) [2L; L-2a-1]",
    _schema(L="0..12", a="-6..6"), positivity=True,
)(_kernel_formula(KernelKind.O))


@register(
    "eq2.6a",
    "(2.6a)",
    "Berkovich-Uncu: sum_k q^T(k) [L; k] (T_{-1}(k,a) + T_{-1}(k,a+1)) = q^T(a) [2L+1; L-a]",
    _schema(L="0..12", a="-6..6"),
)
def _berkovich_uncu(p: Params) -> Sides:
    lhs, rhs = berkovich_uncu_sides(p["L"], p["a"])
    return Sides(lhs=lhs, rhs=rhs)


@register(
    "eq2.6c",
    "(2.6c)",
    "T_{-1}(k,a) + T_{-1}(k,a+1) = sum_m q^T(m) [k; m] [k-m; floor((k-m-a)/2)]",
    _schema(k="0..12", a="-6..6"),
)
def _trinomial_pair(p: Params) -> Sides:
    k, a = p["k"], p["a"]
    return Sides(lhs=trinomial_tm1(k, a) + trinomial_tm1(k, a + 1), rhs=trinomial_pair_floor(k, a))


# ----------------------------------------------------------------------
# Schur, Lebesgue and Euler


@register("eq2.13", "(2.13)", "Schur's bounded Euler pentagonal number theorem: theta sum = 1", _schema(L="0..40"))
def _schur(p: Params) -> Sides:
    return Sides(lhs=th.theta_sum(th.SCHUR, p["L"]), rhs=ONE)


@register(
    "eq2.14",
    "(2.14)",
    "sum_k C_{L,k} = sum_j (-1)^j q^(2j(3j+1)) [2L+1; L-3j] >= 0",
    _schema(L="0..12"),
    positivity=True,
)
def _kernel_sum_theta(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.C, L, lambda k: ONE)
    return _bounded(lhs, th.LEBESGUE_BOUNDED, L, GParams(N=L, M=L + 1, alpha_k=8, beta_k=4, K=3))


@register("eq2.15", "(2.15)", "sum_k C_{L,k} = sum_k q^T(k) [L; k] (-q)_k", _schema(L="0..20"))
def _kernel_sum(p: Params) -> Sides:
    lhs, rhs = kernel_sum_sides(p["L"])
    return Sides(lhs=lhs, rhs=rhs)


@register(
    "eq2.16",
    "(2.16)",
    "Bounded Lebesgue identity: sum_k q^T(k) [L; k] (-q)_k = sum_j (-1)^j q^(2j(3j+1)) [2L+1; L-3j]",
    _schema(L="0..30"),
    positivity=True,
)
def _lebesgue(p: Params) -> Sides:
    L = p["L"]
    return _bounded(
        lebesgue_bounded_sum(L), th.LEBESGUE_BOUNDED, L, GParams(N=L, M=L + 1, alpha_k=8, beta_k=4, K=3)
    )


@register(
    "eq2.19",
    "(2.19)",
    "Bounded Euler pentagonal number theorem: sum_k (-q)_{L-k} q^((L+1)k) [L; k] = "
    "sum_j (-1)^j q^(3j^2+j) [2L+1; L-3j]",
    _schema(L="0..30"),
    positivity=True,
)
def _pentagonal(p: Params) -> Sides:
    L = p["L"]
    return _bounded(
        pentagonal_bounded_sum(L), th.PENTAGONAL_BOUNDED, L, GParams(N=L, M=L + 1, alpha_k=4, beta_k=2, K=3)
    )


# ----------------------------------------------------------------------
# Foda-Quano and Theorem 1


def _fq_admissible(p: Params) -> bool:
    return p["nu"] >= 1 and 0 <= p["s"] < p["nu"] and p["L"] >= 0


@register(
    "eq2.21",
    "(2.21)",
    "Foda-Quano finite analogue of the Andrews-Gordon identity",
    _schema(nu="1..4", s="0..3", L="0..20"),
    admissible=_fq_admissible,
)
def _foda_quano(p: Params) -> Sides:
    fq = FodaQuanoParams(nu=p["nu"], s=p["s"], L=p["L"])
    return Sides(lhs=th.foda_quano_lhs(fq), rhs=th.theta_sum(th.foda_quano_spec(fq.nu, fq.s), fq.L))


@register(
    "eq2.22",
    "(2.22), (1.7)",
    "C-transform of the Foda-Quano identity: q^T(s) G(L-s, L+1+s, ..., 2nu+1) >= 0",
    _schema(nu="1..3", s="0..2", L="0..12"),
    admissible=_fq_admissible,
    positivity=True,
)
def _theorem1(p: Params) -> Sides:
    fq = FodaQuanoParams(nu=p["nu"], s=p["s"], L=p["L"])
    # G is indexed by L-s: [2L+1; L-s-(2nu+1)j] = [N+M; N-Kj] with N = L-s, M = L+1+s
    return _bounded(
        th.theorem1_lhs(fq),
        th.theorem1_spec(fq.nu, fq.s),
        fq.L,
        theorem1_params(fq.nu, fq.s, fq.L - fq.s),
        shift=triangular(fq.s),
    )


# ----------------------------------------------------------------------
# triangular theta sums and the Rogers-Ramanujan chain


@register("eq3.1", "(3.1)", "sum_j (-1)^j q^T(j) [2L; L-j] = delta_{L,0}", _schema(L="0..40"))
def _triangular_even(p: Params) -> Sides:
    return Sides(lhs=th.theta_sum(th.TRIANGULAR_EVEN, p["L"]), rhs=delta_zero(p["L"]))


@register("eq3.2", "(3.2)", "sum_j (-1)^j q^T(j) [2L+1; L-j] = 0", _schema(L="0..40"))
def _triangular_odd(p: Params) -> Sides:
    return Sides(lhs=th.theta_sum(th.TRIANGULAR_ODD, p["L"]), rhs=ZERO)


@register("eq3.3", "(3.3)", "sum_j (-1)^j q^T(j) [L; floor((L-2j)/2)] = delta_{L,0}", _schema(L="0..40"))
def _triangular_floor(p: Params) -> Sides:
    return Sides(lhs=th.theta_sum(th.TRIANGULAR_FLOOR, p["L"]), rhs=delta_zero(p["L"]))


@register(
    "eq3.4",
    "(3.4)",
    "Bressoud's bounded version of the first Rogers-Ramanujan identity: "
    "W_{L,0} = sum_n q^(n^2) [L; n] = sum_j (-1)^j q^((5j^2+j)/2) [2L; L-2j]",
    _schema(L="0..30"),
)
def _rr_first(p: Params) -> Sides:
    L = p["L"]
    sides = Sides(lhs=rr_first_sum(L), rhs=th.theta_sum(th.ROGERS_RAMANUJAN_FIRST, L))
    sides.cross, sides.cross_label = kernel(KernelKind.W, L, 0), "W_{L,0}"
    return sides


@register(
    "eq3.5",
    "(3.5)",
    "Warnaar's bounded version of the second Rogers-Ramanujan identity: "
    "C_{L,0} = sum_n q^(n^2+n) [L; n] = sum_j (-1)^j q^((5j^2+3j)/2) [2L+1; L-2j]",
    _schema(L="0..30"),
)
def _rr_second(p: Params) -> Sides:
    L = p["L"]
    sides = Sides(lhs=rr_second_sum(L), rhs=th.theta_sum(th.ROGERS_RAMANUJAN_SECOND, L))
    sides.cross, sides.cross_label = kernel(KernelKind.C, L, 0), "C_{L,0}"
    return sides


@register("eq3.7", "(3.7)", "q^(L+1) sum_j (-1)^j q^(5T(j)) [2L; L-2j-1] = 0", _schema(L="0..40"))
def _rr_vanishing(p: Params) -> Sides:
    return Sides(lhs=th.theta_sum(th.ROGERS_RAMANUJAN_VANISHING, p["L"]), rhs=ZERO)


@register(
    "eq3.8",
    "(3.8)",
    "sum_n q^(n^2) [L; n] = sum_j (-1)^j q^((5j^2+j)/2) [2L+1; L-2j]",
    _schema(L="0..30"),
)
def _rr_first_odd(p: Params) -> Sides:
    L = p["L"]
    return Sides(lhs=rr_first_sum(L), rhs=th.theta_sum(th.ROGERS_RAMANUJAN_FIRST_ODD, L))


@register(
    "eq3.9",
    "(3.9)",
    "sum_n q^(n^2) [floor(k/2); n] = sum_j (-1)^j q^((5j^2+j)/2) [k; floor((k-4j)/2)]",
    _schema(k="0..40"),
)
def _rr_floor(p: Params) -> Sides:
    k = p["k"]
    return Sides(lhs=rr_first_sum(k // 2), rhs=th.theta_sum(th.ROGERS_RAMANUJAN_FLOOR, k))


@register(
    "eq3.10",
    "(3.10)",
    "sum_{k,n} C_{L,k} q^(n^2) [floor(k/2); n] = sum_j (-1)^j q^((21j^2+5j)/2) [2L+1; L-4j], "
    "so G(L, L+1, 13/4, 2, 4) >= 0",
    _schema(L="0..12"),
    positivity=True,
)
def _mod21(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.C, L, lambda k: rr_first_sum(k // 2))
    return _bounded(lhs, th.MOD21_BOUNDED, L, GParams(N=L, M=L + 1, alpha_k=13, beta_k=8, K=4))


@register(
    "eq3.13-bounded",
    "(3.13)",
    "sum_k W_{L,k} sum_n q^(n^2) [k; n] = sum_j (-1)^j q^((21j^2+j)/2) [2L; L-4j], "
    "so G(L, L, 11/4, 5/2, 4) >= 0",
    _schema(L="0..12"),
    positivity=True,
)
def _mod21_even(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.W, L, rr_first_sum)
    return _bounded(lhs, th.MOD21_EVEN_BOUNDED, L, GParams(N=L, M=L, alpha_k=11, beta_k=10, K=4))


@register(
    "eq3.14-bounded",
    "(3.14)",
    "sum_k O_{L,k} sum_n q^(n^2+n) [k; n] = sum_j (-1)^j q^((21j^2+11j)/2) [2L; L-1-4j], "
    "so G(L-1, L+1, 4, 5/4, 4) >= 0",
    _schema(L="0..12"),
    positivity=True,
)
def _mod21_odd(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.O, L, rr_second_sum)
    return _bounded(lhs, th.MOD21_ODD_BOUNDED, L, GParams(N=L - 1, M=L + 1, alpha_k=16, beta_k=5, K=4))


@register(
    "eq3.15-bounded",
    "(3.15)",
    "sum_k O_{L,k} sum_n q^(n^2) [k; n] = sum_j (-1)^j q^((21j^2+9j)/2) [2L; L-1-4j], "
    "so G(L-1, L+1, 15/4, 3/2, 4) >= 0",
    _schema(L="0..12"),
    positivity=True,
)
def _mod21_odd_first(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.O, L, rr_first_sum)
    return _bounded(lhs, th.MOD21_ODD_FIRST_BOUNDED, L, GParams(N=L - 1, M=L + 1, alpha_k=15, beta_k=6, K=4))


# ----------------------------------------------------------------------
# the mod 20 chain


@register("eq3.16x", "(3.16x)", "sum_j (-1)^j q^(2j^2) [2L; L-2j] = (-q; q^2)_L", _schema(L="0..30"))
def _mod20_even(p: Params) -> Sides:
    L = p["L"]
    return Sides(lhs=th.theta_sum(th.MOD20_EVEN, L), rhs=odd_squares_product(L))


@register("eq3.17y", "(3.17y)", "q^(L+1) sum_j (-1)^j q^(2j^2+2j) [2L; L-2j-1] = 0", _schema(L="0..40"))
def _mod20_vanishing(p: Params) -> Sides:
    return Sides(lhs=th.theta_sum(th.MOD20_VANISHING, p["L"]), rhs=ZERO)


@register("eq3.18z", "(3.18z)", "sum_j (-1)^j q^(2j^2) [2L+1; L-2j] = (-q; q^2)_L", _schema(L="0..30"))
def _mod20_odd(p: Params) -> Sides:
    L = p["L"]
    return Sides(lhs=th.theta_sum(th.MOD20_ODD, L), rhs=odd_squares_product(L))


@register(
    "eq3.19w",
    "(3.19w)",
    "sum_j (-1)^j q^(2j^2) [k; floor((k-4j)/2)] = (-q; q^2)_{floor(k/2)}",
    _schema(k="0..40"),
)
def _mod20_floor(p: Params) -> Sides:
    k = p["k"]
    return Sides(lhs=th.theta_sum(th.MOD20_FLOOR, k), rhs=odd_squares_product(k // 2))


@register(
    "eq3.20-bounded",
    "(3.20)",
    "sum_k C_{L,k} (-q; q^2)_{floor(k/2)} = sum_j (-1)^j q^(10j^2+2j) [2L+1; L-4j]",
    _schema(L="0..12"),
    positivity=True,
)
def _mod20_bounded(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.C, L, lambda k: odd_squares_product(k // 2))
    return _bounded(lhs, th.MOD20_BOUNDED, L, GParams(N=L, M=L + 1, alpha_k=12, beta_k=8, K=4))


@register(
    "eq3.22-bounded",
    "(3.22)",
    "sum_k W_{L,k} (-q; q^2)_k = sum_j (-1)^j q^(10j^2) [2L; L-4j]",
    _schema(L="0..12"),
    positivity=True,
)
def _mod20_even_bounded(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.W, L, odd_squares_product)
    return _bounded(lhs, th.MOD20_EVEN_BOUNDED, L, GParams(N=L, M=L, alpha_k=10, beta_k=10, K=4))


@register(
    "eq3.23-bounded",
    "(3.23)",
    "sum_k O_{L,k} (-q; q^2)_k = sum_j (-1)^j q^(10j^2+4j) [2L; L-1-4j]",
    _schema(L="0..12"),
    positivity=True,
)
def _mod20_odd_bounded(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.O, L, odd_squares_product)
    return _bounded(lhs, th.MOD20_ODD_BOUNDED, L, GParams(N=L - 1, M=L + 1, alpha_k=14, beta_k=6, K=4))


# ----------------------------------------------------------------------
# Dyson and mod 15


@register(
    "eq3.24",
    "(3.24)",
    "Dyson: sum_j (-1)^j q^T(3j) [2L+1; L-3j] = (q^3; q^3)_L / (q)_L",
    _schema(L="0..30"),
)
def _dyson(p: Params) -> Sides:
    L = p["L"]
    return Sides(lhs=th.theta_sum(th.DYSON, L), rhs=dyson_product(L))


@register(
    "eq3.25",
    "(3.25), (3.26)",
    "sum_k O_{L,k} (q^3; q^3)_k / (q)_k = sum_j (-1)^j q^(5T(3j)) [2L; L-1-6j], "
    "so G(L-1, L+1, 5, 5/2, 6) >= 0",
    _schema(L="0..12"),
    positivity=True,
)
def _mod15(p: Params) -> Sides:
    L = p["L"]
    lhs = apply_transform(KernelKind.O, L, dyson_product)
    return _bounded(lhs, th.MOD15_BOUNDED, L, GParams(N=L - 1, M=L + 1, alpha_k=30, beta_k=15, K=6))


# ----------------------------------------------------------------------
# reports


def _render(poly: IntLaurentPoly, limit: int) -> Optional[str]:
    if len(poly.coeffs) > limit:
        return None
    return poly.render()


def check_params(descriptor: IdentityDescriptor, params: Params) -> Params:
    missing = [name for name in descriptor.param_names if name not in params]
    if missing:
        raise MissingParam(descriptor.identity_id, missing[0])
    return {name: int(params[name]) for name in descriptor.param_names}


def verify(identity_id: str, params: Params, render_limit: int = DEFAULT_RENDER_LIMIT) -> IdentityReport:
    """Build both sides of one instance and compare them exactly."""
    descriptor = describe(identity_id)
    values = check_params(descriptor, params)
    if not descriptor.admissible(values):
        raise VerificationError(f"parameters {values} lie outside the domain of {identity_id}")
    started = time.perf_counter()
    sides = descriptor.build(values)

    notes = list(sides.notes)
    shown = (sides.lhs, sides.rhs)
    mismatch = first_mismatch(sides.lhs, sides.rhs)
    cross_mismatch = None
    if mismatch is None and sides.cross is not None:
        cross_mismatch = first_mismatch(sides.rhs, sides.cross)
        if cross_mismatch is not None:
            # the reported sides are the pair that disagrees
            mismatch = cross_mismatch
            shown = (sides.rhs, sides.cross)
            notes.append(f"sides agree; right side differs from {sides.cross_label} at q^{cross_mismatch}")

    witness = None
    for poly in sides.nonnegative:
        witness = poly.first_negative()
        if witness is not None:
            notes.append(f"negative coefficient at q^{witness}")
            break

    elapsed = int((time.perf_counter() - started) * 1000)
    passed = mismatch is None and witness is None
    if passed:
        logger.debug("{} {} passed in {} ms", identity_id, values, elapsed)
    else:
        logger.warning(
            "{} {} failed: mismatch={} cross={} witness={}", identity_id, values, mismatch, cross_mismatch, witness
        )

    return IdentityReport(
        identity_id=identity_id,
        params=values,
        passed=passed,
        lhs=_render(shown[0], render_limit),
        rhs=_render(shown[1], render_limit),
        first_mismatch_exp=mismatch,
        negative_witness=witness,
        cross_mismatch_exp=cross_mismatch,
        elapsed_millis=elapsed,
        notes=notes,
    )


def positivity_report(
    identity_id: str,
    params: Params,
    polys: Sequence[IntLaurentPoly],
    render_limit: int = DEFAULT_RENDER_LIMIT,
    started: Optional[float] = None,
) -> IdentityReport:
    """A report that passes when every polynomial has nonnegative coefficients."""
    witness = None
    notes = []
    for position, poly in enumerate(polys):
        witness = poly.first_negative()
        if witness is not None:
            if len(polys) > 1:
                notes.append(f"polynomial {position} has a negative coefficient at q^{witness}")
            break
    elapsed = int((time.perf_counter() - started) * 1000) if started is not None else 0
    if witness is not None:
        logger.warning("{} {}: negative coefficient at q^{}", identity_id, params, witness)
    return IdentityReport(
        identity_id=identity_id,
        params=dict(params),
        passed=witness is None,
        lhs=_render(polys[0], render_limit) if len(polys) == 1 else None,
        negative_witness=witness,
        elapsed_millis=elapsed,
        notes=notes,
    )
