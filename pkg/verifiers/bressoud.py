"""
Bressoud polynomials
G(N, M, alpha, beta, K; q), the admissible parameter region of Bressoud's positivity
conjecture, and the Borwein polynomials A_n, B_n, C_n with their product decomposition.
"""

from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Tuple

from loguru import logger

from algebra.polycore import IntLaurentPoly, poly_sum
from algebra.qcomb import pochhammer, q_binom_top_bottom
from models.parameters import GParams, RegionVerdict
from verifiers.errors import NegativeExponent, NonIntegerExponent


def g_poly(p: GParams) -> IntLaurentPoly:
    """
    sum_j (-1)^j q^{j((aK+bK)j + aK-bK)/2} [N+M; N-Kj]

    Only j with 0 <= N-Kj <= N+M carry a nonzero binomial, i.e.
    ceil(-M/K) <= j <= floor(N/K).
    """
    total = p.N + p.M
    j_lo = -(p.M // p.K)
    j_hi = p.N // p.K
    s, d = p.alpha_k + p.beta_k, p.alpha_k - p.beta_k
    terms = []
    for j in range(j_lo, j_hi + 1):
        binom = q_binom_top_bottom(total, p.N - p.K * j)
        if binom.is_zero():
            continue
        twice = j * (s * j + d)
        if twice % 2:
            raise NonIntegerExponent(j, Fraction(twice, 2), p.label())
        exp = twice // 2
        if exp < 0:
            raise NegativeExponent(j, exp, p.label())
        term = binom.shift(exp)
        terms.append(-term if j % 2 else term)
    return poly_sum(terms)


def region_check(p: GParams) -> RegionVerdict:
    """
    Membership in the region of the conjecture:
        N, M >= 0,  1 <= alpha+beta <= 2K-1,  beta-K <= N-M <= K-alpha,
    every inequality strict when K = 2.
    """
    strict = p.K == 2
    alpha, beta, K = p.alpha, p.beta, p.K
    diff = p.N - p.M
    checks: List[Tuple[str, Fraction, Fraction]] = [
        ("1 <= alpha+beta", Fraction(1), alpha + beta),
        ("alpha+beta <= 2K-1", alpha + beta, Fraction(2 * K - 1)),
        ("beta-K <= N-M", beta - K, Fraction(diff)),
        ("N-M <= K-alpha", Fraction(diff), K - alpha),
    ]
    violated = []
    if p.N < 0:
        violated.append("0 <= N")
    if p.M < 0:
        violated.append("0 <= M")
    for name, lower, upper in checks:
        ok = lower < upper if strict else lower <= upper
        if not ok:
            violated.append(name.replace("<=", "<") if strict else name)
    return RegionVerdict(in_region=not violated, violated=violated)


def borwein_abc(n: int) -> Tuple[IntLaurentPoly, IntLaurentPoly, IntLaurentPoly]:
    """(A_n, B_n, C_n) = (G(n,n,5/3,4/3,3), G(n-1,n+1,7/3,2/3,3), G(n-1,n+1,8/3,1/3,3))."""
    if n < 0:
        raise ValueError(f"Borwein polynomials need n >= 0, got {n}")
    a = g_poly(GParams(N=n, M=n, alpha_k=5, beta_k=4, K=3))
    b = g_poly(GParams(N=n - 1, M=n + 1, alpha_k=7, beta_k=2, K=3))
    c = g_poly(GParams(N=n - 1, M=n + 1, alpha_k=8, beta_k=1, K=3))
    return a, b, c


def borwein_product(n: int) -> IntLaurentPoly:
    """prod_{k=1}^n (1 - q^{3k-1})(1 - q^{3k-2}) = (q^2; q^3)_n (q; q^3)_n."""
    return pochhammer(1, 2, 3, n) * pochhammer(1, 1, 3, n)


def borwein_sides(n: int) -> Tuple[IntLaurentPoly, IntLaurentPoly]:
    a, b, c = borwein_abc(n)
    rhs = a.dilate(3) - b.dilate(3).shift(1) - c.dilate(3).shift(2)
    return borwein_product(n), rhs


def borwein_decomposition(n: int) -> bool:
    lhs, rhs = borwein_sides(n)
    return lhs == rhs


def theorem1_params(nu: int, s: int, L: int) -> GParams:
    """
    G(L, L+1+2s, (nu+1)(1 + (1+2s)/(2nu+1)), (nu+1)(1 - (1+2s)/(2nu+1)), 2nu+1),
    whose alpha*K and beta*K are 2(nu+1)(nu+s+1) and 2(nu+1)(nu-s).
    """
    return GParams(
        N=L,
        M=L + 1 + 2 * s,
        alpha_k=2 * (nu + 1) * (nu + s + 1),
        beta_k=2 * (nu + 1) * (nu - s),
        K=2 * nu + 1,
    )


# Infinite families settled by the transformations, keyed by a short name.
PROVEN_FAMILIES: List[Tuple[str, Callable[[int], GParams]]] = [
    ("G(L,L+1,8/3,4/3,3)", lambda L: GParams(N=L, M=L + 1, alpha_k=8, beta_k=4, K=3)),
    ("G(L,L+1,4/3,2/3,3)", lambda L: GParams(N=L, M=L + 1, alpha_k=4, beta_k=2, K=3)),
    ("G(L,L+1,13/4,2,4)", lambda L: GParams(N=L, M=L + 1, alpha_k=13, beta_k=8, K=4)),
    ("G(L,L,11/4,5/2,4)", lambda L: GParams(N=L, M=L, alpha_k=11, beta_k=10, K=4)),
    ("G(L-1,L+1,4,5/4,4)", lambda L: GParams(N=L - 1, M=L + 1, alpha_k=16, beta_k=5, K=4)),
    ("G(L-1,L+1,15/4,3/2,4)", lambda L: GParams(N=L - 1, M=L + 1, alpha_k=15, beta_k=6, K=4)),
    ("G(L-1,L+1,5,5/2,6)", lambda L: GParams(N=L - 1, M=L + 1, alpha_k=30, beta_k=15, K=6)),
]


def conjecture_grid(K: int, size: int) -> Iterator[GParams]:
    """
    Every (N, M, alphaK, betaK) with N, M >= 0, N+M <= size and
    0 <= alphaK, betaK <= K(2K-1); region membership is decided by the caller.
    """
    bound = K * (2 * K - 1)
    for total in range(size + 1):
        for N in range(total + 1):
            for alpha_k in range(bound + 1):
                for beta_k in range(bound + 1 - alpha_k):
                    yield GParams(N=N, M=total - N, alpha_k=alpha_k, beta_k=beta_k, K=K)


def instance_witness(p: GParams) -> Tuple[IntLaurentPoly, Optional[int]]:
    """Evaluate G and return it with its first negative exponent, if any."""
    poly = g_poly(p)
    witness = poly.first_negative()
    if witness is not None:
        logger.warning("negative coefficient at q^{} in {}", witness, p.label())
    return poly, witness
