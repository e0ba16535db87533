from fractions import Fraction

import pytest

from algebra.polycore import ONE, ZERO
from models.parameters import FodaQuanoParams, KernelKind
from verifiers import theta as th
from verifiers.errors import NegativeExponent, NonIntegerExponent, VerificationError


def test_affine():
    assert th.Affine(2, 1).at(5) == 11
    assert str(th.Affine(2, 1)) == "2L+1"
    assert str(th.Affine(1, -3)) == "L-3"
    assert str(th.Affine(0, 4)) == "4"


def test_schur_bounded_pentagonal_theorem_is_one():
    for L in range(0, 25):
        assert th.theta_sum(th.SCHUR, L) == ONE


def test_triangular_sums():
    assert th.theta_sum(th.TRIANGULAR_EVEN, 0) == ONE
    for L in range(1, 15):
        assert th.theta_sum(th.TRIANGULAR_EVEN, L) == ZERO
        assert th.theta_sum(th.TRIANGULAR_FLOOR, L) == ZERO
    for L in range(0, 15):
        assert th.theta_sum(th.TRIANGULAR_ODD, L) == ZERO


def test_vanishing_sums_with_prefactor():
    for L in range(0, 15):
        assert th.theta_sum(th.ROGERS_RAMANUJAN_VANISHING, L) == ZERO
        assert th.theta_sum(th.MOD20_VANISHING, L) == ZERO


def test_transformed_exponents():
    assert th.LEBESGUE_BOUNDED.exponent == (Fraction(6), Fraction(2), Fraction(0))
    assert th.LEBESGUE_BOUNDED.top == th.Affine(2, 1)
    assert th.LEBESGUE_BOUNDED.bottom == th.Linear(th.Affine(1, 0), 3)
    assert th.MOD21_BOUNDED.exponent == (Fraction(21, 2), Fraction(5, 2), Fraction(0))
    assert th.MOD20_BOUNDED.exponent == (Fraction(10), Fraction(2), Fraction(0))
    assert th.MOD21_EVEN_BOUNDED.exponent == (Fraction(21, 2), Fraction(1, 2), Fraction(0))
    assert th.MOD21_ODD_BOUNDED.exponent == (Fraction(21, 2), Fraction(11, 2), Fraction(0))
    assert th.MOD21_ODD_BOUNDED.bottom == th.Linear(th.Affine(1, -1), 4)
    assert th.MOD15_BOUNDED.exponent == (Fraction(45, 2), Fraction(15, 2), Fraction(0))
    assert th.MOD15_BOUNDED.bottom == th.Linear(th.Affine(1, -1), 6)


@pytest.mark.parametrize(
    "spec,kind",
    [
        (th.SCHUR, KernelKind.C),
        (th.ROGERS_RAMANUJAN_FLOOR, KernelKind.C),
        (th.MOD20_FLOOR, KernelKind.C),
        (th.ROGERS_RAMANUJAN_FIRST, KernelKind.W),
        (th.MOD20_EVEN, KernelKind.W),
        (th.ROGERS_RAMANUJAN_SECOND, KernelKind.O),
        (th.ROGERS_RAMANUJAN_FIRST_ODD, KernelKind.O),
        (th.DYSON, KernelKind.O),
    ],
)
def test_transform_then_sum_equals_sum_then_transform(spec, kind):
    for L in range(0, 13):
        by_transform, by_spec = th.transform_chain_sides(spec, kind, L)
        assert by_transform == by_spec, (spec.name, L)


def test_transform_rejects_wrong_shapes():
    with pytest.raises(VerificationError):
        th.transform_theta(KernelKind.W, th.SCHUR)
    with pytest.raises(VerificationError):
        th.transform_theta(KernelKind.C, th.ROGERS_RAMANUJAN_FIRST)
    with pytest.raises(VerificationError):
        th.transform_theta(KernelKind.O, th.ROGERS_RAMANUJAN_FIRST)
    with pytest.raises(VerificationError):
        th.transform_theta(KernelKind.W, th.ROGERS_RAMANUJAN_VANISHING)


def test_non_integer_exponent_is_an_error():
    bad = th.ThetaSumSpec("half", th.Affine(1, 0), (Fraction(1, 2), 0, 0), th.Floor(2, 0))
    with pytest.raises(NonIntegerExponent):
        th.theta_sum(bad, 2)


def test_negative_exponent_is_an_error():
    bad = th.ThetaSumSpec("negative", th.Affine(2, 0), (0, 1, 0), th.Linear(th.Affine(1, 0), 1))
    with pytest.raises(NegativeExponent):
        th.theta_sum(bad, 1)


def test_describe_mentions_every_piece():
    text = th.ROGERS_RAMANUJAN_VANISHING.describe()
    assert text.startswith("q^(L+1) ")
    assert "[2L; L-1-2j]" in text


def test_decreasing_chains():
    assert list(th.decreasing_chains(2, 4)) == [(0, 0), (1, 0), (1, 1), (2, 0)]
    assert list(th.decreasing_chains(0, 0)) == [()]
    assert list(th.decreasing_chains(3, -1)) == []
    for chain in th.decreasing_chains(3, 9):
        assert list(chain) == sorted(chain, reverse=True)
        assert 2 * sum(chain) <= 9


def test_foda_quano_nu_one_is_schur():
    for L in range(0, 10):
        fq = FodaQuanoParams(nu=1, s=0, L=L)
        assert th.foda_quano_lhs(fq) == ONE
        assert th.theta_sum(th.foda_quano_spec(1, 0), L) == ONE


@pytest.mark.parametrize("nu", [2, 3])
def test_foda_quano_identity(nu):
    for s in range(nu):
        for L in range(0, 11):
            fq = FodaQuanoParams(nu=nu, s=s, L=L)
            assert th.foda_quano_lhs(fq) == th.theta_sum(th.foda_quano_spec(nu, s), L), (nu, s, L)


def test_foda_quano_params_validate():
    with pytest.raises(ValueError):
        FodaQuanoParams(nu=2, s=2, L=3)
    with pytest.raises(ValueError):
        FodaQuanoParams(nu=0, s=0, L=3)


def test_theorem1_for_nu_one_is_bounded_lebesgue():
    assert th.theorem1_spec(1, 0).exponent == th.LEBESGUE_BOUNDED.exponent
    for L in range(0, 8):
        fq = FodaQuanoParams(nu=1, s=0, L=L)
        assert th.theorem1_lhs(fq) == th.theta_sum(th.LEBESGUE_BOUNDED, L)
