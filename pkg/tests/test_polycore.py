import random

import pytest

from algebra.polycore import (
    IntLaurentPoly,
    ONE,
    Q,
    TruncSeries,
    ZERO,
    first_mismatch,
    first_series_mismatch,
    is_nonnegative,
    parse_poly,
    poly_sum,
    series_invert,
)


def test_construction_trims_zeros_on_both_ends():
    p = IntLaurentPoly((0, 0, 3, 0, -1, 0), 2)
    assert p.min_exp == 4
    assert p.coeffs == (3, 0, -1)
    assert p.max_exp == 6
    assert IntLaurentPoly((0, 0)) == ZERO
    assert ZERO.max_exp is None


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.min_exp = 3


def test_ring_operations():
    a = parse_poly("1 + q")
    b = parse_poly("1 - q")
    assert a * b == parse_poly("1 - q^2")
    assert a + b == IntLaurentPoly((2,))
    assert a - a == ZERO
    assert 3 * a == parse_poly("3 + 3*q")
    assert (Q * Q).coefficient(2) == 1


def test_shift_dilate_reverse():
    p = parse_poly("1 + 2*q")
    assert p.shift(-3) == parse_poly("q^-3 + 2*q^-2")
    assert p.dilate(3) == parse_poly("1 + 2*q^3")
    assert p.reverse() == parse_poly("2*q^-1 + 1")
    with pytest.raises(ValueError):
        p.dilate(0)


def test_render_format():
    assert ZERO.render() == "0"
    assert parse_poly("1 + q + 2*q^2 + q^3 + q^4").render() == "1 + q + 2*q^2 + q^3 + q^4"
    assert IntLaurentPoly((-1, 2), -1).render() == "-q^-1 + 2"
    assert IntLaurentPoly((-3,), 5).render() == "-3*q^5"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("")
    with pytest.raises(ValueError):
        parse_poly("1 + x")


def test_mismatch_and_negativity():
    a = parse_poly("1 + q + q^3")
    b = parse_poly("1 + q + 2*q^3")
    assert first_mismatch(a, a) is None
    assert first_mismatch(a, b) == 3
    assert is_nonnegative(a) == (True, None)
    assert is_nonnegative(parse_poly("1 - q^2 + q^3")) == (False, 2)


def test_poly_sum_matches_repeated_addition():
    polys = [parse_poly("1 + q"), parse_poly("-q + q^5"), parse_poly("q^-2")]
    assert poly_sum(polys) == polys[0] + polys[1] + polys[2]
    assert poly_sum([]) == ZERO


def test_value_at_one():
    assert parse_poly("1 + q + 2*q^2 + q^3 + q^4").value_at_one() == 6


def test_series_truncates_at_cap():
    s = TruncSeries((1, 1, 1, 1, 1), 2)
    assert s.coeffs == (1, 1, 1)
    assert s.render() == "1 + q + q^2 + O(q^3)"
    short = TruncSeries((1, 1), 1)
    assert (s * short).cap == 1


def test_series_from_poly():
    assert TruncSeries.from_poly(parse_poly("q^5"), 3) == TruncSeries.zero(3)
    with pytest.raises(ValueError):
        TruncSeries.from_poly(parse_poly("q^-1"), 3)


def test_series_invert():
    geometric = series_invert(TruncSeries((1, -1), 6))
    assert geometric.coeffs == (1,) * 7
    assert series_invert(TruncSeries((-1,), 2)).coeffs == (-1, 0, 0)
    with pytest.raises(ValueError):
        series_invert(TruncSeries((2, 1), 3))


def test_mul_factor_and_shift():
    s = TruncSeries.one(5).mul_factor(2)
    assert s.coeffs == (1, 0, -1, 0, 0, 0)
    assert s.mul_factor(1, sign=-1).coeffs == (1, 1, -1, -1, 0, 0)
    assert s.shift(1).coeffs == (0, 1, 0, -1, 0, 0)
    with pytest.raises(ValueError):
        s.shift(-1)


def test_first_series_mismatch_uses_smaller_cap():
    a = TruncSeries((1, 2, 3), 2)
    b = TruncSeries((1, 2, 3, 4), 3)
    assert first_series_mismatch(a, b) is None
    assert first_series_mismatch(a, TruncSeries((1, 0), 1)) == 1


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_dilate_commutes_with_reverse(t):
    for text in ("1 + 2*q - q^3", "q^-2 + 5", "3*q^4"):
        p = parse_poly(text)
        assert p.dilate(t).reverse() == p.reverse().dilate(t)


def test_series_invert_random_unit_constant():
    rng = random.Random(20)
    for _ in range(100):
        coeffs = [rng.choice((1, -1))] + [rng.randint(-5, 5) for _ in range(50)]
        p = TruncSeries(coeffs, 50)
        assert (series_invert(p) * p).coeffs == TruncSeries.one(50).coeffs


def _random_poly(rng):
    return IntLaurentPoly([rng.randint(-4, 4) for _ in range(rng.randint(0, 6))], rng.randint(-3, 3))


def test_ring_axioms_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = _random_poly(rng), _random_poly(rng), _random_poly(rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * ZERO == ZERO
        assert a * ONE == a
