from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quadcert.cyclotomic import (
    MAX_LEVEL,
    MIN_LEVEL,
    SUPPORTED_ORDERS,
    CyclotomicNumber,
    degree_at,
    root_of_unity,
)

ZETA8 = root_of_unity(8)


def zeta(n, k=1):
    return root_of_unity(n, k)


class TestBasics:
    def test_rational_embedding(self):
        assert CyclotomicNumber.from_rational(3).level == 1
        assert CyclotomicNumber.from_rational(Fraction(3, 2)).as_fraction() == Fraction(3, 2)

    def test_zero_one(self):
        assert CyclotomicNumber.zero().is_zero()
        assert not CyclotomicNumber.one().is_zero()
        assert CyclotomicNumber.one().as_fraction() == 1

    def test_coefficient_length_enforced(self):
        with pytest.raises(ValueError):
            CyclotomicNumber(3, (1, 2))
        with pytest.raises(ValueError):
            CyclotomicNumber(0, (1,))
        with pytest.raises(ValueError):
            CyclotomicNumber(7, [0] * 64)

    def test_minimal_poly_relation(self):
        # zeta_n^(n/2) = -1 and zeta_n^n = 1 at every level.
        for n in SUPPORTED_ORDERS:
            z = zeta(n)
            assert z ** (n // 2) == -1
            assert z ** n == 1

    def test_primitive_order(self):
        for n in SUPPORTED_ORDERS:
            z = zeta(n)
            for k in range(1, n):
                assert z ** k != 1
            assert z ** n == 1


class TestRootOfUnity:
    def test_trivial_exponents(self):
        assert zeta(8, 0) == 1
        assert zeta(8, 4) == -1
        assert zeta(8, 8) == 1
        assert zeta(2, 1) == -1

    def test_negative_exponent_wraps(self):
        assert zeta(8, -1) == zeta(8, 7)

    def test_minimal_level(self):
        # zeta_64^8 is a primitive 8th root, stored at level 3 not 6.
        assert zeta(64, 8) == ZETA8
        assert zeta(64, 8).level == 3
        assert zeta(64, 32) == -1
        assert zeta(64, 32).level == 1

    def test_unsupported_order(self):
        for n in (0, 1, 3, 6, 128):
            with pytest.raises(ValueError):
                root_of_unity(n)


class TestArithmetic:
    def test_add_cancellation(self):
        # zeta_8^2 + zeta_8^6 = i + (-i) = 0
        assert (zeta(8, 2) + zeta(8, 6)).is_zero()

    def test_mul_inverse_pair(self):
        assert ZETA8 * zeta(8, 7) == 1

    def test_reduction_wraps_sign(self):
        # zeta_8 * zeta_8^4 = zeta_8^5 = -zeta_8
        assert ZETA8 * zeta(8, 4) == -ZETA8

    def test_difference_of_squares(self):
        one = CyclotomicNumber.one()
        assert (one + ZETA8) * (one - ZETA8) == one - zeta(8, 2)

    def test_mixed_level_arithmetic(self):
        # i lives at level 2, zeta_8 at level 3; i = zeta_8^2.
        i = zeta(4, 1)
        assert i * i == -1
        assert ZETA8 * ZETA8 == i
        assert (ZETA8 + i) - i == ZETA8

    def test_scalar_coercion(self):
        assert 2 * ZETA8 == ZETA8 + ZETA8
        assert Fraction(1, 2) * (ZETA8 + ZETA8) == ZETA8
        assert (1 + ZETA8) - 1 == ZETA8

    def test_pow_negative(self):
        assert ZETA8 ** -1 == zeta(8, 7)
        assert ZETA8 ** -3 == zeta(8, 5)


class TestInverse:
    def test_rational_inverse(self):
        assert CyclotomicNumber.from_rational(2).inverse() == Fraction(1, 2)

    def test_root_inverse(self):
        assert ZETA8.inverse() == zeta(8, 7)

    def test_one_plus_i_inverse_frozen(self):
        # (1 + zeta_8^2)^-1 = (1 - zeta_8^2) / 2, worked by hand from
        # (1 + i)(1 - i) = 2.
        a = CyclotomicNumber.one() + zeta(8, 2)
        expected = (CyclotomicNumber.one() - zeta(8, 2)) * Fraction(1, 2)
        assert a.inverse() == expected
        assert a * a.inverse() == 1

    def test_zero_inverse_raises(self):
        with pytest.raises(ZeroDivisionError):
            CyclotomicNumber.zero().inverse()
        with pytest.raises(ZeroDivisionError):
            (ZETA8 - ZETA8).inverse()

    def test_division(self):
        assert (zeta(8, 3) / ZETA8) == zeta(8, 2)
        assert 1 / ZETA8 == zeta(8, 7)


class TestPromotion:
    def test_promote_stride(self):
        up = ZETA8.promote(6)
        assert up.level == 6
        assert up.coeffs[8] == 1
        assert sum(1 for c in up.coeffs if c) == 1

    def test_promote_round_trip(self):
        assert ZETA8.promote(6) == ZETA8
        assert hash(ZETA8.promote(6)) == hash(ZETA8)

    def test_promote_down_raises(self):
        with pytest.raises(ValueError):
            zeta(64, 1).promote(3)

    def test_promote_respects_arithmetic(self):
        a = 1 + zeta(8, 3)
        b = zeta(16, 5)
        assert a.promote(5) * b == a * b
        assert a.promote(6) + b.promote(6) == a + b


class TestText:
    def test_render(self):
        assert ZETA8.to_text() == "[0, 1, 0, 0]@8"
        assert CyclotomicNumber.from_rational(Fraction(-3, 2)).to_text() == "[-3/2]@2"

    def test_round_trip(self):
        for value in (ZETA8, zeta(64, 13) + Fraction(2, 7), CyclotomicNumber.zero()):
            assert CyclotomicNumber.from_text(value.to_text()) == value

    def test_parse_demotes(self):
        assert CyclotomicNumber.from_text("[0, 0, 1, 0]@8") == zeta(4, 1)

    def test_malformed(self):
        for text in ("", "[1, 2]", "1@8", "[1]@3", "[1, x]@4"):
            with pytest.raises(ValueError):
                CyclotomicNumber.from_text(text)


# -- randomized field-axiom checks ------------------------------------------

small_fractions = st.fractions(
    min_value=-3, max_value=3, max_denominator=4
)


@st.composite
def cyclotomics(draw, max_level=4):
    level = draw(st.integers(MIN_LEVEL, max_level))
    coeffs = draw(
        st.lists(small_fractions, min_size=degree_at(level), max_size=degree_at(level))
    )
    return CyclotomicNumber(level, coeffs)


@given(cyclotomics(), cyclotomics(), cyclotomics())
@settings(max_examples=150)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + CyclotomicNumber.zero() == a
    assert a * CyclotomicNumber.one() == a
    assert (a - a).is_zero()


@given(cyclotomics())
@settings(max_examples=150)
def test_inverse_axiom(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(cyclotomics(max_level=3), st.integers(4, MAX_LEVEL))
@settings(max_examples=80)
def test_promotion_is_field_homomorphism(a, level):
    b = a.promote(level)
    assert b == a
    assert b * b == a * a
    assert b + b == a + a


@given(cyclotomics(), cyclotomics())
@settings(max_examples=100)
def test_equality_matches_subtraction(a, b):
    assert (a == b) == (a - b).is_zero()
