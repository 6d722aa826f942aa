import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quadcert.cyclotomic import CyclotomicNumber, root_of_unity
from quadcert.linalg import MonomialMatrix
from quadcert.polynomials import (
    X_VARIABLES,
    Y_VARIABLES,
    Polynomial,
    evaluate_at,
    grevlex_key,
    jacobian,
    s_variables,
)

ONE = CyclotomicNumber.one()


def zeta(n, k=1):
    return root_of_unity(n, k)


def xvar(i):
    return Polynomial.variable(X_VARIABLES, i)


def tau():
    return MonomialMatrix.diagonal(tuple(-i % 8 for i in range(8)))


def sigma():
    return MonomialMatrix(tuple((i + 1) % 8 for i in range(8)), (0,) * 8)


def sigma1():
    return MonomialMatrix(tuple((5 * i + 7) % 8 for i in range(8)), (0,) * 8)


class TestConstruction:
    def test_zero_prune(self):
        p = Polynomial(("a", "b"), {(1, 0): 0, (0, 1): 2})
        assert len(p) == 1
        assert not p.is_zero()
        assert Polynomial.zero(("a",)).is_zero()

    def test_duplicate_keys_merge(self):
        p = Polynomial(("a",), {(1,): 2}) + Polynomial(("a",), {(1,): -2})
        assert p.is_zero()

    def test_validation(self):
        with pytest.raises(ValueError):
            Polynomial(("a", "b"), {(1,): 1})
        with pytest.raises(ValueError):
            Polynomial(("a",), {(-1,): 1})
        with pytest.raises(TypeError):
            Polynomial(("a",), {(1,): 1.5})

    def test_grevlex_order(self):
        # x0^2 > x0*x1 > x1^2 > x0 > x1 > 1 in two variables
        exps = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
        assert sorted(exps, key=grevlex_key, reverse=True) == exps


class TestArithmetic:
    def test_difference_of_squares(self):
        p = (xvar(0) + xvar(4)) * (xvar(0) - xvar(4))
        expected = xvar(0) ** 2 - xvar(4) ** 2
        assert p == expected

    def test_scalar_paths(self):
        p = xvar(2)
        assert 2 * p == p + p
        assert p * Fraction(1, 2) == p.scale(Fraction(1, 2))
        assert p.scale(zeta(8)) == p * zeta(8)

    def test_ring_mismatch(self):
        with pytest.raises(ValueError):
            Polynomial.variable(("a",), 0) + Polynomial.variable(("b",), 0)
        with pytest.raises(ValueError):
            Polynomial.variable(("a",), 0) * Polynomial.variable(("a", "b"), 0)

    def test_degree_and_homogeneity(self):
        q = xvar(0) * xvar(1) + xvar(3) ** 2
        assert q.total_degree() == 2
        assert q.is_homogeneous(2)
        assert not (q + xvar(5)).is_homogeneous()
        assert Polynomial.zero(X_VARIABLES).is_homogeneous()
        assert Polynomial.zero(X_VARIABLES).total_degree() == -1

    def test_pow(self):
        p = xvar(0) + xvar(1)
        assert p ** 2 == p * p
        assert p ** 0 == Polynomial.constant(X_VARIABLES, 1)
        with pytest.raises(ValueError):
            p ** -1


class TestCalculus:
    def test_partial_derivative(self):
        q = xvar(0) ** 2 + xvar(4) ** 2
        assert q.partial_derivative(0) == 2 * xvar(0)
        assert q.partial_derivative(3).is_zero()
        cross = xvar(1) * xvar(7)
        assert cross.partial_derivative(1) == xvar(7)

    def test_euler_identity(self):
        # sum_j x_j dq/dx_j = 2q for any homogeneous quadric
        rng = random.Random(5)
        for _ in range(10):
            terms = {}
            for _ in range(4):
                i, j = rng.randrange(8), rng.randrange(8)
                e = [0] * 8
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = rng.randint(-3, 3)
            q = Polynomial(X_VARIABLES, terms)
            total = Polynomial.zero(X_VARIABLES)
            for j in range(8):
                total = total + xvar(j) * q.partial_derivative(j)
            assert total == 2 * q

    def test_jacobian_small(self):
        vars2 = ("u", "v")
        u = Polynomial.variable(vars2, 0)
        v = Polynomial.variable(vars2, 1)
        system = [u * u - v, u * v]
        m = jacobian(system, [Fraction(2), Fraction(3)])
        assert m.entries[0][0] == 4
        assert m.entries[0][1] == -1
        assert m.entries[1][0] == 3
        assert m.entries[1][1] == 2


class TestSubstitution:
    def test_identity(self):
        q = xvar(0) * xvar(3) + xvar(5) ** 2
        assert q.substitute_linear(MonomialMatrix.identity()) == q

    def test_tau_on_balanced_monomial(self):
        # x1*x7 picks up zeta^-(1+7) = 1 under tau
        q = xvar(1) * xvar(7)
        assert q.substitute_linear(tau()) == q
        # x1*x2 picks up zeta^-3
        p = xvar(1) * xvar(2)
        assert p.substitute_linear(tau()) == p * zeta(8, -3)

    def test_sigma_shifts(self):
        q = xvar(0) ** 2 + xvar(4) ** 2
        assert q.substitute_linear(sigma()) == xvar(1) ** 2 + xvar(5) ** 2

    def test_composition_convention(self):
        # substitute(p, g*h) applies h's rule first:
        # substitute(p, g*h) == substitute(substitute(p, h), g)
        rng = random.Random(23)
        gens = [tau(), sigma(), sigma1()]
        for _ in range(40):
            g, h = rng.choice(gens), rng.choice(gens)
            terms = {}
            for _ in range(3):
                e = [0] * 8
                e[rng.randrange(8)] += 1
                e[rng.randrange(8)] += 1
                terms[tuple(e)] = rng.choice([1, -2, zeta(8, rng.randrange(8))])
            p = Polynomial(X_VARIABLES, terms)
            assert p.substitute_linear(g * h) == p.substitute_linear(h).substitute_linear(g)

    def test_point_action_contract(self):
        # substitute(q, g) evaluated at p equals q at point_matrix(g^-1).p;
        # 100 random (g, q, p) samples.
        rng = random.Random(41)
        gens = [tau(), sigma(), sigma1()]
        pool = [CyclotomicNumber.from_rational(k) for k in (-2, -1, 0, 1, 2, 3)] + [zeta(8, 3)]
        for _ in range(100):
            g = rng.choice(gens)
            for _ in range(rng.randint(0, 2)):
                g = g * rng.choice(gens)
            terms = {}
            for _ in range(rng.randint(1, 3)):
                e = [0] * 8
                for _ in range(rng.randint(1, 2)):
                    e[rng.randrange(8)] += 1
                terms[tuple(e)] = rng.randint(-2, 3)
            q = Polynomial(X_VARIABLES, terms)
            point = [rng.choice(pool) for _ in range(8)]
            moved = g.inverse().point_matrix().apply(point)
            assert q.substitute_linear(g).evaluate(point) == q.evaluate(moved)

    def test_general_substitution(self):
        # restrict x0^2 + x2*x6 to the plane x = s0*e0 + s1*(e2+e6)
        svars = s_variables(2)
        s0 = Polynomial.variable(svars, 0)
        s1 = Polynomial.variable(svars, 1)
        zero = Polynomial.zero(svars)
        images = [s0, zero, s1, zero, zero, zero, s1, zero]
        q = xvar(0) ** 2 + xvar(2) * xvar(6)
        assert q.substitute(images) == s0 ** 2 + s1 ** 2


class TestParametric:
    def make_parametric(self):
        # (y1*y3) * x0^2 - (y2^2) * x1*x7
        a = Polynomial.monomial(Y_VARIABLES, (1, 0, 1))
        b = Polynomial.monomial(Y_VARIABLES, (0, 2, 0))
        e0 = [0] * 8
        e0[0] = 2
        e1 = [0] * 8
        e1[1] = 1
        e1[7] = 1
        return Polynomial(X_VARIABLES, {tuple(e0): a, tuple(e1): -b})

    def test_parametric_flag(self):
        q = self.make_parametric()
        assert q.is_parametric()
        assert not q.specialize((1, 2, 3)).is_parametric()

    def test_specialize_values(self):
        q = self.make_parametric().specialize((1, 2, 3))
        e0 = [0] * 8
        e0[0] = 2
        assert q.coefficient(e0) == 3
        e1 = [0] * 8
        e1[1] = 1
        e1[7] = 1
        assert q.coefficient(e1) == -4

    def test_specialize_can_kill_terms(self):
        q = self.make_parametric().specialize((1, 0, 3))
        assert len(q) == 1

    def test_evaluate_requires_specialization(self):
        q = self.make_parametric()
        with pytest.raises(ValueError):
            q.evaluate([1] * 8)
        point = [1, 1, 0, 0, 0, 0, 0, 1]
        assert evaluate_at(q, point, (1, 2, 3)) == 3 - 4

    def test_substitute_into_parameter_ring(self):
        # symbolic evaluation: x0 -> y1, x1 -> y2, rest 0 in y-ring
        q = self.make_parametric()
        y1 = Polynomial.variable(Y_VARIABLES, 0)
        y2 = Polynomial.variable(Y_VARIABLES, 1)
        zero = Polynomial.zero(Y_VARIABLES)
        images = [y1, y2, zero, zero, zero, zero, zero, y2]
        value = q.substitute(images)
        # (y1*y3)*y1^2 - y2^2*(y2*y2)
        expected = Polynomial(
            Y_VARIABLES, {(3, 0, 1): 1, (0, 4, 0): -1}
        )
        assert value == expected


class TestRender:
    def test_constant_and_zero(self):
        assert Polynomial.zero(("a",)).render() == "0"
        assert Polynomial.constant(("a",), Fraction(3, 2)).render() == "[3/2]@2"

    def test_descending_terms(self):
        p = xvar(1) + xvar(0) ** 2
        assert p.render() == "[1]@2*x0^2 + [1]@2*x1"

    def test_parametric_render(self):
        a = Polynomial.monomial(Y_VARIABLES, (1, 0, 1))
        e = [0] * 8
        e[0] = 2
        q = Polynomial(X_VARIABLES, {tuple(e): a})
        assert q.render() == "([1]@2*y1*y3)*x0^2"


# -- randomized ring laws ----------------------------------------------------

coeffs = st.one_of(
    st.integers(-3, 3),
    st.builds(lambda k: root_of_unity(8, k), st.integers(0, 7)),
)


@st.composite
def polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        e = (draw(st.integers(0, 2)), draw(st.integers(0, 2)))
        terms[e] = draw(coeffs)
    return Polynomial(("a", "b"), terms)


@given(polys(), polys(), polys())
@settings(max_examples=120)
def test_poly_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(polys(), polys())
@settings(max_examples=60)
def test_degree_bounds(p, q):
    if not p.is_zero() and not q.is_zero():
        assert (p * q).total_degree() == p.total_degree() + q.total_degree()
    s = p + q
    if not s.is_zero():
        assert s.total_degree() <= max(p.total_degree(), q.total_degree())
