"""Certifier for the order-64 monomial group actions on a pencil of
quadric complete intersections in P^7.

The variety is cut out by four quadrics in x0..x7 whose coefficients are
polynomials in three rational parameters y1, y2, y3.  Everything proved
here is proved exactly: ideal invariance as a polynomial identity in x and
y, the 64-point singular orbit and its ordinary-double-point certificates
at chosen rational parameter values, and fixed-point-freeness element by
element via exact eigenspace analysis plus Groebner emptiness checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CyclotomicNumber, root_of_unity
from .groups import FiniteGroup, ProjectiveElement, element_order
from .linalg import EigenspaceComponent, ExactMatrix, MonomialMatrix
from .groebner import projective_zero_set_empty
from .polynomials import Polynomial, X_VARIABLES, Y_VARIABLES, s_variables

MAX_SPECIALIZATION_HEIGHT = 97


# -- parameter points ---------------------------------------------------------


@dataclass(frozen=True)
class ParameterPoint:
    """A rational value for (y1, y2, y3), or the symbolic point."""

    values: tuple[Fraction, Fraction, Fraction] | None

    @classmethod
    def at(cls, y1, y2, y3) -> "ParameterPoint":
        return cls((Fraction(y1), Fraction(y2), Fraction(y3)))

    @classmethod
    def symbolic(cls) -> "ParameterPoint":
        return cls(None)

    @property
    def is_symbolic(self) -> bool:
        return self.values is None

    def triple(self) -> tuple[Fraction, Fraction, Fraction]:
        if self.values is None:
            raise ValueError("symbolic parameter point has no numeric value")
        return self.values

    def render(self) -> str:
        if self.values is None:
            return "symbolic"
        return ",".join(str(v) for v in self.values)


def _y_triple(y) -> tuple[Fraction, Fraction, Fraction]:
    if isinstance(y, ParameterPoint):
        return y.triple()
    values = tuple(Fraction(v) for v in y)
    if len(values) != 3:
        raise ValueError("parameter point needs exactly three values")
    return values


# -- the quadric system -------------------------------------------------------


@dataclass(frozen=True)
class QuadricSystem:
    """Four quadrics in x0..x7 with coefficients in the y-parameter ring
    (or plain scalars, for custom systems)."""

    quadrics: tuple[Polynomial, ...]

    def __post_init__(self):
        for q in self.quadrics:
            if q.variables != X_VARIABLES:
                raise ValueError("quadrics must live in the x0..x7 ring")
            if not q.is_homogeneous(2):
                raise ValueError("quadrics must be homogeneous of degree 2")

    def specialized(self, y) -> tuple[Polynomial, ...]:
        triple = _y_triple(y)
        return tuple(q.specialize(triple) for q in self.quadrics)

    def to_records(self) -> list[list[dict]]:
        out = []
        for q in self.quadrics:
            rows = []
            for exponents in q.sorted_exponents():
                coeff = q.terms[exponents]
                if isinstance(coeff, Polynomial):
                    for y_exp in sorted(coeff.terms, reverse=True):
                        rows.append(
                            {
                                "x_exponents": list(exponents),
                                "y_exponents": list(y_exp),
                                "coefficient": coeff.terms[y_exp].to_text(),
                            }
                        )
                else:
                    rows.append(
                        {
                            "x_exponents": list(exponents),
                            "y_exponents": [0, 0, 0],
                            "coefficient": coeff.to_text(),
                        }
                    )
            out.append(rows)
        return out

    @classmethod
    def from_records(cls, records: Sequence[Sequence[dict]]) -> "QuadricSystem":
        if len(records) != 4:
            raise ValueError(f"need exactly 4 quadrics, got {len(records)}")
        quadrics = []
        for rows in records:
            collected: dict[tuple[int, ...], dict] = {}
            for row in rows:
                x_exp = tuple(int(e) for e in row["x_exponents"])
                y_exp = tuple(int(e) for e in row["y_exponents"])
                if len(x_exp) != 8 or len(y_exp) != 3:
                    raise ValueError("records need 8 x-exponents and 3 y-exponents")
                coeff = CyclotomicNumber.from_text(row["coefficient"])
                y_terms = collected.setdefault(x_exp, {})
                y_terms[y_exp] = y_terms.get(y_exp, CyclotomicNumber.zero()) + coeff
            terms = {}
            for x_exp, y_terms in collected.items():
                y_poly = Polynomial(Y_VARIABLES, y_terms)
                if y_poly.is_zero():
                    continue
                if set(y_poly.terms) == {(0, 0, 0)}:
                    terms[x_exp] = y_poly.terms[(0, 0, 0)]
                else:
                    terms[x_exp] = y_poly
            quadrics.append(Polynomial(X_VARIABLES, terms))
        return cls(tuple(quadrics))


def build_quadrics() -> QuadricSystem:
    """The standard pencil: quadric k (k = 0..3) is

        y1*y3*(x_k^2 + x_{k+4}^2)
        - y2^2*(x_{k+1}*x_{k+7} + x_{k+3}*x_{k+5})
        + (y1^2 + y3^2)*x_{k+2}*x_{k+6}

    with all x-indices mod 8.
    """
    square_coeff = Polynomial.monomial(Y_VARIABLES, (1, 0, 1))
    cross_coeff = -Polynomial.monomial(Y_VARIABLES, (0, 2, 0))
    mixed_coeff = Polynomial(Y_VARIABLES, {(2, 0, 0): 1, (0, 0, 2): 1})

    def x_pair(i, j):
        e = [0] * 8
        e[i % 8] += 1
        e[j % 8] += 1
        return tuple(e)

    quadrics = []
    for k in range(4):
        terms = {
            x_pair(k, k): square_coeff,
            x_pair(k + 4, k + 4): square_coeff,
            x_pair(k + 1, k + 7): cross_coeff,
            x_pair(k + 3, k + 5): cross_coeff,
            x_pair(k + 2, k + 6): mixed_coeff,
        }
        quadrics.append(Polynomial(X_VARIABLES, terms))
    return QuadricSystem(tuple(quadrics))


def planted_control_system() -> QuadricSystem:
    """Negative control: the four antipodal coordinate products.  Its zero
    locus contains every coordinate point, so any element fixing one is
    caught by the freeness machinery."""
    quadrics = []
    for i in range(4):
        e = [0] * 8
        e[i] = 1
        e[i + 4] = 1
        quadrics.append(Polynomial.monomial(X_VARIABLES, e))
    return QuadricSystem(tuple(quadrics))


# -- base point and orbit -----------------------------------------------------


def base_point_symbolic() -> list[Polynomial]:
    """The distinguished singular point as y-ring expressions:
    (0, y1, y2, y3, 0, -y3, -y2, -y1)."""
    y1 = Polynomial.variable(Y_VARIABLES, 0)
    y2 = Polynomial.variable(Y_VARIABLES, 1)
    y3 = Polynomial.variable(Y_VARIABLES, 2)
    zero = Polynomial.zero(Y_VARIABLES)
    return [zero, y1, y2, y3, zero, -y3, -y2, -y1]


def base_point(y) -> tuple[CyclotomicNumber, ...]:
    y1, y2, y3 = (CyclotomicNumber.from_rational(v) for v in _y_triple(y))
    zero = CyclotomicNumber.zero()
    return (zero, y1, y2, y3, zero, -y3, -y2, -y1)


def base_point_vanishes_symbolically(system: QuadricSystem) -> bool:
    """All four quadrics vanish at the base point as polynomial identities
    in y, not merely at chosen specializations."""
    images = base_point_symbolic()
    return all(q.substitute(images).is_zero() for q in system.quadrics)


def projective_point_key(coords: Sequence[CyclotomicNumber]) -> tuple:
    """Canonical form under scaling: divide by the first nonzero coordinate.
    Equal keys exactly characterize proportional vectors."""
    pivot = next((c for c in coords if not c.is_zero()), None)
    if pivot is None:
        raise ValueError("projective point cannot be the zero vector")
    inv = pivot.inverse()
    return tuple((c * inv).sort_key() for c in coords)


@dataclass(frozen=True)
class OrbitPoint:
    coordinates: tuple[CyclotomicNumber, ...]
    group_element: ProjectiveElement

    def render(self) -> str:
        return "(" + " : ".join(c.to_text() for c in self.coordinates) + ")"


def singular_orbit(system: QuadricSystem, group: FiniteGroup, y) -> list[OrbitPoint]:
    """Images of the base point under the inverse-transpose action of every
    group element, deduplicated projectively, in group discovery order."""
    origin = base_point(y)
    seen = {}
    out = []
    for g in group.elements:
        mat = g.rep if isinstance(g, ProjectiveElement) else g
        coords = tuple(mat.point_matrix().apply(origin))
        key = projective_point_key(coords)
        if key not in seen:
            seen[key] = True
            out.append(OrbitPoint(coords, g))
    return out


# -- ordinary double point certification --------------------------------------


@dataclass(frozen=True)
class ODPCertificate:
    point: tuple[CyclotomicNumber, ...]
    on_variety: bool
    jacobian_rank: int
    hessian_restricted_rank: int
    null_combination: tuple[CyclotomicNumber, ...] | None

    @property
    def passes(self) -> bool:
        return self.on_variety and self.jacobian_rank == 3 and self.hessian_restricted_rank == 4


def _hessian(quadric: Polynomial) -> ExactMatrix:
    zeros = [CyclotomicNumber.zero()] * 8
    rows = []
    for j in range(8):
        dj = quadric.partial_derivative(j)
        rows.append([dj.partial_derivative(k).evaluate(zeros) for k in range(8)])
    return ExactMatrix(rows)


def verify_odp(point, system: QuadricSystem, y) -> ODPCertificate:
    """Exact ordinary-double-point certificate at one point.

    Steps: all four quadrics vanish; the 4x8 Jacobian has rank exactly 3;
    the left-kernel combination of quadrics has a constant Hessian H with
    H*p = 0; and H restricted to the Jacobian kernel (which contains p)
    has rank exactly 4, i.e. the combination cuts a nondegenerate quadric
    cone transverse to the other three.
    """
    coords = tuple(point.coordinates) if isinstance(point, OrbitPoint) else tuple(point)
    quadrics = system.specialized(y)
    on_variety = all(q.evaluate(coords).is_zero() for q in quadrics)
    if not on_variety:
        return ODPCertificate(coords, False, -1, -1, None)

    rows = []
    for q in quadrics:
        rows.append([q.partial_derivative(j).evaluate(coords) for j in range(8)])
    jac = ExactMatrix(rows)
    j_rank = jac.rank()
    if j_rank != 3:
        return ODPCertificate(coords, True, j_rank, -1, None)

    kernel = jac.left_kernel()
    combo = tuple(kernel[0])
    singular_quadric = Polynomial.zero(X_VARIABLES)
    for c, q in zip(combo, quadrics):
        singular_quadric = singular_quadric + q.scale(c)
    hess = _hessian(singular_quadric)
    image = hess.apply(list(coords))
    if any(not v.is_zero() for v in image):
        return ODPCertificate(coords, True, j_rank, -1, combo)

    tangent = jac.right_kernel()
    basis = ExactMatrix([[vec[j] for vec in tangent] for j in range(8)])
    restricted = basis.transpose() * hess * basis
    h_rank = restricted.rank()
    return ODPCertificate(coords, True, j_rank, h_rank, combo)


# -- ideal invariance ---------------------------------------------------------


@dataclass(frozen=True)
class InvarianceResult:
    ok: bool
    matrix: tuple[tuple[CyclotomicNumber, ...], ...] | None
    witness_monomial: tuple[int, ...] | None

    def witness_text(self) -> str | None:
        if self.witness_monomial is None:
            return None
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(X_VARIABLES, self.witness_monomial)
            if e
        ]
        return "*".join(factors) if factors else "1"


def _ratio_candidates(pullback: Polynomial, quadrics) -> list[CyclotomicNumber]:
    """Scalar guess per quadric from the leading-monomial coefficient ratio.
    Only used to build a readable residual once matching is known to fail."""
    out = []
    for q in quadrics:
        lead = max(q.terms)
        out.append(_scalar_ratio(pullback.terms.get(lead), q.terms[lead]))
    return out


def _scalar_ratio(target, source) -> CyclotomicNumber:
    zero = CyclotomicNumber.zero()
    if target is None:
        return zero
    if isinstance(source, Polynomial):
        if not isinstance(target, Polynomial):
            return zero
        lead = max(source.terms)
        t = target.terms.get(lead)
        return zero if t is None else t * source.terms[lead].inverse()
    if isinstance(target, Polynomial):
        return zero
    return target * source.inverse()


def _coefficient_vector(q: Polynomial, x_monomials, y_monomials) -> list[CyclotomicNumber]:
    """Flatten an x-polynomial with y-polynomial coefficients into one exact
    vector indexed by (x-monomial, y-monomial) pairs."""
    zero = CyclotomicNumber.zero()
    out = []
    for xm in x_monomials:
        coeff = q.terms.get(xm)
        if coeff is None:
            out.extend([zero] * len(y_monomials))
        elif isinstance(coeff, Polynomial):
            out.extend(coeff.terms.get(ym, zero) for ym in y_monomials)
        else:
            out.extend(coeff if ym == (0, 0, 0) else zero for ym in y_monomials)
    return out


def check_ideal_invariance(g: MonomialMatrix, system: QuadricSystem) -> InvarianceResult:
    """Certify that pulling each quadric back through g lands in the span of
    the four quadrics, with scalar (y-independent) coefficients.

    The matching is an identity of polynomials in x and y.  On failure the
    witness is the leading x-monomial of the unmatchable residual.
    """
    quadrics = system.quadrics
    pullbacks = [q.substitute_linear(g) for q in quadrics]

    x_monomials = sorted(
        {xm for q in list(quadrics) + pullbacks for xm in q.terms}, reverse=True
    )
    y_monomials = set()
    for q in list(quadrics) + pullbacks:
        for coeff in q.terms.values():
            if isinstance(coeff, Polynomial):
                y_monomials.update(coeff.terms)
            else:
                y_monomials.add((0, 0, 0))
    y_monomials = sorted(y_monomials, reverse=True)

    columns = [_coefficient_vector(q, x_monomials, y_monomials) for q in quadrics]
    matrix_rows = []
    witness = None
    for pullback in pullbacks:
        target = _coefficient_vector(pullback, x_monomials, y_monomials)
        augmented = ExactMatrix(
            [[columns[j][r] for j in range(4)] + [target[r]] for r in range(len(target))]
        )
        reduced, pivots = augmented.rref()
        if 4 in pivots:
            # no exact matching exists; forced ratio candidates leave a
            # nonzero residual whose largest x-monomial names the failure
            coeffs = _ratio_candidates(pullback, quadrics)
            residual = pullback
            for c, q in zip(coeffs, quadrics):
                if not c.is_zero():
                    residual = residual - q.scale(c)
            return InvarianceResult(False, None, max(residual.terms))
        solution = [CyclotomicNumber.zero()] * 4
        for row, pivot in zip(reduced, pivots):
            solution[pivot] = row[4]
        residual = pullback
        for c, q in zip(solution, quadrics):
            if not c.is_zero():
                residual = residual - q.scale(c)
        if not residual.is_zero():
            return InvarianceResult(False, None, max(residual.terms))
        matrix_rows.append(tuple(solution))
    return InvarianceResult(True, tuple(matrix_rows), None)


# -- fixed loci and freeness --------------------------------------------------


def fixed_locus_components(g: ProjectiveElement | MonomialMatrix) -> list[EigenspaceComponent]:
    """Candidate fixed-locus pieces of g on P^7: the projectivized
    eigenspaces of its inverse-transpose (point) matrix."""
    mat = g.rep if isinstance(g, ProjectiveElement) else g
    if mat.is_identity():
        raise ValueError("identity fixes everything; no component analysis")
    return mat.point_matrix().eigenspaces()


@dataclass(frozen=True)
class ComponentOutcome:
    eigenvalue: str
    multiplicity: int
    verdict: str  # "no-fixed-point" | "fixed-point" | "fixed-locus-no-witness"
    witness: tuple[str, ...] | None


@dataclass(frozen=True)
class ElementOutcome:
    element: dict
    order: int
    components: tuple[ComponentOutcome, ...]

    @property
    def has_fixed_point(self) -> bool:
        return any(c.verdict != "no-fixed-point" for c in self.components)


@dataclass(frozen=True)
class SpecializationOutcome:
    y: tuple[Fraction, Fraction, Fraction]
    status: str  # "complete" | "inconclusive"
    reason: str | None
    elements: tuple[ElementOutcome, ...]

    @property
    def found_fixed_point(self) -> bool:
        return any(e.has_fixed_point for e in self.elements)


@dataclass(frozen=True)
class FreenessReport:
    group_name: str
    scope: str
    specializations: tuple[SpecializationOutcome, ...]

    @property
    def verdict(self) -> str:
        if any(s.status == "inconclusive" for s in self.specializations):
            return "inconclusive"
        if any(s.found_fixed_point for s in self.specializations):
            return "fixed-point-found"
        return "free"


def _component_witness_candidates(dimension: int, seed: int):
    """Deterministic ladder of restricted-coordinate trial points: unit
    vectors, then two-coordinate root-of-unity mixes, then seeded small
    rationals."""
    one = CyclotomicNumber.one()
    zero = CyclotomicNumber.zero()
    for t in range(dimension):
        vec = [zero] * dimension
        vec[t] = one
        yield tuple(vec)
    for t1 in range(dimension):
        for t2 in range(t1 + 1, dimension):
            for k in range(8):
                vec = [zero] * dimension
                vec[t1] = one
                vec[t2] = root_of_unity(8, k)
                yield tuple(vec)
    rng = random.Random(seed)
    for _ in range(200):
        vec = [CyclotomicNumber.from_rational(rng.randint(-3, 3)) for _ in range(dimension)]
        if any(not v.is_zero() for v in vec):
            yield tuple(vec)


def _examine_component(
    component: EigenspaceComponent,
    quadrics: Sequence[Polynomial],
    witness_seed: int,
) -> ComponentOutcome:
    eigentext = component.eigenvalue.to_text()
    basis = component.basis
    dim = component.multiplicity

    if dim == 1:
        vec = basis[0]
        if all(q.evaluate(vec).is_zero() for q in quadrics):
            witness = tuple(c.to_text() for c in vec)
            return ComponentOutcome(eigentext, 1, "fixed-point", witness)
        return ComponentOutcome(eigentext, 1, "no-fixed-point", None)

    svars = s_variables(dim)
    images = []
    for j in range(8):
        terms = {}
        for t in range(dim):
            if not basis[t][j].is_zero():
                e = [0] * dim
                e[t] = 1
                terms[tuple(e)] = basis[t][j]
        images.append(Polynomial(svars, terms))
    restricted = [q.substitute(images) for q in quadrics]
    live = [p for p in restricted if not p.is_zero()]
    if live and projective_zero_set_empty(live):
        return ComponentOutcome(eigentext, dim, "no-fixed-point", None)

    # the restricted locus is nonempty; hunt for an explicit point
    for candidate in _component_witness_candidates(dim, witness_seed):
        if all(p.evaluate(candidate).is_zero() for p in restricted):
            point = []
            for j in range(8):
                total = CyclotomicNumber.zero()
                for t in range(dim):
                    total = total + basis[t][j] * candidate[t]
                point.append(total)
            if all(v.is_zero() for v in point):
                continue
            if all(q.evaluate(point).is_zero() for q in quadrics):
                witness = tuple(c.to_text() for c in point)
                return ComponentOutcome(eigentext, dim, "fixed-point", witness)
    return ComponentOutcome(eigentext, dim, "fixed-locus-no-witness", None)


def check_freeness(
    group: FiniteGroup,
    system: QuadricSystem,
    specializations: Sequence,
    scope: str = "involutions",
    group_name: str = "custom",
    cache: dict | None = None,
    witness_seed: int = 0,
    screen: bool = True,
) -> FreenessReport:
    """Prove the group acts without fixed points on the variety, for each
    parameter specialization.

    scope "involutions" relies on the 2-group reduction (a fixed point of
    any element is a fixed point of one of its order-2 powers) and is
    rejected for groups with non-2-power element orders; scope "all"
    examines every non-identity element and doubles as a validation of the
    reduction.  A shared cache maps (element, y) to component outcomes so
    overlapping groups do not recompute.
    """
    if scope not in ("involutions", "all"):
        raise ValueError(f"scope must be 'involutions' or 'all', not {scope!r}")
    orders = {element_order(g): None for g in group.elements}
    if scope == "involutions":
        bad = [k for k in orders if k & (k - 1)]
        if bad:
            raise ValueError(
                f"involutions-only scope needs a 2-group; found element order {bad[0]}"
            )
    if cache is None:
        cache = {}

    targets = []
    for g in group.elements:
        if g.is_identity():
            continue
        order = element_order(g)
        if scope == "involutions" and order != 2:
            continue
        targets.append((g, order))

    spec_outcomes = []
    for y in specializations:
        triple = _y_triple(y)
        if screen:
            verdict = genericity_screen(triple, system, group)
            if not verdict.ok:
                spec_outcomes.append(
                    SpecializationOutcome(triple, "inconclusive", "; ".join(verdict.reasons), ())
                )
                continue
        quadrics = system.specialized(triple)
        element_outcomes = []
        for g, order in targets:
            mat = g.rep if isinstance(g, ProjectiveElement) else g
            key = (mat, triple)
            if key in cache:
                outcomes = cache[key]
            else:
                outcomes = tuple(
                    _examine_component(component, quadrics, witness_seed)
                    for component in fixed_locus_components(g)
                )
                cache[key] = outcomes
            element_outcomes.append(ElementOutcome(mat.to_dict(), order, outcomes))
        spec_outcomes.append(
            SpecializationOutcome(triple, "complete", None, tuple(element_outcomes))
        )
    return FreenessReport(group_name, scope, tuple(spec_outcomes))


# -- genericity ---------------------------------------------------------------


@dataclass(frozen=True)
class ScreenResult:
    ok: bool
    reasons: tuple[str, ...]


def genericity_screen(y, system: QuadricSystem, group: FiniteGroup) -> ScreenResult:
    """Necessary conditions for a parameter choice to exhibit the generic
    picture.  Failures name every violated condition."""
    y1, y2, y3 = _y_triple(y)
    reasons = []
    if y1 == 0 or y2 == 0 or y3 == 0:
        reasons.append(f"coordinate vanishes: y=({y1},{y2},{y3})")
    if y1 * y1 + y3 * y3 == 0:
        reasons.append("y1^2 + y3^2 = 0 kills the mixed terms")
    if y1 * y3 == y2 * y2 or y1 * y3 == -y2 * y2:
        reasons.append("y1*y3 = +/- y2^2 collapses coefficient ratios")
    if reasons:
        return ScreenResult(False, tuple(reasons))

    orbit = singular_orbit(system, group, (y1, y2, y3))
    if len(orbit) != group.order:
        reasons.append(f"orbit has {len(orbit)} distinct points, expected {group.order}")

    quadrics = system.specialized((y1, y2, y3))
    origin = base_point((y1, y2, y3))
    rows = [[q.partial_derivative(j).evaluate(origin) for j in range(8)] for q in quadrics]
    rank = ExactMatrix(rows).rank()
    if rank != 3:
        reasons.append(f"jacobian rank at base point is {rank}, expected 3")
    return ScreenResult(not reasons, tuple(reasons))


def draw_specializations(
    count: int,
    seed: int,
    system: QuadricSystem,
    group: FiniteGroup,
    max_tries: int = 500,
) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Seeded random rational parameter triples passing the screen, with
    numerators and denominators bounded by 97."""
    rng = random.Random(seed)
    out: list[tuple[Fraction, Fraction, Fraction]] = []
    for _ in range(max_tries):
        if len(out) == count:
            break
        candidate = tuple(
            Fraction(
                rng.randint(1, MAX_SPECIALIZATION_HEIGHT) * rng.choice((1, -1)),
                rng.randint(1, MAX_SPECIALIZATION_HEIGHT),
            )
            for _ in range(3)
        )
        if candidate in out:
            continue
        if genericity_screen(candidate, system, group).ok:
            out.append(candidate)
    if len(out) < count:
        raise RuntimeError(f"only {len(out)} of {count} specializations passed the screen")
    return out
