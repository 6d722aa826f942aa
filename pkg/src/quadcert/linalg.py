"""Exact linear algebra over the cyclotomic tower, and monomial matrices.

A monomial matrix is stored structurally as a permutation plus phase
exponents; products, inverses and eigen-decompositions never materialize a
dense matrix.  Dense ExactMatrix is reserved for rank/kernel computations on
Jacobians and Hessians, where exact Gaussian elimination is the whole point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import (
    SUPPORTED_ORDERS,
    CyclotomicNumber,
    root_of_unity,
)

_ZERO = CyclotomicNumber.zero()
_ONE = CyclotomicNumber.one()


def _entry(value) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return CyclotomicNumber.from_rational(value)
    raise TypeError(f"matrix entries must be exact, got {type(value).__name__}")


class ExactMatrix:
    """Dense matrix of CyclotomicNumber entries with exact elimination."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(_entry(v) for v in row) for row in entries)
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged rows")
        self.rows = len(rows)
        self.cols = width
        self.entries = rows

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[_ZERO] * cols for _ in range(rows)])

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = _ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def apply(self, vector: Sequence) -> tuple:
        vec = [_entry(v) for v in vector]
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = _ZERO
            for k, v in enumerate(vec):
                a = self.entries[i][k]
                if a.is_zero() or v.is_zero():
                    continue
                acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def rref(self):
        """Reduced row echelon form; returns (rows, pivot column indices)."""
        work = [list(row) for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, self.rows):
                if not work[i][c].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            work[r], work[pivot_row] = work[pivot_row], work[r]
            inv = work[r][c].inverse()
            work[r] = [v * inv for v in work[r]]
            for i in range(self.rows):
                if i == r or work[i][c].is_zero():
                    continue
                factor = work[i][c]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return [tuple(row) for row in work], pivots

    def rank(self) -> int:
        _, pivots = self.rref()
        return len(pivots)

    def right_kernel(self) -> list[tuple]:
        """Basis of {v : M v = 0}, one vector per free column."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = [_ZERO] * self.cols
            vec[free] = _ONE
            for i, pc in enumerate(pivots):
                vec[pc] = -reduced[i][free]
            basis.append(tuple(vec))
        return basis

    def left_kernel(self) -> list[tuple]:
        return self.transpose().right_kernel()


# -- monomial matrices -------------------------------------------------------


@dataclass(frozen=True)
class EigenspaceComponent:
    """One eigenvalue of a monomial matrix with a basis for its eigenspace."""

    eigenvalue: CyclotomicNumber
    basis: tuple[tuple[CyclotomicNumber, ...], ...]

    @property
    def multiplicity(self) -> int:
        return len(self.basis)


class MonomialMatrix:
    """Permutation-with-phases transformation on `size` coordinates.

    Substitution reading (pullback on polynomials):
        x_j  ->  zeta_N^phases[j] * x_perm[j]
    Matrix reading (action on column vectors, used by apply/eigenspaces):
        e_j  ->  zeta_N^phases[j] * e_perm[j]
    The product g * h composes substitutions with h applied first, which in
    the matrix reading is the ordinary matrix product.
    """

    __slots__ = ("size", "perm", "phases", "N")

    def __init__(self, perm: Sequence[int], phases: Sequence[int], N: int = 8):
        perm = tuple(perm)
        size = len(perm)
        if sorted(perm) != list(range(size)):
            raise ValueError(f"perm must be a permutation of 0..{size - 1}, got {perm}")
        if N not in SUPPORTED_ORDERS:
            raise ValueError(f"phase order N={N} not in supported tower {SUPPORTED_ORDERS}")
        phases = tuple(p % N for p in phases)
        if len(phases) != size:
            raise ValueError("phases length must match perm length")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "N", N)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("MonomialMatrix is immutable")

    @classmethod
    def identity(cls, size: int = 8, N: int = 8) -> "MonomialMatrix":
        return cls(tuple(range(size)), (0,) * size, N)

    @classmethod
    def diagonal(cls, phases: Sequence[int], N: int = 8) -> "MonomialMatrix":
        return cls(tuple(range(len(tuple(phases)))), phases, N)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.size)) and not any(self.phases)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialMatrix)
            and self.size == other.size
            and self.N == other.N
            and self.perm == other.perm
            and self.phases == other.phases
        )

    def __hash__(self):
        return hash((self.size, self.N, self.perm, self.phases))

    def __repr__(self):
        return f"MonomialMatrix(perm={self.perm}, phases={self.phases}, N={self.N})"

    def _check_compatible(self, other: "MonomialMatrix"):
        if self.size != other.size:
            raise ValueError(f"size mismatch {self.size} vs {other.size}")
        if self.N != other.N:
            raise ValueError(f"phase order mismatch N={self.N} vs N={other.N}")

    def __mul__(self, other):
        """(g * h)(x_j) = g applied to h(x_j): perm composes, h's phase picks
        up g's phase at the permuted index."""
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        self._check_compatible(other)
        perm = tuple(self.perm[other.perm[j]] for j in range(self.size))
        phases = tuple(
            (other.phases[j] + self.phases[other.perm[j]]) % self.N
            for j in range(self.size)
        )
        return MonomialMatrix(perm, phases, self.N)

    def inverse(self) -> "MonomialMatrix":
        inv_perm = [0] * self.size
        for j, image in enumerate(self.perm):
            inv_perm[image] = j
        phases = tuple(-self.phases[inv_perm[j]] % self.N for j in range(self.size))
        return MonomialMatrix(tuple(inv_perm), phases, self.N)

    def __pow__(self, exponent: int) -> "MonomialMatrix":
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = MonomialMatrix.identity(self.size, self.N)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scalar_mul(self, phase_exponent: int) -> "MonomialMatrix":
        """Multiply by the scalar zeta_N^phase_exponent."""
        return MonomialMatrix(
            self.perm, tuple((p + phase_exponent) % self.N for p in self.phases), self.N
        )

    # -- point action --------------------------------------------------------

    def point_matrix(self) -> "MonomialMatrix":
        """The matrix moving point coordinates when this substitution acts on
        projective space: same permutation, negated phases (the
        inverse-transpose of the substitution matrix).  g -> g.point_matrix()
        is a group homomorphism."""
        return MonomialMatrix(self.perm, tuple(-p % self.N for p in self.phases), self.N)

    def apply(self, point: Sequence) -> tuple:
        """Matrix reading applied to a coordinate vector."""
        vec = [_entry(v) for v in point]
        if len(vec) != self.size:
            raise ValueError("point length mismatch")
        out = [_ZERO] * self.size
        for j, v in enumerate(vec):
            if v.is_zero():
                continue
            out[self.perm[j]] = root_of_unity(self.N, self.phases[j]) * v
        return tuple(out)

    def to_exact_matrix(self) -> ExactMatrix:
        entries = [[_ZERO] * self.size for _ in range(self.size)]
        for j in range(self.size):
            entries[self.perm[j]][j] = root_of_unity(self.N, self.phases[j])
        return ExactMatrix(entries)

    # -- spectral data -------------------------------------------------------

    def cycles(self) -> list[list[int]]:
        """Permutation cycles, each starting at its smallest element, sorted."""
        seen = [False] * self.size
        out = []
        for start in range(self.size):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.perm[start]
            while j != start:
                cycle.append(j)
                seen[j] = True
                j = self.perm[j]
            out.append(cycle)
        return out

    def eigenspaces(self) -> list[EigenspaceComponent]:
        """Exact eigen-decomposition, components merged by eigenvalue.

        For a cycle of length L with total phase k the eigenvalues are
        zeta_{N*L}^(k + N*t), t = 0..L-1, each contributing one eigenvector
        supported on the cycle; the recurrence v[c_{t+1}] =
        v[c_t] * lambda^-1 * zeta_N^phases[c_t] pins the coordinates.
        Multiplicities over the merged components always sum to `size`.
        """
        by_eigenvalue: dict[CyclotomicNumber, list[tuple]] = {}
        order_list: list[CyclotomicNumber] = []
        for cycle in self.cycles():
            length = len(cycle)
            total = sum(self.phases[c] for c in cycle) % self.N
            order = self.N * length
            if order not in SUPPORTED_ORDERS:
                raise ValueError(
                    f"eigenvalues of order {order} exceed the 2-power tower "
                    f"(cycle length {length}, phase order {self.N})"
                )
            for t in range(length):
                lam = root_of_unity(order, total + self.N * t)
                lam_inv = root_of_unity(order, -(total + self.N * t))
                coords = [_ZERO] * self.size
                acc = _ONE
                for c in cycle:
                    coords[c] = acc
                    acc = acc * lam_inv * root_of_unity(self.N, self.phases[c])
                if lam not in by_eigenvalue:
                    by_eigenvalue[lam] = []
                    order_list.append(lam)
                by_eigenvalue[lam].append(tuple(coords))
        components = [
            EigenspaceComponent(lam, tuple(by_eigenvalue[lam]))
            for lam in sorted(order_list, key=lambda v: v.sort_key())
        ]
        assert sum(c.multiplicity for c in components) == self.size
        return components

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {"perm": list(self.perm), "phases": list(self.phases), "N": self.N}

    @classmethod
    def from_dict(cls, data: dict) -> "MonomialMatrix":
        try:
            return cls(data["perm"], data["phases"], data.get("N", 8))
        except KeyError as missing:
            raise ValueError(f"monomial matrix serialization missing key {missing}") from None
