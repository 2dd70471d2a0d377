"""Point configurations, their lineality spaces, and A(I) from an ideal.

A configuration is a labeled list of rational points, coincident points
allowed.  Its lineality space L(A) is the column space of [1 | points] inside
Q^E; configurations with equal label sets are affinely equivalent exactly
when these subspaces coincide, so subspaces are compared by canonical reduced
row echelon forms and nothing geometric ever needs to be matched up.

For an ideal, L(I) is the space of weight vectors w such that every element
of the reduced Gröbner basis is w-homogeneous.  That is a kernel condition:
stack the differences (first exponent minus each later exponent) of every
basis element into a matrix N; then L(I) = ker N, and the rows of a kernel
basis matrix, read per variable, are the points of the configuration A(I).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg
from .errors import PreconditionError
from .groebner import Ideal, reduced_groebner
from .polycore import GrevLex

_GREVLEX = GrevLex()


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class PointConfiguration:
    """Labeled points a_e in Q^d, stored as rows; coincident rows are fine."""

    __slots__ = ("labels", "points", "extras")

    def __init__(self, labels: Sequence[str], points: Iterable[Iterable]):
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise PreconditionError("point labels must be distinct")
        rows = tuple(tuple(Fraction(x) for x in row) for row in points)
        if len(rows) != len(self.labels):
            raise PreconditionError("one point per label required")
        if rows and len({len(r) for r in rows}) != 1:
            raise PreconditionError("points must share one ambient dimension")
        self.points = rows
        self.extras: dict = {}

    @property
    def npoints(self) -> int:
        return len(self.points)

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    @property
    def affine_dim(self) -> int:
        """Dimension of the affine span of the points."""
        dim = self.extras.get("affine_dim")
        if dim is None:
            dim = _linalg.rank(self._lifted_rows(), self.ambient_dim + 1) - 1
            self.extras["affine_dim"] = dim
        return dim

    def _lifted_rows(self) -> list[list[Fraction]]:
        one = Fraction(1)
        return [[one, *p] for p in self.points]

    def label_indices(self, labels: Iterable[str]) -> tuple[int, ...]:
        pos = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return tuple(sorted(pos[str(x)] for x in labels))
        except KeyError as bad:
            raise PreconditionError(f"unknown label {bad.args[0]!r}") from None

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "points": [[format_rational(x) for x in row] for row in self.points],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PointConfiguration":
        try:
            return cls(data["labels"], data["points"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"bad point-configuration data: {exc}") from None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointConfiguration)
            and self.labels == other.labels
            and self.points == other.points
        )

    def __hash__(self):
        return hash((self.labels, self.points))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"PointConfiguration({len(self.labels)} points, dim {self.affine_dim})"


class SubspaceBasis:
    """A subspace of Q^E held as its canonical RREF basis rows."""

    __slots__ = ("ambient", "vectors")

    def __init__(self, ambient: int, vectors: Iterable[Iterable], canonical: bool = False):
        rows = [list(Fraction(x) for x in v) for v in vectors]
        for v in rows:
            if len(v) != ambient:
                raise PreconditionError("basis vector length differs from ambient dimension")
        if canonical:
            reduced = [tuple(r) for r in rows]
        else:
            red, pivots = _linalg.rref(rows, ambient)
            if len(pivots) != len(rows):
                raise PreconditionError("basis vectors are linearly dependent")
            reduced = [tuple(r) for r in red]
        self.ambient = ambient
        self.vectors = tuple(reduced)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, vector: Iterable) -> bool:
        v = [Fraction(x) for x in vector]
        if len(v) != self.ambient:
            raise PreconditionError("vector length differs from ambient dimension")
        return _linalg.rank(list(self.vectors) + [v], self.ambient) == self.dim

    def contains_all_ones(self) -> bool:
        return self.contains([Fraction(1)] * self.ambient)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspaceBasis)
            and self.ambient == other.ambient
            and self.vectors == other.vectors
        )

    def __hash__(self):
        return hash((self.ambient, self.vectors))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"SubspaceBasis(dim {self.dim} in Q^{self.ambient})"


# ---------------------------------------------------------------------------
# the ideal-side pipeline


def groebner_homogeneity_matrix(ideal: Ideal) -> list[tuple[int, ...]]:
    """The matrix N whose kernel is L(I).

    For each reduced-basis element, terms are sorted with the leading term
    first and each later exponent vector is subtracted from the first; w is a
    homogeneity of the basis iff all these differences pair to zero with w.
    """
    G = reduced_groebner(ideal)
    if G and G[0].total_degree() == 0:
        raise PreconditionError("the unit ideal has no weight space")
    rows = []
    for g in G:
        terms = g.sorted_terms(_GREVLEX)
        first = terms[0][0]
        for m, _ in terms[1:]:
            rows.append(tuple(a - b for a, b in zip(first, m)))
    return rows


def lineality_space(ideal: Ideal) -> SubspaceBasis:
    """L(I): all weight vectors for which I is homogeneous."""
    cached = ideal.extras.get("lineality")
    if cached is None:
        n = ideal.nvars
        rows = groebner_homogeneity_matrix(ideal)
        kernel = _linalg.kernel_basis(rows, n) if rows else [
            [Fraction(int(i == j)) for j in range(n)] for i in range(n)
        ]
        red, _ = _linalg.rref(kernel, n) if kernel else ([], [])
        cached = SubspaceBasis(n, red, canonical=True)
        ideal.extras["lineality"] = cached
    return cached


def point_configuration_of_ideal(ideal: Ideal) -> PointConfiguration:
    """A(I): label e gets the point of e-th coordinates of the L(I) basis.

    Written against the dual of the kernel basis, so a different basis choice
    changes the points only by an affine bijection.
    """
    cached = ideal.extras.get("config")
    if cached is None:
        L = lineality_space(ideal)
        points = [tuple(v[e] for v in L.vectors) for e in range(ideal.nvars)]
        cached = PointConfiguration(ideal.labels, points)
        ideal.extras["config"] = cached
    return cached


# ---------------------------------------------------------------------------
# the configuration side


def lineality_of_config(config: PointConfiguration) -> SubspaceBasis:
    """L(A): column space of [1 | points] as a subspace of Q^E."""
    cached = config.extras.get("lineality")
    if cached is None:
        cols = list(zip(*config._lifted_rows()))
        red, _ = _linalg.rref(cols, config.npoints)
        cached = SubspaceBasis(config.npoints, red, canonical=True)
        config.extras["lineality"] = cached
    return cached


def affine_equivalent(a: PointConfiguration, b: PointConfiguration) -> bool:
    """Label-preserving affine equivalence, decided by equality of L-spaces."""
    if a.labels != b.labels:
        raise PreconditionError("configurations have different label sets")
    return lineality_of_config(a) == lineality_of_config(b)


def orthogonal_projection_config(L: SubspaceBasis,
                                 labels: Sequence[str] | None = None) -> PointConfiguration:
    """The configuration (π_L(ε_e))_e in coordinates of L's basis.

    Realizes the subspace as a configuration directly: orthogonally project
    the standard basis onto L with exact Gram-matrix solves.
    """
    if not L.contains_all_ones():
        raise PreconditionError("subspace must contain the all-ones vector")
    V = [list(v) for v in L.vectors]
    gram = [[sum(a * b for a, b in zip(u, v)) for v in V] for u in V]
    inv = _linalg.invert(gram)
    if inv is None:  # impossible: basis rows are independent
        raise PreconditionError("degenerate Gram matrix")
    # coordinates of π(ε_e) in the basis = G^{-1} · (column e of V)
    points = []
    for e in range(L.ambient):
        col = [v[e] for v in V]
        points.append(tuple(_linalg.matvec(inv, col)))
    if labels is None:
        labels = tuple(str(i + 1) for i in range(L.ambient))
    return PointConfiguration(labels, points)
