"""The sandwich around an initial ideal, and everything that certifies it.

For a weight w on a homogeneous ideal I, the subdivision Θ = subd_w(A(I))
produces a lower bound: project the generators onto each maximal cell (set
the other variables to zero) and sum the resulting ideals.  The opposite
subdivision Θ* = subd_{-w}(A(I)) produces an upper bound: restrict I to each
maximal cell by elimination, re-add the missing variables, and intersect.
Both constructions bracket in_w(I):

    I_w  ⊆  in_w I  ⊆  I^w

and the loci where either inclusion is an equality are what omega_member /
omega_star_member report.  A violated inclusion is mathematically impossible,
so ``sandwich`` raises InternalInvariantError rather than returning garbage.

The module also carries the verification routines used by the test suite:
face-compatibility of projections and restrictions, the reduction of both
bounds to the kappa cells (maximal plus interior codimension-1), and a
degree-by-degree linear-algebra check that compatible tuples over the kappa
diagram of Θ* have the same dimension as S/I^w.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from . import _linalg
from .configspace import PointConfiguration, format_rational, point_configuration_of_ideal
from .errors import InternalInvariantError, PreconditionError
from .groebner import (
    Ideal,
    eliminate,
    ideal_contains_ideal,
    ideal_equal,
    initial_ideal,
    intersect_many,
    is_one_homogeneous,
    normal_form,
    quotient_graded_dimension,
    reduced_groebner,
)
from .polycore import GrevLex, Polynomial, as_weight, mono_divides
from .subdivision import Subdivision, adjacency_graph, kappa_cells, regular_subdivision

_GREVLEX = GrevLex()


def _cell_indices(ideal: Ideal, cell: Iterable) -> tuple[int, ...]:
    """Accept a cell as label strings or as label indices."""
    members = list(cell)
    if all(isinstance(e, int) for e in members):
        if any(e < 0 or e >= ideal.nvars for e in members):
            raise PreconditionError("cell index out of range")
        return tuple(sorted(set(members)))
    pos = {lab: i for i, lab in enumerate(ideal.labels)}
    try:
        return tuple(sorted({pos[str(e)] for e in members}))
    except KeyError as bad:
        raise PreconditionError(f"unknown label {bad.args[0]!r}") from None


def configuration(ideal: Ideal) -> PointConfiguration:
    """A(I), memoised on the ideal."""
    return point_configuration_of_ideal(ideal)


def subdivision_for(ideal: Ideal, w: Sequence) -> Subdivision:
    """subd_w(A(I)), memoised per weight."""
    wv = as_weight(w)
    key = ("subdiv", wv)
    cached = ideal.extras.get(key)
    if cached is None:
        cached = regular_subdivision(configuration(ideal), wv)
        ideal.extras[key] = cached
    return cached


# ---------------------------------------------------------------------------
# the two bounds


def project_ideal(ideal: Ideal, cell: Iterable) -> Ideal:
    """ρ_cell(I): set x_e := 0 for e outside the cell.

    On a polynomial this just deletes every term touching a dead variable;
    projecting the generators generates the image ideal because ρ is a
    surjective ring map.
    """
    keep = set(_cell_indices(ideal, cell))
    gens = []
    for g in ideal.generators:
        kept = {m: c for m, c in g.terms.items()
                if all(e in keep for e, exp in enumerate(m) if exp)}
        if kept:
            gens.append(Polynomial._raw(g.nvars, kept))
    return Ideal(gens, ideal.labels)


def lower_bound_ideal(ideal: Ideal, w: Sequence) -> Ideal:
    """I_w: sum of the generator projections over the maximal cells of Θ."""
    _require_homogeneous(ideal)
    theta = subdivision_for(ideal, w)
    gens: list[Polynomial] = []
    for cell in theta.maximal:
        gens.extend(project_ideal(ideal, cell).generators)
    return Ideal(gens, ideal.labels)


def restrict_ideal(ideal: Ideal, cell: Iterable) -> Ideal:
    """I^cell = I ∩ Q[x_e : e in cell], computed by block-order elimination.

    When a restriction to a superset of ``cell`` is already cached we
    eliminate from that (typically much smaller) ideal instead of from
    ``ideal`` itself; the two routes agree because intersecting with a
    subring is transitive.
    """
    idx = _cell_indices(ideal, cell)
    key = ("restrict", idx)
    cached = ideal.extras.get(key)
    if cached is None:
        want = set(idx)
        base = ideal
        base_size = ideal.nvars + 1
        for other, value in ideal.extras.items():
            if (isinstance(other, tuple) and other[0] == "restrict"
                    and want < set(other[1]) and len(other[1]) < base_size):
                base, base_size = value, len(other[1])
        drop = [lab for i, lab in enumerate(ideal.labels) if i not in idx]
        cached = eliminate(base, drop)
        ideal.extras[key] = cached
    return cached


def lifted_restriction(ideal: Ideal, cell: Iterable) -> Ideal:
    """I^cell together with every variable outside the cell."""
    idx = set(_cell_indices(ideal, cell))
    gens = list(restrict_ideal(ideal, tuple(sorted(idx))).generators)
    gens.extend(
        Polynomial.variable(ideal.nvars, e) for e in range(ideal.nvars) if e not in idx
    )
    return Ideal(gens, ideal.labels)


def upper_bound_ideal(ideal: Ideal, w: Sequence) -> Ideal:
    """I^w: intersection of lifted restrictions over the maximal cells of Θ*."""
    _require_homogeneous(ideal)
    theta_star = subdivision_for(ideal, _negate(w))
    parts = [lifted_restriction(ideal, cell) for cell in theta_star.maximal]
    return intersect_many(parts)


def _negate(w: Sequence) -> tuple[Fraction, ...]:
    return tuple(-x for x in as_weight(w))


def _require_homogeneous(ideal: Ideal) -> None:
    if not is_one_homogeneous(ideal):
        raise PreconditionError("operation requires a total-degree homogeneous ideal")


# ---------------------------------------------------------------------------
# the sandwich


class SandwichReport:
    """All three ideals for one weight, with exactness flags and both
    subdivisions; the inclusions are asserted at construction time."""

    __slots__ = ("w", "lower", "initial", "upper", "lower_exact", "upper_exact",
                 "theta", "theta_star")

    def __init__(self, w, lower, initial, upper, lower_exact, upper_exact,
                 theta, theta_star):
        self.w = w
        self.lower = lower
        self.initial = initial
        self.upper = upper
        self.lower_exact = lower_exact
        self.upper_exact = upper_exact
        self.theta = theta
        self.theta_star = theta_star

    def to_json_dict(self) -> dict:
        from .polycore import format_polynomial

        labels = self.lower.labels
        fmt = lambda ideal: [format_polynomial(g, labels) for g in ideal.generators]
        sig = lambda T: [[labels[e] for e in cell] for cell in T.signature]
        return {
            "w": [format_rational(x) for x in self.w],
            "lower_gens": fmt(self.lower),
            "initial_gens": fmt(self.initial),
            "upper_gens": fmt(self.upper),
            "lower_exact": self.lower_exact,
            "upper_exact": self.upper_exact,
            "theta_signature": sig(self.theta),
            "theta_star_signature": sig(self.theta_star),
        }


def sandwich(ideal: Ideal, w: Sequence) -> SandwichReport:
    """Compute I_w ⊆ in_w I ⊆ I^w and report exactness on both ends."""
    _require_homogeneous(ideal)
    wv = as_weight(w)
    lower = lower_bound_ideal(ideal, wv)
    initial = initial_ideal(ideal, wv)
    upper = upper_bound_ideal(ideal, wv)
    if not ideal_contains_ideal(initial, lower):
        raise InternalInvariantError("lower bound escaped the initial ideal")
    if not ideal_contains_ideal(upper, initial):
        raise InternalInvariantError("initial ideal escaped the upper bound")
    return SandwichReport(
        w=wv,
        lower=lower,
        initial=initial,
        upper=upper,
        lower_exact=ideal_equal(lower, initial),
        upper_exact=ideal_equal(initial, upper),
        theta=subdivision_for(ideal, wv),
        theta_star=subdivision_for(ideal, _negate(wv)),
    )


def omega_member(ideal: Ideal, w: Sequence) -> bool:
    """Is w in Ω(I), i.e. does the lower bound reach in_w I?"""
    return sandwich(ideal, w).lower_exact


def omega_star_member(ideal: Ideal, w: Sequence) -> bool:
    """Is w in Ω*(I), i.e. does the upper bound collapse onto in_w I?"""
    return sandwich(ideal, w).upper_exact


# ---------------------------------------------------------------------------
# verification routines


def kappa_reduction_check(ideal: Ideal, w: Sequence) -> bool:
    """Recompute both bounds from richer cell sets and compare.

    The lower bound is summed over (a) every cell, (b) maximal cells, and
    (c) the kappa cells; the upper bound is intersected over all cells of Θ*
    versus its maximal cells.  All variants must agree.
    """
    _require_homogeneous(ideal)
    wv = as_weight(w)
    config = configuration(ideal)
    theta = subdivision_for(ideal, wv)

    def summed(cells: Iterable) -> Ideal:
        gens: list[Polynomial] = []
        for cell in cells:
            gens.extend(project_ideal(ideal, cell).generators)
        return Ideal(gens, ideal.labels)

    lower_max = summed(theta.maximal)
    lower_all = summed(theta.cells)
    lower_kappa = summed(sorted(kappa_cells(config, theta)))
    if not (ideal_equal(lower_max, lower_all) and ideal_equal(lower_max, lower_kappa)):
        return False

    theta_star = subdivision_for(ideal, _negate(wv))
    upper_max = intersect_many([lifted_restriction(ideal, c) for c in theta_star.maximal])
    upper_all = intersect_many([lifted_restriction(ideal, c) for c in theta_star.cells])
    return ideal_equal(upper_max, upper_all)


def verify_initial_membership_props(ideal: Ideal, w: Sequence) -> bool:
    """Check I_Δ ⊆ in_w I over Θ and in_w I ⊆ Ĩ^Δ over Θ*, cell by cell."""
    _require_homogeneous(ideal)
    wv = as_weight(w)
    initial = initial_ideal(ideal, wv)
    theta = subdivision_for(ideal, wv)
    for cell in theta.maximal:
        if not ideal_contains_ideal(initial, project_ideal(ideal, cell)):
            return False
    theta_star = subdivision_for(ideal, _negate(wv))
    for cell in theta_star.maximal:
        if not ideal_contains_ideal(lifted_restriction(ideal, cell), initial):
            return False
    return True


def verify_face_compatibility(ideal: Ideal, w: Sequence) -> bool:
    """Hasse-pair compatibility of the two cell-local ideal families.

    Over Θ: the projection to a face equals the elimination of the
    complementary variables from the parent's projection.  Over Θ*: the
    restriction to a face equals the projection of the parent's restriction.
    Checking covering pairs suffices — both identities compose along chains.
    """
    _require_homogeneous(ideal)
    wv = as_weight(w)
    theta = subdivision_for(ideal, wv)
    labels = ideal.labels
    for f_idx, c_idx in theta.face_edges:
        face, parent = theta.cells[f_idx], theta.cells[c_idx]
        drop = [labels[e] for e in parent if e not in set(face)]
        lhs = project_ideal(ideal, face)
        rhs = eliminate(project_ideal(ideal, parent), drop)
        if not ideal_equal(lhs, rhs):
            return False
    theta_star = subdivision_for(ideal, _negate(wv))
    for f_idx, c_idx in theta_star.face_edges:
        face, parent = theta_star.cells[f_idx], theta_star.cells[c_idx]
        lhs = project_ideal(restrict_ideal(ideal, parent), face)
        if not ideal_equal(lhs, restrict_ideal(ideal, face)):
            return False
    return True


# ---------------------------------------------------------------------------
# degree-wise limit verification


def _standard_monomials(ideal: Ideal, cell: tuple[int, ...], degree: int) -> list[tuple]:
    """Degree-d monomials in the cell's variables that survive modulo the
    restricted ideal (i.e. are not divisible by any leading monomial)."""
    lms = [g.leading_monomial(_GREVLEX) for g in reduced_groebner(restrict_ideal(ideal, cell))]
    n = ideal.nvars
    out = []
    for combo in combinations_with_replacement(cell, degree):
        m = [0] * n
        for e in combo:
            m[e] += 1
        m = tuple(m)
        if not any(mono_divides(lm, m) for lm in lms):
            out.append(m)
    return out


def _project_to_cell_coords(ideal: Ideal, cell: tuple[int, ...], mono: tuple,
                            basis_index: dict) -> dict[int, Fraction]:
    """Coordinates of ρ_cell(x^mono) mod I^cell in the standard basis."""
    keep = set(cell)
    if not all(e in keep for e, exp in enumerate(mono) if exp):
        return {}
    G = reduced_groebner(restrict_ideal(ideal, cell))
    nf = normal_form(Polynomial.term(ideal.nvars, mono), G, _GREVLEX)
    coords = {}
    for m, c in nf.terms.items():
        j = basis_index.get(m)
        if j is None:
            raise InternalInvariantError("normal form left the standard basis")
        coords[j] = c
    return coords


def verify_limit_decomposition(ideal: Ideal, w: Sequence, degree: int) -> bool:
    """Degree-d check that compatible tuples over Θ*'s kappa diagram match S/I^w.

    Builds the space of tuples (one degree-d residue per maximal cell of Θ*,
    agreeing under projection to every shared interior codim-1 cell) by exact
    linear algebra and compares its dimension against dim (S/I^w)_d.
    """
    _require_homogeneous(ideal)
    if degree < 0:
        raise PreconditionError("degree must be nonnegative")
    wv = as_weight(w)
    config = configuration(ideal)
    theta_star = subdivision_for(ideal, _negate(wv))
    graph = adjacency_graph(config, theta_star)

    bases: dict[tuple, list[tuple]] = {}
    offsets: dict[tuple, int] = {}
    total = 0
    for cell in graph.nodes:
        basis = _standard_monomials(ideal, cell, degree)
        bases[cell] = basis
        offsets[cell] = total
        total += len(basis)

    rows: list[list[Fraction]] = []
    for cell_a, cell_b, shared in graph.edges:
        shared_basis = _standard_monomials(ideal, shared, degree)
        shared_index = {m: j for j, m in enumerate(shared_basis)}
        row_block = [[Fraction(0)] * total for _ in shared_basis]
        for cell, sign in ((cell_a, 1), (cell_b, -1)):
            for k, mono in enumerate(bases[cell]):
                coords = _project_to_cell_coords(ideal, shared, mono, shared_index)
                for j, c in coords.items():
                    row_block[j][offsets[cell] + k] += sign * c
        rows.extend(row for row in row_block if any(row))

    rank = _linalg.rank(rows, total) if rows else 0
    limit_dim = total - rank
    upper = upper_bound_ideal(ideal, wv)
    quotient_dim = quotient_graded_dimension(upper, degree)[degree]
    return limit_dim == quotient_dim
