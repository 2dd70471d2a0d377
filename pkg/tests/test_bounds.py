"""The ideal sandwich: projections, restrictions, both bounds, and the
verification routines that certify them degree by degree."""

from fractions import Fraction as F

import pytest

from subinit import (
    Ideal,
    PreconditionError,
    ideal_equal,
    kappa_reduction_check,
    lower_bound_ideal,
    omega_member,
    omega_star_member,
    sandwich,
    upper_bound_ideal,
    verify_face_compatibility,
    verify_initial_membership_props,
    verify_limit_decomposition,
)
from subinit.bounds import (
    configuration,
    lifted_restriction,
    project_ideal,
    restrict_ideal,
    subdivision_for,
)
from subinit.fixtures import plucker_ideal

L2 = ("1", "2")
L4 = ("1", "2", "3", "4")


def mk(gens, labels=L4):
    return Ideal.from_strings(gens, labels)


def square_toric():
    return mk(["x1*x2 - x3*x4"])


def double_point():
    return mk(["x1^2*x2 - x1*x2^2"], L2)


# -- cell-local ideals -------------------------------------------------------


def test_project_ideal_pinned():
    I = square_toric()
    assert ideal_equal(project_ideal(I, ["1", "2", "3"]), mk(["x1*x2"]))
    assert project_ideal(double_point(), ["1"]).is_zero
    assert ideal_equal(project_ideal(I, ["1", "2", "3", "4"]), I)


def test_cells_accept_indices_or_labels():
    I = square_toric()
    assert ideal_equal(project_ideal(I, [0, 1, 2]), project_ideal(I, ["1", "2", "3"]))
    with pytest.raises(PreconditionError):
        project_ideal(I, ["nope"])
    with pytest.raises(PreconditionError):
        project_ideal(I, [9])


def test_restrict_ideal_pinned():
    I = square_toric()
    assert restrict_ideal(I, ["1", "2", "3"]).is_zero
    assert ideal_equal(restrict_ideal(I, L4), I)
    assert ideal_equal(restrict_ideal(mk(["x1", "x2"], L2), ["2"]), mk(["x2"], L2))


def test_lifted_restriction_pinned():
    I = square_toric()
    assert ideal_equal(lifted_restriction(I, ["1", "2", "3"]), mk(["x4"]))
    assert ideal_equal(lifted_restriction(I, ["1", "2", "4"]), mk(["x3"]))
    assert ideal_equal(lifted_restriction(I, L4), I)


# -- the two bounds ----------------------------------------------------------


def test_lower_bound_pinned():
    I = square_toric()
    assert ideal_equal(lower_bound_ideal(I, (0, 0, 1, 0)), mk(["x1*x2"]))
    assert ideal_equal(lower_bound_ideal(I, (1, 0, 0, 0)), mk(["x3*x4"]))
    assert lower_bound_ideal(double_point(), (0, 1)).is_zero
    assert ideal_equal(lower_bound_ideal(I, (1, 1, 1, 1)), I)


def test_upper_bound_pinned():
    I = square_toric()
    assert ideal_equal(upper_bound_ideal(I, (1, 0, 0, 0)), mk(["x3*x4"]))
    assert ideal_equal(upper_bound_ideal(I, (0, 0, 1, 0)), mk(["x1*x2"]))
    assert ideal_equal(upper_bound_ideal(I, (2, 1, 1, 2)), I)


def test_bounds_require_homogeneous_input():
    bad = mk(["x1^2 - x2"], L2)
    for op in (lambda: lower_bound_ideal(bad, (0, 1)),
               lambda: upper_bound_ideal(bad, (0, 1)),
               lambda: sandwich(bad, (0, 1))):
        with pytest.raises(PreconditionError):
            op()


# -- sandwich reports --------------------------------------------------------


def test_sandwich_exact_on_both_sides():
    rep = sandwich(square_toric(), (0, 0, 1, 0))
    assert rep.lower_exact and rep.upper_exact
    assert ideal_equal(rep.lower, mk(["x1*x2"]))
    assert ideal_equal(rep.upper, mk(["x1*x2"]))


def test_sandwich_strict_on_both_sides():
    rep = sandwich(double_point(), (0, 1))
    assert rep.lower.is_zero
    assert ideal_equal(rep.initial, mk(["x1^2*x2"], L2))
    assert ideal_equal(rep.upper, mk(["x1"], L2))
    assert not rep.lower_exact and not rep.upper_exact


def test_sandwich_trivial_weight():
    I = square_toric()
    rep = sandwich(I, (3, 1, 2, 2))  # inside the lineality space
    assert rep.lower_exact and rep.upper_exact
    assert ideal_equal(rep.lower, I) and ideal_equal(rep.upper, I)
    assert rep.theta.is_trivial and rep.theta_star.is_trivial


def test_sandwich_on_octahedron_weight_by_hand():
    # weight sums per three-term relation: 0 on the {1,2}/{3,4} pair (minimal),
    # 10 on {1,3}/{2,4} (maximal), 2 on {1,4}/{2,3}.  The lower bound comes out
    # exact; the upper bound picks up the extra transversal x14*x23.
    I = plucker_ideal(2, 4)
    rep = sandwich(I, (0, 5, 1, 1, 5, 0))
    assert rep.lower_exact and not rep.upper_exact
    assert ideal_equal(rep.initial, Ideal.from_strings(["x[1,2]*x[3,4]"], I.labels))
    assert ideal_equal(
        rep.upper,
        Ideal.from_strings(["x[1,2]*x[3,4]", "x[1,4]*x[2,3]"], I.labels))
    assert all((0 in c and 5 in c) for c in rep.theta.signature)
    assert all((1 in c and 4 in c) for c in rep.theta_star.signature)


def test_omega_memberships():
    assert omega_member(square_toric(), (0, 0, 1, 0))
    assert omega_star_member(square_toric(), (1, 0, 0, 0))
    assert not omega_member(double_point(), (0, 1))
    assert not omega_star_member(double_point(), (0, 1))


def test_sandwich_report_json():
    rep = sandwich(square_toric(), (0, 0, 1, 0))
    data = rep.to_json_dict()
    assert set(data) == {"w", "lower_gens", "initial_gens", "upper_gens",
                         "lower_exact", "upper_exact", "theta_signature",
                         "theta_star_signature"}
    assert data["w"] == ["0", "0", "1", "0"]
    assert data["lower_exact"] is True
    assert data["theta_signature"] == [["1", "2", "3"], ["1", "2", "4"]]
    assert data["theta_star_signature"] == [["1", "3", "4"], ["2", "3", "4"]]


def test_rational_weights_accepted():
    rep = sandwich(square_toric(), (F(1, 2), 0, 0, 0))
    assert ideal_equal(rep.initial, mk(["x3*x4"]))


# -- verification routines ---------------------------------------------------


def test_kappa_reduction_pinned_cases():
    assert kappa_reduction_check(square_toric(), (0, 0, 1, 0))
    assert kappa_reduction_check(square_toric(), (1, 1, 1, 1))
    assert kappa_reduction_check(double_point(), (0, 1))
    assert kappa_reduction_check(plucker_ideal(2, 4), (0, 5, 1, 1, 5, 0))


def test_membership_props_pinned_cases():
    assert verify_initial_membership_props(square_toric(), (0, 0, 1, 0))
    assert verify_initial_membership_props(square_toric(), (2, 2, 2, 2))
    assert verify_initial_membership_props(double_point(), (0, 1))
    assert verify_initial_membership_props(plucker_ideal(2, 4), (0, 5, 1, 1, 5, 0))


def test_face_compatibility_pinned_cases():
    assert verify_face_compatibility(square_toric(), (0, 0, 1, 0))
    assert verify_face_compatibility(square_toric(), (1, 0, 0, 0))
    assert verify_face_compatibility(double_point(), (0, 1))


def test_limit_decomposition_square_toric():
    I = square_toric()
    for d in range(5):
        assert verify_limit_decomposition(I, (1, 0, 0, 0), d)


def test_limit_decomposition_double_point_and_trivial():
    for d in range(4):
        assert verify_limit_decomposition(double_point(), (0, 1), d)
        assert verify_limit_decomposition(square_toric(), (1, 1, 1, 1), d)


def test_limit_decomposition_rejects_negative_degree():
    with pytest.raises(PreconditionError):
        verify_limit_decomposition(square_toric(), (1, 0, 0, 0), -1)


# -- caches ------------------------------------------------------------------


def test_subdivisions_and_restrictions_are_memoised():
    I = square_toric()
    assert subdivision_for(I, (0, 0, 1, 0)) is subdivision_for(I, (0, 0, 1, 0))
    a = restrict_ideal(I, ["1", "2", "3"])
    assert restrict_ideal(I, [0, 1, 2]) is a
    assert configuration(I) is configuration(I)
