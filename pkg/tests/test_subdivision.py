"""Regular subdivisions, their face posets, cones, hull tests and adjacency."""

import random
from fractions import Fraction as F

import pytest

from subinit import (
    PointConfiguration,
    PreconditionError,
    adjacency_graph,
    in_secondary_cone,
    kappa_cells,
    lineality_of_config,
    point_in_hull,
    refines,
    regular_subdivision,
    subdivision_equal,
)
from subinit.subdivision import SubdivisionEngine, faces_of_cell, get_engine, lp_feasible

SQUARE = PointConfiguration(
    ["1", "2", "3", "4"],
    [(F(0), F(0)), (F(1), F(1)), (F(1), F(0)), (F(0), F(1))],
)
DOUBLE = PointConfiguration(["1", "2"], [(F(0),), (F(0),)])
SEGMENT = PointConfiguration(["1", "2", "3"], [(F(0),), (F(1),), (F(2),)])


def test_square_splits_along_the_first_diagonal():
    T = regular_subdivision(SQUARE, (0, 0, 1, 0))
    assert T.signature == ((0, 1, 2), (0, 1, 3))
    assert not T.is_trivial
    assert T.is_triangulation


def test_square_other_diagonal():
    T = regular_subdivision(SQUARE, (1, 0, 0, 0))
    assert T.signature == ((0, 2, 3), (1, 2, 3))


def test_zero_weight_gives_trivial_subdivision():
    T = regular_subdivision(SQUARE, (0, 0, 0, 0))
    assert T.signature == ((0, 1, 2, 3),)
    assert T.is_trivial
    assert not T.is_triangulation
    # faces of the square: itself, 4 edges, 4 vertices
    assert len(T.cells) == 9


def test_coincident_points_leave_one_uncovered():
    T = regular_subdivision(DOUBLE, (0, 1))
    assert T.signature == ((0,),)
    assert T.uncovered == {1: (0,)}
    assert T.cells == ((0,),)


def test_segment_interior_lift_splits_it():
    T = regular_subdivision(SEGMENT, (0, -1, 0))
    assert T.signature == ((0, 1), (1, 2))
    flat = regular_subdivision(SEGMENT, (0, 0, 0))
    assert flat.signature == ((0, 1, 2),)
    # lifting the middle point up removes it from every cell
    up = regular_subdivision(SEGMENT, (0, 1, 0))
    assert up.signature == ((0, 2),)
    assert up.uncovered == {1: (0, 2)}


def test_weight_dimension_mismatch():
    with pytest.raises(PreconditionError):
        regular_subdivision(SQUARE, (0, 0, 1))


def test_faces_of_triangle_and_point():
    faces = faces_of_cell(SQUARE, (0, 1, 2))
    assert len(faces) == 7
    assert (0, 1) in faces and (0, 1, 2) in faces and (2,) in faces
    assert faces_of_cell(SQUARE, (0,)) == {(0,)}


def test_face_edges_are_covering_pairs():
    T = regular_subdivision(SQUARE, (0, 0, 1, 0))
    cells = T.cells
    for f_idx, c_idx in T.face_edges:
        face, parent = cells[f_idx], cells[c_idx]
        assert set(face) < set(parent)
        assert face in faces_of_cell(SQUARE, parent)


def test_cell_intersection_closure():
    for w in [(0, 0, 1, 0), (3, 1, 0, 2), (0, 0, 0, 0), (5, 0, 1, 1)]:
        T = regular_subdivision(SQUARE, w)
        cellset = set(T.cells)
        for a in cellset:
            for b in cellset:
                common = tuple(sorted(set(a) & set(b)))
                assert common == () or common in cellset


def test_refinement_pinned_cases():
    theta1 = regular_subdivision(SQUARE, (0, 0, 1, 0))
    trivial = regular_subdivision(SQUARE, (0, 0, 0, 0))
    assert refines(theta1, theta1)
    assert refines(theta1, trivial)
    assert not refines(trivial, theta1)
    other = regular_subdivision(SQUARE, (1, 0, 0, 0))
    assert not refines(theta1, other)


def test_subdivision_equal():
    a = regular_subdivision(SQUARE, (0, 0, 1, 0))
    b = regular_subdivision(SQUARE, (0, 0, 5, 0))
    assert subdivision_equal(a, b)
    assert not subdivision_equal(a, regular_subdivision(SQUARE, (1, 0, 0, 0)))


def test_secondary_cone_membership():
    theta1 = regular_subdivision(SQUARE, (0, 0, 1, 0))
    assert in_secondary_cone(SQUARE, theta1, (0, 0, 2, 0)) == "interior"
    assert in_secondary_cone(SQUARE, theta1, (0, 0, 0, 0)) == "boundary"
    assert in_secondary_cone(SQUARE, theta1, (1, 0, 0, 0)) == "outside"


def test_lineality_weights_give_trivial_subdivisions():
    L = lineality_of_config(SQUARE)
    rng = random.Random(2)
    for _ in range(20):
        coeffs = [F(rng.randint(-4, 4)) for _ in range(L.dim)]
        w = tuple(sum(c * v[e] for c, v in zip(coeffs, L.vectors))
                  for e in range(4))
        assert regular_subdivision(SQUARE, w).is_trivial
    # and conversely: random nontrivial samples stay out of the span
    found_nontrivial = 0
    for _ in range(20):
        w = tuple(rng.randint(0, 9) for _ in range(4))
        T = regular_subdivision(SQUARE, w)
        if not T.is_trivial:
            found_nontrivial += 1
            assert not L.contains(w)
    assert found_nontrivial > 0


def test_subdivision_invariant_under_lineality_shifts():
    rng = random.Random(8)
    L = lineality_of_config(SQUARE)
    for _ in range(15):
        w = tuple(rng.randint(0, 9) for _ in range(4))
        base = regular_subdivision(SQUARE, w).signature
        c = rng.randint(-3, 3)
        shifted = tuple(x + c for x in w)
        assert regular_subdivision(SQUARE, shifted).signature == base
        coeffs = [F(rng.randint(-2, 2)) for _ in range(L.dim)]
        ell = tuple(sum(a * v[e] for a, v in zip(coeffs, L.vectors))
                    for e in range(4))
        moved = tuple(x + y for x, y in zip(w, ell))
        assert regular_subdivision(SQUARE, moved).signature == base


def test_maximal_cells_cover_the_hull():
    rng = random.Random(4)
    for w in [(0, 0, 1, 0), (2, 5, 0, 1), (0, 0, 0, 0)]:
        T = regular_subdivision(SQUARE, w)
        for _ in range(10):
            weights = [F(rng.randint(0, 5)) for _ in range(4)]
            total = sum(weights) or F(1)
            pt = tuple(
                sum(wt * SQUARE.points[e][i] for e, wt in enumerate(weights)) / total
                for i in range(2))
            assert any(point_in_hull(SQUARE, cell, pt) for cell in T.maximal)


def test_point_in_hull_witnesses():
    # midpoint of a segment
    assert point_in_hull(SEGMENT, (0, 2), (F(1),))
    assert not point_in_hull(SEGMENT, (0, 1), (F(3, 2),))
    center = (F(1, 2), F(1, 2))
    assert point_in_hull(SQUARE, (0, 1, 2), center)
    assert not point_in_hull(SQUARE, (0, 2), center)


def test_lp_feasible_finds_exact_witness():
    # lambda1 + lambda2 = 1, lambda1 - lambda2 = 0  =>  (1/2, 1/2)
    witness = lp_feasible([[F(1), F(1)], [F(1), F(-1)]], [F(1), F(0)])
    assert witness == [F(1, 2), F(1, 2)]
    assert lp_feasible([[F(1), F(1)], [F(1), F(1)]], [F(1), F(2)]) is None


def test_adjacency_graph_of_split_square():
    T = regular_subdivision(SQUARE, (0, 0, 1, 0))
    G = adjacency_graph(SQUARE, T)
    assert set(G.nodes) == {(0, 1, 2), (0, 1, 3)}
    assert len(G.edges) == 1
    a, b, shared = G.edges[0]
    assert {a, b} == {(0, 1, 2), (0, 1, 3)} and shared == (0, 1)
    assert G.is_connected()


def test_adjacency_graph_of_trivial_subdivision():
    T = regular_subdivision(SQUARE, (0, 0, 0, 0))
    G = adjacency_graph(SQUARE, T)
    assert G.nodes == ((0, 1, 2, 3),) and G.edges == ()
    assert G.is_connected()


def test_adjacency_edges_lie_in_exactly_two_maximal_cells():
    rng = random.Random(12)
    for _ in range(10):
        w = tuple(rng.randint(0, 8) for _ in range(4))
        T = regular_subdivision(SQUARE, w)
        G = adjacency_graph(SQUARE, T)
        for a, b, shared in G.edges:
            hosts = [c for c in T.maximal if set(shared) <= set(c)]
            assert sorted((a, b)) == sorted(hosts)


def test_kappa_cells_pinned():
    theta1 = regular_subdivision(SQUARE, (0, 0, 1, 0))
    assert set(kappa_cells(SQUARE, theta1)) == {(0, 1, 2), (0, 1, 3), (0, 1)}
    trivial = regular_subdivision(SQUARE, (0, 0, 0, 0))
    assert set(kappa_cells(SQUARE, trivial)) == {(0, 1, 2, 3)}
    single = regular_subdivision(DOUBLE, (0, 1))
    assert set(kappa_cells(DOUBLE, single)) == {(0,)}


def test_subdivision_json_shape():
    T = regular_subdivision(DOUBLE, (0, 1))
    data = T.to_json_dict()
    assert data["maximal"] == [["1"]]
    assert data["uncovered"] == {"2": ["1"]}
    T2 = regular_subdivision(SQUARE, (0, 0, 1, 0))
    d2 = T2.to_json_dict()
    assert d2["maximal"] == [["1", "2", "3"], ["1", "2", "4"]]
    assert all(isinstance(i, int) for e in d2["face_edges"] for i in e)


def test_batched_signatures_agree_with_direct_computation():
    rng = random.Random(77)
    engine = get_engine(SQUARE)
    weights = [tuple(rng.randint(0, 6) for _ in range(4)) for _ in range(200)]
    batched = engine.batch_signatures(weights)
    for w, sig in zip(weights, batched):
        assert sig == regular_subdivision(SQUARE, w).signature


def test_batched_signatures_survive_huge_weights():
    # magnitudes that would overflow 64-bit intermediates must still be exact
    engine = SubdivisionEngine(SQUARE)
    big = 2 ** 70
    weights = [(0, 0, big, 0), (big, 0, 0, 0)]
    sigs = engine.batch_signatures(weights)
    assert sigs[0] == ((0, 1, 2), (0, 1, 3))
    assert sigs[1] == ((0, 2, 3), (1, 2, 3))
