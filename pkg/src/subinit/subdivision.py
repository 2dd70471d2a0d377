"""Regular subdivisions of point configurations, exactly.

The enumeration is deliberately brute force: every affinely-spanning subset
of d'+1 labels determines one affine functional f with f(a_e) + w_e = 0 on
the subset, and the subset survives iff f(a_e) + w_e >= 0 everywhere — the
labels achieving equality form a maximal cell of subd_w(A).  That is
O(|E|^(d'+1)) candidate functionals, fine at the scale this package targets
(|E| <= ~15, d' <= 5) and trivially correct, since every maximal cell
contains an affinely independent spanning subset.

Because the census driver asks the same configuration about thousands of
weight vectors, the per-subset barycentric data (integer rows plus a positive
denominator) is precomputed once on the configuration; evaluating one weight
is then a handful of integer dot products.  Cells are tuples of label
*indices*; label strings appear only at the JSON boundary.

Everything below the maximal cells — face posets, Hasse edges, uncovered
labels — is computed lazily, since most callers only ever need signatures.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import _linalg
from .configspace import PointConfiguration
from .errors import InternalInvariantError, PreconditionError
from .polycore import as_weight

Cell = tuple  # sorted tuple of label indices


# ---------------------------------------------------------------------------
# exact LP feasibility (phase-1 simplex, Bland's rule)


def lp_feasible(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Decide whether {x >= 0 : A x = b} is nonempty; return a witness or None.

    Phase-1 simplex over exact rationals.  Bland's anti-cycling rule (always
    the lowest-index candidate) makes termination unconditional, and
    artificials never re-enter the basis.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    tab: list[list[Fraction]] = []
    for row, beta in zip(rows, rhs):
        r = [Fraction(x) for x in row]
        beta = Fraction(beta)
        if beta < 0:
            r = [-x for x in r]
            beta = -beta
        # columns: n originals, m artificials, rhs
        tab.append(r + [Fraction(0)] * m + [beta])
    for i in range(m):
        tab[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]

    # Reduced-cost row for minimizing the artificial sum.
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            obj[j] -= tab[i][j]

    while True:
        enter = next((j for j in range(n) if obj[j] < 0), None)
        if enter is None:
            break
        pivot_row = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pivot_row]):
                    best = ratio
                    pivot_row = i
        if pivot_row is None:
            # Unbounded direction in phase 1 cannot happen (objective >= 0),
            # but guard anyway.
            raise InternalInvariantError("phase-1 simplex found an unbounded column")
        piv = tab[pivot_row][enter]
        tab[pivot_row] = [x / piv for x in tab[pivot_row]]
        for i in range(m):
            if i != pivot_row and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[pivot_row])]
        if obj[enter]:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[pivot_row])]
        basis[pivot_row] = enter

    residual = sum((tab[i][-1] for i in range(m) if basis[i] >= n), Fraction(0))
    if residual:
        return None
    witness = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            witness[basis[i]] = tab[i][-1]
    return witness


def point_in_hull(config: PointConfiguration, cell: Iterable[int], point: Sequence) -> bool:
    """Exact test whether `point` lies in conv{a_e : e in cell}."""
    cell = tuple(cell)
    pt = [Fraction(x) for x in point]
    rows = [[config.points[e][i] for e in cell] for i in range(config.ambient_dim)]
    rows.append([Fraction(1)] * len(cell))
    return lp_feasible(rows, pt + [Fraction(1)]) is not None


# ---------------------------------------------------------------------------
# the per-configuration engine


class SubdivisionEngine:
    """Precomputed barycentric data answering subd_w queries for many w."""

    def __init__(self, config: PointConfiguration):
        self.config = config
        self.dim = config.affine_dim
        nl = config.npoints
        lifted = config._lifted_rows()
        k = self.dim + 1
        self.subsets: list[tuple[tuple, int, list[tuple[int, tuple]]]] = []
        self.max_row_sum = 1
        for S in combinations(range(nl), k):
            sub = [lifted[s] for s in S]
            if _linalg.rank(sub, config.ambient_dim + 1) != k:
                continue
            cols = list(zip(*sub))  # transpose, (amb+1) x k
            others = []
            den = 1
            coeffs = []
            for e in range(nl):
                if e in S:
                    continue
                lam = _linalg.solve(cols, lifted[e])
                if lam is None:  # impossible: S spans the affine hull
                    raise InternalInvariantError("affine coordinates must exist")
                coeffs.append((e, lam))
                for x in lam:
                    den = den * x.denominator // _gcd(den, x.denominator)
            for e, lam in coeffs:
                row = tuple(int(x * den) for x in lam)
                others.append((e, row))
                self.max_row_sum = max(self.max_row_sum, den + sum(abs(r) for r in row))
            self.subsets.append((S, den, others))

    def maximal_cells(self, w: Sequence) -> list[Cell]:
        """Sorted maximal cells of subd_w; works for any rational weights."""
        nl = self.config.npoints
        if len(w) != nl:
            raise PreconditionError(
                f"weight has {len(w)} entries, configuration has {nl} points"
            )
        out = set()
        for S, den, others in self.subsets:
            zeros: list[int] = []
            ok = True
            for e, row in others:
                v = den * w[e]
                for r, s in zip(row, S):
                    if r:
                        v -= r * w[s]
                if v < 0:
                    ok = False
                    break
                if v == 0:
                    zeros.append(e)
            if ok:
                out.add(tuple(sorted(S + tuple(zeros))))
        return sorted(out)

    def signature(self, w: Sequence) -> tuple[Cell, ...]:
        return tuple(self.maximal_cells(w))

    def batch_signatures(self, weights: Sequence[Sequence[int]]) -> list[tuple[Cell, ...]]:
        """Signatures for many integer weight vectors at once.

        Uses int64 matrix products when the precomputed bound proves they
        cannot overflow; otherwise falls back to the exact per-weight path.
        The two paths compute identical values.
        """
        if not weights:
            return []
        wmax = max(max(abs(x) for x in w) for w in weights)
        if any(not isinstance(x, int) for w in weights for x in w) or \
                wmax * self.max_row_sum >= 2 ** 62:
            return [self.signature(w) for w in weights]
        import numpy as np

        W = np.array(weights, dtype=np.int64)
        nw = len(weights)
        cells_per_weight: list[list[Cell]] = [[] for _ in range(nw)]
        for S, den, others in self.subsets:
            if not others:
                for lst in cells_per_weight:
                    lst.append(S)
                continue
            idx_e = np.fromiter((e for e, _ in others), dtype=np.int64)
            R = np.array([row for _, row in others], dtype=np.int64)
            vals = den * W[:, idx_e] - W[:, list(S)] @ R.T
            ok = ~(vals < 0).any(axis=1)
            if not ok.any():
                continue
            zero_mask = vals == 0
            es = [e for e, _ in others]
            for wi in np.flatnonzero(ok):
                zs = zero_mask[wi]
                if zs.any():
                    cell = tuple(sorted(S + tuple(es[j] for j in np.flatnonzero(zs))))
                else:
                    cell = S
                cells_per_weight[wi].append(cell)
        return [tuple(sorted(set(cells))) for cells in cells_per_weight]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def get_engine(config: PointConfiguration) -> SubdivisionEngine:
    engine = config.extras.get("engine")
    if engine is None:
        engine = SubdivisionEngine(config)
        config.extras["engine"] = engine
    return engine


# ---------------------------------------------------------------------------
# faces of a cell


def _affine_dim_of(config: PointConfiguration, cell: Cell) -> int:
    one = Fraction(1)
    rows = [[one, *config.points[e]] for e in cell]
    return _linalg.rank(rows, config.ambient_dim + 1) - 1


def _proper_facets(config: PointConfiguration, cell: Cell) -> list[Cell]:
    """The codimension-1 faces of the subconfiguration indexed by `cell`."""
    d = _affine_dim_of(config, cell)
    if d <= 0:
        return []
    if len(cell) == d + 1:
        # Affinely independent points: every subset is a face.
        return [cell[:i] + cell[i + 1 :] for i in range(len(cell))]
    one = Fraction(1)
    lifted = {e: [one, *config.points[e]] for e in cell}
    found: set[Cell] = set()
    for T in combinations(cell, d):
        rows = [lifted[t] for t in T]
        if _linalg.rank(rows, config.ambient_dim + 1) != d:
            continue
        q = next(
            (e for e in cell if e not in T
             and _linalg.rank(rows + [lifted[e]], config.ambient_dim + 1) == d + 1),
            None,
        )
        if q is None:  # T already spans the cell's hull; cannot happen with rank d
            continue
        system = rows + [lifted[q]]
        rhs = [Fraction(0)] * d + [one]
        x = _linalg.solve(system, rhs)
        if x is None:
            raise InternalInvariantError("supporting functional must exist")
        vals = {e: sum(a * b for a, b in zip(lifted[e], x)) for e in cell}
        for sign in (1, -1):
            if all(sign * v >= 0 for v in vals.values()):
                face = tuple(sorted(e for e in cell if not vals[e]))
                if face and _affine_dim_of(config, face) == d - 1:
                    found.add(face)
    return sorted(found)


def _face_poset(config: PointConfiguration, cell: Cell) -> dict[Cell, tuple[Cell, ...]]:
    """Map each face of `cell` (including itself) to its facet list; memoized."""
    memo: dict[Cell, tuple[Cell, ...]] = config.extras.setdefault("facets", {})
    out: dict[Cell, tuple[Cell, ...]] = {}
    stack = [cell]
    while stack:
        c = stack.pop()
        if c in out:
            continue
        facets = memo.get(c)
        if facets is None:
            facets = tuple(_proper_facets(config, c))
            memo[c] = facets
        out[c] = facets
        stack.extend(facets)
    return out


def faces_of_cell(config: PointConfiguration, cell: Iterable[int]) -> set[Cell]:
    """All faces of the subconfiguration (a_e)_{e in cell}, itself included.

    A face is the argmin set of an affine functional; the recursion walks
    facets of facets, so every supporting hyperplane is eventually visited.
    """
    cell = tuple(sorted(cell))
    if not cell:
        raise PreconditionError("cells are nonempty")
    return set(_face_poset(config, cell))


# ---------------------------------------------------------------------------
# subdivisions


class Subdivision:
    """A regular subdivision: maximal cells up front, face data on demand."""

    __slots__ = ("config", "weight", "maximal", "_cells", "_face_edges", "_uncovered")

    def __init__(self, config: PointConfiguration, weight: tuple, maximal: Sequence[Cell]):
        self.config = config
        self.weight = weight
        self.maximal = tuple(sorted(tuple(sorted(c)) for c in maximal))
        self._cells = None
        self._face_edges = None
        self._uncovered = None

    @property
    def signature(self) -> tuple[Cell, ...]:
        return self.maximal

    def _ensure_faces(self) -> None:
        if self._cells is not None:
            return
        posets: dict[Cell, tuple[Cell, ...]] = {}
        for M in self.maximal:
            posets.update(_face_poset(self.config, M))
        cells = sorted(posets, key=lambda c: (len(c), c))
        index = {c: i for i, c in enumerate(cells)}
        edges = sorted(
            {(index[f], index[c]) for c, facets in posets.items() for f in facets}
        )
        self._cells = tuple(cells)
        self._face_edges = tuple(edges)

    @property
    def cells(self) -> tuple[Cell, ...]:
        """Every cell (all faces of all maximal cells), sorted by size."""
        self._ensure_faces()
        return self._cells

    @property
    def face_edges(self) -> tuple[tuple[int, int], ...]:
        """Hasse pairs (facet index, parent index) into `cells`."""
        self._ensure_faces()
        return self._face_edges

    @property
    def uncovered(self) -> dict[int, Cell]:
        """Labels in no cell, mapped to their minimal covering cell."""
        if self._uncovered is None:
            covered: set[int] = set()
            for M in self.maximal:
                covered.update(M)
            out: dict[int, Cell] = {}
            for e in range(self.config.npoints):
                if e in covered:
                    continue
                point = self.config.points[e]
                containing = [
                    c for c in self.cells if point_in_hull(self.config, c, point)
                ]
                if not containing:
                    raise InternalInvariantError(
                        f"label {self.config.labels[e]} lies in no cell hull"
                    )
                containing.sort(key=lambda c: (len(c), c))
                least = containing[0]
                if not all(set(least) <= set(c) for c in containing):
                    raise InternalInvariantError(
                        f"no unique minimal cell for label {self.config.labels[e]}"
                    )
                out[e] = least
            self._uncovered = out
        return self._uncovered

    @property
    def is_trivial(self) -> bool:
        return len(self.maximal) == 1 and len(self.maximal[0]) == self.config.npoints

    @property
    def is_triangulation(self) -> bool:
        k = self.config.affine_dim + 1
        return all(len(c) == k for c in self.maximal)

    def to_json_dict(self) -> dict:
        labels = self.config.labels
        as_labels = lambda c: [labels[e] for e in c]
        return {
            "maximal": [as_labels(c) for c in self.maximal],
            "cells": [as_labels(c) for c in self.cells],
            "face_edges": [list(e) for e in self.face_edges],
            "uncovered": {labels[e]: as_labels(c) for e, c in self.uncovered.items()},
        }

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Subdivision({len(self.maximal)} maximal cells)"


def regular_subdivision(config: PointConfiguration, w: Sequence) -> Subdivision:
    """subd_w(A) in the lower-faces convention.

    Cells are the equality sets of affine functionals f with f(a_e) + w_e
    >= 0 everywhere; coincident points land in the same cells since only
    values matter.
    """
    wv = as_weight(w)
    if len(wv) != config.npoints:
        raise PreconditionError("weight length must match the number of points")
    return Subdivision(config, wv, get_engine(config).maximal_cells(wv))


def refines(finer: Subdivision, coarser: Subdivision) -> bool:
    """True iff every cell of the first subdivision fits inside a cell of
    the second.  Checking maximal cells suffices: every cell sits inside a
    maximal one, and containment is transitive."""
    if finer.config is not coarser.config and finer.config != coarser.config:
        raise PreconditionError("subdivisions belong to different configurations")
    coarse_sets = [set(c) for c in coarser.maximal]
    return all(any(set(c) <= big for big in coarse_sets) for c in finer.maximal)


def subdivision_equal(a: Subdivision, b: Subdivision) -> bool:
    return a.signature == b.signature


def in_secondary_cone(config: PointConfiguration, T: Subdivision, w: Sequence) -> str:
    """Locate w relative to the closed secondary cone of T.

    'interior' if subd_w(A) = T; 'boundary' if T strictly refines subd_w(A)
    (w lies on the cone's boundary, where cells merge); 'outside' otherwise.
    """
    current = regular_subdivision(config, w)
    if subdivision_equal(current, T):
        return "interior"
    if refines(T, current):
        return "boundary"
    return "outside"


# ---------------------------------------------------------------------------
# interiority, adjacency, kappa


def _is_interior_cell(config: PointConfiguration, cell: Cell) -> bool:
    """A cell is interior iff no proper face of A contains it.

    Equivalently, there is no affine functional vanishing on the cell,
    nonnegative on all points, and positive somewhere — an exact LP.
    """
    cache = config.extras.setdefault("interior", {})
    hit = cache.get(cell)
    if hit is not None:
        return hit
    amb = config.ambient_dim
    ncols = 2 * (amb + 1)
    rows = []
    rhs = []
    slack_labels = [e for e in range(config.npoints) if e not in cell]
    nslack = len(slack_labels)
    one = Fraction(1)
    lifted = config._lifted_rows()

    def functional_row(e: int) -> list[Fraction]:
        l = lifted[e]
        return list(l) + [-x for x in l]

    for e in cell:
        rows.append(functional_row(e) + [Fraction(0)] * nslack)
        rhs.append(Fraction(0))
    for j, e in enumerate(slack_labels):
        r = functional_row(e) + [Fraction(0)] * nslack
        r[ncols + j] = Fraction(-1)
        rows.append(r)
        rhs.append(Fraction(0))
    total = [Fraction(0)] * (ncols + nslack)
    for e in range(config.npoints):
        fr = functional_row(e)
        for j in range(ncols):
            total[j] += fr[j]
    rows.append(total)
    rhs.append(one)
    supported = lp_feasible(rows, rhs) is not None
    cache[cell] = not supported
    return not supported


class AdjacencyGraph:
    """G(Θ): maximal cells as nodes, shared interior codim-1 cells as edges."""

    __slots__ = ("nodes", "edges")

    def __init__(self, nodes: Sequence[Cell], edges: Sequence[tuple[Cell, Cell, Cell]]):
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)

    def degree(self, node: Cell) -> int:
        return sum(1 for a, b, _ in self.edges if node in (a, b))

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {self.nodes[0]}
        frontier = [self.nodes[0]]
        while frontier:
            cur = frontier.pop()
            for a, b, _ in self.edges:
                if a == cur and b not in seen:
                    seen.add(b)
                    frontier.append(b)
                elif b == cur and a not in seen:
                    seen.add(a)
                    frontier.append(a)
        return len(seen) == len(self.nodes)


def adjacency_graph(config: PointConfiguration, T: Subdivision) -> AdjacencyGraph:
    """Nodes = maximal cells; one edge per shared interior codim-1 cell."""
    d = config.affine_dim
    edges = []
    for cell in T.cells:
        if len(cell) < d or _affine_dim_of(config, cell) != d - 1:
            continue
        hosts = [M for M in T.maximal if set(cell) <= set(M)]
        if not _is_interior_cell(config, cell):
            continue
        if len(hosts) != 2:
            raise InternalInvariantError(
                f"interior codim-1 cell {cell} lies in {len(hosts)} maximal cells"
            )
        edges.append((hosts[0], hosts[1], cell))
    return AdjacencyGraph(T.maximal, sorted(edges))


def kappa_cells(config: PointConfiguration, T: Subdivision) -> set[Cell]:
    """Maximal cells plus interior codim-1 cells: the objects that determine
    the (co)limit diagrams downstream."""
    graph = adjacency_graph(config, T)
    out = set(graph.nodes)
    out.update(label for _, _, label in graph.edges)
    return out
