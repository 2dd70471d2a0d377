"""Example families and the weight-sampling census driver.

The generators here produce the inputs everything else is exercised on:
toric ideals of integer configurations, the quadratic Plücker ideals of
2-plane Grassmannians, hypersimplex vertex configurations, weights from
phylogenetic trees (path sums of edge weights), and matroid corank weights.

The census samples integer weight vectors, groups them by the subdivision
they induce on A(I), and evaluates both exactness flags once per class.
Identical seeds give identical results; signatures are sorted before any
evaluation so the work list is deterministic, and the optional worker pool
(capped by SUBINIT_THREADS) changes nothing but wall-clock time.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .bounds import configuration, sandwich
from .configspace import PointConfiguration
from .errors import PreconditionError
from .groebner import Ideal, eliminate
from .polycore import Polynomial
from .subdivision import get_engine

# ---------------------------------------------------------------------------
# ideal and configuration families


def toric_ideal(config: PointConfiguration) -> Ideal:
    """The toric ideal of an integer configuration: kernel of x_e ↦ t·z^(a_e).

    Coordinates are first translated to be nonnegative — harmless, because
    the t-factor makes every binomial relation balanced, so multiplying each
    z_i-column by a constant leaves the kernel alone.  The kernel is then cut
    out by eliminating t and the z variables.
    """
    for row in config.points:
        for x in row:
            if Fraction(x).denominator != 1:
                raise PreconditionError("toric ideals require integer coordinates")
    d = config.ambient_dim
    nl = config.npoints
    shift = [min((int(p[i]) for p in config.points), default=0) for i in range(d)]
    nv = nl + 1 + d
    gens = []
    for e in range(nl):
        xe = [0] * nv
        xe[e] = 1
        ze = [0] * nv
        ze[nl] = 1
        for i in range(d):
            ze[nl + 1 + i] = int(config.points[e][i]) - shift[i]
        gens.append(Polynomial(nv, {tuple(xe): 1, tuple(ze): -1}))
    aux = ["#t"] + [f"#z{i}" for i in range(d)]
    big = Ideal(gens, tuple(config.labels) + tuple(aux))
    cut = eliminate(big, aux)
    projected = [
        Polynomial._raw(nl, {m[:nl]: c for m, c in g.terms.items()})
        for g in cut.generators
    ]
    return Ideal(projected, config.labels)


def pair_labels(n: int) -> tuple[str, ...]:
    return tuple(f"{i},{j}" for i, j in combinations(range(1, n + 1), 2))


def plucker_ideal(k: int, n: int) -> Ideal:
    """The Plücker ideal of Gr(2,n): one three-term quadric per 4-subset."""
    if k != 2:
        raise PreconditionError("only the k = 2 Plücker ideals are supported")
    if n < 4:
        raise PreconditionError("need n >= 4")
    labels = pair_labels(n)
    index = {lab: e for e, lab in enumerate(labels)}
    nv = len(labels)

    def var(i: int, j: int) -> int:
        return index[f"{i},{j}"]

    def mono(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, ...]:
        m = [0] * nv
        m[var(*p)] += 1
        m[var(*q)] += 1
        return tuple(m)

    gens = []
    for i, j, k_, l in combinations(range(1, n + 1), 4):
        gens.append(
            Polynomial(
                nv,
                {
                    mono((i, j), (k_, l)): 1,
                    mono((i, k_), (j, l)): -1,
                    mono((i, l), (j, k_)): 1,
                },
            )
        )
    return Ideal(gens, labels)


def hypersimplex_config(k: int, n: int) -> PointConfiguration:
    """Vertices of Δ(k,n): indicator vectors of k-subsets, lexicographic."""
    if not 1 <= k < n:
        raise PreconditionError("need 1 <= k < n")
    labels = []
    points = []
    for subset in combinations(range(1, n + 1), k):
        labels.append(",".join(str(i) for i in subset))
        points.append(tuple(Fraction(int(i in subset)) for i in range(1, n + 1)))
    return PointConfiguration(labels, points)


# ---------------------------------------------------------------------------
# phylogenetic trees


class Tree:
    """A tree with leaves labeled 1..n, rational edge weights, and positive
    weights on internal (non-leaf) edges; no degree-2 vertices allowed."""

    __slots__ = ("n", "edges", "adjacency")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, object]]):
        self.n = n
        self.edges = tuple((int(u), int(v), Fraction(w)) for u, v, w in edges)
        adjacency: dict[int, list[tuple[int, Fraction]]] = {}
        for u, v, w in self.edges:
            if u == v:
                raise PreconditionError("self-loop in tree")
            adjacency.setdefault(u, []).append((v, w))
            adjacency.setdefault(v, []).append((u, w))
        self.adjacency = adjacency
        vertices = set(adjacency)
        if n < 2 or not set(range(1, n + 1)) <= vertices:
            raise PreconditionError("leaves 1..n must all be present")
        if len(self.edges) != len(vertices) - 1 or not self._connected(vertices):
            raise PreconditionError("edges must form a tree")
        for v in vertices:
            deg = len(adjacency[v])
            if v <= n and deg != 1:
                raise PreconditionError(f"leaf {v} has degree {deg}")
            if v > n and deg < 3:
                raise PreconditionError(f"internal vertex {v} has degree {deg} < 3")
        for u, v, w in self.edges:
            if u > n and v > n and w <= 0:
                raise PreconditionError("internal edge weights must be positive")

    def _connected(self, vertices: set[int]) -> bool:
        start = next(iter(vertices))
        seen = {start}
        stack = [start]
        while stack:
            for child, _ in self.adjacency[stack.pop()]:
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return seen == vertices

    @property
    def internal_vertex_count(self) -> int:
        return len(self.adjacency) - self.n

    def path_weight(self, i: int, j: int) -> Fraction:
        """Sum of edge weights on the unique i–j path."""
        parent: dict[int, tuple[int, Fraction]] = {i: (i, Fraction(0))}
        stack = [i]
        while stack:
            cur = stack.pop()
            if cur == j:
                break
            for child, w in self.adjacency[cur]:
                if child not in parent:
                    parent[child] = (cur, w)
                    stack.append(child)
        total = Fraction(0)
        cur = j
        while cur != i:
            cur, w = parent[cur]
            total += w
        return total

    def to_json_dict(self) -> dict:
        from .configspace import format_rational

        return {
            "n": self.n,
            "edges": [[u, v, format_rational(w)] for u, v, w in self.edges],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Tree":
        try:
            return cls(int(data["n"]), [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"bad tree data: {exc}") from None


def tree_weight(tree: Tree, n: int) -> tuple[Fraction, ...]:
    """w_{ij} = path sum between leaves i and j, in pair-label order."""
    if tree.n != n:
        raise PreconditionError(f"tree has {tree.n} leaves, expected {n}")
    return tuple(tree.path_weight(i, j) for i, j in combinations(range(1, n + 1), 2))


def random_tree(n: int, rng: random.Random) -> Tree:
    """A random topology on n leaves: grow by subdividing an edge (new internal
    vertex) or hanging the new leaf on an existing internal vertex.  Internal
    edges get weights in 1..9, leaf edges in -4..4."""
    if n < 3:
        raise PreconditionError("need at least 3 leaves")
    next_internal = n + 1
    center = next_internal
    next_internal += 1
    edges = [(1, center), (2, center), (3, center)]
    internals = [center]
    for leaf in range(4, n + 1):
        if rng.random() < 0.5:
            u, v = edges.pop(rng.randrange(len(edges)))
            mid = next_internal
            next_internal += 1
            edges.extend([(u, mid), (v, mid), (leaf, mid)])
            internals.append(mid)
        else:
            edges.append((leaf, rng.choice(internals)))
    weighted = []
    for u, v in edges:
        if u > n and v > n:
            weighted.append((u, v, Fraction(rng.randint(1, 9))))
        else:
            weighted.append((u, v, Fraction(rng.randint(-4, 4))))
    return Tree(n, weighted)


# ---------------------------------------------------------------------------
# matroids


class MatroidBases:
    """A matroid given by its bases; the exchange axiom is checked up front."""

    __slots__ = ("n", "k", "bases")

    def __init__(self, n: int, k: int, bases: Iterable[Iterable[int]]):
        self.n = n
        self.k = k
        self.bases = frozenset(frozenset(int(x) for x in b) for b in bases)
        if not self.bases:
            raise PreconditionError("a matroid has at least one basis")
        ground = set(range(1, n + 1))
        for b in self.bases:
            if len(b) != k or not b <= ground:
                raise PreconditionError("bases must be k-subsets of 1..n")
        for b1 in self.bases:
            for b2 in self.bases:
                for x in b1 - b2:
                    if not any((b1 - {x}) | {y} in self.bases for y in b2 - b1):
                        raise PreconditionError("basis exchange fails")

    def rank(self, subset: Iterable[int]) -> int:
        s = frozenset(subset)
        return max(len(b & s) for b in self.bases)

    @classmethod
    def uniform(cls, k: int, n: int) -> "MatroidBases":
        return cls(n, k, combinations(range(1, n + 1), k))

    @classmethod
    def from_json_dict(cls, data: dict) -> "MatroidBases":
        try:
            return cls(int(data["n"]), int(data["k"]), data["bases"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"bad matroid data: {exc}") from None


def corank_weight(matroid: MatroidBases) -> tuple[Fraction, ...]:
    """The corank vector: entry n - rank(B) for every k-subset B."""
    n, k = matroid.n, matroid.k
    return tuple(
        Fraction(n - matroid.rank(B)) for B in combinations(range(1, n + 1), k)
    )


# ---------------------------------------------------------------------------
# census


class CensusClass:
    __slots__ = ("signature", "representative", "omega", "omega_star", "is_triangulation")

    def __init__(self, signature, representative, omega, omega_star, is_triangulation):
        self.signature = signature
        self.representative = representative
        self.omega = omega
        self.omega_star = omega_star
        self.is_triangulation = is_triangulation


class CensusResult:
    __slots__ = ("classes", "samples_drawn", "seed")

    def __init__(self, classes: dict, samples_drawn: int, seed: int):
        self.classes = classes  # signature -> CensusClass, insertion-sorted
        self.samples_drawn = samples_drawn
        self.seed = seed

    @property
    def triangulation_classes(self) -> list[CensusClass]:
        return [c for c in self.classes.values() if c.is_triangulation]

    def to_json_dict(self, labels: Sequence[str]) -> dict:
        return {
            "seed": self.seed,
            "samples_drawn": self.samples_drawn,
            "classes": [
                {
                    "signature": [[labels[e] for e in cell] for cell in c.signature],
                    "representative": list(c.representative),
                    "omega": c.omega,
                    "omega_star": c.omega_star,
                    "is_triangulation": c.is_triangulation,
                }
                for c in self.classes.values()
            ],
        }


def worker_count() -> int:
    raw = os.environ.get("SUBINIT_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise PreconditionError("SUBINIT_THREADS must be an integer") from None
    return os.cpu_count() or 1


_WORKER_IDEAL: Ideal | None = None


def _census_init(gen_terms: list, labels: tuple) -> None:
    global _WORKER_IDEAL
    gens = [Polynomial(len(labels), dict(terms)) for terms in gen_terms]
    _WORKER_IDEAL = Ideal(gens, labels)


def _census_eval(w: tuple) -> tuple[bool, bool]:
    report = sandwich(_WORKER_IDEAL, w)
    return report.lower_exact, report.upper_exact


def draw_weights(
    nvars: int,
    samples: int,
    rng_range: int,
    seed: int,
    include_nongeneric: bool = False,
) -> list[tuple[int, ...]]:
    """The exact weight stream a census with these parameters samples: uniform
    draws from [0, rng_range]^E, then (optionally) a shorter pass from
    [0, min(3, rng_range)]^E where ties — hence coarser subdivisions — are
    overwhelmingly likely."""
    if samples < 1:
        raise PreconditionError("need at least one sample")
    if rng_range < 0:
        raise PreconditionError("range must be nonnegative")
    rng = random.Random(seed)
    weights = [tuple(rng.randint(0, rng_range) for _ in range(nvars))
               for _ in range(samples)]
    if include_nongeneric:
        small = min(3, rng_range)
        extra = max(samples // 10, 500)
        weights += [tuple(rng.randint(0, small) for _ in range(nvars))
                    for _ in range(extra)]
    return weights


def census(
    ideal: Ideal,
    samples: int,
    rng_range: int,
    seed: int,
    include_nongeneric: bool = False,
    threads: int | None = None,
) -> CensusResult:
    """Sample integer weights, bucket by subdivision, evaluate Ω and Ω* once
    per bucket.  Class signatures are sorted before evaluation, so results are
    reproducible regardless of worker count."""
    engine = get_engine(configuration(ideal))
    weights = draw_weights(ideal.nvars, samples, rng_range, seed, include_nongeneric)
    signatures = engine.batch_signatures(weights)
    first_weight: dict[tuple, tuple] = {}
    for w, sig in zip(weights, signatures):
        first_weight.setdefault(sig, w)

    ordered = sorted(first_weight)
    reps = [first_weight[sig] for sig in ordered]
    nworkers = worker_count() if threads is None else max(1, threads)
    flags: list[tuple[bool, bool]]
    if nworkers > 1 and len(reps) > 1:
        import multiprocessing as mp

        payload = [list(g.terms.items()) for g in ideal.generators]
        ctx = mp.get_context("fork")
        with ctx.Pool(min(nworkers, len(reps)), _census_init, (payload, ideal.labels)) as pool:
            flags = pool.map(_census_eval, reps)
    else:
        flags = []
        for w in reps:
            report = sandwich(ideal, w)
            flags.append((report.lower_exact, report.upper_exact))

    k = configuration(ideal).affine_dim + 1
    classes: dict[tuple, CensusClass] = {}
    for sig, rep, (om, om_star) in zip(ordered, reps, flags):
        classes[sig] = CensusClass(
            signature=sig,
            representative=rep,
            omega=om,
            omega_star=om_star,
            is_triangulation=all(len(c) == k for c in sig),
        )
    return CensusResult(classes, samples_drawn=len(weights), seed=seed)
