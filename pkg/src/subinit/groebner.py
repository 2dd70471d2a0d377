"""Buchberger engine and ideal-level operations.

The centrepiece is ``reduced_groebner``: Buchberger's algorithm with the
Gebauer–Möller pair criteria and normal selection, followed by minimalisation
and full interreduction.  Reduced bases are unique for a fixed order, which
is what makes ``ideal_equal`` a simple comparison, and they are cached on the
ideal keyed by the order's signature because everything downstream (initial
ideals, eliminations, intersections, restrictions) keeps coming back for
them.

Weight-sensitive computations use the MIN convention via
``polycore.WeightOrder``; see there for the ordering trick.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

from .errors import PreconditionError
from .polycore import (
    BlockOrder,
    GrevLex,
    MonomialOrder,
    Polynomial,
    WeightOrder,
    as_weight,
    initial_form,
    is_homogeneous,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    parse_polynomial,
)

_GREVLEX = GrevLex()


class Ideal:
    """A finitely generated ideal of Q[x_e : e in labels].

    ``generators`` holds the nonzero generators (the zero ideal has none) and
    ``labels`` the variable names of the ambient ring.  Reduced Gröbner bases
    are memoised per order signature; other per-ideal caches (the derived
    point configuration, restrictions to cells) hang off ``extras`` so the
    modules that own those computations can share work across calls.
    """

    __slots__ = ("generators", "labels", "_gb", "extras")

    def __init__(self, generators: Iterable[Polynomial], labels: Sequence[str]):
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise PreconditionError("variable labels must be distinct")
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                raise PreconditionError("generators must be Polynomial instances")
            if g.nvars != len(self.labels):
                raise PreconditionError(
                    f"generator in {g.nvars} variables does not fit ring with "
                    f"{len(self.labels)} labels"
                )
            if g:
                gens.append(g)
        self.generators = tuple(dict.fromkeys(gens))
        self._gb: dict[tuple, tuple[Polynomial, ...]] = {}
        self.extras: dict = {}

    @classmethod
    def from_strings(cls, texts: Iterable[str], labels: Sequence[str]) -> "Ideal":
        labels = tuple(str(x) for x in labels)
        return cls([parse_polynomial(t, labels) for t in texts], labels)

    @property
    def nvars(self) -> int:
        return len(self.labels)

    def is_zero(self) -> bool:
        return not self.generators

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        from .polycore import format_polynomial

        gens = ", ".join(format_polynomial(g, self.labels) for g in self.generators)
        return f"Ideal<{gens or '0'}>"


# ---------------------------------------------------------------------------
# division and S-polynomials


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Full division remainder of p modulo basis.

    Every term of the result is irreducible, so for a Gröbner basis this is
    the unique normal form and membership is ``normal_form(...) == 0``.
    """
    reducers = [(g.leading_monomial(order), g) for g in basis if g]
    key = order.key
    work = dict(p.terms)
    remainder: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, g in reducers:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = c / g.terms[lm]
                for mg, cg in g.terms.items():
                    if mg == lm:
                        continue
                    mm = mono_mul(mg, q)
                    s = work.get(mm, _ZERO) - factor * cg
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = c
    return Polynomial._raw(p.nvars, remainder)


_ZERO = Fraction(0)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lmf = f.leading_monomial(order)
    lmg = g.leading_monomial(order)
    l = mono_lcm(lmf, lmg)
    return f.term_multiple(mono_div(l, lmf), 1 / f.terms[lmf]) - g.term_multiple(
        mono_div(l, lmg), 1 / g.terms[lmg]
    )


# ---------------------------------------------------------------------------
# Buchberger with Gebauer–Möller pair elimination


def _update(G: list, lmG: list, P: list, f: Polynomial, order: MonomialOrder) -> None:
    """Add f to the basis, pruning pairs by the Gebauer–Möller criteria."""
    lmf = f.leading_monomial(order)
    t = len(G)

    # Chain criterion on surviving old pairs.
    P[:] = [
        (i, j, lij)
        for (i, j, lij) in P
        if not mono_divides(lmf, lij)
        or mono_lcm(lmG[i], lmf) == lij
        or mono_lcm(lmG[j], lmf) == lij
    ]

    # New pairs: bucket by lcm, keep only divisibility-minimal lcms, and drop
    # any bucket containing a coprime pair (Buchberger's product criterion).
    buckets: dict[tuple, list[int]] = {}
    for i in range(t):
        buckets.setdefault(mono_lcm(lmG[i], lmf), []).append(i)
    kept: list[tuple] = []
    for L in sorted(buckets, key=order.key):
        if all(not mono_divides(K, L) for K in kept):
            kept.append(L)
    for L in kept:
        if any(mono_mul(lmG[i], lmf) == L for i in buckets[L]):
            continue
        P.append((min(buckets[L]), t, L))

    G.append(f)
    lmG.append(lmf)


def _buchberger(gens: Sequence[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    G: list[Polynomial] = []
    lmG: list = []
    P: list[tuple] = []
    for f in gens:
        if f:
            _update(G, lmG, P, f, order)
    key = order.key
    while P:
        best = min(range(len(P)), key=lambda k: key(P[k][2]))
        i, j, _ = P.pop(best)
        r = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if r:
            _update(G, lmG, P, r, order)
    return G


def _reduce_basis(G: list[Polynomial], order: MonomialOrder) -> tuple[Polynomial, ...]:
    lmkey = lambda h: order.key(h.leading_monomial(order))
    minimal: list[Polynomial] = []
    for g in sorted(G, key=lmkey):
        lm = g.leading_monomial(order)
        if not any(mono_divides(h.leading_monomial(order), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        r = normal_form(g, minimal[:i] + minimal[i + 1 :], order)
        reduced.append(r.monic(order))
    return tuple(sorted(reduced, key=lmkey))


def reduced_groebner(ideal: Ideal, order: MonomialOrder | None = None) -> tuple[Polynomial, ...]:
    """The unique reduced Gröbner basis of the ideal under ``order``.

    Results are cached on the ideal per order signature; the zero ideal has
    the empty basis.
    """
    order = order if order is not None else _GREVLEX
    sig = order.signature
    cached = ideal._gb.get(sig)
    if cached is None:
        cached = _reduce_basis(_buchberger(ideal.generators, order), order)
        ideal._gb[sig] = cached
    return cached


# ---------------------------------------------------------------------------
# derived operations


def is_one_homogeneous(ideal: Ideal) -> bool:
    ones = (1,) * ideal.nvars
    return all(is_homogeneous(g, ones) for g in ideal.generators)


def _require_one_homogeneous(ideal: Ideal, what: str) -> None:
    if not is_one_homogeneous(ideal):
        raise PreconditionError(f"{what} requires generators homogeneous in total degree")


def initial_ideal(ideal: Ideal, w: Sequence) -> Ideal:
    """The initial ideal in_w(I) in the MIN convention.

    A reduced Gröbner basis under the w-adapted order has leading terms inside
    the initial forms, so those initial forms generate in_w(I) (and are in
    fact a Gröbner basis of it under the tiebreak order).
    """
    _require_one_homogeneous(ideal, "initial_ideal")
    wv = as_weight(w)
    if len(wv) != ideal.nvars:
        raise PreconditionError("weight length does not match the ring")
    G = reduced_groebner(ideal, WeightOrder(wv, _GREVLEX))
    return Ideal([initial_form(g, wv) for g in G], ideal.labels)


def ideal_contains(ideal: Ideal, p: Polynomial) -> bool:
    return not normal_form(p, reduced_groebner(ideal), _GREVLEX)


def ideal_contains_ideal(outer: Ideal, inner: Ideal) -> bool:
    """True if every generator of ``inner`` lies in ``outer``."""
    G = reduced_groebner(outer)
    return all(not normal_form(g, G, _GREVLEX) for g in inner.generators)


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    """Exact ideal equality via uniqueness of the reduced Gröbner basis."""
    if a.labels != b.labels:
        raise PreconditionError("ideals live in different rings")
    return reduced_groebner(a) == reduced_groebner(b)


def is_monomial_ideal(ideal: Ideal) -> bool:
    return all(g.is_monomial() for g in ideal.generators)


def _minimalize_monomials(monos: Iterable[tuple]) -> list[tuple]:
    out: list[tuple] = []
    for m in sorted(set(monos), key=sum):
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return out


def eliminate(ideal: Ideal, drop: Iterable[str]) -> Ideal:
    """The elimination ideal I ∩ Q[labels outside ``drop``], in the full ring.

    Uses a block order with the dropped variables in the graded front block;
    basis elements free of those variables cut out the elimination ideal.
    """
    drop = {str(d) for d in drop}
    unknown = drop - set(ideal.labels)
    if unknown:
        raise PreconditionError(f"cannot drop unknown labels {sorted(unknown)}")
    idx = frozenset(i for i, lab in enumerate(ideal.labels) if lab in drop)
    if not idx:
        return Ideal(ideal.generators, ideal.labels)
    order = BlockOrder(ideal.nvars, idx)
    G = reduced_groebner(ideal, order)
    kept = [g for g in G if not (g.support_variables() & idx)]
    return Ideal(kept, ideal.labels)


def _append_variable(p: Polynomial) -> Polynomial:
    """Re-embed p into a ring with one extra (last) variable."""
    return Polynomial._raw(p.nvars + 1, {m + (0,): c for m, c in p.terms.items()})


def _drop_last_variable(p: Polynomial) -> Polynomial:
    return Polynomial._raw(p.nvars - 1, {m[:-1]: c for m, c in p.terms.items()})


def _fresh_label(labels: Sequence[str], base: str) -> str:
    name = base
    k = 0
    while name in labels:
        k += 1
        name = f"{base}{k}"
    return name


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """The intersection I ∩ J via elimination of one auxiliary variable.

    Monomial ideals take the pairwise-lcm shortcut; the general case
    eliminates t from t·I + (1−t)·J.
    """
    if a.labels != b.labels:
        raise PreconditionError("ideals live in different rings")
    if a.is_zero() or b.is_zero():
        return Ideal([], a.labels)
    if is_monomial_ideal(a) and is_monomial_ideal(b):
        monos = [
            mono_lcm(f.leading_monomial(_GREVLEX), g.leading_monomial(_GREVLEX))
            for f in a.generators
            for g in b.generators
        ]
        return Ideal(
            [Polynomial.term(a.nvars, m) for m in _minimalize_monomials(monos)],
            a.labels,
        )
    n = a.nvars
    t = Polynomial.variable(n + 1, n)
    one = Polynomial.constant(n + 1, 1)
    gens = [t * _append_variable(g) for g in a.generators]
    gens += [(one - t) * _append_variable(g) for g in b.generators]
    aux = Ideal(gens, a.labels + (_fresh_label(a.labels, "t"),))
    G = reduced_groebner(aux, BlockOrder(n + 1, (n,)))
    kept = [_drop_last_variable(g) for g in G if n not in g.support_variables()]
    return Ideal(kept, a.labels)


def intersect_many(ideals: Sequence[Ideal]) -> Ideal:
    """Intersect a family of ideals, cheapest members first.

    Monomial ideals are folded together up front so their running
    intersection stays on the pairwise-lcm shortcut; only the remaining
    general ideals pay for an elimination each.
    """
    if not ideals:
        raise PreconditionError("need at least one ideal to intersect")
    monomial = [J for J in ideals if not J.is_zero() and is_monomial_ideal(J)]
    rest = [J for J in ideals if J.is_zero() or not is_monomial_ideal(J)]
    ordered = monomial + rest
    acc = ordered[0]
    for nxt in ordered[1:]:
        acc = intersect(acc, nxt)
    return acc


def contains_monomial(ideal: Ideal) -> bool:
    """Does the ideal contain *some* monomial?

    Equivalent to the product of all variables lying in the radical, decided
    by the classic trick: adjoin t and ask whether 1 - t·x1···xm together
    with I generates the unit ideal.
    """
    n = ideal.nvars
    prod = Polynomial.term(n + 1, (1,) * n + (1,))
    one = Polynomial.constant(n + 1, 1)
    gens = [_append_variable(g) for g in ideal.generators]
    gens.append(one - prod)
    aux = Ideal(gens, ideal.labels + (_fresh_label(ideal.labels, "t"),))
    G = reduced_groebner(aux, _GREVLEX)
    return len(G) == 1 and G[0] == one


def graded_dimension(ideal: Ideal, max_degree: int) -> list[int]:
    """Dimensions of the graded pieces I_0, ..., I_{max_degree}.

    Counts degree-d monomials inside the leading-term ideal; exactness of
    that count is Macaulay's theorem for homogeneous ideals.
    """
    _require_one_homogeneous(ideal, "graded_dimension")
    if max_degree < 0:
        raise PreconditionError("max_degree must be nonnegative")
    n = ideal.nvars
    lms = [g.leading_monomial(_GREVLEX) for g in reduced_groebner(ideal)]
    dims = []
    for d in range(max_degree + 1):
        count = 0
        for combo in combinations_with_replacement(range(n), d):
            m = [0] * n
            for i in combo:
                m[i] += 1
            if any(mono_divides(lm, tuple(m)) for lm in lms):
                count += 1
        dims.append(count)
    return dims


def quotient_graded_dimension(ideal: Ideal, max_degree: int) -> list[int]:
    """Dimensions of (S/I)_0, ..., (S/I)_{max_degree}."""
    n = ideal.nvars
    dims = graded_dimension(ideal, max_degree)
    return [comb(n + d - 1, d) - dims[d] for d in range(max_degree + 1)]
