"""Exact rational linear algebra on plain lists.

Everything here is elementary: reduced row echelon form, rank, kernel bases,
linear solves and inverses over the rationals.  Rows are scaled to primitive
integer vectors and eliminated fraction-free (cross-multiply, then divide by
the gcd), which keeps intermediate entries small without ever rounding;
Fractions only reappear in the final normalisation.

Vectors are sequences of ``Fraction`` (or anything ``Fraction`` accepts);
results come back as lists of ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = Sequence[Fraction]


def _primitive_int_row(row: Sequence) -> list[int]:
    """Scale a rational row to integers and divide out the content."""
    fracs = [Fraction(x) for x in row]
    den = 1
    for x in fracs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x.numerator * (den // x.denominator)) for x in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)`` where zero rows are dropped and
    every pivot entry is 1.  The result is the canonical representative of the
    row space, so two matrices have equal row spaces iff their rrefs coincide.
    """
    mat = [_primitive_int_row(r) for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        # Pick the smallest-magnitude nonzero entry as pivot to limit growth.
        best = None
        for i in range(r, len(mat)):
            v = mat[i][c]
            if v and (best is None or abs(v) < abs(mat[best][c])):
                best = i
        if best is None:
            continue
        mat[r], mat[best] = mat[best], mat[r]
        piv = mat[r][c]
        for i in range(len(mat)):
            if i == r or not mat[i][c]:
                continue
            a = mat[i][c]
            new = [piv * mat[i][j] - a * mat[r][j] for j in range(ncols)]
            g = 0
            for v in new:
                g = gcd(g, v)
            if g > 1:
                new = [v // g for v in new]
            mat[i] = new
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    out = []
    for k, c in enumerate(pivots):
        piv = mat[k][c]
        out.append([Fraction(v, piv) for v in mat[k]])
    return out, pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def row_space_equal(rows_a: Sequence[Sequence], rows_b: Sequence[Sequence], ncols: int) -> bool:
    return rref(rows_a, ncols) == rref(rows_b, ncols)


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Canonical basis of the right kernel ``{v : A v = 0}``.

    One basis vector per free column: a 1 in the free position, the negated
    rref column above the pivots, zeros elsewhere.
    """
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -red[k][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` (free variables set to 0), or None."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for k, c in enumerate(pivots):
        x[c] = red[k][n]
    return x


def invert(rows: Sequence[Sequence]) -> list[list[Fraction]] | None:
    """Inverse of a square matrix, or None if it is singular."""
    n = len(rows)
    aug = []
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError("matrix is not square")
        aug.append(list(r) + [Fraction(int(i == j)) for j in range(n)])
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


def matvec(rows: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * Fraction(x) for a, x in zip(r, v)), Fraction(0)) for r in rows]
