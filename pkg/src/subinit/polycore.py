"""Sparse multivariate polynomials over Q and weight-aware monomial orders.

Monomials are plain exponent tuples; a polynomial is an immutable map from
exponent tuple to nonzero ``Fraction``.  Coefficients stay exact rationals
throughout — nothing in this package ever touches floating point.

Initial forms follow the MIN convention: ``initial_form(p, w)`` keeps the
terms of *lowest* w-degree.  The order variant ``WeightOrder(w, tiebreak)``
is built so that those terms are the leading ones: it compares total degree
ascending, then w-degree descending, then the tiebreak.  A reduced Gröbner
basis under that order therefore has leading terms inside the initial forms,
which is what makes initial-ideal computations downstream correct.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, PreconditionError

Monomial = tuple  # exponent tuple, one entry per variable
WeightVector = tuple  # one Fraction per variable


# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if a | b, i.e. b/a has no negative exponents."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Exponent vector of a/b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def weight_degree(m: Monomial, w: Sequence[Fraction]) -> Fraction:
    """The w-degree <w, m> of a monomial."""
    if len(m) != len(w):
        raise PreconditionError(
            f"weight vector has {len(w)} entries, monomial has {len(m)} variables"
        )
    return sum((wi * e for wi, e in zip(w, m) if e), Fraction(0))


def as_weight(entries: Iterable) -> tuple[Fraction, ...]:
    """Coerce a sequence of numbers/strings into an exact weight vector."""
    return tuple(Fraction(x) for x in entries)


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A multiplicative total order on monomials with 1 as least element.

    Subclasses provide ``key``; larger key means larger monomial, so leading
    terms are obtained with ``max``.  ``signature`` is a hashable description
    used to key Gröbner-basis caches.
    """

    signature: tuple = ()

    def key(self, m: Monomial):
        raise NotImplementedError

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0 or 1 as a <, =, > b in this order."""
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"{type(self).__name__}{self.signature[1:]}"


class Lex(MonomialOrder):
    """Lexicographic order with x1 > x2 > ... in index order."""

    signature = ("lex",)

    def key(self, m: Monomial):
        return m


class GrevLex(MonomialOrder):
    """Graded reverse lexicographic order (the workhorse default)."""

    signature = ("grevlex",)

    def key(self, m: Monomial):
        return sum(m), tuple(-e for e in reversed(m))


class WeightOrder(MonomialOrder):
    """Degree-refined weight order adapted to MIN-convention initial forms.

    Monomials are compared by total degree ascending, then by w-degree
    descending, then by the tiebreak order.  Among the terms of a polynomial
    homogeneous for the all-ones grading, the leading one thus has minimal
    w-degree, i.e. it is a term of the initial form.
    """

    def __init__(self, w: Sequence, tiebreak: MonomialOrder | None = None):
        self.w = as_weight(w)
        self.tiebreak = tiebreak if tiebreak is not None else GrevLex()
        self.signature = ("weight", self.w, self.tiebreak.signature)

    def key(self, m: Monomial):
        return sum(m), -weight_degree(m, self.w), self.tiebreak.key(m)


class BlockOrder(MonomialOrder):
    """Block (elimination) order: the front variables dominate.

    Any monomial involving a front variable is larger than every monomial in
    the back variables alone, because the front comparison is graded; hence a
    Gröbner basis under this order solves elimination of the front block.
    """

    def __init__(self, nvars: int, front: Iterable[int],
                 front_order: MonomialOrder | None = None,
                 back_order: MonomialOrder | None = None):
        self.front = tuple(sorted(set(front)))
        if self.front and not (0 <= self.front[0] and self.front[-1] < nvars):
            raise PreconditionError("front block indices out of range")
        self.back = tuple(i for i in range(nvars) if i not in set(self.front))
        self.front_order = front_order if front_order is not None else GrevLex()
        self.back_order = back_order if back_order is not None else GrevLex()
        self.signature = ("block", self.front, self.front_order.signature,
                          self.back_order.signature)

    def key(self, m: Monomial):
        mf = tuple(m[i] for i in self.front)
        mb = tuple(m[i] for i in self.back)
        return self.front_order.key(mf), self.back_order.key(mb)


def compare(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """Convenience wrapper: -1/0/1 as a is smaller/equal/greater under order."""
    return order.compare(a, b)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """An immutable sparse polynomial over Q.

    ``terms`` maps exponent tuples to nonzero Fractions; ``nvars`` fixes the
    ambient variable count so the zero polynomial knows where it lives.
    """

    __slots__ = ("nvars", "terms", "_hash", "_lm")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Fraction] = {}
        for m, c in items:
            c = Fraction(c)
            if not c:
                continue
            m = tuple(m)
            if len(m) != nvars:
                raise PreconditionError(
                    f"exponent tuple {m} does not match nvars={nvars}"
                )
            clean[m] = clean.get(m, Fraction(0)) + c
            if not clean[m]:
                del clean[m]
        self.terms = clean
        self._hash = None
        self._lm = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def term(cls, nvars: int, m: Monomial, c=1) -> "Polynomial":
        return cls(nvars, {tuple(m): Fraction(c)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        """Maximal total degree of a term; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support_variables(self) -> set[int]:
        used: set[int] = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Monomial, Fraction]]:
        """Terms sorted descending, leading term first."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        # memoised per order: basis polynomials are queried for their leading
        # monomial millions of times during division, always under the same
        # handful of orders
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading monomial")
        cache = self._lm
        if cache is None:
            cache = self._lm = {}
        m = cache.get(order.signature)
        if m is None:
            m = max(self.terms, key=order.key)
            cache[order.signature] = m
        return m

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_compatible(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                s = out.get(m, Fraction(0)) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: x * c for m, x in self.terms.items()})

    def term_multiple(self, m: Monomial, c) -> "Polynomial":
        """self * c*x^m without building an intermediate Polynomial."""
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            self.nvars, {mono_mul(mm, m): cc * c for mm, cc in self.terms.items()}
        )

    def monic(self, order: MonomialOrder) -> "Polynomial":
        lc = self.leading_coefficient(order)
        return self if lc == 1 else self.scale(1 / lc)

    # -- plumbing ----------------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        """Internal constructor for already-clean term dicts."""
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        p._lm = None
        return p

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise PreconditionError(
                f"polynomials live in different rings ({self.nvars} vs {other.nvars} variables)"
            )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        labels = tuple(str(i + 1) for i in range(self.nvars))
        return f"Polynomial({format_polynomial(self, labels)!r})"


# ---------------------------------------------------------------------------
# weights, homogeneity, initial forms


def is_homogeneous(p: Polynomial, w: Sequence) -> bool:
    """True if all terms of p share one w-degree (vacuously for p = 0)."""
    wv = as_weight(w)
    degs = {weight_degree(m, wv) for m in p.terms}
    return len(degs) <= 1


def initial_form(p: Polynomial, w: Sequence) -> Polynomial:
    """Sum of the terms of minimal w-degree (the MIN convention): in_w(p)
    picks out the lowest w-homogeneous component, so for example
    initial_form(x1*x2 - x3*x4, (0,0,1,0)) = x1*x2.
    """
    if not p.terms:
        raise PreconditionError("initial form of the zero polynomial is undefined")
    wv = as_weight(w)
    best = min(weight_degree(m, wv) for m in p.terms)
    return Polynomial._raw(
        p.nvars, {m: c for m, c in p.terms.items() if weight_degree(m, wv) == best}
    )


# ---------------------------------------------------------------------------
# text form
#
# Grammar (whitespace-insensitive):
#   expr   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := atom ['^' integer]
#   atom   := rational | variable | '(' expr ')'
# Variables are x<digits> or x[<label>]; rationals are <int> or <int>/<int>.

_TOKEN = re.compile(
    r"\s*(?:(?P<var>x\[[^\]]*\]|x\d+)|(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"unexpected character at {text[pos:].strip()[:10]!r}")
            break
        if m.lastgroup == "var":
            raw = m.group("var")
            label = raw[2:-1] if raw[1] == "[" else raw[1:]
            tokens.append(("var", label.replace(" ", "")))
        elif m.lastgroup == "num":
            tokens.append(("num", m.group("num")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], labels: Sequence[str], nvars: int):
        self.tokens = tokens
        self.pos = 0
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self) -> Polynomial:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Polynomial:
        p = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a nonnegative integer")
            e = int(val)
            out = Polynomial.constant(p.nvars, 1)
            for _ in range(e):
                out = out * p
            return out
        return p

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return Polynomial.constant(self.nvars, Fraction(val))
        if kind == "var":
            try:
                return Polynomial.variable(self.nvars, self.index[val])
            except KeyError:
                raise ParseError(f"unknown variable label {val!r}") from None
        if kind == "op" and val == "(":
            p = self.expr()
            kind, val = self.take()
            if (kind, val) != ("op", ")"):
                raise ParseError("unbalanced parentheses")
            return p
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input")


def parse_polynomial(text: str, labels: Sequence[str]) -> Polynomial:
    """Parse the textual polynomial grammar against a variable label list."""
    parser = _Parser(_tokenize(text), labels, len(labels))
    p = parser.expr()
    if parser.pos != len(parser.tokens):
        raise ParseError(f"trailing input near token {parser.peek()[1]!r}")
    return p


def _variable_text(label: str) -> str:
    return f"x{label}" if label.isdigit() else f"x[{label}]"


def format_monomial(m: Monomial, labels: Sequence[str]) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(_variable_text(labels[i]))
        elif e > 1:
            parts.append(f"{_variable_text(labels[i])}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(p: Polynomial, labels: Sequence[str],
                      order: MonomialOrder | None = None) -> str:
    """Render a polynomial in the same grammar ``parse_polynomial`` accepts."""
    if not p.terms:
        return "0"
    order = order if order is not None else GrevLex()
    pieces = []
    for m, c in p.sorted_terms(order):
        mono = format_monomial(m, labels)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)
