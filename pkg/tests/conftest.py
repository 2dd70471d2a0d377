"""Shared generators for randomized tests.

Both the property suite and the acceptance gate draw from the same pool of
small homogeneous ideals, so the sampler lives here.  Every generator takes
an explicit ``random.Random`` so individual tests stay reproducible.
"""

from fractions import Fraction as F

from subinit import Ideal, Polynomial


def random_homogeneous_ideal(rng, max_vars=5, max_gens=3, max_degree=3):
    """A small ideal whose generators each have one fixed total degree."""
    nvars = rng.randint(2, max_vars)
    labels = tuple(str(i) for i in range(1, nvars + 1))
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        degree = rng.randint(1, max_degree)
        terms = {}
        for _ in range(rng.randint(2, 3)):
            m = [0] * nvars
            for _ in range(degree):
                m[rng.randrange(nvars)] += 1
            coeff = F(rng.randint(-3, 3) or 1, rng.randint(1, 2))
            key = tuple(m)
            terms[key] = terms.get(key, F(0)) + coeff
        poly = Polynomial(nvars, {m: c for m, c in terms.items() if c})
        if poly.terms:
            gens.append(poly)
    if not gens:
        # all candidates cancelled; keep the draw usable with one variable
        first = tuple(1 if i == 0 else 0 for i in range(nvars))
        gens = [Polynomial(nvars, {first: F(1)})]
    return Ideal(gens, labels)


def random_weight(rng, nvars):
    """Mostly integer weights, with an occasional rational entry."""
    out = []
    for _ in range(nvars):
        if rng.random() < 0.2:
            out.append(F(rng.randint(-12, 12), rng.choice([2, 3])))
        else:
            out.append(F(rng.randint(-6, 6)))
    return tuple(out)
