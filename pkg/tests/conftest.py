"""Shared corpus builders for the randomized suites."""

import random

import pytest

from liedim.freealgebra import Bracket, Gen, LinComb
from liedim.presentation import Presentation

NAMES = ("a", "b", "c", "d")


def random_presentation(rng, m=None, max_relators=4, coeff_bound=8, allow_deg3=True):
    """A random presentation on up to three generators with relators of
    degree at most three and coefficients bounded by coeff_bound."""
    if m is None:
        m = rng.randint(1, 3)
    atoms = [Gen(i) for i in range(m)]
    brackets = [Bracket((Gen(i), Gen(j))) for i in range(m) for j in range(i + 1, m)]
    deg3 = [
        Bracket((Gen(i), Gen(j), Gen(k)))
        for i in range(m)
        for j in range(m)
        for k in range(m)
        if i != j
    ]
    relators = []
    for _ in range(rng.randint(1, max_relators)):
        terms = []
        for atom in atoms:
            if rng.random() < 0.6:
                cf = rng.randint(-coeff_bound, coeff_bound)
                if cf:
                    terms.append((cf, atom))
        for br in brackets:
            if rng.random() < 0.4:
                cf = rng.randint(-coeff_bound, coeff_bound)
                if cf:
                    terms.append((cf, br))
        if allow_deg3 and deg3 and rng.random() < 0.15:
            terms.append((rng.choice((-2, -1, 1, 2)), rng.choice(deg3)))
        if terms:
            relators.append(LinComb(tuple(terms)))
    return Presentation(NAMES[:m], tuple(relators))


def preabelian_corpus_presentation(rng, e_chain):
    """Relators e_i X_i + xi_i with random xi in the derived subring."""
    m = len(e_chain)
    brackets = [Bracket((Gen(i), Gen(j))) for i in range(m) for j in range(i + 1, m)]
    relators = []
    for i, e in enumerate(e_chain):
        terms = []
        if e:
            terms.append((e, Gen(i)))
        for br in brackets:
            if rng.random() < 0.5:
                cf = rng.randint(-3, 3)
                if cf:
                    terms.append((cf, br))
        if terms:
            relators.append(LinComb(tuple(terms)))
    return Presentation(NAMES[:m], tuple(relators))


@pytest.fixture
def rng():
    return random.Random(20240811)
