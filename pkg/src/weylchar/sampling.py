"""Random elements and maps for property checks."""

from __future__ import annotations

import random

from .morphism import WEYL, triangular_map
from .weyl import AlgebraSignature, PolyElement, WeylElement


def random_monomial(sig: AlgebraSignature, rng: random.Random, max_degree: int) -> tuple:
    d = rng.randint(0, max_degree)
    m = [0] * sig.nvars
    for _ in range(d):
        m[rng.randrange(sig.nvars)] += 1
    return tuple(m)


def random_element(sig: AlgebraSignature, rng: random.Random, max_degree: int = 3,
                   max_terms: int = 4, cls=WeylElement, nonzero: bool = True):
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            terms[random_monomial(sig, rng, max_degree)] = rng.randrange(1, sig.p)
        e = cls(sig, terms)
        if e or not nonzero:
            return e


def random_poly(sig: AlgebraSignature, rng: random.Random, max_degree: int = 3, max_terms: int = 4):
    return random_element(sig, rng, max_degree, max_terms, cls=PolyElement)


def random_triangular_map(p: int, rng: random.Random, kind: str = WEYL, max_degree: int = 4):
    """u = x + g(y), v = y with a random g of degree <= max_degree."""
    g = [rng.randrange(p) for _ in range(max_degree + 1)]
    return triangular_map(g, p, kind)
