import csv
import io
import math
import random

import pytest

from weylchar.growth import EchelonSpan, gk_fit, membership, span_iterate
from weylchar.morphism import theorem3_chain, theorem3_image_generators, theorem3_map
from weylchar.weyl import AlgebraSignature, PolyElement, TermLimitExceeded, WeylElement


def full_generators(sig, cls=WeylElement):
    return [cls.x(sig, i) for i in range(1, sig.n + 1)] + [cls.y(sig, i) for i in range(1, sig.n + 1)]


def test_small_examples():
    sig = AlgebraSignature(1, 2)
    table = span_iterate(full_generators(sig), 3)
    assert table.dims == [1, 3, 6, 10]
    assert table.to_csv().splitlines()[-1] == "3,10"
    assert span_iterate([], 5).dims == [1] * 6


@pytest.mark.parametrize("n,p", [(1, 2), (1, 3), (2, 2), (2, 5)])
def test_full_generators_binomial(n, p):
    sig = AlgebraSignature(n, p)
    dims = span_iterate(full_generators(sig), 20).dims
    assert dims == [math.comb(N + 2 * n, 2 * n) for N in range(21)]


def test_commutative_numerical_semigroup():
    sig = AlgebraSignature(1, 3)
    t = PolyElement.x(sig, 1)
    dims = span_iterate([t ** 2, t ** 3], 15).dims
    for N, d in enumerate(dims):
        assert d == len({2 * a + 3 * b for a in range(N + 1) for b in range(N + 1 - a)})


@pytest.mark.parametrize("a,b", [(2, 3), (1, 4), (3, 5), (2, 4)])
def test_dependent_pairs_grow_linearly(a, b):
    sig = AlgebraSignature(1, 2)
    t = PolyElement.x(sig, 1)
    dims = span_iterate([t ** a, t ** b], 40).dims
    assert all(d <= a * b * (N + 1) for N, d in enumerate(dims))


def test_order_independence():
    rng = random.Random(2)
    gens = theorem3_image_generators(2, 2)
    base = span_iterate(gens, 10).dims
    for _ in range(3):
        rng.shuffle(gens)
        assert span_iterate(gens, 10).dims == base


def test_membership_examples():
    sig = AlgebraSignature(2, 2)
    B = theorem3_image_generators(2, 2)
    for N in (0, 3):
        assert membership(WeylElement.one(sig), B, N)
    assert membership(theorem3_map(2, 2).u[0], B, 6)
    assert not membership(theorem3_map(2, 2).u[0], B, 1)
    Y = [WeylElement.y(sig, 1), WeylElement.y(sig, 2)]
    for N in (1, 4, 8):
        assert not membership(WeylElement.x(sig, 1), Y, N)
    z = theorem3_chain(2, 2, 2, 0)
    assert membership(z ** 2 * WeylElement.y(sig, 1) + z, B, 3)
    assert not membership(z ** 2 * WeylElement.y(sig, 1), B, 2)


def test_gk_fit_examples():
    sig = AlgebraSignature(1, 2)
    fit = gk_fit(span_iterate(full_generators(sig), 40))
    assert 1.85 <= fit.exponent <= 2.0
    assert fit.window == (20, 40)
    assert set(fit.to_json()) == {"exponent", "residual", "window"}
    single = gk_fit(span_iterate([WeylElement.x(sig, 1)], 40))
    assert 0.9 <= single.exponent <= 1.0
    with pytest.raises(ValueError):
        gk_fit(span_iterate([WeylElement.x(sig, 1)], 5))


def test_n_plus_one_image_growth():
    table = span_iterate(theorem3_image_generators(2, 2), 30)
    assert 2.7 <= gk_fit(table).exponent <= 3.0


def test_csv_export():
    sig = AlgebraSignature(1, 3)
    table = span_iterate(full_generators(sig), 4)
    rows = list(csv.reader(io.StringIO(table.to_csv())))
    assert rows[0] == ["N", "d_N"]
    assert [(int(a), int(b)) for a, b in rows[1:]] == list(enumerate(table.dims))


def test_echelon_span_basics():
    span = EchelonSpan(3)
    assert span.add({5: 1, 2: 2}) is not None
    assert span.add({5: 2, 2: 1}) is None
    assert span.contains({5: 2, 2: 1})
    assert not span.contains({2: 1})
    assert span.add({2: 1}) is not None
    assert span.contains({2: 1}) and span.contains({5: 1})
    assert len(span) == 2


def test_term_cap(monkeypatch):
    monkeypatch.setenv("WEYLCHAR_MAX_TERMS", "50")
    sig = AlgebraSignature(2, 3)
    with pytest.raises(TermLimitExceeded):
        span_iterate(full_generators(sig), 10)


def test_mixed_generators_rejected():
    with pytest.raises(ValueError):
        span_iterate([WeylElement.x(AlgebraSignature(1, 2), 1), WeylElement.x(AlgebraSignature(1, 3), 1)], 2)
