import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylchar.growth import span_iterate
from weylchar.rectify import (
    CapExceeded,
    DependenceWitness,
    find_annihilator,
    homogeneous_dependent,
    rectify_pair,
)
from weylchar.verify import binary_forms, dependent_test_pairs
from weylchar.weyl import AlgebraSignature, PolyElement, WeylElement, commutator, power

S2 = AlgebraSignature(1, 2)
S5 = AlgebraSignature(1, 5)


def xy(sig, cls=PolyElement):
    return cls.x(sig, 1), cls.y(sig, 1)


def test_dependence_examples():
    x, y = xy(S5)
    assert homogeneous_dependent(x, x ** 3) == DependenceWitness(1, 3, 1)
    assert homogeneous_dependent(x, y) is None
    assert homogeneous_dependent((x + y) ** 2, (x + y) ** 3) == DependenceWitness(1, 3, 2)
    assert homogeneous_dependent(x.scale(2), x) == DependenceWitness(2, 1, 1)
    with pytest.raises(ValueError):
        homogeneous_dependent(x + 1, x)
    with pytest.raises(ValueError):
        homogeneous_dependent(PolyElement.zero(S5), x)


def test_constant_forms():
    x, _ = xy(S5)
    three = PolyElement.constant(S5, 3)
    w = homogeneous_dependent(three, x)
    assert w.q == 1 and w.r == 0 and w.f == 3
    w = homogeneous_dependent(x, three)
    assert power(x, w.q) == power(three, w.r).scale(w.f)


@st.composite
def form_pairs(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    sig = AlgebraSignature(1, p)
    def form(d):
        cs = draw(st.lists(st.integers(0, p - 1), min_size=d + 1, max_size=d + 1))
        f = PolyElement(sig, {(k, d - k): c for k, c in enumerate(cs)})
        return f if f else PolyElement(sig, {(0, d): 1})
    if draw(st.booleans()):
        h = form(draw(st.integers(1, 2)))
        a = power(h, draw(st.integers(1, 3))).scale(draw(st.integers(1, p - 1)))
        b = power(h, draw(st.integers(1, 3)))
        return a, b
    return form(draw(st.integers(0, 4))), form(draw(st.integers(0, 4)))


@given(form_pairs())
def test_witness_soundness(pair):
    a, b = pair
    w = homogeneous_dependent(a, b)
    if w is not None:
        assert power(a, w.q) == power(b, w.r).scale(w.f)
        assert w.f % a.sig.p
    assert (w is None) == (find_annihilator(a, b) is None)


@pytest.mark.parametrize("p", [2, 3])
def test_agrees_with_annihilator_search_sample(p):
    rng = random.Random(p)
    forms = binary_forms(p, 3, 1)
    for _ in range(150):
        a, b = rng.choice(forms), rng.choice(forms)
        q = find_annihilator(a, b)
        assert (homogeneous_dependent(a, b) is None) == (q is None)
        if q is not None:
            total = PolyElement.zero(a.sig)
            for (i, j), c in q.items():
                total = total + (power(a, i) * power(b, j)).scale(c)
            assert not total


def test_rectify_examples():
    x, y = xy(S2, WeylElement)
    res = rectify_pair(x, y)
    assert (res.u, res.v, res.steps) == (x, y, [])
    res = rectify_pair(x, y + x ** 3)
    assert (res.u, res.v) == (y, y + x ** 3)
    (step,) = res.steps
    assert {k: step[k] for k in ("q", "r", "k", "s", "f_1", "Def", "Def_after")} == \
        {"q": 3, "r": 1, "k": 1, "s": 1, "f_1": 1, "Def": 4, "Def_after": 2}
    assert homogeneous_dependent(res.u.leading_form(), res.v.leading_form()) is None
    lines = [json.loads(s) for s in res.log_lines()]
    assert lines == res.steps
    res = rectify_pair(x, y + x ** 5)
    assert homogeneous_dependent(res.u.leading_form(), res.v.leading_form()) is None


def test_rectify_errors():
    x, y = xy(S2, WeylElement)
    with pytest.raises(ValueError):
        rectify_pair(x, x ** 3)
    with pytest.raises(CapExceeded) as exc:
        rectify_pair(x, y + x ** 3, max_steps=0)
    assert exc.value.steps == []
    with pytest.raises(CapExceeded):
        rectify_pair(x, y + x ** 3, max_degree=2)


@pytest.mark.parametrize("pair", dependent_test_pairs(), ids=lambda uv: f"{uv[0]} | {uv[1]}")
def test_def_descent_and_growth(pair):
    u, v = pair
    res = rectify_pair(u, v)
    defs = [res.steps[0]["Def"]] + [s["Def_after"] for s in res.steps]
    assert all(b < a for a, b in zip(defs, defs[1:]))
    assert all(d > 0 for d in defs)
    assert commutator(res.u, res.v)
    assert homogeneous_dependent(res.u.leading_form(), res.v.leading_form()) is None
    d = max(res.word_lengths)
    # d_N never decreases, so once d_N0 clears the bound at N = 20 every
    # later N up to 20 is covered too
    top = 20 * 20 / (2 * d * d)
    N0 = 2
    while True:
        dims = span_iterate([res.u, res.v], N0).dims
        for N, dn in enumerate(dims):
            assert dn > N * N / (2 * d * d)
        if dims[-1] > top or N0 == 20:
            break
        N0 = min(20, 2 * N0)
