import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import element_tuples, elements
from weylchar.poisson import bracket, frobenius_decompose, partial, reassemble, variable_index
from weylchar.structure import poisson_is_central
from weylchar.weyl import AlgebraSignature, PolyElement, power

P1_5 = AlgebraSignature(1, 5)


def test_partial_examples():
    x, y = PolyElement.x(P1_5, 1), PolyElement.y(P1_5, 1)
    assert partial(x ** 2, "x1") == x.scale(2)
    assert not partial(x ** 5, "x1")
    assert partial(x * y, ("y", 1)) == x
    with pytest.raises(ValueError):
        variable_index(P1_5, "z1")
    with pytest.raises(ValueError):
        variable_index(P1_5, "x2")


def test_bracket_examples():
    sig = AlgebraSignature(2, 3)
    for i in (1, 2):
        for j in (1, 2):
            expect = 1 if i == j else 0
            assert bracket(PolyElement.x(sig, i), PolyElement.y(sig, j)) == expect
    x, y = PolyElement.x(P1_5, 1), PolyElement.y(P1_5, 1)
    assert str(bracket(x ** 2, y)) == "2*x1"
    f = x ** 3 * y + y ** 2
    assert not bracket(f, f)


def test_frobenius_decompose_examples():
    sig = AlgebraSignature(1, 3)
    x = PolyElement.x(sig, 1)
    for m in (1, 2):
        P = 3 ** m
        dec = frobenius_decompose(x ** (P + 1), m)
        assert dec == {(0, 1): x ** P}
    assert frobenius_decompose(PolyElement.one(sig), 1) == {(0, 0): PolyElement.one(sig)}
    with pytest.raises(ValueError):
        frobenius_decompose(x, 0)


@given(element_tuples(3, cls=PolyElement), st.integers(0, 6))
def test_poisson_axioms(triple, c):
    f, g, h = triple
    assert bracket(f, g) == -bracket(g, f)
    assert bracket(f, g + h.scale(c)) == bracket(f, g) + bracket(f, h).scale(c)
    jac = bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g))
    assert not jac
    assert bracket(f, g * h) == bracket(f, g) * h + g * bracket(f, h)


@given(elements(cls=PolyElement, max_degree=3))
def test_pth_powers_are_central(f):
    sig = f.sig
    fp = power(f, sig.p)
    assert poisson_is_central(fp)
    assert poisson_is_central(fp, "brackets")
    for i in range(1, sig.n + 1):
        assert not bracket(fp, PolyElement.x(sig, i))
        assert not bracket(fp, PolyElement.y(sig, i))


@given(elements(cls=PolyElement, max_degree=8, max_terms=6), st.integers(1, 2))
def test_decompose_reassembles(f, m):
    dec = frobenius_decompose(f, m)
    P = f.sig.p ** m
    assert reassemble(dec, f.sig) == f
    for low, coeff in dec.items():
        assert all(e < P for e in low)
        assert all(e % P == 0 for mono in coeff.terms for e in mono)


@given(elements(cls=PolyElement, max_degree=2, nonzero=True), elements(cls=PolyElement, max_degree=2, nonzero=True))
def test_product_of_pth_powers_has_one_key(f, g):
    if f.sig != g.sig:
        return
    h = power(f, f.sig.p) * power(g, g.sig.p)
    assert list(frobenius_decompose(h, 1)) == [(0,) * f.sig.nvars]
