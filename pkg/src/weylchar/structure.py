"""Centers of A_n and PS_n and decompositions over them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .morphism import Endomorphism, InvalidEndomorphism, check_relations, monomials_up_to
from .poisson import bracket
from .weyl import PolyElement, WeylElement, _Element, commutator, order_key


class CentralDecomposition(dict):
    """``{reduced monomial: central coefficient}``.

    Keys have exponents in [0, p).  For a decomposition in image monomials
    (``basis="image"``) a key ``(j1, i1, ...)`` stands for
    ``v1^j1 u1^i1 ...`` of the endomorphism stored in ``phi``.
    """

    def __init__(self, *args, basis: str = "standard", phi: Endomorphism | None = None, **kw):
        super().__init__(*args, **kw)
        self.basis = basis
        self.phi = phi

    def reassemble(self, sig=None) -> _Element:
        if not self:
            raise ValueError("cannot reassemble an empty decomposition without a signature")
        first = next(iter(self.values()))
        sig = sig or first.sig
        cls = type(first)
        out = cls.zero(sig)
        for key, coeff in self.items():
            if self.basis == "image":
                mono = self.phi.image_of_monomial(key)
            else:
                mono = cls.monomial(sig, key)
            out = out + coeff * mono
        return out


@dataclass(frozen=True)
class BoundExceeded:
    """No decomposition with central coefficients of degree <= deg_bound exists."""

    deg_bound: int

    def __bool__(self):
        return False


def _all_divisible(a: _Element) -> bool:
    p = a.sig.p
    return all(e % p == 0 for m in a.terms for e in m)


def is_central(a: WeylElement, method: str = "exponents") -> bool:
    """Membership in Z(A_n) = F[x_i^p, y_i^p].

    ``method="commutators"`` instead checks [x_i, a] = [y_i, a] = 0 directly.
    """
    if method == "exponents":
        return _all_divisible(a)
    if method == "commutators":
        sig = a.sig
        gens = [WeylElement.x(sig, i) for i in range(1, sig.n + 1)] + \
               [WeylElement.y(sig, i) for i in range(1, sig.n + 1)]
        return all(not commutator(g, a) for g in gens)
    raise ValueError(f"unknown method {method!r}")


def poisson_is_central(f: PolyElement, method: str = "exponents") -> bool:
    if method == "exponents":
        return _all_divisible(f)
    if method == "brackets":
        sig = f.sig
        gens = [PolyElement.x(sig, i) for i in range(1, sig.n + 1)] + \
               [PolyElement.y(sig, i) for i in range(1, sig.n + 1)]
        return all(not bracket(f, g) for g in gens)
    raise ValueError(f"unknown method {method!r}")


def central_decompose(a: _Element) -> CentralDecomposition:
    """Split every exponent e as (e mod p) + p*(e // p)."""
    p = a.sig.p
    cls = type(a)
    parts: dict = {}
    for m, c in a.terms.items():
        low = tuple(e % p for e in m)
        high = tuple(e - e % p for e in m)
        parts.setdefault(low, {})[high] = c
    if not parts:
        return CentralDecomposition()
    return CentralDecomposition({low: cls(a.sig, t) for low, t in sorted(parts.items())})


def express_over_center(a: _Element, phi: Endomorphism, deg_bound: int):
    """Coefficients c_mu in the center, of degree <= deg_bound, with
    a = sum_mu c_mu * (v1^j1 u1^i1 ... vn^jn un^in), all exponents below p.

    Solves one linear system over F_p.  Free unknowns are set to zero, and
    unknowns are ordered by ascending product monomial so the solution
    favours small terms.  Returns :class:`BoundExceeded` when the truncated
    system has no solution.
    """
    if check_relations(phi):
        raise InvalidEndomorphism("phi does not satisfy the defining relations")
    if a.sig != phi.sig or not isinstance(a, phi.element_class()):
        raise ValueError("element and endomorphism live in different algebras")
    sig, p = phi.sig, phi.p
    cls = phi.element_class()
    reduced = list(itertools.product(range(p), repeat=sig.nvars))
    centrals = [tuple(p * e for e in m) for m in monomials_up_to(sig.nvars, deg_bound // p)]
    unknowns = []
    for mu in reduced:
        img = phi.image_of_monomial(mu)
        for cm in centrals:
            col = cls.monomial(sig, cm) * img
            unknowns.append((mu, cm, col))
    unknowns.sort(key=lambda u: (order_key(tuple(x + y for x, y in zip(u[0], u[1]))), u[0], u[1]))

    index: dict = {}
    for _, _, col in unknowns:
        for m in col.terms:
            index.setdefault(m, len(index))
    for m in a.terms:
        if m not in index:
            # a needs a monomial no unknown can reach
            return BoundExceeded(deg_bound)
    A = np.zeros((len(index), len(unknowns)), dtype=np.int64)
    for k, (_, _, col) in enumerate(unknowns):
        for m, c in col.terms.items():
            A[index[m], k] = c
    b = np.zeros(len(index), dtype=np.int64)
    for m, c in a.terms.items():
        b[index[m]] = c
    x = _kernels.solve(A, b, p)
    if x is None:
        return BoundExceeded(deg_bound)
    coeffs: dict = {}
    for k, val in enumerate(x):
        if val:
            mu, cm, _ = unknowns[k]
            coeffs.setdefault(mu, {})[cm] = int(val)
    return CentralDecomposition({mu: cls(sig, t) for mu, t in sorted(coeffs.items())},
                                basis="image", phi=phi)
