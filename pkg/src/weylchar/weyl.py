"""Sparse exact arithmetic in the Weyl algebra A_n over F_p, in the standard basis.

A monomial is a tuple of 2n exponents ``(j1, i1, ..., jn, in)`` standing for
``y1^j1 x1^i1 ... yn^jn xn^in``.  Elements map monomials to nonzero residues.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .scalar import FpScalar, Prime, falling_binomial_weight, inv_mod

MINUS_INFINITY = -math.inf

Monomial = tuple


class TermLimitExceeded(RuntimeError):
    """An intermediate result grew beyond the configured term cap."""


def max_terms() -> int:
    return int(os.environ.get("WEYLCHAR_MAX_TERMS", 5_000_000))


@dataclass(frozen=True)
class AlgebraSignature:
    n: int
    p: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        object.__setattr__(self, "p", int(Prime(self.p)))

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def x_index(self, i: int) -> int:
        self._check_index(i)
        return 2 * (i - 1) + 1

    def y_index(self, i: int) -> int:
        self._check_index(i)
        return 2 * (i - 1)

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"generator index {i} outside 1..{self.n}")

    def zero_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def generator_names(self) -> list[str]:
        names = []
        for i in range(1, self.n + 1):
            names += [f"y{i}", f"x{i}"]
        return names


def order_key(m: Monomial) -> tuple:
    """Degree first, then lexicographic with y1 >> x1 >> y2 >> x2 >> ..."""
    return (sum(m), m)


def monomial_degree(m: Monomial) -> int:
    return sum(m)


@lru_cache(maxsize=1 << 16)
def _pair_expansion(b: int, c: int, p: int) -> tuple:
    # x^b y^c = sum_k k! C(b,k) C(c,k) y^(c-k) x^(b-k); only k < p survive.
    if b == 0 or c == 0:
        return ((0, 1),)
    out = []
    for k in range(min(b, c, p - 1) + 1):
        w = falling_binomial_weight(b, c, k, p)
        if w:
            out.append((k, w))
    return tuple(out)


def weyl_monomial_product(a: Monomial, b: Monomial, p: int) -> list:
    """Normal form of the product of two standard monomials, as (monomial, coeff) pairs."""
    result = [((), 1)]
    for t in range(0, len(a), 2):
        ja, ia, jb, ib = a[t], a[t + 1], b[t], b[t + 1]
        expansion = _pair_expansion(ia, jb, p)
        if len(expansion) == 1:
            y, x = ja + jb, ia + ib
            result = [(pre + (y, x), c) for pre, c in result]
            continue
        new = []
        for pre, c in result:
            for k, w in expansion:
                new.append((pre + (ja + jb - k, ia + ib - k), c * w % p))
        result = new
    return result


def _check_terms(count: int) -> None:
    if count > max_terms():
        raise TermLimitExceeded(
            f"{count} terms exceeds the cap of {max_terms()} (set WEYLCHAR_MAX_TERMS)"
        )


class _Element:
    """Shared sparse representation; subclasses fix the multiplication law."""

    __slots__ = ("sig", "_terms", "_hash")

    def __init__(self, sig: AlgebraSignature, terms: Mapping[Monomial, int] | None = None,
                 *, _trusted: bool = False):
        self.sig = sig
        if terms is None:
            terms = {}
        elif not _trusted:
            p = sig.p
            clean = {}
            for m, c in terms.items():
                m = tuple(int(e) for e in m)
                if len(m) != sig.nvars or min(m, default=0) < 0:
                    raise ValueError(f"bad monomial {m} for n={sig.n}")
                c = int(c) % p
                if c:
                    clean[m] = (clean.get(m, 0) + c) % p
                    if not clean[m]:
                        del clean[m]
            terms = clean
        self._terms = terms
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, sig: AlgebraSignature):
        return cls(sig, {}, _trusted=True)

    @classmethod
    def one(cls, sig: AlgebraSignature):
        return cls.constant(sig, 1)

    @classmethod
    def constant(cls, sig: AlgebraSignature, c: int):
        c = int(c) % sig.p
        return cls(sig, {sig.zero_monomial(): c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, sig: AlgebraSignature, m: Monomial, c: int = 1):
        return cls(sig, {tuple(m): c})

    @classmethod
    def x(cls, sig: AlgebraSignature, i: int, power: int = 1):
        m = [0] * sig.nvars
        m[sig.x_index(i)] = power
        return cls(sig, {tuple(m): 1}, _trusted=True)

    @classmethod
    def y(cls, sig: AlgebraSignature, i: int, power: int = 1):
        m = [0] * sig.nvars
        m[sig.y_index(i)] = power
        return cls(sig, {tuple(m): 1}, _trusted=True)

    # accessors

    @property
    def terms(self) -> dict:
        return self._terms

    def items_sorted(self) -> list:
        """Terms in descending monomial order."""
        return sorted(self._terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def coefficient(self, m: Monomial) -> FpScalar:
        return FpScalar(self._terms.get(tuple(m), 0), self.sig.p)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self):
        if not self._terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self._terms)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero element has no leading monomial")
        return max(self._terms, key=order_key)

    def leading_form(self) -> "PolyElement":
        if not self._terms:
            raise ValueError("zero element has no leading form")
        d = self.degree()
        return PolyElement(self.sig, {m: c for m, c in self._terms.items() if sum(m) == d},
                           _trusted=True)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    # arithmetic

    def _same(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.sig != self.sig:
            raise ValueError(f"signature mismatch: {self.sig} vs {other.sig}")

    def _lift(self, other):
        if isinstance(other, (int, FpScalar)):
            if isinstance(other, FpScalar) and other.modulus != self.sig.p:
                raise ValueError("modulus mismatch")
            return type(self).constant(self.sig, int(other))
        self._same(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        p = self.sig.p
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return type(self)(self.sig, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.sig.p
        return type(self)(self.sig, {m: p - c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "_Element":
        c = int(c) % self.sig.p
        if c == 0:
            return type(self).zero(self.sig)
        if c == 1:
            return self
        p = self.sig.p
        return type(self)(self.sig, {m: v * c % p for m, v in self._terms.items()},
                          _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, FpScalar)):
            return self.scale(int(other))
        self._same(other)
        return self._mul(other)

    def __rmul__(self, other):
        if isinstance(other, (int, FpScalar)):
            return self.scale(int(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        return power(self, k)

    def _mul(self, other):
        raise NotImplementedError

    # comparison and display

    def __eq__(self, other):
        if isinstance(other, int):
            return self == type(self).constant(self.sig, other)
        if not isinstance(other, _Element):
            return NotImplemented
        return type(other) is type(self) and self.sig == other.sig and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.sig, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.sig.n}, p={self.sig.p}, {format_element(self)!r})"


class WeylElement(_Element):
    """An element of A_n written in the standard basis ``y1^j1 x1^i1 ... yn^jn xn^in``."""

    __slots__ = ()

    def _mul(self, other):
        a, b = self._terms, other._terms
        if not a or not b:
            return WeylElement.zero(self.sig)
        p = self.sig.p
        out: dict = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                c0 = ca * cb
                for m, w in weyl_monomial_product(ma, mb, p):
                    v = (get(m, 0) + c0 * w) % p
                    if v:
                        out[m] = v
                    else:
                        del out[m]
            _check_terms(len(out))
        return WeylElement(self.sig, out, _trusted=True)


class PolyElement(_Element):
    """Commutative polynomial in x1..xn, y1..yn sharing the Weyl exponent layout."""

    __slots__ = ()

    def _mul(self, other):
        a, b = self._terms, other._terms
        if not a or not b:
            return PolyElement.zero(self.sig)
        p = self.sig.p
        out: dict = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(u + v for u, v in zip(ma, mb))
                v = (get(m, 0) + ca * cb) % p
                if v:
                    out[m] = v
                else:
                    del out[m]
            _check_terms(len(out))
        return PolyElement(self.sig, out, _trusted=True)


def power(a: _Element, k: int) -> _Element:
    """``a**k``; splits k into base-p digits so Frobenius-type cancellation shows up early."""
    if k < 0:
        raise ValueError("negative powers are not defined")
    result = type(a).one(a.sig)
    if k == 0:
        return result
    if len(a._terms) == 1:
        (m, c), = a._terms.items()
        if type(a) is PolyElement or _is_commuting_monomial(m):
            return type(a)(a.sig, {tuple(e * k for e in m): pow(c, k, a.sig.p)}, _trusted=True)
    p = a.sig.p
    base = a
    while k:
        k, digit = divmod(k, p)
        if digit:
            result = result * _binary_power(base, digit)
        if k:
            base = _binary_power(base, p)
    return result


def _is_commuting_monomial(m: Monomial) -> bool:
    # a monomial whose pairs each involve only one of x_i, y_i is a power-closed monomial
    return all(m[t] == 0 or m[t + 1] == 0 for t in range(0, len(m), 2))


def _binary_power(a: _Element, k: int) -> _Element:
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else result * base
        k >>= 1
        if k:
            base = base * base
    return result if result is not None else type(a).one(a.sig)


def commutator(a: _Element, b: _Element) -> _Element:
    """``ab - ba``."""
    return a * b - b * a


def ad_power(a: _Element, b: _Element, k: int) -> _Element:
    if k < 0:
        raise ValueError("k must be nonnegative")
    a._same(b)
    for _ in range(k):
        b = commutator(a, b)
        if not b:
            break
    return b


def total_degree(a: _Element):
    return a.degree()


def leading_form(a: _Element) -> PolyElement:
    return a.leading_form()


def reorder_single_pair(b: int, c: int, sig: AlgebraSignature, index: int = 1) -> WeylElement:
    """Normal form of ``x_index^b y_index^c``."""
    t = 2 * (index - 1)
    out = {}
    base = list(sig.zero_monomial())
    for k, w in _pair_expansion(b, c, sig.p):
        m = list(base)
        m[t], m[t + 1] = c - k, b - k
        out[tuple(m)] = w
    return WeylElement(sig, out)


def as_poly(a: _Element) -> PolyElement:
    """Reinterpret the stored terms commutatively."""
    return PolyElement(a.sig, dict(a._terms), _trusted=True)


def as_weyl(a: _Element) -> WeylElement:
    """Reinterpret the stored terms as standard monomials of A_n."""
    return WeylElement(a.sig, dict(a._terms), _trusted=True)


def normalize(a: _Element) -> _Element:
    return type(a)(a.sig, dict(a._terms))


def linear_combination(sig: AlgebraSignature, pairs: Iterable, cls=WeylElement) -> _Element:
    out = cls.zero(sig)
    for c, e in pairs:
        out = out + e.scale(c)
    return out


def ratio(a: int, b: int, p: int) -> int:
    return a * inv_mod(b, p) % p


# text form


def _factor(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def format_monomial(m: Monomial, commutative: bool = False) -> str:
    parts = []
    for t in range(0, len(m), 2):
        i = t // 2 + 1
        j, xi = m[t], m[t + 1]
        if commutative:
            if xi:
                parts.append(_factor(f"x{i}", xi))
            if j:
                parts.append(_factor(f"y{i}", j))
        else:
            if j:
                parts.append(_factor(f"y{i}", j))
            if xi:
                parts.append(_factor(f"x{i}", xi))
    return "*".join(parts)


def format_element(a: _Element) -> str:
    if not a._terms:
        return "0"
    commutative = isinstance(a, PolyElement)
    out = []
    for m, c in a.items_sorted():
        body = format_monomial(m, commutative)
        if not body:
            out.append(str(c))
        elif c == 1:
            out.append(body)
        else:
            out.append(f"{c}*{body}")
    return " + ".join(out)
