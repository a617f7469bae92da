"""Endomorphisms of A_n and PS_n: validation, application, bounded kernel search,
and the explicit maps (the p = 2 descent example, the A_2 counterexample and
the family of A_n maps whose image has GK dimension n + 1, built from the
z_{m,i} chain)."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels
from .poisson import bracket
from .weyl import (
    AlgebraSignature,
    PolyElement,
    WeylElement,
    _Element,
    commutator,
    order_key,
)

WEYL = "weyl"
POISSON = "poisson"


class InvalidEndomorphism(ValueError):
    pass


class DefUndefined(ValueError):
    pass


def element_class(kind: str):
    if kind == WEYL:
        return WeylElement
    if kind == POISSON:
        return PolyElement
    raise ValueError(f"unknown algebra kind {kind!r}")


@dataclass(frozen=True)
class Endomorphism:
    """Images u_i = phi(x_i), v_i = phi(y_i).  Validity is checked separately."""

    kind: str
    sig: AlgebraSignature
    u: tuple
    v: tuple
    _powers: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        cls = element_class(self.kind)
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        if len(self.u) != self.sig.n or len(self.v) != self.sig.n:
            raise ValueError(f"need {self.sig.n} images of each kind")
        for e in self.u + self.v:
            if not isinstance(e, cls) or e.sig != self.sig:
                raise ValueError("every image must be a %s over %s" % (cls.__name__, self.sig))

    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def p(self) -> int:
        return self.sig.p

    def element_class(self):
        return element_class(self.kind)

    def image_power(self, which: str, i: int, e: int) -> _Element:
        key = (which, i, e)
        cached = self._powers.get(key)
        if cached is None:
            base = (self.u if which == "u" else self.v)[i - 1]
            if e == 0:
                cached = self.element_class().one(self.sig)
            elif e == 1:
                cached = base
            else:
                cached = self.image_power(which, i, e - 1) * base
            self._powers[key] = cached
        return cached

    def image_of_monomial(self, m) -> _Element:
        """phi(y1^j1 x1^i1 ...) = v1^j1 u1^i1 ... in exactly this factor order."""
        out = None
        for t in range(self.n):
            for which, e in (("v", m[2 * t]), ("u", m[2 * t + 1])):
                if e:
                    f = self.image_power(which, t + 1, e)
                    out = f if out is None else out * f
        return out if out is not None else self.element_class().one(self.sig)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.sig.n,
            "p": self.sig.p,
            "u": [str(e) for e in self.u],
            "v": [str(e) for e in self.v],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "Endomorphism":
        from .parse import parse_element

        if isinstance(data, str):
            data = json.loads(data)
        sig = AlgebraSignature(int(data["n"]), int(data["p"]))
        kind = data["kind"]
        u = [parse_element(t, kind, sig) for t in data["u"]]
        v = [parse_element(t, kind, sig) for t in data["v"]]
        return cls(kind, sig, u, v)

    def __str__(self):
        lines = [f"{self.kind} endomorphism, n={self.n}, p={self.p}"]
        for i in range(self.n):
            lines.append(f"  x{i + 1} -> {self.u[i]}")
            lines.append(f"  y{i + 1} -> {self.v[i]}")
        return "\n".join(lines)


def identity_map(n: int, p: int, kind: str = WEYL) -> Endomorphism:
    sig = AlgebraSignature(n, p)
    cls = element_class(kind)
    return Endomorphism(kind, sig,
                        [cls.x(sig, i) for i in range(1, n + 1)],
                        [cls.y(sig, i) for i in range(1, n + 1)])


@dataclass(frozen=True)
class Violation:
    relation: str  # "[u_i,v_j]", "[u_i,u_j]" or "[v_i,v_j]"
    i: int
    j: int
    actual: _Element
    expected: int

    def __str__(self):
        rel = self.relation.replace("_i", str(self.i)).replace("_j", str(self.j))
        return f"{rel} = {self.actual}, expected {self.expected}"


def check_relations(phi: Endomorphism) -> list:
    """All violated defining relations (empty list when phi is a homomorphism)."""
    op = commutator if phi.kind == WEYL else bracket
    cls = phi.element_class()
    out = []
    n = phi.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            expected = 1 if i == j else 0
            val = op(phi.u[i - 1], phi.v[j - 1])
            if val != cls.constant(phi.sig, expected):
                out.append(Violation("[u_i,v_j]", i, j, val, expected))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for name, imgs in (("[u_i,u_j]", phi.u), ("[v_i,v_j]", phi.v)):
            val = op(imgs[i - 1], imgs[j - 1])
            if val:
                out.append(Violation(name, i, j, val, 0))
    return out


def is_valid(phi: Endomorphism) -> bool:
    return not check_relations(phi)


def apply(phi: Endomorphism, a: _Element) -> _Element:
    if not isinstance(a, phi.element_class()):
        raise TypeError(f"{phi.kind} endomorphism cannot act on {type(a).__name__}")
    if a.sig != phi.sig:
        raise ValueError(f"signature mismatch: {a.sig} vs {phi.sig}")
    out = phi.element_class().zero(phi.sig)
    for m, c in a.terms.items():
        out = out + phi.image_of_monomial(m).scale(c)
    return out


def monomials_up_to(nvars: int, bound: int) -> list:
    """All exponent tuples of total degree <= bound, largest first."""
    out = []
    for d in range(bound + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            m = [0] * nvars
            for k in combo:
                m[k] += 1
            out.append(tuple(m))
    out.sort(key=order_key, reverse=True)
    return out


@dataclass
class KernelReport:
    degree_bound: int
    basis: list
    dimension: int

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "dimension": self.dimension,
            "basis": [str(e) for e in self.basis],
        }


def kernel_basis(phi: Endomorphism, deg_bound: int, *, check: bool = True) -> KernelReport:
    """Exact kernel of phi restricted to elements of total degree <= deg_bound.

    Source coordinates run over standard monomials in descending order, so
    each basis element's pivot is its leading monomial.
    """
    if check and not is_valid(phi):
        raise InvalidEndomorphism("phi does not satisfy the defining relations")
    sources = monomials_up_to(phi.sig.nvars, deg_bound)
    images = [phi.image_of_monomial(m) for m in sources]
    index: dict = {}
    for img in images:
        for m in img.terms:
            if m not in index:
                index[m] = len(index)
    A = np.zeros((len(index), len(sources)), dtype=np.int64)
    for col, img in enumerate(images):
        for m, c in img.terms.items():
            A[index[m], col] = c
    null = _kernels.nullspace(A, phi.p)
    cls = phi.element_class()
    basis = []
    for row in null:
        terms = {sources[k]: int(c) for k, c in enumerate(row) if c}
        basis.append(cls(phi.sig, terms))
    return KernelReport(deg_bound, basis, len(basis))


def def_value(a: _Element, b: _Element) -> int:
    """deg(ab) - deg([a, b]); positive for nonzero noncommuting a, b."""
    if not a or not b:
        raise DefUndefined("Def needs nonzero arguments")
    c = commutator(a, b)
    if not c:
        raise DefUndefined("Def is undefined for commuting elements")
    return int(a.degree() + b.degree() - c.degree())


# named maps


def remark2_map(p: int = 2) -> Endomorphism:
    """u = x, v = y^2 x - y over F_2."""
    if p != 2:
        raise ValueError("this map is only a homomorphism in characteristic 2")
    sig = AlgebraSignature(1, 2)
    x, y = WeylElement.x(sig, 1), WeylElement.y(sig, 1)
    return Endomorphism(WEYL, sig, [x], [y * y * x - y])


def remark2_witness(phi: Endomorphism | None = None) -> WeylElement:
    """v^2 - y^4 u^2, which vanishes: u^2 and v^2 are dependent over F(x^4, y^4)."""
    phi = phi or remark2_map()
    y = WeylElement.y(phi.sig, 1)
    return phi.v[0] ** 2 - y ** 4 * phi.u[0] ** 2


def a2_z(p: int) -> WeylElement:
    sig = AlgebraSignature(2, p)
    return WeylElement.x(sig, 1) + WeylElement.y(sig, 1, p - 1) * WeylElement.x(sig, 2)


def a2_counterexample(p: int) -> Endomorphism:
    """u1 = z + z^p y1^(p-1), v1 = y1, u2 = y2, v2 = z^p with z = x1 + y1^(p-1) x2."""
    sig = AlgebraSignature(2, p)
    z = a2_z(p)
    zp = z ** p
    y1, y2 = WeylElement.y(sig, 1), WeylElement.y(sig, 2)
    u1 = z + zp * WeylElement.y(sig, 1, p - 1)
    return Endomorphism(WEYL, sig, [u1, y2], [y1, zp])


@lru_cache(maxsize=None)
def theorem3_chain(n: int, p: int, m: int, i: int) -> WeylElement:
    """z_{m,i}: z_{0,0} = 0, z_{m,0} = x_m - y_m^(p-1) z_{m-1,0}, z_{m,i} = z_{m,0}^(p^i)."""
    if not 0 <= m <= n or i < 0:
        raise IndexError(f"z_({m},{i}) is outside 0 <= m <= {n}, i >= 0")
    sig = AlgebraSignature(n, p)
    if m == 0:
        return WeylElement.zero(sig)
    if i == 0:
        return WeylElement.x(sig, m) - WeylElement.y(sig, m, p - 1) * theorem3_chain(n, p, m - 1, 0)
    return theorem3_chain(n, p, m, i - 1) ** p


class UnrollError(RuntimeError):
    pass


def theorem3_unroll(n: int, p: int, m: int, max_steps: int = 10_000):
    """Write z_{m,0} = sum_k d_{m,k} z_{n,n-m+k} + d_m with central coefficients.

    Repeatedly substitutes
    z_{a,b} = z_{a+1,b+1} + y_{a+1}^(p^(b+1)(p-1)) z_{a,b+1} - x_{a+1}^(p^(b+1)),
    folding z_{a,b} with b >= a (central) into the constant.
    Returns ``({k: d_{m,k}}, d_m)``.
    """
    sig = AlgebraSignature(n, p)
    one = WeylElement.one(sig)
    pending = {(m, 0): one}
    constant = WeylElement.zero(sig)
    targets: dict = {}
    for _ in range(max_steps):
        if not pending:
            break
        (a, b), c = min(pending.items(), key=lambda kv: kv[0])
        del pending[(a, b)]
        if not c:
            continue
        if b >= a:
            constant = constant + c * theorem3_chain(n, p, a, b)
        elif a == n:
            targets[b] = targets.get(b, WeylElement.zero(sig)) + c
        else:
            q = p ** (b + 1)
            up = (a + 1, b + 1)
            side = (a, b + 1)
            pending[up] = pending.get(up, WeylElement.zero(sig)) + c
            pending[side] = pending.get(side, WeylElement.zero(sig)) + \
                c * WeylElement.y(sig, a + 1, q * (p - 1))
            constant = constant - c * WeylElement.x(sig, a + 1, q)
    else:
        raise UnrollError(f"unrolling z_({m},0) did not terminate")
    coeffs = {b - (n - m): c for b, c in sorted(targets.items()) if c}
    return coeffs, constant


def theorem3_map(n: int, p: int) -> Endomorphism:
    """u_m = x_m - d_m - y_m^(p-1) d_{m-1}, v_m = y_m; the image is F[y_1..y_n, z_{n,0}]."""
    sig = AlgebraSignature(n, p)
    d = [WeylElement.zero(sig)]
    for m in range(1, n + 1):
        d.append(theorem3_unroll(n, p, m)[1])
    u = [WeylElement.x(sig, m) - d[m] - WeylElement.y(sig, m, p - 1) * d[m - 1]
         for m in range(1, n + 1)]
    v = [WeylElement.y(sig, m) for m in range(1, n + 1)]
    return Endomorphism(WEYL, sig, u, v)


def theorem3_image_generators(n: int, p: int) -> list:
    sig = AlgebraSignature(n, p)
    return [WeylElement.y(sig, i) for i in range(1, n + 1)] + [theorem3_chain(n, p, n, 0)]


NAMED_MAPS = {
    "identity": lambda n, p, kind=WEYL: identity_map(n, p, kind),
    "remark2": lambda n, p, kind=WEYL: remark2_map(p),
    "a2": lambda n, p, kind=WEYL: a2_counterexample(p),
    "theorem3": lambda n, p, kind=WEYL: theorem3_map(n, p),
}


def triangular_map(g: Sequence[int], p: int, kind: str = WEYL) -> Endomorphism:
    """A_1 / PS_1 map u = x + g(y), v = y where g has coefficient list ``g`` (constant first)."""
    sig = AlgebraSignature(1, p)
    cls = element_class(kind)
    gy = cls(sig, {(k, 0): c for k, c in enumerate(g)})
    return Endomorphism(kind, sig, [cls.x(sig, 1) + gy], [cls.y(sig, 1)])
