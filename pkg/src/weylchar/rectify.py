"""Algebraic dependence of leading forms, and the loop that replaces a pair (u, v)
by one whose leading forms are algebraically independent."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .morphism import def_value
from .weyl import PolyElement, _Element, commutator, power


@dataclass(frozen=True)
class DependenceWitness:
    """``a**q == f * b**r`` with gcd(q, r) = 1.

    For a constant argument one exponent is 0 (``a == f`` when b is not constant).
    """

    f: int
    q: int
    r: int


def _require_homogeneous(a: PolyElement, name: str) -> None:
    if not a:
        raise ValueError(f"{name} must be nonzero")
    if not a.is_homogeneous():
        raise ValueError(f"{name} is not homogeneous")


def homogeneous_dependent(a: PolyElement, b: PolyElement) -> DependenceWitness | None:
    """Decide algebraic dependence of two nonzero homogeneous polynomials.

    Dependent forms of degrees da, db satisfy a^(db/g) = f b^(da/g) with
    g = gcd(da, db) and f in F_p, so comparing those two powers is exact.
    Returns the witness, or None when a and b are independent.
    """
    _require_homogeneous(a, "a")
    _require_homogeneous(b, "b")
    if a.sig != b.sig:
        raise ValueError("a and b live in different algebras")
    p = a.sig.p
    da, db = int(a.degree()), int(b.degree())
    if da == 0 and db == 0:
        (ca,), (cb,) = a.terms.values(), b.terms.values()
        return DependenceWitness(ca * pow(cb, -1, p) % p, 1, 1)
    if da == 0:
        (ca,) = a.terms.values()
        return DependenceWitness(ca, 1, 0)
    if db == 0:
        (cb,) = b.terms.values()
        # a^0 = 1 = cb^-1 * b
        return DependenceWitness(pow(cb, -1, p), 0, 1)
    g = math.gcd(da, db)
    q, r = db // g, da // g
    A, B = power(a, q), power(b, r)
    if A.terms.keys() != B.terms.keys():
        return None
    m = next(iter(B.terms))
    f = A.terms[m] * pow(B.terms[m], -1, p) % p
    if A != B.scale(f):
        return None
    return DependenceWitness(f, q, r)


def find_annihilator(a: PolyElement, b: PolyElement, weight_bound: int = 24) -> dict | None:
    """Search for Q != 0 with Q(a, b) = 0 among monomials a^i b^j, deg(a) i + deg(b) j <= bound.

    Plain bounded linear algebra; returns ``{(i, j): coeff}`` or None.
    """
    p = a.sig.p
    qa, rb = int(a.degree()), int(b.degree())
    exps = [(i, j) for i in range(weight_bound + 1) for j in range(weight_bound + 1)
            if qa * i + rb * j <= weight_bound]
    if not qa and not rb:
        exps = [(0, 0), (1, 0), (0, 1)]
    apow = [PolyElement.one(a.sig)]
    bpow = [PolyElement.one(b.sig)]
    for _ in range(max(i for i, _ in exps)):
        apow.append(apow[-1] * a)
    for _ in range(max(j for _, j in exps)):
        bpow.append(bpow[-1] * b)
    vals = [apow[i] * bpow[j] for i, j in exps]
    index: dict = {}
    for v in vals:
        for m in v.terms:
            index.setdefault(m, len(index))
    M = np.zeros((len(index), len(exps)), dtype=np.int64)
    for col, v in enumerate(vals):
        for m, c in v.terms.items():
            M[index[m], col] = c
    null = _kernels.nullspace(M, p)
    if len(null) == 0:
        return None
    return {exps[k]: int(c) for k, c in enumerate(null[0]) if c}


class CapExceeded(RuntimeError):
    def __init__(self, message: str, steps: list):
        super().__init__(message)
        self.steps = steps


@dataclass
class RectifyResult:
    u: _Element
    v: _Element
    steps: list = field(default_factory=list)
    # word lengths of u and v as polynomials in the original pair
    word_lengths: tuple = (1, 1)

    def log_lines(self) -> list:
        return [json.dumps(s) for s in self.steps]


def rectify_pair(u: _Element, v: _Element, max_steps: int = 16, max_degree: int = 512) -> RectifyResult:
    """Replace (u, v) until the leading forms are algebraically independent.

    Each step takes a dependence lead(u)^q = f lead(v)^r with p not dividing
    q (otherwise the roles of u and v swap), picks the least k >= 1 with
    q | kp + 1, and sets u <- u^(kp+1) - f_1 v^s.  Def(u, v) drops strictly,
    so the loop ends unless a cap is reached first.
    """
    if not commutator(u, v):
        raise ValueError("rectification needs [u, v] != 0")
    p = u.sig.p
    pair = [u, v]
    wl = [1, 1]
    steps: list = []
    for step in range(max_steps + 1):
        lead = [pair[0].leading_form(), pair[1].leading_form()]
        w = homogeneous_dependent(lead[0], lead[1])
        if w is None:
            return RectifyResult(pair[0], pair[1], steps, tuple(wl))
        if step == max_steps:
            raise CapExceeded(f"still dependent after {max_steps} steps", steps)
        if w.q % p:
            act, q, r = 0, w.q, w.r
        else:
            act, q, r = 1, w.r, w.q
        other = 1 - act
        k = next(k for k in range(1, q + 1) if (k * p + 1) % q == 0)
        e = k * p + 1
        deg_act = int(pair[act].degree())
        deg_other = int(pair[other].degree())
        if e * deg_act > max_degree:
            raise CapExceeded(f"u^{e} would reach degree {e * deg_act} > {max_degree}", steps)
        s = e * deg_act // deg_other
        big = power(pair[act], e)
        other_pow = power(pair[other], s)
        lb, lo = big.leading_form(), other_pow.leading_form()
        m = next(iter(lo.terms))
        f1 = lb.terms[m] * pow(lo.terms[m], -1, p) % p
        if lb != lo.scale(f1):
            raise AssertionError("leading forms of u^(kp+1) and v^s are not proportional")
        def_before = def_value(pair[0], pair[1])
        pair[act] = big - other_pow.scale(f1)
        wl[act] = max(e * wl[act], s * wl[other])
        def_after = def_value(pair[0], pair[1])
        steps.append({
            "step": step + 1, "q": q, "r": r, "k": k, "s": s, "f_1": f1,
            "replaced": "uv"[act], "Def": def_before, "Def_after": def_after,
        })
    raise AssertionError("unreachable")
