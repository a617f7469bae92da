"""The symplectic Poisson algebra PS_n: polynomials with {x_i, y_j} = delta_ij."""

from __future__ import annotations

import re

from .weyl import AlgebraSignature, PolyElement

PoissonElement = PolyElement

_GEN = re.compile(r"^([xy])(\d+)$")


def variable_index(sig: AlgebraSignature, var) -> int:
    """Position of a generator in the exponent tuple; accepts ``"x2"`` or ``("x", 2)``."""
    if isinstance(var, str):
        match = _GEN.match(var.strip())
        if not match:
            raise ValueError(f"unknown variable {var!r}")
        letter, i = match.group(1), int(match.group(2))
    else:
        letter, i = var
    try:
        return sig.x_index(i) if letter == "x" else sig.y_index(i)
    except IndexError as exc:
        raise ValueError(f"unknown variable {var!r}") from exc


def partial(f: PolyElement, var) -> PolyElement:
    """Formal partial derivative with coefficients reduced mod p."""
    pos = variable_index(f.sig, var)
    p = f.sig.p
    out = {}
    for m, c in f.terms.items():
        e = m[pos]
        if e == 0:
            continue
        c = c * e % p
        if c == 0:
            continue
        dm = m[:pos] + (e - 1,) + m[pos + 1:]
        out[dm] = (out.get(dm, 0) + c) % p
    return PolyElement(f.sig, out)


def bracket(f: PolyElement, g: PolyElement) -> PolyElement:
    r"""Symplectic bracket  sum_i (df/dx_i dg/dy_i - df/dy_i dg/dx_i)."""
    if not isinstance(f, PolyElement) or not isinstance(g, PolyElement):
        raise TypeError("bracket is defined on PolyElement operands")
    if f.sig != g.sig:
        raise ValueError(f"signature mismatch: {f.sig} vs {g.sig}")
    out = PolyElement.zero(f.sig)
    for i in range(1, f.sig.n + 1):
        out = out + partial(f, ("x", i)) * partial(g, ("y", i)) \
            - partial(f, ("y", i)) * partial(g, ("x", i))
    return out


def frobenius_decompose(f: PolyElement, m: int) -> dict:
    """Split f over F[x^P, y^P] with P = p**m.

    Returns ``{reduced monomial: coefficient}`` where every reduced monomial
    has exponents below P and every coefficient has exponents divisible by P.
    """
    if m < 1:
        raise ValueError("m must be positive")
    P = f.sig.p ** m
    parts: dict = {}
    for mono, c in f.terms.items():
        low = tuple(e % P for e in mono)
        high = tuple(e - e % P for e in mono)
        parts.setdefault(low, {})[high] = c
    return {low: PolyElement(f.sig, terms) for low, terms in parts.items()}


def reassemble(decomposition: dict, sig: AlgebraSignature) -> PolyElement:
    out = PolyElement.zero(sig)
    for low, coeff in decomposition.items():
        out = out + coeff * PolyElement.monomial(sig, low)
    return out
