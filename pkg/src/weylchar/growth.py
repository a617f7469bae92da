"""Filtration dimensions d_N of finitely generated subalgebras and GK-dimension fits."""

from __future__ import annotations

import csv
import heapq
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .weyl import TermLimitExceeded, _Element, max_terms

_SHIFT = 24


def _pack(m: tuple) -> int:
    # integer order matches (total degree, exponents) lexicographic order
    key = sum(m)
    for e in m:
        if e >> _SHIFT:
            raise OverflowError(f"exponent {e} too large for packed keys")
        key = (key << _SHIFT) | e
    return key


class EchelonSpan:
    """Row-reduced spanning set over F_p, pivot = leading monomial of each row.

    Rows are stored with packed integer monomial keys and monic pivots.
    """

    def __init__(self, p: int, term_cap: int | None = None):
        self.p = p
        self.rows: dict = {}
        self.stored_terms = 0
        self.term_cap = term_cap if term_cap is not None else max_terms()

    def __len__(self):
        return len(self.rows)

    def _reduce(self, terms: dict, full: bool) -> dict:
        p = self.p
        rows = self.rows
        heap = [-k for k in terms]
        heapq.heapify(heap)
        rest = {}
        while heap:
            k = -heapq.heappop(heap)
            c = terms.get(k)
            if c is None:
                continue
            row = rows.get(k)
            if row is None:
                if not full:
                    return terms
                rest[k] = terms.pop(k)
                continue
            del terms[k]
            for mk, rc in row.items():
                if mk == k:
                    continue
                old = terms.get(mk)
                if old is None:
                    v = (-c * rc) % p
                    if v:
                        terms[mk] = v
                        heapq.heappush(heap, -mk)
                else:
                    v = (old - c * rc) % p
                    if v:
                        terms[mk] = v
                    else:
                        del terms[mk]
        return rest if full else terms

    def add(self, terms: dict) -> dict | None:
        """Insert a packed vector; returns the stored new row, or None if dependent."""
        rem = self._reduce(dict(terms), full=False)
        if not rem:
            return None
        lead = max(rem)
        inv = pow(rem[lead], -1, self.p)
        if inv != 1:
            rem = {k: v * inv % self.p for k, v in rem.items()}
        self.rows[lead] = rem
        self.stored_terms += len(rem)
        if self.stored_terms > self.term_cap:
            raise TermLimitExceeded(
                f"span stores {self.stored_terms} terms, cap is {self.term_cap} "
                "(set WEYLCHAR_MAX_TERMS)")
        return rem

    def contains(self, terms: dict) -> bool:
        return not self._reduce(dict(terms), full=True)


@dataclass
class GrowthTable:
    generators: list
    dims: list
    span: EchelonSpan = field(repr=False, default=None)
    levels: list = field(repr=False, default_factory=list)

    @property
    def N(self) -> int:
        return len(self.dims) - 1

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["N", "d_N"])
        for k, d in enumerate(self.dims):
            writer.writerow([k, d])
        return buf.getvalue()

    def contains(self, a: _Element) -> bool:
        return self.span.contains(_packed_terms(a))


def _packed_terms(a: _Element) -> dict:
    return {_pack(m): c for m, c in a.terms.items()}


def _check_generators(generators, one=None):
    if not generators:
        return
    first = generators[0]
    for g in generators[1:]:
        if type(g) is not type(first) or g.sig != first.sig:
            raise ValueError("generators must share one signature and algebra kind")
    if one is not None and (type(one) is not type(first) or one.sig != first.sig):
        raise ValueError("element and generators live in different algebras")


def span_iterate(generators: list, N: int, *, one: _Element | None = None) -> GrowthTable:
    """d_k = dim V_k with V_0 = span{1} and V_{k+1} = V_k + sum_g g V_k.

    Only the basis vectors added at level k are multiplied at level k+1;
    left multiplication reaches every word.  ``one`` supplies the unit when
    the generator list is empty.
    """
    generators = list(generators)
    _check_generators(generators, one)
    if not generators and one is None:
        # nothing to multiply by: every V_k is the line through 1
        return GrowthTable([], [1] * (N + 1))
    ref = generators[0] if generators else one
    unit = type(ref).one(ref.sig)
    span = EchelonSpan(ref.sig.p)
    span.add(_packed_terms(unit))
    dims = [1]
    frontier = [unit]
    levels = [1]
    for _ in range(N):
        fresh = []
        for b in frontier:
            for g in generators:
                prod = g * b
                if prod and span.add(_packed_terms(prod)) is not None:
                    fresh.append(prod)
        dims.append(len(span))
        levels.append(len(fresh))
        frontier = fresh
    return GrowthTable(generators, dims, span, levels)


def membership(a: _Element, generators: list, N: int) -> bool:
    """Is ``a`` in V_N, the span of words of length <= N in the generators?"""
    _check_generators(generators, a)
    table = span_iterate(generators, N, one=a)
    return table.contains(a)


@dataclass(frozen=True)
class GKFit:
    exponent: float
    residual: float
    window: tuple

    def to_json(self) -> dict:
        return {"exponent": self.exponent, "residual": self.residual, "window": list(self.window)}


def gk_fit(table: GrowthTable, tail_fraction: float = 0.5) -> GKFit:
    """Least-squares slope of ln d_k against ln k over the last ``tail_fraction`` of levels."""
    N = table.N
    if N < 8:
        raise ValueError(f"table too short for a fit (N={N}, need N >= 8)")
    if not 0 < tail_fraction <= 1:
        raise ValueError("tail_fraction must lie in (0, 1]")
    start = max(1, int(math.floor(N * (1 - tail_fraction))))
    ks = np.arange(start, N + 1, dtype=float)
    ds = np.asarray(table.dims[start:], dtype=float)
    X, Y = np.log(ks), np.log(ds)
    slope, intercept = np.polyfit(X, Y, 1)
    resid = float(np.sqrt(np.mean((Y - (slope * X + intercept)) ** 2)))
    return GKFit(float(slope), resid, (start, N))
