"""Dense row reduction over F_p.

Two interchangeable back ends: numba-compiled loops and a vectorised numpy
path.  ``WEYLCHAR_DISABLE_NUMBA=1`` (or a missing numba) selects numpy.
Entries are int64 residues in [0, p); p < 2**31 keeps products in range.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba as nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    nb = None

USE_NUMBA = nb is not None and os.environ.get("WEYLCHAR_DISABLE_NUMBA", "0") not in ("1", "true", "yes")


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _inv_scalar(a, p):
    # extended Euclid; a in (0, p)
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


if nb is not None:
    _inv_scalar_nb = nb.njit(cache=True)(_inv_scalar)

    @nb.njit(cache=True)
    def _rref_numba(m, p):
        rows, cols = m.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = tmp
            inv = _inv_scalar_nb(m[r, c], p)
            if inv != 1:
                for j in range(c, cols):
                    m[r, j] = m[r, j] * inv % p
            for i in range(rows):
                if i != r:
                    f = m[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            m[i, j] = (m[i, j] - f * m[r, j]) % p
            pivots[r] = c
            r += 1
        return pivots[:r]


def _rref_numpy(m, p):
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r, c:] = m[r, c:] * inv % p
        f = m[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            m[hit, c:] = (m[hit, c:] - np.outer(f[hit], m[r, c:])) % p
        pivots.append(c)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


def rref(mat, p: int, *, use_numba: bool | None = None):
    """Reduced row echelon form of ``mat`` mod p.

    Returns ``(R, pivots)``; R has the same shape as ``mat`` with the
    nonzero rows first.  The input is not modified.
    """
    m = np.array(mat, dtype=np.int64, copy=True) % p
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    if m.size == 0:
        return m, np.zeros(0, dtype=np.int64)
    numba_on = USE_NUMBA if use_numba is None else (use_numba and nb is not None)
    pivots = _rref_numba(m, p) if numba_on else _rref_numpy(m, p)
    return m, pivots


def rank(mat, p: int, *, use_numba: bool | None = None) -> int:
    return len(rref(mat, p, use_numba=use_numba)[1])


def nullspace(mat, p: int, *, use_numba: bool | None = None) -> np.ndarray:
    """Basis (as rows, in reduced echelon form) of {x : mat @ x = 0 mod p}."""
    mat = np.asarray(mat, dtype=np.int64)
    cols = mat.shape[1]
    R, pivots = rref(mat, p, use_numba=use_numba)
    pivot_set = set(pivots.tolist())
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fcol in enumerate(free):
        basis[k, fcol] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-R[r, fcol]) % p
    if len(free) > 1:
        basis, _ = rref(basis, p, use_numba=use_numba)
    return basis


def solve(A, b, p: int, *, use_numba: bool | None = None):
    """One solution x of ``A @ x = b`` mod p with every free variable set to 0, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([A, b])
    R, pivots = rref(aug, p, use_numba=use_numba)
    cols = A.shape[1]
    if len(pivots) and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, cols]
    return x


def warm_up() -> None:
    """Trigger compilation so the first real call is not timed with the JIT."""
    rref(np.eye(2, dtype=np.int64), 2)


# Bounded annihilator search for binary forms.  A form of degree d is its
# coefficient vector c[0..d] (c[k] multiplies y^k x^(d-k)); products of forms
# are convolutions.  The matrix has one column per monomial a^i b^j with
# qa*i + rb*j <= W and one row per coefficient of each degree 0..W.


def _annihilator_columns(qa, rb, W):
    return [(i, j) for i in range(W // qa + 1) for j in range((W - qa * i) // rb + 1)]


def _bivariate_dependent_numpy(a, b, p, W):
    qa, rb = len(a) - 1, len(b) - 1
    cols = _annihilator_columns(qa, rb, W)
    rows = (W + 1) * (W + 2) // 2
    M = np.zeros((rows, len(cols)), dtype=np.int64)
    apow = [np.ones(1, dtype=np.int64)]
    for _ in range(W // qa):
        apow.append(np.convolve(apow[-1], a) % p)
    bpow = [np.ones(1, dtype=np.int64)]
    for _ in range(W // rb):
        bpow.append(np.convolve(bpow[-1], b) % p)
    for col, (i, j) in enumerate(cols):
        D = qa * i + rb * j
        off = D * (D + 1) // 2
        M[off:off + D + 1, col] = np.convolve(apow[i], bpow[j]) % p
    return len(_rref_numpy(M, p)) < len(cols)


if nb is not None:

    @nb.njit(cache=True)
    def _bivariate_dependent_numba(a, b, p, W):
        qa = a.shape[0] - 1
        rb = b.shape[0] - 1
        imax = W // qa
        jmax = W // rb
        apow = np.zeros((imax + 1, W + 1), dtype=np.int64)
        bpow = np.zeros((jmax + 1, W + 1), dtype=np.int64)
        apow[0, 0] = 1
        bpow[0, 0] = 1
        for i in range(1, imax + 1):
            for s in range(qa * (i - 1) + 1):
                if apow[i - 1, s] != 0:
                    for t in range(qa + 1):
                        apow[i, s + t] = (apow[i, s + t] + apow[i - 1, s] * a[t]) % p
        for j in range(1, jmax + 1):
            for s in range(rb * (j - 1) + 1):
                if bpow[j - 1, s] != 0:
                    for t in range(rb + 1):
                        bpow[j, s + t] = (bpow[j, s + t] + bpow[j - 1, s] * b[t]) % p
        ncols = 0
        for i in range(imax + 1):
            ncols += (W - qa * i) // rb + 1
        rows = (W + 1) * (W + 2) // 2
        M = np.zeros((rows, ncols), dtype=np.int64)
        col = 0
        for i in range(imax + 1):
            for j in range((W - qa * i) // rb + 1):
                da = qa * i
                db = rb * j
                D = da + db
                off = D * (D + 1) // 2
                for s in range(da + 1):
                    if apow[i, s] != 0:
                        for t in range(db + 1):
                            M[off + s + t, col] = (M[off + s + t, col] + apow[i, s] * bpow[j, t]) % p
                col += 1
        return _rref_numba(M, p).shape[0] < ncols

    @nb.njit(cache=True)
    def _bivariate_table_numba(forms, degs, p, W):
        k = forms.shape[0]
        out = np.zeros((k, k), dtype=np.bool_)
        for x in range(k):
            a = forms[x, :degs[x] + 1].copy()
            for y in range(k):
                b = forms[y, :degs[y] + 1].copy()
                out[x, y] = _bivariate_dependent_numba(a, b, p, W)
        return out


def bivariate_dependent(a, b, p: int, W: int, *, use_numba: bool | None = None) -> bool:
    """Is there a nonzero Q with Q(a, b) = 0 using a^i b^j of weighted degree <= W?

    ``a`` and ``b`` are coefficient vectors of binary forms of positive degree.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    if len(a) < 2 or len(b) < 2:
        raise ValueError("forms must have positive degree")
    numba_on = USE_NUMBA if use_numba is None else (use_numba and nb is not None)
    if numba_on:
        return bool(_bivariate_dependent_numba(a, b, p, W))
    return bool(_bivariate_dependent_numpy(a, b, p, W))


def bivariate_dependence_table(forms, p: int, W: int, *, use_numba: bool | None = None) -> np.ndarray:
    """``out[x, y]`` = bivariate_dependent(forms[x], forms[y]) for every ordered pair."""
    degs = np.array([len(f) - 1 for f in forms], dtype=np.int64)
    width = int(degs.max()) + 1
    packed = np.zeros((len(forms), width), dtype=np.int64)
    for k, f in enumerate(forms):
        packed[k, :len(f)] = np.asarray(f) % p
    numba_on = USE_NUMBA if use_numba is None else (use_numba and nb is not None)
    if numba_on:
        return _bivariate_table_numba(packed, degs, p, W)
    out = np.zeros((len(forms), len(forms)), dtype=bool)
    for x in range(len(forms)):
        for y in range(len(forms)):
            out[x, y] = _bivariate_dependent_numpy(packed[x, :degs[x] + 1], packed[y, :degs[y] + 1], p, W)
    return out
