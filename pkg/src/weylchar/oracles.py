"""Independent reference computations used to cross-check the fast paths."""

from __future__ import annotations

from .weyl import AlgebraSignature, WeylElement


def monomial_word(m: tuple) -> tuple:
    """Letters of a standard monomial: ('y', i) and ('x', i) repeated by exponent."""
    word = []
    for t in range(0, len(m), 2):
        i = t // 2 + 1
        word += [("y", i)] * m[t] + [("x", i)] * m[t + 1]
    return tuple(word)


def _rank(letter) -> tuple:
    return (letter[1], 0 if letter[0] == "y" else 1)


def rewrite_normal_form(word, sig: AlgebraSignature) -> WeylElement:
    """Normal form of a word by single-step rewriting.

    Repeatedly fixes the first out-of-order adjacent pair: x_i y_i -> y_i x_i + 1,
    any other pair is swapped.  Like words are merged after each sweep.
    """
    p = sig.p
    pending = {tuple(word): 1}
    done: dict = {}
    while pending:
        nxt: dict = {}
        for w, c in pending.items():
            for k in range(len(w) - 1):
                a, b = w[k], w[k + 1]
                if _rank(a) > _rank(b):
                    swapped = w[:k] + (b, a) + w[k + 2:]
                    nxt[swapped] = (nxt.get(swapped, 0) + c) % p
                    if a == ("x", b[1]) and b[0] == "y":
                        dropped = w[:k] + w[k + 2:]
                        nxt[dropped] = (nxt.get(dropped, 0) + c) % p
                    break
            else:
                done[w] = (done.get(w, 0) + c) % p
        pending = {w: c for w, c in nxt.items() if c}
    terms: dict = {}
    for w, c in done.items():
        m = [0] * sig.nvars
        for letter, i in w:
            m[2 * (i - 1) + (0 if letter == "y" else 1)] += 1
        m = tuple(m)
        terms[m] = (terms.get(m, 0) + c) % p
    return WeylElement(sig, terms)


def rewrite_product(a: tuple, b: tuple, sig: AlgebraSignature) -> WeylElement:
    return rewrite_normal_form(monomial_word(a) + monomial_word(b), sig)
