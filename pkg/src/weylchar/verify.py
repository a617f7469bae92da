"""Reproduction suite: every acceptance check as a function returning a CheckResult.

``run_all`` drives them for the ``verify-paper`` command and the test suite.
Random draws use fixed seeds so reruns are bit-identical.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

from . import _kernels
from .growth import gk_fit, membership, span_iterate
from .morphism import (
    POISSON,
    WEYL,
    a2_counterexample,
    a2_z,
    apply,
    check_relations,
    kernel_basis,
    remark2_map,
    theorem3_chain,
    theorem3_image_generators,
    theorem3_map,
)
from .oracles import rewrite_product
from .poisson import bracket
from .rectify import CapExceeded, find_annihilator, homogeneous_dependent, rectify_pair
from .sampling import random_element, random_monomial, random_poly, random_triangular_map
from .structure import central_decompose, is_central
from .weyl import AlgebraSignature, PolyElement, WeylElement, ad_power, commutator


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: str = ""
    failures: list = field(default_factory=list)

    @property
    def within_time(self) -> bool:
        return self.seconds <= self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        timing = f"{self.seconds:.2f}s / {self.limit:.0f}s"
        extra = f" ({self.detail})" if self.detail else ""
        if self.passed and not self.within_time:
            extra += " [over time limit]"
        return f"[{status}] {self.number:2d}. {self.name}: {timing}{extra}"

    def to_json(self) -> dict:
        return {
            "number": self.number, "name": self.name, "passed": self.ok,
            "seconds": round(self.seconds, 3), "limit": self.limit, "detail": self.detail,
            "failures": [str(f) for f in self.failures[:10]],
        }


def _primes(default, only):
    if only is None:
        return list(default)
    return [only]


def check_commutation_ladder(primes=None):
    fails = []
    for p in _primes((2, 3, 5, 7), primes):
        for n in (1, 2):
            sig = AlgebraSignature(n, p)
            for i in range(1, n + 1):
                x, y = WeylElement.x(sig, i), WeylElement.y(sig, i)
                for k in range(1, 51):
                    lhs = commutator(WeylElement.x(sig, i, k), y)
                    rhs = WeylElement.x(sig, i, k - 1).scale(k)
                    if lhs != rhs:
                        fails.append((p, n, i, k))
    return not fails, "k <= 50, n in {1,2}", fails


def check_ad_frobenius(primes=None):
    fails = []
    count = 0
    for p in _primes((2, 3, 5), primes):
        for n in (1, 2):
            rng = random.Random(1000 * p + n)
            sig = AlgebraSignature(n, p)
            for _ in range(100):
                a = random_element(sig, rng, 3, 3)
                b = random_element(sig, rng, 3, 3)
                if ad_power(a, b, p) != commutator(a ** p, b):
                    fails.append((p, n, str(a), str(b)))
                count += 1
    return not fails, f"{count} random pairs", fails


def check_center(primes=None):
    fails = []
    for p in _primes((2, 3, 5), primes):
        for n in (1, 2):
            sig = AlgebraSignature(n, p)
            for i in range(1, n + 1):
                xi, yi = WeylElement.x(sig, i), WeylElement.y(sig, i)
                if not (is_central(xi ** p) and is_central(yi ** p)):
                    fails.append(("p-th power not central", p, n, i))
                if is_central(xi) or is_central(yi * xi):
                    fails.append(("generator central", p, n, i))
                if is_central(yi * xi, "commutators") or not is_central(xi ** p, "commutators"):
                    fails.append(("commutator route", p, n, i))
    count = 0
    rng = random.Random(3)
    for _ in range(200):
        p = rng.choice(_primes((2, 3, 5), primes))
        sig = AlgebraSignature(rng.choice((1, 2)), p)
        a = random_element(sig, rng, 8, 6)
        dec = central_decompose(a)
        if dec.reassemble() != a:
            fails.append(("reassembly", str(a)))
        count += 1
    return not fails, f"{count} decompositions reassembled", fails


def check_yx_identity(primes=None):
    fails = []
    for p in _primes((2, 3, 5), primes):
        sig = AlgebraSignature(1, p)
        x, y = WeylElement.x(sig, 1), WeylElement.y(sig, 1)
        yx = y * x
        if yx ** p - yx != WeylElement.y(sig, 1, p) * WeylElement.x(sig, 1, p):
            fails.append(p)
    return not fails, "", fails


def check_remark2(primes=None):
    fails = []
    phi = remark2_map(2)
    sig = phi.sig
    x, y = WeylElement.x(sig, 1), WeylElement.y(sig, 1)
    u, v = phi.u[0], phi.v[0]
    if check_relations(phi):
        fails.append("relations")
    if v ** 2 != y ** 4 * x ** 2:
        fails.append("v^2")
    if v ** 2 + y ** 4 * u ** 2:
        fails.append("v^2 + y^4 u^2")
    report = kernel_basis(phi, 8)
    if report.dimension:
        fails.append(f"kernel dimension {report.dimension}")
    return not fails, "kernel at bound 8 empty", fails


def check_a2_counterexample(primes=None):
    fails = []
    phi = a2_counterexample(2)
    sig = phi.sig
    z = a2_z(2)
    y1, y2 = WeylElement.y(sig, 1), WeylElement.y(sig, 2)
    x1 = WeylElement.x(sig, 1)
    if check_relations(phi):
        fails.append("relations")
    if commutator(z ** 2, y2) != WeylElement.one(sig):
        fails.append("[z^2, y2]")
    u1, v1, v2 = phi.u[0], phi.v[0], phi.v[1]
    if u1 ** 2 != z ** 4 * y1 ** 2 or u1 ** 2 != v2 ** 2 * v1 ** 2:
        fails.append("u1^2 = z^4 y1^2 = v2^2 v1^2")
    witness = x1 ** 2 + y1 ** 2 * y2 ** 2
    if apply(phi, witness):
        fails.append("witness not in kernel")
    report = kernel_basis(phi, 4)
    span = span_iterate(report.basis, 1) if report.basis else None
    if report.dimension < 1 or not span.contains(witness):
        fails.append("kernel basis misses x1^2 + y1^2 y2^2")
    return not fails, f"kernel dimension {report.dimension} at bound 4", fails


def check_theorem3(primes=None):
    fails = []
    cases = [(2, 2), (2, 3)]
    if primes is not None:
        cases = [(2, primes)] if primes in (2, 3) else cases
    for n, p in cases:
        sig = AlgebraSignature(n, p)
        for m in range(1, n + 1):
            for i in range(0, n + 1):
                q = p ** (i + 1)
                rhs = theorem3_chain(n, p, m - 1, i) \
                    - WeylElement.y(sig, m, q * (p - 1)) * theorem3_chain(n, p, m - 1, i + 1) \
                    + WeylElement.x(sig, m, q)
                if theorem3_chain(n, p, m, i + 1) != rhs:
                    fails.append(("chain", n, p, m, i))
            if not is_central(theorem3_chain(n, p, m, m)):
                fails.append(("z_mm central", n, p, m))
        phi = theorem3_map(n, p)
        if check_relations(phi):
            fails.append(("relations", n, p))
        gens = theorem3_image_generators(n, p)
        table = span_iterate(gens, 6)
        for m, um in enumerate(phi.u, 1):
            if not table.contains(um):
                fails.append(("membership", n, p, m))
    return not fails, "chain, centrality, relations, membership at N=6", fails


def check_growth(primes=None):
    fails = []
    for p in _primes((2, 3), primes):
        for n in (1, 2):
            sig = AlgebraSignature(n, p)
            gens = [WeylElement.x(sig, i) for i in range(1, n + 1)] + \
                   [WeylElement.y(sig, i) for i in range(1, n + 1)]
            dims = span_iterate(gens, 20).dims
            expected = [math.comb(N + 2 * n, 2 * n) for N in range(21)]
            if dims != expected:
                fails.append(("d_N", n, p))
    table = span_iterate(theorem3_image_generators(2, 2), 30)
    fit = gk_fit(table)
    if not 2.7 <= fit.exponent <= 3.0:
        fails.append(("gk fit", fit.exponent))
    return not fails, f"B exponent {fit.exponent:.3f} over {fit.window}", fails


def binary_forms(p: int, max_degree: int = 4, min_degree: int = 0) -> list:
    """Every nonzero binary form over F_p of degree in [min_degree, max_degree]."""
    sig = AlgebraSignature(1, p)
    out = []
    for d in range(min_degree, max_degree + 1):
        for cs in itertools.product(range(p), repeat=d + 1):
            if any(cs):
                out.append(PolyElement(sig, {(k, d - k): c for k, c in enumerate(cs)}))
    return out


def _coeff_vector(f: PolyElement) -> list:
    d = int(f.degree())
    return [f.terms.get((k, d - k), 0) for k in range(d + 1)]


def check_dependence(primes=None, weight_bound: int = 24):
    fails = []
    total = 0
    for p in _primes((2, 3), primes):
        forms = binary_forms(p, 4, 1)
        oracle = _kernels.bivariate_dependence_table([_coeff_vector(f) for f in forms], p, weight_bound)
        for x, a in enumerate(forms):
            for y, b in enumerate(forms):
                w = homogeneous_dependent(a, b)
                if (w is not None) != bool(oracle[x, y]):
                    fails.append((p, str(a), str(b)))
                elif w is not None and a ** w.q != (b ** w.r).scale(w.f):
                    fails.append(("witness", p, str(a), str(b)))
                total += 1
        # constants against everything go through the general oracle
        consts = [f for f in binary_forms(p, 0, 0)]
        for c in consts:
            for b in forms + consts:
                for pair in ((c, b), (b, c)):
                    w = homogeneous_dependent(*pair)
                    found = find_annihilator(*pair, weight_bound=weight_bound)
                    if (w is not None) != (found is not None):
                        fails.append(("const", p, str(pair[0]), str(pair[1])))
                    total += 1
    return not fails, f"{total} ordered pairs", fails


def dependent_test_pairs() -> list:
    """Pairs (u, v) in A_1 with [u, v] = 1 and dependent leading forms."""
    pairs = []
    for p in (2, 3):
        sig = AlgebraSignature(1, p)
        x, y = WeylElement.x(sig, 1), WeylElement.y(sig, 1)
        for k in (2, 3, 4, 5, 6):
            pairs.append((x, y + x ** k))
            pairs.append((x + y ** k, y))
        pairs.append((x + (y + x ** 3) ** 2, y + x ** 3))
        pairs.append((x + y ** 3, y + (x + y ** 3) ** 2))
        pairs.append((x, y + x ** 3 + x ** 2))
    return pairs[:20]


def check_rectification(primes=None):
    fails = []
    sig = AlgebraSignature(1, 2)
    x, y = WeylElement.x(sig, 1), WeylElement.y(sig, 1)
    res = rectify_pair(x, y + x ** 3)
    lu, lv = res.u.leading_form(), res.v.leading_form()
    if len(res.steps) != 1:
        fails.append(("steps", len(res.steps)))
    if lu != PolyElement.y(sig, 1) or lv != PolyElement.x(sig, 1, 3):
        fails.append(("leading forms", str(lu), str(lv)))
    if res.steps and (res.steps[0]["Def"], res.steps[0]["Def_after"]) != (4, 2):
        fails.append(("Def", res.steps[0]["Def"], res.steps[0]["Def_after"]))
    pairs = dependent_test_pairs()
    for u, v in pairs:
        if homogeneous_dependent(u.leading_form(), v.leading_form()) is None:
            fails.append(("pair not dependent", str(u), str(v)))
            continue
        try:
            res = rectify_pair(u, v)
            steps = res.steps
        except CapExceeded as exc:
            steps = exc.steps
            fails.append(("cap", str(u), str(v)))
        defs = [steps[0]["Def"]] + [s["Def_after"] for s in steps] if steps else []
        if any(b >= a for a, b in zip(defs, defs[1:])) or any(d <= 0 for d in defs):
            fails.append(("Def descent", str(u), str(v), defs))
    return not fails, f"{len(pairs)} dependent pairs", fails


def check_bc_suites(primes=None):
    fails = []
    count = 0
    for kind in (WEYL, POISSON):
        for p in _primes((2, 3), primes):
            rng = random.Random((7 if kind == WEYL else 11) * p)
            for _ in range(50):
                phi = random_triangular_map(p, rng, kind)
                if check_relations(phi):
                    fails.append(("invalid", kind, p, str(phi)))
                    continue
                if kernel_basis(phi, 8).dimension:
                    fails.append(("kernel", kind, p, str(phi)))
                count += 1
    return not fails, f"{count} kernels at bound 8", fails


def check_poisson_axioms(primes=None):
    fails = []
    rng = random.Random(12)
    for _ in range(200):
        p = rng.choice(_primes((2, 3, 5), primes))
        sig = AlgebraSignature(rng.choice((1, 2)), p)
        f, g, h = (random_poly(sig, rng, 4, 4) for _ in range(3))
        c = rng.randrange(p)
        if bracket(f, g) != -bracket(g, f):
            fails.append("antisymmetry")
        if bracket(f, g + h.scale(c)) != bracket(f, g) + bracket(f, h).scale(c):
            fails.append("bilinearity")
        jac = bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g))
        if jac:
            fails.append("jacobi")
        if bracket(f, g * h) != bracket(f, g) * h + g * bracket(f, h):
            fails.append("leibniz")
    return not fails, "200 random triples", fails


def check_pbw_canonicity(primes=None):
    fails = []
    rng = random.Random(13)
    for _ in range(500):
        p = rng.choice(_primes((2, 3, 5), primes))
        sig = AlgebraSignature(rng.choice((1, 2)), p)
        a = random_monomial(sig, rng, 10)
        b = random_monomial(sig, rng, 10)
        fast = WeylElement.monomial(sig, a) * WeylElement.monomial(sig, b)
        if fast != rewrite_product(a, b, sig):
            fails.append((p, a, b))
    return not fails, "500 random monomial pairs", fails


CHECKS = [
    (1, "commutation ladder [x^k, y] = k x^(k-1)", check_commutation_ladder, 1.0),
    (2, "ad_a^p(b) = [a^p, b]", check_ad_frobenius, 30.0),
    (3, "center membership and decomposition", check_center, 10.0),
    (4, "(yx)^p - yx = y^p x^p", check_yx_identity, 1.0),
    (5, "p = 2 map u = x, v = y^2 x - y", check_remark2, 60.0),
    (6, "A_2 counterexample has a kernel", check_a2_counterexample, 120.0),
    (7, "z_{m,i} chain and the n + 1 map", check_theorem3, 300.0),
    (8, "growth d_N and GK fit", check_growth, 600.0),
    (9, "homogeneous dependence vs annihilator search", check_dependence, 120.0),
    (10, "rectification", check_rectification, 120.0),
    (11, "injectivity of triangular maps (A_1, PS_1)", check_bc_suites, 600.0),
    (12, "Poisson axioms", check_poisson_axioms, 30.0),
    (13, "closed-form product vs rewriting", check_pbw_canonicity, 60.0),
]


def run_check(number: int, primes: int | None = None) -> CheckResult:
    num, name, fn, limit = next(c for c in CHECKS if c[0] == number)
    if number == 1:
        _kernels.warm_up()
    start = time.perf_counter()
    passed, detail, failures = fn(primes)
    elapsed = time.perf_counter() - start
    return CheckResult(num, name, passed, elapsed, limit, detail, failures)


def run_all(primes: int | None = None, only=None) -> list:
    _kernels.warm_up()
    numbers = [c[0] for c in CHECKS] if not only else list(only)
    return [run_check(k, primes) for k in numbers]
