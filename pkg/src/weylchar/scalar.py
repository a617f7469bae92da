"""Prime-field scalars and the binomial weights used when reordering Weyl monomials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class Prime(int):
    """An ``int`` that is guaranteed to be a prime fitting in a machine word."""

    def __new__(cls, value: int) -> "Prime":
        value = int(value)
        if value >= 2**63:
            raise ValueError(f"{value} does not fit in a 64-bit word")
        if not is_prime(value):
            raise ValueError(f"{value} is not prime")
        return super().__new__(cls, value)


# these bases make Miller-Rabin deterministic below 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FpScalar:
    residue: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _check(self, other: "FpScalar") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def _coerce(self, other):
        if isinstance(other, FpScalar):
            self._check(other)
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return FpScalar(self.residue + r, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return FpScalar(self.residue - r, self.modulus)

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return FpScalar(r - self.residue, self.modulus)

    def __mul__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return FpScalar(self.residue * r, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.residue, self.modulus)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = FpScalar(other, self.modulus)
        return self * other.inv()

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def inv(self) -> "FpScalar":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.modulus}")
        return FpScalar(pow(self.residue, -1, self.modulus), self.modulus)

    def __repr__(self):
        return f"FpScalar({self.residue} mod {self.modulus})"


def fp_add(a: FpScalar, b: FpScalar) -> FpScalar:
    a._check(b)
    return a + b


def fp_mul(a: FpScalar, b: FpScalar) -> FpScalar:
    a._check(b)
    return a * b


def fp_neg(a: FpScalar) -> FpScalar:
    return -a


def fp_inv(a: FpScalar) -> FpScalar:
    return a.inv()


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


@lru_cache(maxsize=None)
def _small_binomials(p: int) -> tuple:
    # Pascal's triangle mod p for arguments below p; Lucas handles the rest.
    rows = [[1]]
    for n in range(1, p):
        prev = rows[-1]
        rows.append([1] + [(prev[k - 1] + prev[k]) % p for k in range(1, n)] + [1])
    return tuple(tuple(r) for r in rows)


def binomial_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem (digit-wise over base p)."""
    if k < 0 or k > n:
        return 0
    table = _small_binomials(p)
    result = 1
    while k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        result = result * table[nd][kd] % p
        n //= p
        k //= p
    return result


def factorial_mod(k: int, p: int) -> int:
    if k >= p:
        return 0
    out = 1
    for i in range(2, k + 1):
        out = out * i % p
    return out


@lru_cache(maxsize=1 << 16)
def falling_binomial_weight(b: int, c: int, k: int, p: int) -> int:
    """Residue of ``k! * C(b, k) * C(c, k)`` mod p.

    This is the coefficient of ``y^(c-k) x^(b-k)`` in the normal form of
    ``x^b y^c``.
    """
    if b < 0 or c < 0 or k < 0:
        raise ValueError("arguments must be nonnegative")
    if k > min(b, c):
        raise ValueError(f"k={k} exceeds min(b, c)={min(b, c)}")
    f = factorial_mod(k, p)
    if f == 0:
        return 0
    return f * binomial_mod(b, k, p) % p * binomial_mod(c, k, p) % p


def fp_weight(b: int, c: int, k: int, p: Prime) -> FpScalar:
    return FpScalar(falling_binomial_weight(b, c, k, int(p)), int(p))
