"""Exact coefficient fields: rationals, cyclotomic extensions Q(zeta_M), prime fields.

All downstream arithmetic is exact.  A field object hands out its own element
type; elements of distinct field objects never mix.  The rational field uses
plain ``fractions.Fraction`` values (the hot path for the sign-based families),
cyclotomic fields use a small polynomial-quotient element, and the prime-field
mode exists for randomized cross-validation of cyclotomic results.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class FieldError(ArithmeticError):
    pass


class OrderUnavailable(FieldError):
    """The requested root-of-unity order does not exist in this field."""


class MixedFieldSpec(FieldError):
    """Operands belong to different field specifications."""


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials, ascending coefficients."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], den[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c
        for i, d in enumerate(den):
            num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder in exact division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, ascending, monic."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]  # t^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@dataclass(frozen=True)
class FieldSpec:
    """Declarative field choice: cyclotomic(M) over Q, or a prime field F_p."""

    mode: str  # "cyclotomic" | "prime"
    order: int = 1  # ambient root order M (cyclotomic mode)
    p: int = 0  # characteristic (prime mode)

    def __post_init__(self):
        if self.mode not in ("cyclotomic", "prime"):
            raise ValueError(f"unknown field mode {self.mode!r}")
        if self.mode == "cyclotomic" and self.order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        if self.mode == "prime" and self.p < 2:
            raise ValueError("prime characteristic must be >= 2")

    @property
    def characteristic(self) -> int:
        return 0 if self.mode == "cyclotomic" else self.p

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        m = re.fullmatch(r"cyclotomic:(\d+)", text)
        if m:
            return FieldSpec("cyclotomic", order=int(m.group(1)))
        m = re.fullmatch(r"prime:(\d+)", text)
        if m:
            return FieldSpec("prime", p=int(m.group(1)))
        if text in ("Q", "q", "rational"):
            return FieldSpec("cyclotomic", order=1)
        raise ValueError(f"cannot parse field spec {text!r}")

    def __str__(self) -> str:
        if self.mode == "cyclotomic":
            return f"cyclotomic:{self.order}"
        return f"prime:{self.p}"


class CycElt:
    """Element of Q(zeta_M): integer coordinates over a common denominator in
    the power basis of Q[t]/(Phi_M).  Canonical form: den > 0 and
    gcd(den, *nums) = 1, so equality is coordinate-wise comparison."""

    __slots__ = ("field", "nums", "den")

    def __init__(self, field: "CycField", nums: tuple, den: int = 1):
        self.field = field
        self.nums = nums
        self.den = den

    @property
    def coeffs(self) -> tuple:
        """Power-basis coordinates as Fractions (for printing/morphisms)."""
        return tuple(Fraction(n, self.den) for n in self.nums)

    def _coerce(self, other):
        if isinstance(other, CycElt):
            if other.field is not self.field:
                raise MixedFieldSpec("cyclotomic elements from different fields")
            return other
        if isinstance(other, int):
            f = self.field
            return CycElt(f, (other,) + (0,) * (f.degree - 1), 1)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        cache = f._add_cache
        key = (self.nums, self.den, o.nums, o.den)
        hit = cache.get(key)
        if hit is None:
            da, db = self.den, o.den
            if da == db:
                hit = _canonical(tuple(x + y for x, y in zip(self.nums, o.nums)), da)
            else:
                g = math.gcd(da, db)
                ma, mb = db // g, da // g
                hit = _canonical(tuple(x * ma + y * mb for x, y in zip(self.nums, o.nums)), da * ma)
            if len(cache) < 300000:
                cache[key] = hit
        return CycElt(f, hit[0], hit[1])

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.field, tuple(-x for x in self.nums), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        cache = f._mul_cache
        key = (self.nums, self.den, o.nums, o.den)
        hit = cache.get(key)
        if hit is None:
            hit = f._mulmod(self.nums, self.den, o.nums, o.den)
            if len(cache) < 300000:
                cache[key] = hit
        return CycElt(f, hit[0], hit[1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self) -> "CycElt":
        if not self:
            raise ZeroDivisionError("cyclotomic division by zero")
        return self.field._inverse(self)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.nums)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.nums == o.nums and self.den == o.den

    def __hash__(self):
        return hash((id(self.field), self.nums, self.den))

    def __repr__(self):
        return f"Cyc({self.field.order}; {list(self.nums)}/{self.den})"


def _canonical(nums: tuple, den: int) -> tuple:
    """Reduce to gcd(den, *nums) = 1 with den > 0."""
    g = den
    for x in nums:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return (nums, den)
    if g == den and not any(nums):
        return ((0,) * len(nums), 1)
    if g > 1:
        return (tuple(x // g for x in nums), den // g)
    return (nums, den)


class PrimeElt:
    """Element of F_p."""

    __slots__ = ("field", "val")

    def __init__(self, field: "PrimeField", val: int):
        self.field = field
        self.val = val % field.p

    def _coerce(self, other):
        if isinstance(other, PrimeElt):
            if other.field is not self.field:
                raise MixedFieldSpec("prime-field elements from different fields")
            return other
        if isinstance(other, int):
            return PrimeElt(self.field, other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeElt(self.field, self.val + o.val)

    __radd__ = __add__

    def __neg__(self):
        return PrimeElt(self.field, -self.val)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeElt(self.field, self.val - o.val)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeElt(self.field, self.val * o.val)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.val == 0:
            raise ZeroDivisionError("prime-field division by zero")
        return PrimeElt(self.field, self.val * pow(o.val, -1, self.field.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            if self.val == 0:
                raise ZeroDivisionError("prime-field division by zero")
            return PrimeElt(self.field, pow(pow(self.val, -1, self.field.p), -k, self.field.p))
        return PrimeElt(self.field, pow(self.val, k, self.field.p))

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.val == o.val

    def __hash__(self):
        return hash((self.field.p, self.val))

    def __repr__(self):
        return f"F{self.field.p}({self.val})"


class RationalField:
    """Q, with elements represented as plain Fraction values."""

    characteristic = 0
    order = 1

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, q: Fraction) -> Fraction:
        return Fraction(q)

    def make_root(self, m: int) -> Fraction:
        if m == 1:
            return Fraction(1)
        if m == 2:
            return Fraction(-1)
        raise OrderUnavailable(f"Q has no primitive root of order {m}")

    def description(self) -> str:
        return "Q"

    def __repr__(self):
        return "RationalField()"


class CycField:
    """Q(zeta_M) = Q[t]/(Phi_M(t)); Phi_M is monic with integer coefficients,
    so the high-power reduction rows are integer vectors."""

    characteristic = 0

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.order = spec.order
        self.modulus = cyclotomic_polynomial(self.order)
        self.degree = len(self.modulus) - 1
        deg = self.degree
        self.zero = CycElt(self, (0,) * deg, 1)
        self.one = CycElt(self, (1,) + (0,) * (deg - 1), 1)
        # rows[k] = integer coordinates of t^(degree+k) in the power basis
        rows = []
        prev = [-c for c in self.modulus[:deg]]
        rows.append(tuple(prev))
        for _ in range(deg - 2):
            shifted = [0] + prev[: deg - 1]
            top = prev[deg - 1]
            if top:
                shifted = [sh + top * r for sh, r in zip(shifted, rows[0])]
            prev = shifted
            rows.append(tuple(prev))
        self._high_power_rows = rows
        self._mul_cache: dict = {}
        self._add_cache: dict = {}

    def from_int(self, n: int) -> CycElt:
        return CycElt(self, (n,) + (0,) * (self.degree - 1), 1)

    def from_fraction(self, q: Fraction) -> CycElt:
        return CycElt(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def from_coeffs(self, coeffs) -> CycElt:
        fracs = [Fraction(x) for x in coeffs]
        den = 1
        for q in fracs:
            den = den * q.denominator // math.gcd(den, q.denominator)
        nums = [int(q * den) for q in fracs]
        if len(nums) > self.degree:
            nums = list(self._reduce_int(nums))
        nums += [0] * (self.degree - len(nums))
        out = _canonical(tuple(nums), den)
        return CycElt(self, out[0], out[1])

    def _reduce_int(self, poly: list) -> tuple:
        """Reduce an integer coefficient list modulo the (monic) modulus."""
        deg = self.degree
        out = list(poly[:deg]) + [0] * max(0, deg - len(poly))
        for k in range(len(poly) - deg - 1, -1, -1):
            c = poly[deg + k]
            if c:
                row = self._high_power_rows[k]
                for t in range(deg):
                    r = row[t]
                    if r:
                        out[t] += c * r
        return tuple(out)

    def _mulmod(self, a: tuple, da: int, b: tuple, db: int) -> tuple:
        deg = self.degree
        conv = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:deg]
        for k in range(deg - 1):
            c = conv[deg + k]
            if c:
                row = self._high_power_rows[k]
                for t in range(deg):
                    r = row[t]
                    if r:
                        out[t] += c * r
        return _canonical(tuple(out), da * db)

    def _inverse(self, x: CycElt) -> CycElt:
        # Extended Euclid in Q[t] against the (irreducible) modulus.
        r0 = [Fraction(c) for c in self.modulus]
        r1 = list(x.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg_of(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        while deg_of(r1) > 0:
            d0, d1 = deg_of(r0), deg_of(r1)
            q = [Fraction(0)] * (d0 - d1 + 1)
            r0 = list(r0)
            while d0 >= d1:
                c = r0[d0] / r1[d1]
                q[d0 - d1] = c
                for i in range(d1 + 1):
                    r0[d0 - d1 + i] -= c * r1[i]
                d0 = deg_of(r0)
            s_new = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        s_new[i + j] -= qi * sj
            r0, r1 = r1, r0
            s0, s1 = s1, s_new
        d = deg_of(r1)
        if d < 0:
            raise ZeroDivisionError("not invertible")
        lead = r1[d]
        return self.from_coeffs([c / lead for c in s1])

    def make_root(self, m: int) -> CycElt:
        """Primitive m-th root of unity, when one exists in Q(zeta_M)."""
        big = self.order
        if self.degree == 1:
            raise AssertionError("degree-1 cyclotomic field should be RationalField")
        zeta = CycElt(self, (0, 1) + (0,) * (self.degree - 2), 1)
        if big % m == 0:
            return zeta ** (big // m)
        if big % 2 == 1 and (2 * big) % m == 0:
            # -zeta^((M+1)/2) has order 2M when M is odd.
            xi = -(zeta ** ((big + 1) // 2))
            return xi ** (2 * big // m)
        raise OrderUnavailable(f"Q(zeta_{big}) has no primitive root of order {m}")

    def description(self) -> str:
        return f"Q(z{self.order})"

    def __repr__(self):
        return f"CycField({self.order})"


class PrimeField:
    """F_p; roots of unity of order m exist exactly when m | p-1."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.characteristic = spec.p
        self.order = spec.p - 1
        self.zero = PrimeElt(self, 0)
        self.one = PrimeElt(self, 1)
        self._generator = None

    def from_int(self, n: int) -> PrimeElt:
        return PrimeElt(self, n)

    def from_fraction(self, q: Fraction) -> PrimeElt:
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError("denominator vanishes in F_p")
        return PrimeElt(self, q.numerator * pow(den, -1, self.p))

    def generator(self) -> int:
        if self._generator is None:
            fac = _prime_factors(self.p - 1)
            for g in range(2, self.p):
                if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in fac):
                    self._generator = g
                    break
        return self._generator

    def make_root(self, m: int) -> PrimeElt:
        if (self.p - 1) % m != 0:
            raise OrderUnavailable(f"F_{self.p} has no root of order {m}")
        return PrimeElt(self, pow(self.generator(), (self.p - 1) // m, self.p))

    def description(self) -> str:
        return f"F_{self.p}"

    def __repr__(self):
        return f"PrimeField({self.p})"


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def get_field(spec: FieldSpec):
    """Field objects are interned per spec so identity checks are sound."""
    if spec.mode == "prime":
        return PrimeField(spec)
    if euler_phi(spec.order) == 1:
        return RationalField(spec)
    return CycField(spec)


def make_root(field, m: int):
    """Primitive m-th root of unity in the given field."""
    return field.make_root(m)


def primitive_roots(field, m: int) -> list:
    """All phi(m) primitive m-th roots of unity, as powers zeta^a, gcd(a,m)=1."""
    zeta = field.make_root(m)
    return [zeta**a for a in range(1, m + 1) if math.gcd(a, m) == 1]


def scalar_morphism(src, dst, root_image=None):
    """Ring morphism from a rational/cyclotomic field into a prime field.

    ``root_image`` is the image of zeta_M (an element of ``dst`` of exact
    order M); it defaults to dst.make_root(M).  Applied to Fraction or CycElt.
    """
    if isinstance(src, RationalField):
        return lambda q: dst.from_fraction(q)
    if root_image is None:
        root_image = dst.make_root(src.order)

    def apply(x):
        acc = dst.zero
        power = dst.one
        for c in x.coeffs:
            if c:
                acc = acc + dst.from_fraction(c) * power
            power = power * root_image
        return acc

    return apply
