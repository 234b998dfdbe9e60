"""Quantization of nilpotent solutions: R exp(hbar chi) as an exact
quasitriangular structure over polynomial coefficients in hbar.

Polynomials in hbar with tensor coefficients are exact (degree capped by the
nilpotency degree), so every axiom is checked degreewise with no truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .hopf import HopfData, HopfError, Tensor, delta
from .rmatrices import r_inverse


class QuantizeError(HopfError):
    pass


class NotNilpotent(QuantizeError):
    pass


class FactorialNotInvertible(QuantizeError):
    pass


class PolyTensor:
    """Polynomial in hbar with Tensor coefficients, trailing zeros trimmed."""

    __slots__ = ("parent", "legs", "coeffs")

    def __init__(self, parent: HopfData, legs: int, coeffs: list):
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        self.parent = parent
        self.legs = legs
        self.coeffs = coeffs  # list of Tensor, index = hbar degree

    @staticmethod
    def constant(t: Tensor) -> "PolyTensor":
        return PolyTensor(t.parent, t.legs, [t])

    @staticmethod
    def zero(parent: HopfData, legs: int = 2) -> "PolyTensor":
        return PolyTensor(parent, legs, [])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, d: int) -> Tensor:
        if d < len(self.coeffs):
            return self.coeffs[d]
        return self.parent.zero_tensor(self.legs)

    def __add__(self, other: "PolyTensor") -> "PolyTensor":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyTensor(self.parent, self.legs, [self.coeff(d) + other.coeff(d) for d in range(n)])

    def __sub__(self, other: "PolyTensor") -> "PolyTensor":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyTensor(self.parent, self.legs, [self.coeff(d) - other.coeff(d) for d in range(n)])

    def __neg__(self) -> "PolyTensor":
        return PolyTensor(self.parent, self.legs, [-c for c in self.coeffs])

    def __mul__(self, other: "PolyTensor") -> "PolyTensor":
        """Convolution of coefficient sequences, legwise tensor products inside."""
        if not isinstance(other, PolyTensor):
            return PolyTensor(self.parent, self.legs, [c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return PolyTensor.zero(self.parent, self.legs)
        out = [self.parent.zero_tensor(self.legs) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return PolyTensor(self.parent, self.legs, out)

    def __eq__(self, other):
        if not isinstance(other, PolyTensor):
            return NotImplemented
        return self.legs == other.legs and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def leg(self, placement: int) -> "PolyTensor":
        return PolyTensor(self.parent, 3, [c.leg(placement) for c in self.coeffs])

    def apply_delta(self, slot: int) -> "PolyTensor":
        return PolyTensor(self.parent, self.legs + 1, [c.apply_delta(slot) for c in self.coeffs])

    def flip(self) -> "PolyTensor":
        return PolyTensor(self.parent, 2, [c.flip() for c in self.coeffs])

    def __repr__(self):
        return " + ".join(f"hbar^{d}*({c!r})" for d, c in enumerate(self.coeffs)) or "0"


def nilpotency_degree(h: HopfData, chi: Tensor) -> int:
    """Smallest k with chi^k = 0 in H (x) H."""
    power = h.unit_tensor(2)
    bound = (h.dim * h.dim) + 1
    for k in range(1, bound + 1):
        power = power * chi
        if not power:
            return k
    raise NotNilpotent(f"no vanishing power up to {bound}")


def exp_hbar(h: HopfData, chi: Tensor) -> PolyTensor:
    """sum_(j<k) hbar^j chi^j / j! for chi nilpotent of degree k; exact."""
    k = nilpotency_degree(h, chi)
    f = h.field
    coeffs = []
    power = h.unit_tensor(2)
    for j in range(k):
        if j:
            power = power * chi
        fact = f.from_int(math.factorial(j))
        if not fact:
            raise FactorialNotInvertible(f"{j}! vanishes in characteristic {f.characteristic}")
        coeffs.append(power.scaled(f.one / fact))
    return PolyTensor(h, 2, coeffs)


def check_commutation_hypotheses(h: HopfData, r: Tensor, chi: Tensor, rinv: Tensor | None = None) -> tuple[bool, bool]:
    """chi_12 commutes with R12^-1 chi_13 R12, and the 23-leg analogue."""
    if rinv is None:
        rinv = r_inverse(h, r)
    k12 = rinv.leg(12) * chi.leg(13) * r.leg(12)
    c12 = chi.leg(12)
    first = c12 * k12 == k12 * c12
    k23 = rinv.leg(23) * chi.leg(13) * r.leg(23)
    c23 = chi.leg(23)
    second = c23 * k23 == k23 * c23
    return first, second


@dataclass
class QuantizationReport:
    name: str
    hypothesis_1: bool
    hypothesis_2: bool
    nilpotency: int
    failures: list = dc_field(default_factory=list)
    checks: int = 0

    @property
    def hypotheses_ok(self):
        return self.hypothesis_1 and self.hypothesis_2

    @property
    def ok(self):
        return not self.failures

    def record(self, law, witness, ok):
        self.checks += 1
        if not ok:
            self.failures.append((law, witness))

    def __bool__(self):
        return self.ok

    def summary(self):
        head = f"{self.name}: hypotheses=({self.hypothesis_1},{self.hypothesis_2}) nilpotency={self.nilpotency}"
        if self.ok:
            return f"{head}; all {self.checks} identities hold"
        return f"{head}; " + "; ".join(f"{l}@{w}" for l, w in self.failures[:10])


def verify_quantized_qtr(h: HopfData, r: Tensor, chi: Tensor, rinv: Tensor | None = None) -> QuantizationReport:
    """Check that R exp(hbar chi) satisfies the quasitriangularity axioms
    degreewise-exactly, and that its inverse is exp(-hbar chi) R^-1.

    Hypothesis status is reported separately from the axiom outcome so that
    necessity of the commutation hypotheses can be probed."""
    if rinv is None:
        rinv = r_inverse(h, r)
    hyp1, hyp2 = check_commutation_hypotheses(h, r, chi, rinv)
    k = nilpotency_degree(h, chi)
    rep = QuantizationReport(f"quantize({h.name})", hyp1, hyp2, k)

    exp_pos = exp_hbar(h, chi)
    exp_neg = exp_hbar(h, -chi)
    rt = PolyTensor.constant(r) * exp_pos
    rt_inv = exp_neg * PolyTensor.constant(rinv)

    one2 = PolyTensor.constant(h.unit_tensor(2))
    rep.record("inverse.right", "", rt * rt_inv == one2)
    rep.record("inverse.left", "", rt_inv * rt == one2)

    for i in range(h.dim):
        d = PolyTensor.constant(delta(h.basis_elem(i)))
        dop = PolyTensor.constant(delta(h.basis_elem(i)).flip())
        rep.record("quasi-cocommutativity", h.labels[i], rt * d == dop * rt)

    rep.record("hexagon.id-delta", "", rt.apply_delta(1) == rt.leg(13) * rt.leg(12))
    rep.record("hexagon.delta-id", "", rt.apply_delta(0) == rt.leg(13) * rt.leg(23))

    # first-order coefficient of R^-1 Rtilde recovers chi exactly
    series = PolyTensor.constant(rinv) * rt
    rep.record("degree-0", "", series.coeff(0) == h.unit_tensor(2))
    rep.record("degree-1-extraction", "", series.coeff(1) == chi)
    return rep
