"""Finite-dimensional Hopf algebras as structure-constant tables.

A HopfData holds a labeled basis together with sparse tables for the product,
coproduct, counit and (optionally) antipode.  Elements and tensors are sparse
coefficient dicts over the basis of H, H (x) H, H (x) H (x) H; tensor-square
and -cube indices use the frozen row-major pairing (i, j) -> i*dim + j.

Axiom verification is exhaustive over basis tuples: multilinearity makes this
a complete check.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg import SparseMat, Subspace, kernel_of_rows, vec_axpy


class HopfError(ValueError):
    pass


class ParentMismatch(HopfError):
    """Elements referencing different HopfData instances never interoperate."""


class NoAntipode(HopfError):
    pass


class HopfData:
    """Structure-constant presentation of a finite-dimensional (bi/Hopf) algebra."""

    def __init__(
        self,
        field,
        labels: list[str],
        mult: list[list[dict]],
        unit_index: int,
        comult: list[dict],
        counit: list,
        antipode: list[dict] | None = None,
        generators: dict[str, int] | None = None,
        name: str = "H",
        family=None,
    ):
        if len(set(labels)) != len(labels):
            raise HopfError("basis labels must be pairwise distinct")
        self.field = field
        self.labels = list(labels)
        self.dim = len(labels)
        self.mult = mult
        self.unit_index = unit_index
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.generators = dict(generators or {})
        self.name = name
        self.family = family
        self.index = {lab: i for i, lab in enumerate(labels)}

    # -- element / tensor factories -------------------------------------

    def zero_elem(self) -> "Elem":
        return Elem(self, {})

    def unit(self) -> "Elem":
        return Elem(self, {self.unit_index: self.field.one})

    def basis_elem(self, i: int) -> "Elem":
        return Elem(self, {i: self.field.one})

    def elem_by_label(self, label: str) -> "Elem":
        return self.basis_elem(self.index[label])

    def gen(self, name: str) -> "Elem":
        if name not in self.generators:
            raise HopfError(f"unknown generator {name!r} for {self.name}")
        return self.basis_elem(self.generators[name])

    def zero_tensor(self, legs: int = 2) -> "Tensor":
        return Tensor(self, legs, {})

    def unit_tensor(self, legs: int = 2) -> "Tensor":
        u = self.unit_index
        idx = 0
        for _ in range(legs):
            idx = idx * self.dim + u
        return Tensor(self, legs, {idx: self.field.one})

    def tensor2(self, coeffs: dict) -> "Tensor":
        return Tensor(self, 2, coeffs)

    def __repr__(self):
        return f"HopfData({self.name}, dim={self.dim}, field={self.field.description()})"


def _check_parents(a, b):
    if a.parent is not b.parent:
        raise ParentMismatch("operands belong to different HopfData instances")


class Elem:
    """Sparse element of H."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: HopfData, coeffs: dict):
        self.parent = parent
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    @classmethod
    def _raw(cls, parent, coeffs):
        self = object.__new__(cls)
        self.parent = parent
        self.coeffs = coeffs
        return self

    def __add__(self, other):
        _check_parents(self, other)
        out = dict(self.coeffs)
        vec_axpy(out, other.coeffs, self.parent.field.one)
        return Elem._raw(self.parent, out)

    def __sub__(self, other):
        _check_parents(self, other)
        out = dict(self.coeffs)
        vec_axpy(out, other.coeffs, -self.parent.field.one)
        return Elem._raw(self.parent, out)

    def __neg__(self):
        return Elem(self.parent, {k: -v for k, v in self.coeffs.items()})

    def scaled(self, c) -> "Elem":
        return Elem(self.parent, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        if isinstance(c, Elem):
            return NotImplemented
        return self.scaled(c)

    def __mul__(self, other):
        if not isinstance(other, Elem):
            return self.scaled(other)
        _check_parents(self, other)
        mult = self.parent.mult
        out: dict = {}
        for i, a in self.coeffs.items():
            row = mult[i]
            for j, b in other.coeffs.items():
                vec_axpy(out, row[j], a * b)
        return Elem._raw(self.parent, out)

    def __pow__(self, k: int):
        if k < 0:
            raise HopfError("negative powers of algebra elements are not defined")
        out = self.parent.unit()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Elem):
            return NotImplemented
        _check_parents(self, other)
        return self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def tensor(self, other: "Elem") -> "Tensor":
        _check_parents(self, other)
        dim = self.parent.dim
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                c = a * b
                if c:
                    out[i * dim + j] = c
        return Tensor(self.parent, 2, out)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        labels = self.parent.labels
        return " + ".join(f"({v!r})*{labels[k]}" for k, v in sorted(self.coeffs.items()))


class Tensor:
    """Sparse element of H^(x)legs, flattened row-major indices."""

    __slots__ = ("parent", "legs", "coeffs")

    def __init__(self, parent: HopfData, legs: int, coeffs: dict):
        self.parent = parent
        self.legs = legs
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    @classmethod
    def _raw(cls, parent, legs, coeffs):
        self = object.__new__(cls)
        self.parent = parent
        self.legs = legs
        self.coeffs = coeffs
        return self

    def _split(self, idx: int) -> tuple:
        dim = self.parent.dim
        out = []
        for _ in range(self.legs):
            idx, r = divmod(idx, dim)
            out.append(r)
        return tuple(reversed(out))

    def __add__(self, other):
        _check_parents(self, other)
        if self.legs != other.legs:
            raise HopfError("tensor leg-count mismatch")
        out = dict(self.coeffs)
        vec_axpy(out, other.coeffs, self.parent.field.one)
        return Tensor._raw(self.parent, self.legs, out)

    def __sub__(self, other):
        _check_parents(self, other)
        if self.legs != other.legs:
            raise HopfError("tensor leg-count mismatch")
        out = dict(self.coeffs)
        vec_axpy(out, other.coeffs, -self.parent.field.one)
        return Tensor._raw(self.parent, self.legs, out)

    def __neg__(self):
        return Tensor(self.parent, self.legs, {k: -v for k, v in self.coeffs.items()})

    def scaled(self, c) -> "Tensor":
        return Tensor(self.parent, self.legs, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        if isinstance(c, (Tensor, Elem)):
            return NotImplemented
        return self.scaled(c)

    def __mul__(self, other):
        """Componentwise (legwise) algebra product."""
        if not isinstance(other, Tensor):
            return self.scaled(other)
        _check_parents(self, other)
        if self.legs != other.legs:
            raise HopfError("tensor leg-count mismatch")
        dim = self.parent.dim
        mult = self.parent.mult
        legs = self.legs
        out: dict = {}
        for ka, a in self.coeffs.items():
            ia = self._split(ka)
            for kb, b in other.coeffs.items():
                ib = other._split(kb)
                c = a * b
                # product of basis tensors: legwise structure constants
                parts = [mult[ia[t]][ib[t]] for t in range(legs)]
                _scatter_product(out, parts, c, dim)
        return Tensor._raw(self.parent, self.legs, out)

    def __pow__(self, k: int):
        if k < 0:
            raise HopfError("negative tensor powers are not defined")
        out = self.parent.unit_tensor(self.legs)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        _check_parents(self, other)
        return self.legs == other.legs and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def flip(self) -> "Tensor":
        """x (x) y -> y (x) x."""
        if self.legs != 2:
            raise HopfError("flip is defined on 2-tensors")
        dim = self.parent.dim
        out = {}
        for k, v in self.coeffs.items():
            i, j = divmod(k, dim)
            out[j * dim + i] = v
        return Tensor(self.parent, 2, out)

    def leg(self, placement: int) -> "Tensor":
        """Embed a 2-tensor into legs {12, 13, 23} of the cube, unit elsewhere."""
        if self.legs != 2:
            raise HopfError("leg embedding is defined on 2-tensors")
        dim = self.parent.dim
        u = self.parent.unit_index
        out = {}
        for k, v in self.coeffs.items():
            i, j = divmod(k, dim)
            if placement == 12:
                idx = (i * dim + j) * dim + u
            elif placement == 13:
                idx = (i * dim + u) * dim + j
            elif placement == 23:
                idx = (u * dim + i) * dim + j
            else:
                raise HopfError("placement must be one of 12, 13, 23")
            out[idx] = v
        return Tensor(self.parent, 3, out)

    def apply_delta(self, slot: int) -> "Tensor":
        """Apply the coproduct to one slot, raising the leg count by one."""
        dim = self.parent.dim
        comult = self.parent.comult
        out: dict = {}
        for k, v in self.coeffs.items():
            parts = self._split(k)
            t = comult[parts[slot]]
            for kt, w in t.items():
                a, b = divmod(kt, dim)
                new = parts[:slot] + (a, b) + parts[slot + 1 :]
                idx = 0
                for p in new:
                    idx = idx * dim + p
                c = v * w
                cur = out.get(idx)
                if cur is None:
                    if c:
                        out[idx] = c
                else:
                    c = cur + c
                    if c:
                        out[idx] = c
                    else:
                        del out[idx]
        return Tensor(self.parent, self.legs + 1, out)

    def apply_counit(self, slot: int) -> "Tensor | Elem":
        """Apply the counit to one slot, lowering the leg count by one."""
        dim = self.parent.dim
        counit = self.parent.counit
        out: dict = {}
        for k, v in self.coeffs.items():
            parts = self._split(k)
            e = counit[parts[slot]]
            if not e:
                continue
            rest = parts[:slot] + parts[slot + 1 :]
            idx = 0
            for p in rest:
                idx = idx * dim + p
            c = v * e
            cur = out.get(idx)
            if cur is None:
                out[idx] = c
            else:
                c = cur + c
                if c:
                    out[idx] = c
                else:
                    del out[idx]
        if self.legs == 2:
            return Elem(self.parent, out)
        return Tensor(self.parent, self.legs - 1, out)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        labels = self.parent.labels
        parts = []
        for k, v in sorted(self.coeffs.items()):
            word = " (x) ".join(labels[i] for i in self._split(k))
            parts.append(f"({v!r})*[{word}]")
        return " + ".join(parts)


def _scatter_product(out: dict, parts: list[dict], c, dim: int) -> None:
    """Accumulate c * (parts[0] (x) parts[1] (x) ...) into out."""
    if len(parts) == 2:
        p0, p1 = parts
        for k0, v0 in p0.items():
            base = k0 * dim
            cv0 = c * v0
            for k1, v1 in p1.items():
                w = cv0 * v1
                if not w:
                    continue
                idx = base + k1
                cur = out.get(idx)
                if cur is None:
                    out[idx] = w
                else:
                    w = cur + w
                    if w:
                        out[idx] = w
                    else:
                        del out[idx]
        return
    p0, p1, p2 = parts
    for k0, v0 in p0.items():
        cv0 = c * v0
        for k1, v1 in p1.items():
            base = (k0 * dim + k1) * dim
            cv01 = cv0 * v1
            for k2, v2 in p2.items():
                w = cv01 * v2
                if not w:
                    continue
                idx = base + k2
                cur = out.get(idx)
                if cur is None:
                    out[idx] = w
                else:
                    w = cur + w
                    if w:
                        out[idx] = w
                    else:
                        del out[idx]


# -- coalgebra operations ------------------------------------------------


def delta(a: Elem) -> Tensor:
    """Coproduct, linearly extended from the table."""
    h = a.parent
    out: dict = {}
    for i, c in a.coeffs.items():
        vec_axpy(out, h.comult[i], c)
    return Tensor(h, 2, out)


def counit(a: Elem):
    h = a.parent
    acc = h.field.zero
    for i, c in a.coeffs.items():
        e = h.counit[i]
        if e:
            acc = acc + c * e
    return acc


def antipode(a: Elem) -> Elem:
    h = a.parent
    if h.antipode is None:
        raise NoAntipode(f"{h.name} carries no antipode table")
    out: dict = {}
    for i, c in a.coeffs.items():
        vec_axpy(out, h.antipode[i], c)
    return Elem(h, out)


def delta_op(a: Elem) -> Tensor:
    return delta(a).flip()


def mul_elem(a: Elem, b: Elem) -> Elem:
    return a * b


def mul_t2(s: Tensor, t: Tensor) -> Tensor:
    return s * t


def mul_t3(s: Tensor, t: Tensor) -> Tensor:
    return s * t


def flip(t: Tensor) -> Tensor:
    return t.flip()


def leg(t: Tensor, placement: int) -> Tensor:
    return t.leg(placement)


def dmaps(t: Tensor, which: str) -> Tensor:
    """Apply Delta (x) Id ("left") or Id (x) Delta ("right") to a 2-tensor."""
    if t.legs != 2:
        raise HopfError("dmaps is defined on 2-tensors")
    if which == "left":
        return t.apply_delta(0)
    if which == "right":
        return t.apply_delta(1)
    raise HopfError("which must be 'left' or 'right'")


# -- verification ---------------------------------------------------------


@dataclass
class VerifyReport:
    name: str
    failures: list = dc_field(default_factory=list)
    checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, law: str, witness: str, ok: bool):
        self.checks += 1
        if not ok:
            self.failures.append((law, witness))

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return f"{self.name}: all {self.checks} identities hold"
        lines = [f"{self.name}: {len(self.failures)} violations in {self.checks} checks"]
        for law, witness in self.failures[:20]:
            lines.append(f"  {law} fails at {witness}")
        return "\n".join(lines)


def verify_bialgebra(h: HopfData) -> VerifyReport:
    """Exhaustive check of associativity, unit, coassociativity, counit and
    the morphism properties of the coproduct and counit."""
    rep = VerifyReport(f"bialgebra({h.name})")
    dim = h.dim
    f = h.field
    unit = h.unit()
    labels = h.labels
    basis = [h.basis_elem(i) for i in range(dim)]

    for i in range(dim):
        rep.record("unit.left", labels[i], (unit * basis[i]) == basis[i])
        rep.record("unit.right", labels[i], (basis[i] * unit) == basis[i])

    prod: list[list[Elem]] = [[basis[i] * basis[j] for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            pij = prod[i][j]
            for k in range(dim):
                lhs = pij * basis[k]
                rhs = basis[i] * prod[j][k]
                if lhs != rhs:
                    rep.record("associativity", f"({labels[i]},{labels[j]},{labels[k]})", False)
            rep.checks += dim

    for i in range(dim):
        d = delta(basis[i])
        rep.record("coassociativity", labels[i], d.apply_delta(0) == d.apply_delta(1))
        rep.record("counit.left", labels[i], d.apply_counit(0) == basis[i])
        rep.record("counit.right", labels[i], d.apply_counit(1) == basis[i])

    rep.record("comult.unit", "1", delta(unit) == unit.tensor(unit))
    rep.record("counit.unit", "1", counit(unit) == f.one)
    deltas = [delta(basis[i]) for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            rep.record(
                "comult.morphism",
                f"({labels[i]},{labels[j]})",
                delta(prod[i][j]) == deltas[i] * deltas[j],
            )
            rep.record(
                "counit.morphism",
                f"({labels[i]},{labels[j]})",
                counit(prod[i][j]) == counit(basis[i]) * counit(basis[j]),
            )
    return rep


def verify_hopf(h: HopfData) -> VerifyReport:
    """Bialgebra axioms plus the antipode law m(S (x) Id)Delta = u eps = m(Id (x) S)Delta."""
    rep = verify_bialgebra(h)
    rep.name = f"hopf({h.name})"
    if h.antipode is None:
        rep.record("antipode.present", h.name, False)
        return rep
    unit = h.unit()
    for i in range(h.dim):
        b = h.basis_elem(i)
        d = delta(b)
        target = unit.scaled(counit(b)) if h.counit[i] else h.zero_elem()
        left = _convolve(d, antipode_first=True)
        right = _convolve(d, antipode_first=False)
        rep.record("antipode.left", h.labels[i], left == target)
        rep.record("antipode.right", h.labels[i], right == target)
    return rep


def _convolve(d: Tensor, antipode_first: bool) -> Elem:
    h = d.parent
    dim = h.dim
    out: dict = {}
    for k, v in d.coeffs.items():
        i, j = divmod(k, dim)
        if antipode_first:
            term = Elem(h, h.antipode[i]) * h.basis_elem(j)
        else:
            term = h.basis_elem(i) * Elem(h, h.antipode[j])
        vec_axpy(out, term.coeffs, v)
    return Elem(h, out)


def verify_antipode_antihom(h: HopfData) -> VerifyReport:
    """S(ab) = S(b)S(a) on all basis pairs (a consequence, checked separately)."""
    rep = VerifyReport(f"antipode-antihom({h.name})")
    if h.antipode is None:
        rep.record("antipode.present", h.name, False)
        return rep
    for i in range(h.dim):
        for j in range(h.dim):
            a, b = h.basis_elem(i), h.basis_elem(j)
            rep.record(
                "antipode.antihom",
                f"({h.labels[i]},{h.labels[j]})",
                antipode(a * b) == antipode(b) * antipode(a),
            )
    return rep


def centralizer_of_coproduct(h: HopfData, a: Elem) -> Subspace:
    """{T in H (x) H : T Delta(a) = Delta(a) T} as a subspace of H (x) H."""
    da = delta(a)
    dim2 = h.dim * h.dim
    rows: dict[int, dict] = {}
    for t in range(dim2):
        et = Tensor(h, 2, {t: h.field.one})
        resid = et * da - da * et
        for r, v in resid.coeffs.items():
            rows.setdefault(r, {})[t] = v
    return kernel_of_rows(list(rows.values()), dim2)


def operator_matrix(h: HopfData, op, in_legs: int, out_legs: int) -> SparseMat:
    """Matrix of a linear operator on tensor powers, assembled column by column."""
    dim_in = h.dim**in_legs
    dim_out = h.dim**out_legs
    cols = []
    for t in range(dim_in):
        image = op(Tensor(h, in_legs, {t: h.field.one}))
        cols.append(image.coeffs)
    return SparseMat.from_columns(cols, dim_out)
