"""Cobar complex of a bialgebra with trivial coefficients.

The degree-n differential alternates a unit insertion on the left, the
coproduct applied in each slot, and a unit insertion on the right:
b1(x) = 1 (x) x - Delta(x) + x (x) 1, and so on.  Cocycles and coboundaries
are plain kernel/image computations over the exact field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hopf import Elem, HopfData, HopfError, Tensor, VerifyReport
from .linalg import SparseMat, Subspace, kernel, solve


class UnsupportedDegree(HopfError):
    pass


@dataclass
class CobarDifferential:
    degree: int
    matrix: SparseMat  # (dim H)^(n+1)-coordinate rows, (dim H)^n columns


def _bn_image(h: HopfData, n: int, t: Tensor) -> Tensor:
    """Value of the degree-n differential on an n-tensor."""
    dim = h.dim
    u = h.unit_index
    f = h.field
    # left unit insertion
    out: dict = {}
    for k, v in t.coeffs.items():
        out[u * (dim**n) + k] = v
    acc = Tensor(h, n + 1, out)
    sign = -f.one
    for slot in range(n):
        acc = acc + t.apply_delta(slot).scaled(sign)
        sign = -sign
    # right unit insertion carries sign (-1)^(n+1)
    out2: dict = {}
    for k, v in t.coeffs.items():
        out2[k * dim + u] = v
    tail = Tensor(h, n + 1, out2)
    return acc + (tail.scaled(sign))


def b_apply(h: HopfData, n: int, t: Tensor) -> Tensor:
    if n < 1:
        raise UnsupportedDegree("the differential is exposed for degree >= 1")
    if t.legs != n:
        raise HopfError("tensor legs must match the degree")
    return _bn_image(h, n, t)


def b1_elem(h: HopfData, a: Elem) -> Tensor:
    """1 (x) a - Delta(a) + a (x) 1."""
    return b_apply(h, 1, Tensor(h, 1, dict(a.coeffs)))


def b_matrix(h: HopfData, n: int) -> CobarDifferential:
    """Exact matrix of the degree-n differential in the tensor-power bases."""
    if n < 1:
        raise UnsupportedDegree("degree must be >= 1")
    f = h.field
    dim_in = h.dim**n
    dim_out = h.dim ** (n + 1)
    cols = []
    for t in range(dim_in):
        img = _bn_image(h, n, Tensor(h, n, {t: f.one}))
        cols.append(img.coeffs)
    return CobarDifferential(n, SparseMat.from_columns(cols, dim_out))


def cocycles(h: HopfData, n: int) -> Subspace:
    """Z^n = ker(b^n)."""
    if n not in (1, 2):
        raise UnsupportedDegree("cocycles computed for degrees 1 and 2")
    return kernel(b_matrix(h, n).matrix)


def coboundaries(h: HopfData, n: int) -> Subspace:
    """B^n = im(b^(n-1)); B^1 = 0."""
    if n not in (1, 2):
        raise UnsupportedDegree("coboundaries computed for degrees 1 and 2")
    if n == 1:
        return Subspace(h.dim, (), ())
    f = h.field
    cols = []
    for t in range(h.dim):
        cols.append(_bn_image(h, 1, Tensor(h, 1, {t: f.one})).coeffs)
    return Subspace.from_vectors(cols, h.dim**2)


def h_dim(h: HopfData, n: int) -> int:
    z = cocycles(h, n)
    b = coboundaries(h, n)
    for row in b.rows:
        if not z.contains(dict(row)):
            raise HopfError("coboundary outside the cocycle space: broken complex")
    return z.dim - b.dim


def coboundary_preimage(h: HopfData, t: Tensor) -> Elem | None:
    """Some a with b1(a) = t when t is a coboundary, canonical solve."""
    if t.legs != 2:
        raise HopfError("preimage is defined for 2-tensors")
    f = h.field
    dim2 = h.dim * h.dim
    rows: dict[int, dict] = {}
    for c in range(h.dim):
        img = _bn_image(h, 1, Tensor(h, 1, {c: f.one}))
        for r, v in img.coeffs.items():
            rows.setdefault(r, {})[c] = v
    row_list, rhs = [], {}
    keys = sorted(set(rows) | set(t.coeffs))
    for i, r in enumerate(keys):
        row_list.append(rows.get(r, {}))
        v = t.coeffs.get(r)
        if v is not None:
            rhs[i] = v
    sol = solve(row_list, h.dim, rhs)
    if sol is None:
        return None
    a = Elem(h, sol)
    if b1_elem(h, a) != t:
        raise HopfError("inconsistent preimage solve")
    return a


def en_z2_decomposition(h: HopfData) -> dict:
    """Check Z^2 = B^2 (+) span{g x_i (x) x_l, l >= i} for the sign family."""
    fam = h.family
    if fam is None or fam.kind != "en":
        raise HopfError("decomposition report is specific to E(n)")
    n = fam.params[0]
    z2 = cocycles(h, 2)
    b2 = coboundaries(h, 2)
    g = h.gen("g")
    span_vecs = []
    for i in range(1, n + 1):
        for l in range(i, n + 1):
            t = (g * h.gen(f"x{i}")).tensor(h.gen(f"x{l}"))
            span_vecs.append(t.coeffs)
    ispace = Subspace.from_vectors(span_vecs, h.dim**2)
    expected_i = n * (n + 1) // 2
    in_z2 = all(z2.contains(dict(v)) for v in span_vecs)
    meet = b2.intersect(ispace)
    join = b2.sum(ispace)
    report = {
        "n": n,
        "dim_z2": z2.dim,
        "dim_b2": b2.dim,
        "dim_i": ispace.dim,
        "i_inside_z2": in_z2,
        "i_meets_b2_trivially": meet.dim == 0,
        "direct_sum_is_z2": join == z2,
        "dimension_identity": z2.dim == b2.dim + expected_i,
        "ok": False,
    }
    report["ok"] = (
        report["i_inside_z2"]
        and report["i_meets_b2_trivially"]
        and report["direct_sum_is_z2"]
        and report["dimension_identity"]
        and ispace.dim == expected_i
    )
    return report


def complex_property_report(h: HopfData, max_degree: int = 2) -> VerifyReport:
    """b^(n+1) . b^n = 0, checked on every basis tensor up to max_degree."""
    rep = VerifyReport(f"cobar-complex({h.name})")
    f = h.field
    for n in range(1, max_degree + 1):
        dim_in = h.dim**n
        for t in range(dim_in):
            img = _bn_image(h, n, Tensor(h, n, {t: f.one}))
            rep.record(f"b{n+1}b{n}", str(t), not _bn_image(h, n + 1, img).coeffs)
    return rep
