"""The counterexample family: tower parameters, the subspace V, the set E.

For an odd prime p and r >= 1 the field F_q = GF(p^(6r)) contains the
index-3 subfield F of order p^(2r) and a square root i of -1.  V is a
2-dimensional F-subspace of F_q and E = {(u, i*v) : u, v in V} has exactly
q^(4/3) points.  E itself is only materialized on demand; its distance set
is available through the subspace structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ff
from .errors import BudgetExceeded, DependentBasis, SizeGuard, WrongSubfieldDegree
from .setalg import Point

# largest point count enumerate_E will materialize by default
DEFAULT_ENUM_BUDGET = 2**26


@dataclass(frozen=True)
class Subspace:
    """A 2-dimensional subspace of F_q over the subfield, fully enumerated.

    elements holds all |F|^2 members sorted by canonical index.
    """

    field: ff.ExtField
    subfield: ff.SubfieldHandle
    basis: tuple
    elements: tuple

    def index_list(self) -> list[int]:
        return [e.index for e in self.elements]


def _span_indices(subF, e1, e2):
    """Indices of {a*e1 + b*e2 : a, b in F}, or None on a dependent pair.

    The pair is F-independent exactly when all |F|^2 combinations are
    distinct, so the enumeration doubles as the independence check.
    """
    a_parts = [a * e1 for a in subF.elements]
    b_parts = [b * e2 for b in subF.elements]
    out = set()
    for ae in a_parts:
        for be in b_parts:
            out.add((ae + be).index)
    if len(out) < subF.order**2:
        return None
    return out


def _scan_basis(field, subF):
    # defensive fallback; the default pair (1, root) is always independent
    for i1 in range(1, field.q):
        e1 = field.from_index(i1)
        for i2 in range(i1 + 1, field.q):
            e2 = field.from_index(i2)
            span = _span_indices(subF, e1, e2)
            if span is not None:
                return e1, e2, span
    raise AssertionError("no independent pair exists")


def build_subspace(field: ff.ExtField, subF: ff.SubfieldHandle, basis="auto") -> Subspace:
    """Span two F-independent elements of F_q, enumerating all members.

    basis is either "auto" (the pair (1, x) with x the modulus root,
    falling back to an index-order scan if that pair were ever dependent)
    or an explicit pair of canonical indices.
    """
    if field.n % 3 != 0 or subF.m != field.n // 3:
        raise WrongSubfieldDegree(subF.m, field.n)
    if basis == "auto":
        e1, e2 = field.one, field.root
        span = _span_indices(subF, e1, e2)
        if span is None:
            e1, e2, span = _scan_basis(field, subF)
    else:
        i1, i2 = basis
        e1, e2 = field.from_index(i1), field.from_index(i2)
        span = _span_indices(subF, e1, e2)
        if span is None:
            raise DependentBasis(i1, i2)
    elements = tuple(field.from_index(i) for i in sorted(span))
    return Subspace(field=field, subfield=subF, basis=(e1, e2), elements=elements)


@dataclass(frozen=True)
class Construction:
    """The full object (p, r, F_q, F, i, V); E = {(u, i*v)} stays implicit."""

    p: int
    r: int
    field: ff.ExtField
    subF: ff.SubfieldHandle
    i: ff.FieldElem
    V: Subspace

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size_E(self) -> int:
        return len(self.V.elements) ** 2

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "field": self.field.to_json(),
            "subfield_m": self.subF.m,
            "i_index": self.i.index,
            "basis": [b.index for b in self.V.basis],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Construction":
        field = ff.ExtField.from_json(d["field"])
        p, r = d["p"], d["r"]
        if field.p != p or field.n != 6 * r:
            raise ValueError("field descriptor inconsistent with (p, r)")
        if d["subfield_m"] != 2 * r:
            raise ValueError("subfield degree must be 2r")
        i = field.from_index(d["i_index"])
        if i * i != -field.one:
            raise ValueError("i_index does not square to -1")
        subF = ff.locate_subfield(field, d["subfield_m"])
        V = build_subspace(field, subF, tuple(d["basis"]))
        return cls(p=p, r=r, field=field, subF=subF, i=i, V=V)


def build_construction(p: int, r: int, basis="auto") -> Construction:
    """Assemble the (p, r) instance with q = p^(6r).

    Rejects composite p, q beyond the size guard, and characteristics in
    which -1 has no square root (in particular p = 2).
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if ff.is_prime(p) and p ** (6 * r) > ff.MAX_FIELD_ORDER:
        raise SizeGuard(p ** (6 * r), ff.MAX_FIELD_ORDER)
    field = ff.ExtField(p, 6 * r)
    i = ff.sqrt_minus_one(field)
    subF = ff.locate_subfield(field, 2 * r)
    V = build_subspace(field, subF, basis)
    if len(V.elements) != p ** (4 * r):
        raise AssertionError("|V| != p^(4r)")
    return Construction(p=p, r=r, field=field, subF=subF, i=i, V=V)


def enumerate_E(c: Construction, budget: int = DEFAULT_ENUM_BUDGET) -> list[Point]:
    """All |V|^2 points (u, i*v) in (index of u, index of v) order.

    Oversized requests raise; callers should use the structured distance
    path instead of materializing E.
    """
    m = len(c.V.elements)
    if m * m > budget:
        raise BudgetExceeded("E points", m * m, budget)
    iv = [c.i * v for v in c.V.elements]
    return [Point(u, w) for u in c.V.elements for w in iv]
