"""Bulk set algebra over F_q: membership bitsets, distance sets, product sets.

Sets of field elements are bitsets addressed by canonical element index.
The heavy pair loops (tens of millions of pairs) run over precomputed
index-space tables -- discrete exp/log for multiplication and base-p digit
planes for addition -- so everything stays inside vectorized numpy code.
Budgets are hard limits: an oversized request raises instead of sampling.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, FieldMismatch

DEFAULT_PAIR_BUDGET = 10**9

# rows per block in the pair loops; keeps temporaries in cache-friendly sizes
_ROW_BLOCK = 256

# below this order it is cheaper to precompute full q x q add/sub tables
_PAIR_TABLE_MAX_Q = 2048


class ElemSet:
    """Membership bitset over the canonical element indices [0, q)."""

    __slots__ = ("q", "bits")

    def __init__(self, q: int):
        self.q = q
        self.bits = np.zeros(q, dtype=bool)

    @classmethod
    def from_indices(cls, q: int, indices) -> "ElemSet":
        s = cls(q)
        s.add_array(np.fromiter(indices, dtype=np.int64))
        return s

    @classmethod
    def full_set(cls, q: int) -> "ElemSet":
        s = cls(q)
        s.bits[:] = True
        return s

    def add(self, index: int) -> None:
        # idempotent by construction
        self.bits[index] = True

    def add_array(self, indices) -> None:
        if len(indices):
            self.bits[indices] = True

    def has(self, index: int) -> bool:
        return bool(self.bits[index])

    def __contains__(self, index: int) -> bool:
        return self.has(index)

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElemSet):
            return NotImplemented
        return self.q == other.q and bool(np.array_equal(self.bits, other.bits))

    __hash__ = None  # mutable

    def issubset(self, other: "ElemSet") -> bool:
        if self.q != other.q:
            return False
        return not bool(np.any(self.bits & ~other.bits))

    def complement_witness(self):
        """Smallest index not in the set, or None if the set is all of F_q."""
        if self.bits.all():
            return None
        return int(np.argmin(self.bits))

    def copy(self) -> "ElemSet":
        s = ElemSet(self.q)
        s.bits[:] = self.bits
        return s

    def sha256(self) -> str:
        """Hash of the bitset packed little-endian, for cross-run comparison."""
        packed = np.packbits(self.bits, bitorder="little")
        return hashlib.sha256(packed.tobytes()).hexdigest()

    def to_json(self, include_bits: bool = False) -> dict:
        d = {"q": self.q, "count": self.count, "sha256_of_bitset": self.sha256()}
        witness = self.complement_witness()
        if witness is not None:
            d["missing_witness"] = witness
        if include_bits:
            d["bits_hex"] = np.packbits(self.bits, bitorder="little").tobytes().hex()
        return d

    def __repr__(self):
        return f"ElemSet(q={self.q}, count={self.count})"


def complement_witness(s: ElemSet):
    """Smallest-index element of F_q missing from s, or None if s = F_q."""
    return s.complement_witness()


@dataclass(frozen=True, slots=True)
class Point:
    """A point of F_q^2; both coordinates must live in the same field."""

    x: object
    y: object


def distance(a: Point, b: Point):
    """The algebraic distance (a-b).(a-b); no square root is taken."""
    if a.x.field is not b.x.field and a.x.field.key != b.x.field.key:
        raise FieldMismatch(a.x.field, b.x.field)
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


# ---------------------------------------------------------------------------
# vectorized index-space arithmetic


class FieldTables:
    """Bulk arithmetic on canonical indices of one field.

    exp/log tables give multiplication; per-position base-p digit planes
    give addition and subtraction.  All lookups vectorize over numpy index
    arrays of any shape.
    """

    __slots__ = ("q", "p", "n", "exp", "log", "sq", "negt", "_digits", "_pair")

    def __init__(self, field):
        q, p, n = field.q, field.p, field.n
        self.q = q
        self.p = p
        self.n = n
        self.exp = _exp_table(field)
        log = np.full(q, -1, dtype=np.int64)
        log[self.exp] = np.arange(q - 1, dtype=np.int64)
        self.log = log
        digit_dtype = np.int16 if p < 2**14 else np.int32
        idx = np.arange(q, dtype=np.int64)
        self._digits = np.stack(
            [((idx // p**k) % p).astype(digit_dtype) for k in range(n)]
        )
        sq = np.zeros(q, dtype=np.int64)
        if q > 2:
            ks = np.arange(q - 1, dtype=np.int64)
            sq[self.exp] = self.exp[(2 * ks) % (q - 1)]
        else:
            sq[self.exp] = self.exp  # GF(2): 1^2 = 1
        self.sq = sq
        negt = np.zeros(q, dtype=np.int64)
        for k in range(n):
            negt += ((p - self._digits[k].astype(np.int64)) % p) * p**k
        self.negt = negt
        self._pair = None

    def add(self, a, b):
        ds = self._digits[:, a] + self._digits[:, b]
        ds[ds >= self.p] -= self.p
        return self._compose(ds)

    def sub(self, a, b):
        ds = self._digits[:, a] - self._digits[:, b]
        ds[ds < 0] += self.p
        return self._compose(ds)

    def mul(self, a, b):
        s = (self.log[a] + self.log[b]) % (self.q - 1)
        out = self.exp[s]
        return np.where((np.asarray(a) == 0) | (np.asarray(b) == 0), 0, out)

    def _compose(self, ds):
        out = ds[0].astype(np.int64)
        for k in range(1, self.n):
            out = out + ds[k].astype(np.int64) * self.p**k
        return out

    def pair_tables(self):
        """Full (q, q) add/sub lookup tables; only built for small q."""
        if self._pair is None:
            idx = np.arange(self.q, dtype=np.int64)
            addt = self.add(idx[:, None], idx[None, :])
            subt = self.sub(idx[:, None], idx[None, :])
            self._pair = (addt, subt)
        return self._pair


def _exp_table(field):
    """Indices of g^0 .. g^(q-2) by repeated block-doubling.

    Each doubling step multiplies the known block by the fixed element
    g^filled, which acts linearly on coefficient vectors, so the whole
    table costs O(q n^2) vectorized work instead of q scalar products.
    """
    q = field.q
    exp = np.empty(q - 1, dtype=np.int64)
    exp[0] = field.one.index
    filled = 1
    while filled < q - 1:
        c = field.generator ** filled
        span = min(filled, q - 1 - filled)
        exp[filled : filled + span] = _mul_block_by_const(field, exp[:span], c)
        filled += span
    return exp


def _mul_block_by_const(field, idx_block, c):
    p, n = field.p, field.n
    # matrix of the linear map v -> c*v on coefficient vectors
    m = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        m[:, j] = (c * field.from_index(p**j)).coeffs
    digits = np.empty((n, len(idx_block)), dtype=np.int64)
    tmp = idx_block.astype(np.int64).copy()
    for k in range(n):
        digits[k] = tmp % p
        tmp //= p
    reduced = (m @ digits) % p
    out = reduced[0]
    for k in range(1, n):
        out = out + reduced[k] * p**k
    return out


def get_tables(field) -> FieldTables:
    t = field._tables
    if t is None:
        t = FieldTables(field)
        field._tables = t
    return t


def _accumulate(q, threads, chunks, fill):
    """Run fill(chunk, bits) over row chunks, OR-merging private bitsets.

    The merge is associative, commutative and idempotent, so the result is
    bit-identical for any worker count, including sequential execution.
    """
    chunks = [c for c in chunks if len(c)]
    if threads <= 1 or len(chunks) <= 1:
        bits = np.zeros(q, dtype=bool)
        for ch in chunks:
            fill(ch, bits)
        return bits

    def run(ch):
        b = np.zeros(q, dtype=bool)
        fill(ch, b)
        return b

    with ThreadPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(run, chunks))
    bits = parts[0]
    for b in parts[1:]:
        bits |= b
    return bits


def _stride_chunks(nrows, threads):
    if threads <= 1:
        return [range(nrows)]
    return [range(w, nrows, threads) for w in range(threads)]


def _span_chunks(nrows, threads):
    if threads <= 1:
        return [(0, nrows)]
    cuts = [nrows * w // threads for w in range(threads + 1)]
    return [(cuts[w], cuts[w + 1]) for w in range(threads)]


# ---------------------------------------------------------------------------
# distance sets and product sets


def distance_set_bruteforce(points, budget: int = DEFAULT_PAIR_BUDGET, threads: int = 1) -> ElemSet:
    """Exact distance set over all ordered pairs of the given points.

    Refuses (rather than samples) when len(points)^2 exceeds the budget.
    """
    npts = len(points)
    if npts == 0:
        raise ValueError("empty point list carries no field context")
    if npts * npts > budget:
        raise BudgetExceeded("ordered distance pairs", npts * npts, budget)
    fld = points[0].x.field
    tabs = get_tables(fld)
    q = fld.q
    xs = np.fromiter((pt.x.index for pt in points), dtype=np.int64, count=npts)
    ys = np.fromiter((pt.y.index for pt in points), dtype=np.int64, count=npts)
    sq = tabs.sq

    if q <= _PAIR_TABLE_MAX_Q:
        addt, subt = tabs.pair_tables()

        def fill(span, bits):
            lo, hi = span
            for i0 in range(lo, hi, _ROW_BLOCK):
                i1 = min(i0 + _ROW_BLOCK, hi)
                dx2 = sq[subt[xs[i0:i1, None], xs[None, :]]]
                dy2 = sq[subt[ys[i0:i1, None], ys[None, :]]]
                bits[addt[dx2, dy2].ravel()] = True

    else:

        def fill(span, bits):
            lo, hi = span
            for i0 in range(lo, hi, _ROW_BLOCK):
                i1 = min(i0 + _ROW_BLOCK, hi)
                dx2 = sq[tabs.sub(xs[i0:i1, None], xs[None, :])]
                dy2 = sq[tabs.sub(ys[i0:i1, None], ys[None, :])]
                bits[tabs.add(dx2, dy2).ravel()] = True

    bits = _accumulate(q, threads, _span_chunks(npts, threads), fill)
    out = ElemSet(q)
    out.bits = bits
    return out


def product_set(V, budget: int = DEFAULT_PAIR_BUDGET, threads: int = 1) -> ElemSet:
    """Exact VV = {u*v : u, v in V} for a subspace V.

    Iterates unordered pairs only; u*v = v*u makes that lossless.
    """
    idx = np.fromiter((e.index for e in V.elements), dtype=np.int64, count=len(V.elements))
    m = len(idx)
    if m * m > budget:
        raise BudgetExceeded("ordered product pairs", m * m, budget)
    fld = V.field
    tabs = get_tables(fld)
    q = fld.q
    logs = tabs.log[idx[idx != 0]]
    qm1 = q - 1
    expt = tabs.exp

    def fill(rows, bits):
        for i in rows:
            s = logs[i] + logs[i:]
            s[s >= qm1] -= qm1
            bits[expt[s]] = True

    bits = _accumulate(q, threads, _stride_chunks(len(logs), threads), fill)
    if len(logs) < m:  # 0 in V, hence 0 in VV
        bits[0] = True
    out = ElemSet(q)
    out.bits = bits
    return out


def distance_set_structured(c, threads: int = 1) -> ElemSet:
    """Distance set of the constructed point set via {u^2 - v^2 : u, v in V}.

    Never materializes the point set; cost is one pass over the distinct
    squares of V (at most |V|^2 index operations).
    """
    fld = c.field
    tabs = get_tables(fld)
    q = fld.q
    vidx = np.fromiter((e.index for e in c.V.elements), dtype=np.int64, count=len(c.V.elements))
    squares = np.unique(tabs.sq[vidx])
    ns = len(squares)

    def fill(rows, bits):
        rows = np.asarray(rows, dtype=np.int64)
        mine = squares[rows]
        for j0 in range(0, len(mine), _ROW_BLOCK):
            blk = mine[j0 : j0 + _ROW_BLOCK]
            d = tabs.sub(blk[:, None], squares[None, :])
            bits[d.ravel()] = True

    bits = _accumulate(q, threads, _stride_chunks(ns, threads), fill)
    out = ElemSet(q)
    out.bits = bits
    return out
