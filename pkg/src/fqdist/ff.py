"""Exact arithmetic in prime fields Z_p and extensions GF(p^n).

Elements are coefficient vectors over Z_p reduced modulo a monic
irreducible polynomial.  Every context is deterministic: the modulus is
the lexicographically smallest irreducible of its degree, the generator
is the lowest-index element of full multiplicative order, and the
canonical index of an element is the base-p value of its coefficient
vector.  That index addresses the bitsets used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    FieldMismatch,
    NoSqrtMinusOne,
    NotADivisor,
    NotPrime,
    SizeGuard,
    ZeroInverse,
)
from .setalg import ElemSet

MAX_FIELD_ORDER = 2**31


def is_prime(n: int) -> bool:
    """Deterministic trial division; plenty for n <= 2^31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m, ascending."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# polynomials over Z_p: lists of ints in [0, p), constant term first,
# trailing zeros stripped; [] is the zero polynomial


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pdeg(f):
    return len(f) - 1


def _psub(f, g, p):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return _ptrim(out)


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _ptrim([c % p for c in out])


def _pdivmod(f, g, p):
    """Quotient and remainder of f by nonzero g."""
    f = list(f)
    dg = _pdeg(g)
    lead_inv = pow(g[-1], -1, p)
    quot = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - dg - 1, -1, -1):
        c = (f[k + dg] * lead_inv) % p
        if c:
            quot[k] = c
            for j, b in enumerate(g):
                f[k + j] = (f[k + j] - c * b) % p
    return _ptrim(quot), _ptrim(f[:dg])


def _pgcd(f, g, p):
    """Monic gcd."""
    a, b = list(f), list(g)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(f, e, mod, p):
    """f^e mod (mod, p) by square and multiply."""
    result = [1]
    base = _pdivmod(f, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def is_irreducible(f, p: int) -> bool:
    """Irreducibility of a monic polynomial over Z_p.

    Uses the Frobenius-power criterion: f of degree d is irreducible iff
    x^(p^d) = x (mod f) and gcd(x^(p^(d/l)) - x, f) = 1 for every prime
    l dividing d.
    """
    f = _ptrim([c % p for c in f])
    d = _pdeg(f)
    if d < 1:
        raise ValueError("degree must be at least 1")
    if f[-1] != 1:
        raise ValueError("polynomial must be monic")
    x = [0, 1]
    xr = _pdivmod(x, f, p)[1]
    frob = xr
    frob_at = {}
    needed = {d // l for l in prime_factors(d)}
    for j in range(1, d + 1):
        frob = _ppowmod(frob, p, f, p)
        if j in needed:
            frob_at[j] = frob
    if frob != xr:
        return False
    for k in needed:
        g = _pgcd(_psub(frob_at[k], x, p), f, p)
        if _pdeg(g) != 0:
            return False
    return True


def _digits(t: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        t, rem = divmod(t, p)
        out.append(rem)
    return out


def find_irreducible(p: int, n: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree n over Z_p.

    Candidates are ordered by the base-p value of their coefficient vector
    (constant term first), so the result is identical across runs and
    platforms.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    for t in range(p**n):
        f = _digits(t, p, n) + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------
# field contexts and elements


class ExtField:
    """Arithmetic context for GF(p^n): modulus, generator, element indexing.

    Immutable after construction; all operations are pure.
    """

    __slots__ = ("p", "n", "q", "modulus", "generator", "key", "_red", "_tables")

    def __init__(self, p: int, n: int = 1, modulus=None, generator_index=None):
        if not is_prime(p):
            raise NotPrime(p)
        if n < 1:
            raise ValueError("extension degree must be positive")
        q = p**n
        if q > MAX_FIELD_ORDER:
            raise SizeGuard(q, MAX_FIELD_ORDER)
        self.p = p
        self.n = n
        self.q = q
        if modulus is None:
            modulus = find_irreducible(p, n)
        else:
            modulus = [c % p for c in modulus]
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree n")
            if not is_irreducible(modulus, p):
                raise ValueError("modulus is not irreducible over Z_p")
        self.modulus = tuple(modulus)
        self.key = (p, n, self.modulus)
        self._red = self._reduction_rows()
        self._tables = None
        self.generator = None
        if generator_index is None:
            self.generator = find_generator(self)
        else:
            g = self.from_index(generator_index)
            if not _has_full_order(g):
                raise ValueError(
                    f"element #{generator_index} does not generate the multiplicative group"
                )
            self.generator = g

    def _reduction_rows(self):
        # row k holds the coefficients of x^(n+k) mod modulus, k = 0..n-2
        p, n = self.p, self.n
        rows = []
        r = [(-c) % p for c in self.modulus[:n]]
        rows.append(tuple(r))
        for _ in range(n - 2):
            top = r[n - 1]
            r = [0] + r[: n - 1]
            if top:
                base = rows[0]
                r = [(r[t] + top * base[t]) % p for t in range(n)]
            rows.append(tuple(r))
        return rows

    # -- element constructors

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, (0,) * self.n)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, (1,) + (0,) * (self.n - 1))

    @property
    def root(self) -> "FieldElem":
        """The adjoined root of the modulus (the class of x)."""
        if self.n < 2:
            raise ValueError("prime fields adjoin no root")
        return FieldElem(self, (0, 1) + (0,) * (self.n - 2))

    def element(self, coeffs) -> "FieldElem":
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.n:
            raise ValueError("too many coefficients")
        coeffs += [0] * (self.n - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    def from_int(self, k: int) -> "FieldElem":
        return FieldElem(self, (k % self.p,) + (0,) * (self.n - 1))

    def from_index(self, index: int) -> "FieldElem":
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range [0, {self.q})")
        return FieldElem(self, tuple(_digits(index, self.p, self.n)))

    def elements(self):
        """All q elements in index order (meant for small fields)."""
        for i in range(self.q):
            yield self.from_index(i)

    # -- coefficient arithmetic (internal)

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p, n = self.p, self.n
        if n == 1:
            return ((a[0] * b[0]) % p,)
        conv = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        out = [c % p for c in conv[:n]]
        for k in range(n - 1):
            c = conv[n + k] % p
            if c:
                row = self._red[k]
                for t in range(n):
                    out[t] = (out[t] + c * row[t]) % p
        return tuple(out)

    def _inv(self, a):
        # extended Euclid against the (irreducible) modulus
        p = self.p
        r0, r1 = list(self.modulus), _ptrim(list(a))
        if not r1:
            raise ZeroInverse()
        t0, t1 = [], [1]
        while _pdeg(r1) > 0:
            quot, rem = _pdivmod(r0, r1, p)
            r0, r1 = r1, rem
            t0, t1 = t1, _psub(t0, _pmul(quot, t1, p), p)
        c_inv = pow(r1[0], -1, p)
        out = [(c * c_inv) % p for c in t1]
        out += [0] * (self.n - len(out))
        return tuple(out)

    # -- serialization

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus),
            "generator_index": self.generator.index,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ExtField":
        return cls(
            d["p"], d["n"], modulus=d["modulus"], generator_index=d["generator_index"]
        )

    def __eq__(self, other):
        return isinstance(other, ExtField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"ExtField(p={self.p}, n={self.n}, q={self.q})"


class FieldElem:
    """One element of an ExtField, stored as a reduced coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    @property
    def index(self) -> int:
        """Base-p value of the coefficient vector; bijective onto [0, q)."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.p + c
        return out

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field.key != self.field.key:
                raise FieldMismatch(self.field, other.field)
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._sub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._sub(o.coeffs, self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field._neg(self.coeffs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def inv(self) -> "FieldElem":
        return FieldElem(self.field, self.field._inv(self.coeffs))

    def __pow__(self, e: int) -> "FieldElem":
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base = self.inv()
            e = -e
        result = self.field.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"<GF({self.field.q})#{self.index}>"


def make_prime_field(p: int) -> ExtField:
    """The prime field Z_p (errors on composite p)."""
    return ExtField(p, 1)


def _has_full_order(e: FieldElem) -> bool:
    q = e.field.q
    one = e.field.one
    if not e:
        return False
    if e ** (q - 1) != one:
        return False
    return all(e ** ((q - 1) // l) != one for l in prime_factors(q - 1))


def find_generator(field: ExtField) -> FieldElem:
    """Lowest-index element whose multiplicative order is q - 1."""
    q = field.q
    cofactors = [(q - 1) // l for l in prime_factors(q - 1)]
    one = field.one
    for idx in range(1, q):
        e = field.from_index(idx)
        if all(e**c != one for c in cofactors):
            return e
    raise AssertionError("unreachable: every finite field is cyclic")


@dataclass(frozen=True)
class SubfieldHandle:
    """The subfield of order p^m located inside GF(p^n), m | n.

    members = {0} union {g^(k*step)}; elements is the same set as a tuple
    sorted by canonical index.
    """

    m: int
    order: int
    step: int
    members: ElemSet
    elements: tuple


def locate_subfield(field: ExtField, m: int) -> SubfieldHandle:
    """Locate the order-p^m subfield as generator powers of stride step."""
    if m < 1 or field.n % m != 0:
        raise NotADivisor(m, field.n)
    order = field.p**m
    step = (field.q - 1) // (order - 1)
    s = field.generator**step
    elems = [field.zero, field.one]
    cur = field.one
    for _ in range(order - 2):
        cur = cur * s
        elems.append(cur)
    idxs = sorted(e.index for e in elems)
    if len(set(idxs)) != order:
        raise AssertionError("subfield enumeration produced duplicates")
    return SubfieldHandle(
        m=m,
        order=order,
        step=step,
        members=ElemSet.from_indices(field.q, idxs),
        elements=tuple(field.from_index(i) for i in idxs),
    )


def frobenius(a: FieldElem, m: int) -> FieldElem:
    """The m-fold Frobenius power a^(p^m)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return a ** (a.field.p**m)


def sqrt_minus_one(field: ExtField) -> FieldElem:
    """A square root of -1: g^((q-1)/4), negated if that lowers the index.

    The two roots give identical downstream sets (the point set is
    permuted), so the tie-break is cosmetic but fixed for determinism.
    """
    q = field.q
    if (q - 1) % 4 != 0:
        raise NoSqrtMinusOne(q)
    c = field.generator ** ((q - 1) // 4)
    d = -c
    i = c if c.index < d.index else d
    if i * i != -field.one:
        raise AssertionError("generator order is inconsistent")
    return i
