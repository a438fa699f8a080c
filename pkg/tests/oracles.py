"""Independent reference implementations used as test oracles.

Everything here is deliberately slow and simple: plain scalar loops and
trial division, sharing no code path with the vectorized implementations
they check.
"""

from itertools import product as iproduct


def scalar_distance_set(points) -> set:
    """Distance-set indices by plain scalar loops over all ordered pairs."""
    out = set()
    for a in points:
        for b in points:
            dx = a.x - b.x
            dy = a.y - b.y
            out.add((dx * dx + dy * dy).index)
    return out


def scalar_product_set(elements) -> set:
    """{u*v} indices by the naive double loop."""
    out = set()
    for u in elements:
        for v in elements:
            out.add((u * v).index)
    return out


def scalar_square_difference_set(elements) -> set:
    """{u^2 - v^2} indices by the naive double loop."""
    out = set()
    for u in elements:
        for v in elements:
            out.add((u * u - v * v).index)
    return out


def element_order(e) -> int:
    """Multiplicative order by stepping powers one at a time."""
    if not e:
        raise ValueError("zero has no multiplicative order")
    one = e.field.one
    cur = e
    k = 1
    while cur != one:
        cur = cur * e
        k += 1
    return k


def poly_divides(g, f, p) -> bool:
    """Long division over Z_p, written from scratch; coefficients low-first."""
    rem = [c % p for c in f]
    dg = len(g) - 1
    lead_inv = pow(g[-1] % p, -1, p)
    for k in range(len(rem) - dg - 1, -1, -1):
        c = (rem[k + dg] * lead_inv) % p
        if c:
            for j, b in enumerate(g):
                rem[k + j] = (rem[k + j] - c * b) % p
    return not any(rem[:dg])


def irreducible_by_trial_division(f, p) -> bool:
    """Monic f irreducible iff no monic divisor of degree 1..deg(f)//2."""
    d = len(f) - 1
    for dd in range(1, d // 2 + 1):
        for tail in iproduct(range(p), repeat=dd):
            if poly_divides(list(tail) + [1], f, p):
                return False
    return True


def grid_points(field):
    """All q^2 points of F_q^2."""
    from fqdist.setalg import Point

    elems = list(field.elements())
    return [Point(x, y) for x in elems for y in elems]


def distance_mask(witness, q) -> int:
    """Distance set of integer-coordinate points over Z_q as a bitmask."""
    mask = 0
    for (a1, b1) in witness:
        for (a2, b2) in witness:
            mask |= 1 << (((a1 - a2) ** 2 + (b1 - b2) ** 2) % q)
    return mask
