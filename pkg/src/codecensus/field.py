"""Table-driven arithmetic in small finite fields GF(p^h).

Elements are plain ints in ``range(q)``.  An element's index is the base-p
encoding of its polynomial representative: ``sum(c_i * p**i)`` for
``c_0 + c_1 x + ... + c_{h-1} x^{h-1}``.  So 0 is zero, 1 is one and, for
h > 1, ``p`` is the class of ``x``.

The modulus for each (p, h) is the monic irreducible of degree h whose lower
coefficients have the smallest base-p encoding (GF(4): x^2+x+1, GF(8):
x^3+x+1, GF(9): x^2+1).  This fixes element indices across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

MAX_ORDER = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, h) with q = p**h, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    h, r = 0, q
    while r % p == 0:
        r //= p
        h += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, h


# -- polynomial helpers over GF(p); coefficient lists, lowest degree first --

def _poly_mulmod(a, b, mod, p):
    h = len(mod) - 1
    out = [0] * (2 * h - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # mod is monic
    for d in range(len(out) - 1, h - 1, -1):
        c = out[d]
        if c:
            for i in range(h + 1):
                out[d - h + i] = (out[d - h + i] - c * mod[i]) % p
    return out[:h]


def _is_irreducible(mod, p) -> bool:
    """True iff the monic polynomial ``mod`` is irreducible over GF(p).

    Brute force: no monic factor of degree 1..h//2 divides it.
    """
    h = len(mod) - 1
    for d in range(1, h // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            rem = list(mod)
            for top in range(h, d - 1, -1):
                c = rem[top]
                if c:
                    for i in range(d + 1):
                        rem[top - d + i] = (rem[top - d + i] - c * div[i]) % p
            if not any(rem[:d]):
                return False
    return True


def _encode(coeffs, p) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


def _decode(x: int, p: int, h: int) -> list[int]:
    out = []
    for _ in range(h):
        out.append(x % p)
        x //= p
    return out


def irreducible_modulus(p: int, h: int) -> tuple[int, ...]:
    """First monic irreducible of degree h over GF(p), coefficients low to high."""
    if h == 1:
        return (0, 1)
    for code in range(p**h):
        mod = _decode(code, p, h) + [1]
        if mod[0] == 0:
            continue
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    h: int
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...] = field(repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False)
    neg_table: tuple[int, ...] = field(repr=False)
    inv_table: tuple[int, ...] = field(repr=False)
    frob_table: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.h

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.h) == (other.p, other.h)

    def __hash__(self):
        return hash((self.p, self.h))

    def __str__(self):
        return f"GF({self.q})"

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def make_field(p: int, h: int = 1, max_order: int = MAX_ORDER) -> FieldSpec:
    """Build GF(p^h) with full lookup tables."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if h < 1:
        raise ValueError(f"extension degree must be >= 1, got {h}")
    q = p**h
    if q > max_order:
        raise ValueError(f"field order {q} exceeds ceiling {max_order}")

    mod = irreducible_modulus(p, h)
    polys = [_decode(x, p, h) for x in range(q)]
    add = tuple(
        tuple(_encode([(a + b) % p for a, b in zip(polys[x], polys[y])], p) for y in range(q))
        for x in range(q)
    )
    if h == 1:
        mul = tuple(tuple(x * y % p for y in range(q)) for x in range(q))
    else:
        mul = tuple(
            tuple(_encode(_poly_mulmod(polys[x], polys[y], mod, p), p) for y in range(q))
            for x in range(q)
        )
    neg = tuple(row.index(0) for row in add)
    inv = tuple([0] + [mul[x].index(1) for x in range(1, q)])

    frob = [tuple(range(q))]
    for _ in range(1, h):
        prev = frob[-1]
        frob.append(tuple(_pow(mul, prev[x], p) for x in range(q)))
    return FieldSpec(p, h, mod, add, mul, neg, inv, tuple(frob))


def field_of_order(q: int) -> FieldSpec:
    p, h = prime_power(q)
    return make_field(p, h)


def _pow(mul, a: int, e: int) -> int:
    r = 1
    for _ in range(e):
        r = mul[r][a]
    return r


def add(f: FieldSpec, a: int, b: int) -> int:
    return f.add_table[a][b]


def sub(f: FieldSpec, a: int, b: int) -> int:
    return f.add_table[a][f.neg_table[b]]


def neg(f: FieldSpec, a: int) -> int:
    return f.neg_table[a]


def mul(f: FieldSpec, a: int, b: int) -> int:
    return f.mul_table[a][b]


def inv(f: FieldSpec, a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("inverse of zero in " + str(f))
    return f.inv_table[a]


def power(f: FieldSpec, a: int, e: int) -> int:
    if e < 0:
        return power(f, inv(f, a), -e)
    return _pow(f.mul_table, a, e)


def frobenius(f: FieldSpec, e: int, a: int) -> int:
    """a ** (p ** e) for 0 <= e < h."""
    if not 0 <= e < f.h:
        raise ValueError(f"Frobenius exponent {e} outside [0, {f.h})")
    return f.frob_table[e][a]


def units(f: FieldSpec) -> list[int]:
    return list(range(1, f.q))


def multiplicative_order(f: FieldSpec, a: int) -> int:
    if a == 0:
        raise ValueError("zero has no multiplicative order")
    r, k = a, 1
    while r != 1:
        r = f.mul_table[r][a]
        k += 1
    return k


def primitive_element(f: FieldSpec) -> int:
    """Smallest-index generator of the unit group."""
    for a in range(1, f.q):
        if multiplicative_order(f, a) == f.q - 1:
            return a
    raise AssertionError("unit group is cyclic")  # pragma: no cover
