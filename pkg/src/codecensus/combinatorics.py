"""Exact integer combinatorics: q-binomials, S(n), group orders, known bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .constants import CertifiedInterval, _mpf_to_fraction
from .field import FieldSpec, prime_power

KINDS = ("permutation", "monomial", "semilinear")


def check_prime_power(q: int) -> int:
    prime_power(q)
    return q


def qbinom(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n; 0 when k is outside [0, n]."""
    if n < 0:
        raise ValueError("n must be >= 0")
    check_prime_power(q)
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    # after step j the accumulator equals qbinom(n - k + j, j), an integer
    acc = 1
    for j in range(1, k + 1):
        num = acc * (q ** (n - k + j) - 1)
        den = q**j - 1
        acc, rem = divmod(num, den)
        assert rem == 0
    return acc


def qbinom_row(n: int, q: int) -> list[int]:
    """[qbinom(n, k, q) for k in 0..n], via the q-Pascal recurrence."""
    check_prime_power(q)
    row = [1]
    for m in range(1, n + 1):
        new = [1] * (m + 1)
        for k in range(1, m):
            new[k] = row[k - 1] + q**k * row[k]
        row = new
    return row


def sum_qbinom(n: int, q: int) -> int:
    """S(n): the number of subspaces of F_q^n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(qbinom_row(n, q))


def group_order(kind: str, n: int, field: FieldSpec) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    kind = normalize_kind(kind)
    order = factorial(n)
    if kind in ("monomial", "semilinear"):
        order *= (field.q - 1) ** n
    if kind == "semilinear":
        order *= field.h
    return order


_ALIASES = {"perm": "permutation", "mono": "monomial", "semi": "semilinear"}


def normalize_kind(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown group kind {kind!r}")
    return kind


@dataclass(frozen=True)
class BoundCheck:
    k: int | None
    value: int
    lower: int
    lower_ok: bool
    upper_ok: bool

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


def check_qbinom_bounds(n: int, q: int, kq: CertifiedInterval) -> list[BoundCheck]:
    """q^{k(n-k)} <= qbinom(n,k) <= q^{k(n-k)} / K_q for every k.

    The upper bound is checked as qbinom * K_q.hi <= q^{k(n-k)}; using the
    upper endpoint of the enclosure keeps the check conservative.
    """
    kq_hi = _mpf_to_fraction(kq.hi)
    out = []
    for k, value in enumerate(qbinom_row(n, q)):
        lower = q ** (k * (n - k))
        out.append(BoundCheck(k, value, lower, lower <= value, value * kq_hi <= lower))
    return out


def check_S_bounds(n: int, q: int, kq: CertifiedInterval, th3: CertifiedInterval) -> BoundCheck:
    """q^{floor(n/2) ceil(n/2)} <= S(n) < (theta3(1/q) + 1) / K_q * q^{...}.

    ``th3`` must enclose theta3(1/q).  Upper bound is checked with the
    lower endpoint of theta3 and the upper endpoint of K_q.
    """
    value = sum_qbinom(n, q)
    power = q ** ((n // 2) * ((n + 1) // 2))
    lhs = value * _mpf_to_fraction(kq.hi)
    rhs = (_mpf_to_fraction(th3.lo) + 1) * power
    return BoundCheck(None, value, power, power <= value, Fraction(lhs) < rhs)
