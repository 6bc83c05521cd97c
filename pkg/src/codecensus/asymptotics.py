"""Log-domain asymptotic estimates and the dimension-family growth classifier."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor, log
from typing import NamedTuple, Sequence

from mpmath import iv, mp, mpf, nstr

from .combinatorics import normalize_kind, qbinom, sum_qbinom
from .constants import (
    DEFAULT_DIGITS,
    GUARD_DIGITS,
    CertifiedInterval,
    Kq_truncated,
    euler_Kq,
    iv_workdps,
    theta2,
    theta3,
)
from .field import prime_power


@dataclass(frozen=True)
class LogQValue:
    """The positive real q ** logq; ``logq_enclosure`` certifies logq."""

    q: int
    logq: mpf
    logq_enclosure: CertifiedInterval | None = None
    digits: int = DEFAULT_DIGITS

    def value(self) -> mpf:
        with mp.workdps(self.digits + GUARD_DIGITS):
            return mpf(self.q) ** self.logq

    def decimal(self, digits: int | None = None) -> str:
        return nstr(self.value(), digits or self.digits)

    def ratio(self, exact) -> mpf:
        """exact / (q ** logq), computed in log domain so huge counts are fine."""
        exact = Fraction(exact)
        with mp.workdps(self.digits + GUARD_DIGITS):
            log_exact = mp.log(exact.numerator) - mp.log(exact.denominator)
            return mp.exp(log_exact - self.logq * mp.log(self.q))

    def __mul__(self, other: "LogQValue") -> "LogQValue":
        if other.q != self.q:
            raise ValueError("bases differ")
        with mp.workdps(max(self.digits, other.digits) + GUARD_DIGITS):
            return LogQValue(self.q, self.logq + other.logq, None, max(self.digits, other.digits))

    def __truediv__(self, other: "LogQValue") -> "LogQValue":
        with mp.workdps(max(self.digits, other.digits) + GUARD_DIGITS):
            return self * LogQValue(other.q, -other.logq, None, other.digits)


def _tol(digits: int):
    return mpf(10) ** (-(digits + GUARD_DIGITS // 2))


def _make(q, log_iv, digits) -> LogQValue:
    enc = CertifiedInterval.from_iv(log_iv, "log_q")
    return LogQValue(q, enc.mid, enc, digits)


def _log_q(x, q):
    """log base q of a positive interval."""
    return iv.log(x) / iv.log(iv.mpf(q))


def _log_factorial(n: int):
    return iv.log(iv.mpf(factorial(n)))


def estimate_qbinom(n: int, k: int, q: int, digits: int = DEFAULT_DIGITS) -> LogQValue:
    """q^{k(n-k)} / K_q(k)."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    with iv_workdps(digits + GUARD_DIGITS):
        kqk = Kq_truncated(q, k, _tol(digits)).iv
        val = k * (n - k) - _log_q(kqk, q)
        return _make(q, val, digits)


class RatioReport(NamedTuple):
    exact: Fraction
    asymptotic: LogQValue


def ratio_to_central(n: int, k: int, q: int, digits: int = DEFAULT_DIGITS) -> RatioReport:
    """qbinom(n,k)/qbinom(n, n//2) next to K_q/K_q(k) q^{-(n//2-k)(ceil(n/2)-k)}."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    lo, hi = n // 2, (n + 1) // 2
    exact = Fraction(qbinom(n, k, q), qbinom(n, lo, q))
    with iv_workdps(digits + GUARD_DIGITS):
        tol = _tol(digits)
        ratio = euler_Kq(q, tol).iv / Kq_truncated(q, k, tol).iv
        val = _log_q(ratio, q) - (lo - k) * (hi - k)
        return RatioReport(exact, _make(q, val, digits))


class LimitReport(NamedTuple):
    exact: Fraction
    limit: CertifiedInterval


def central_ratio_to_power(n: int, q: int, digits: int = DEFAULT_DIGITS) -> LimitReport:
    """qbinom(n, n//2) / q^{floor(n/2) ceil(n/2)}, with its limit 1/K_q."""
    exact = Fraction(qbinom(n, n // 2, q), q ** ((n // 2) * ((n + 1) // 2)))
    with iv_workdps(digits + GUARD_DIGITS):
        limit = 1 / euler_Kq(q, _tol(digits)).iv
        return LimitReport(exact, CertifiedInterval.from_iv(limit, f"1/K_{q}"))


def _resolve_h(q: int, h: int | None) -> int:
    p, true_h = prime_power(q)
    if h is not None and h != true_h:
        raise ValueError(f"q = {q} = {p}^{true_h}, not {p}^{h}")
    return true_h


def _group_log_divisor(kind: str, n: int, q: int, h: int):
    """log_q of n!, n!(q-1)^{n-1} or h n!(q-1)^{n-1}."""
    kind = normalize_kind(kind)
    out = _log_factorial(n) / iv.log(iv.mpf(q))
    if kind != "permutation":
        out += (n - 1) * _log_q(iv.mpf(q - 1), q)
    if kind == "semilinear" and h > 1:
        out += _log_q(iv.mpf(h), q)
    return out


def estimate_class_count(
    kind: str, n: int, k: int, q: int, h: int | None = None, digits: int = DEFAULT_DIGITS
) -> LogQValue:
    """q^{k(n-k)} / (K_q |G| / |scalars|): the large-n class count in G(k, n)."""
    h = _resolve_h(q, h)
    if not 0 <= k <= n or n < 1:
        raise ValueError("need 0 <= k <= n and n >= 1")
    with iv_workdps(digits + GUARD_DIGITS):
        kq = euler_Kq(q, _tol(digits)).iv
        val = k * (n - k) - _log_q(kq, q) - _group_log_divisor(kind, n, q, h)
        return _make(q, val, digits)


def d1(q: int, digits: int = DEFAULT_DIGITS) -> CertifiedInterval:
    """theta2(1/q) / K_q: the odd-length constant for S(n)."""
    with iv_workdps(digits + GUARD_DIGITS):
        tol = _tol(digits)
        return CertifiedInterval.from_iv(
            theta2(Fraction(1, q), tol).iv / euler_Kq(q, tol).iv, f"d1({q})"
        )


def d2(q: int, digits: int = DEFAULT_DIGITS) -> CertifiedInterval:
    """theta3(1/q) / K_q: the even-length constant for S(n)."""
    with iv_workdps(digits + GUARD_DIGITS):
        tol = _tol(digits)
        return CertifiedInterval.from_iv(
            theta3(Fraction(1, q), tol).iv / euler_Kq(q, tol).iv, f"d2({q})"
        )


def estimate_S(n: int, q: int, digits: int = DEFAULT_DIGITS) -> LogQValue:
    """d2 q^{m^2} for n = 2m, d1 q^{(m+1/2)^2} for n = 2m+1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    m, odd = divmod(n, 2)
    with iv_workdps(digits + GUARD_DIGITS):
        if odd:
            const = d1(q, digits).iv
            power = iv.mpf(m) * (m + 1) + iv.mpf(0.25)
        else:
            const = d2(q, digits).iv
            power = iv.mpf(m * m)
        return _make(q, power + _log_q(const, q), digits)


def estimate_total_classes(
    kind: str,
    n: int,
    q: int,
    h: int | None = None,
    digits: int = DEFAULT_DIGITS,
    asymptotic_S: bool = False,
) -> LogQValue:
    """S(n) / n!, S(n) / (n!(q-1)^{n-1}) or S(n) / (h n!(q-1)^{n-1})."""
    h = _resolve_h(q, h)
    if n < 1:
        raise ValueError("n must be >= 1")
    with iv_workdps(digits + GUARD_DIGITS):
        if asymptotic_S:
            log_s = estimate_S(n, q, digits).logq_enclosure.iv
        else:
            log_s = _log_q(iv.mpf(sum_qbinom(n, q)), q)
        return _make(q, log_s - _group_log_divisor(kind, n, q, h), digits)


# -- condition on k(n) --------------------------------------------------------

class StarStatus(enum.Enum):
    SATISFIED = "Satisfied"
    NOT_SATISFIED = "NotSatisfied"
    UNKNOWN = "UnknownDependsOnConstants"


@dataclass(frozen=True)
class Growth:
    """delta(n) = n^2/4 - k(n)(n - k(n)) grows like n^power (log n)^log_power;
    ``bounded`` overrides both."""

    power: Fraction = Fraction(0)
    log_power: Fraction = Fraction(0)
    bounded: bool = False


def _in_range(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"k({n}) = {k} falls outside [0, {n}]")
    return k


class DimensionFamily:
    def evaluate(self, n: int) -> int:
        raise NotImplementedError

    def growth(self) -> Growth | None:
        return None

    def delta(self, n: int) -> Fraction:
        k = self.evaluate(n)
        return Fraction(n * n, 4) - k * (n - k)


@dataclass(frozen=True)
class HalfFloorMinusConst(DimensionFamily):
    r: int

    def evaluate(self, n):
        return _in_range(n, n // 2 - self.r)

    def growth(self):
        return Growth(bounded=True)


@dataclass(frozen=True)
class HalfCeilPlusConst(DimensionFamily):
    r: int

    def evaluate(self, n):
        return _in_range(n, (n + 1) // 2 + self.r)

    def growth(self):
        return Growth(bounded=True)


@dataclass(frozen=True)
class HalfMinusPowerLog(DimensionFamily):
    """k(n) = floor(n/2) - floor(n^alpha (log n)^beta)."""

    alpha: Fraction
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not 0 <= self.alpha < 1:
            raise ValueError("alpha must lie in [0, 1)")

    def evaluate(self, n):
        if n < 2:
            return n // 2
        ell = n ** float(self.alpha) * log(n) ** float(self.beta)
        return _in_range(n, n // 2 - floor(ell))

    def growth(self):
        # delta ~ ell(n)^2
        return Growth(2 * self.alpha, 2 * self.beta)


@dataclass(frozen=True)
class ConstantDim(DimensionFamily):
    alpha: int

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("dimension must be >= 0")

    def evaluate(self, n):
        return _in_range(n, self.alpha)

    def growth(self):
        return Growth(Fraction(2))


@dataclass(frozen=True)
class LinearFraction(DimensionFamily):
    """k(n) = floor(lambda n), 0 < lambda < 1/2."""

    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if not 0 < self.lam < Fraction(1, 2):
            raise ValueError("lambda must lie in (0, 1/2)")

    def evaluate(self, n):
        return floor(self.lam * n)

    def growth(self):
        return Growth(Fraction(2))


@dataclass(frozen=True)
class Tabulated(DimensionFamily):
    values: Sequence[int]
    start: int = 0

    def evaluate(self, n):
        return self.values[n - self.start]


def star_classify(family: DimensionFamily) -> StarStatus:
    """Decide the growth condition from the family's symbolic delta(n).

    delta bounded or o(n): satisfied for every positive epsilon.
    delta / n -> infinity: violated.  delta = Theta(n): depends on the
    (non-explicit) constants, so unknown.
    """
    g = family.growth()
    if g is None:
        return StarStatus.UNKNOWN
    if g.bounded or g.power < 1 or (g.power == 1 and g.log_power < 0):
        return StarStatus.SATISFIED
    if g.power > 1 or g.log_power > 0:
        return StarStatus.NOT_SATISFIED
    return StarStatus.UNKNOWN
