"""Certified enclosures of K_q, its truncations, and the Jacobi theta constants.

Everything is evaluated in mpmath's interval context with outward rounding;
series truncation errors are added as explicit tail intervals.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from mpmath import iv, mp, mpf, nstr

DEFAULT_DIGITS = 50
GUARD_DIGITS = 10


@dataclass(frozen=True)
class CertifiedInterval:
    lo: mpf
    hi: mpf
    context: str = ""

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def from_iv(cls, x, context: str = "") -> "CertifiedInterval":
        with mp.workprec(iv.prec):
            return cls(mpf(x.a), mpf(x.b), context)

    @property
    def iv(self):
        """The enclosure as an ``mpmath.iv`` interval (for further arithmetic)."""
        return iv.mpf([self.lo, self.hi])

    @property
    def width(self) -> mpf:
        with mp.workdps(DEFAULT_DIGITS + 2 * GUARD_DIGITS):
            return frac_to_mpf(_mpf_to_fraction(self.hi) - _mpf_to_fraction(self.lo))

    @property
    def mid(self) -> mpf:
        with mp.workdps(DEFAULT_DIGITS + 2 * GUARD_DIGITS):
            return frac_to_mpf((_mpf_to_fraction(self.lo) + _mpf_to_fraction(self.hi)) / 2)

    def __contains__(self, x) -> bool:
        if isinstance(x, Rational):
            # exact comparison against binary endpoints
            x = Fraction(x)
            return _mpf_to_fraction(self.lo) <= x <= _mpf_to_fraction(self.hi)
        return self.lo <= x <= self.hi

    def contains(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self):
        return f"[{nstr(self.lo, 20)}, {nstr(self.hi, 20)}]"


@contextmanager
def iv_workdps(dps: int):
    """Temporarily raise the interval context's precision (never lowers it)."""
    old = iv.prec
    iv.dps = max(dps, iv.dps)
    try:
        yield
    finally:
        iv.prec = old


def _mpf_to_fraction(x: mpf) -> Fraction:
    if not mp.isfinite(x):
        raise ValueError(f"{x} is not finite")
    sign, man, exp, _ = x._mpf_
    out = Fraction(int(man)) * Fraction(2) ** exp
    return -out if sign else out


def frac_to_mpf(x: Fraction) -> mpf:
    """Round a rational to the current mpmath precision."""
    return mpf(x.numerator) / x.denominator


def _working_dps(tolerance) -> int:
    tol = mpf(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    need = int(-mp.log10(tol)) + GUARD_DIGITS if tol < 1 else GUARD_DIGITS
    if need > 1000:
        raise ValueError(f"tolerance {tolerance} below supported working precision")
    return max(DEFAULT_DIGITS + GUARD_DIGITS, need)


def to_interval(w):
    """Exact enclosure of a nome given as int, Fraction, float or decimal string."""
    if isinstance(w, Rational):
        w = Fraction(w)
        return iv.mpf(w.numerator) / iv.mpf(w.denominator)
    if isinstance(w, str):
        return to_interval(Fraction(w))
    return iv.mpf(w)


def _check_width(x, tolerance, what):
    if x.delta > tolerance:
        raise ValueError(f"{what}: enclosure width {x.delta} exceeds tolerance {tolerance}")


def euler_Kq(q: int, tolerance=mpf("1e-40")) -> CertifiedInterval:
    """Enclosure of K_q = prod_{j>=1} (1 - q^-j).

    The tail prod_{j>J} lies in [exp(-2 q^-J), 1] because
    |log(1 - x)| <= 2x for x <= 1/2.
    """
    if q < 2:
        raise ValueError("K_q needs q >= 2")
    dps = _working_dps(tolerance)
    with iv_workdps(dps):
        qi = iv.mpf(q)
        tol = iv.mpf(tolerance)
        J = 1
        while True:
            # 2 q^-J <= tolerance / 4 guarantees the width target
            if qi ** (-J) * 8 < tol:
                break
            J += 1
        partial = iv.mpf(1)
        for j in range(1, J + 1):
            partial *= 1 - qi ** (-j)
        tail = iv.mpf([iv.exp(-2 * qi ** (-J)).a, 1])
        val = partial * tail
        _check_width(val, tolerance, "K_q")
        return CertifiedInterval.from_iv(val, f"K_{q} (J={J}, dps={dps})")


def Kq_truncated(q: int, k: int, tolerance=mpf("1e-40")) -> CertifiedInterval:
    """Enclosure of K_q(k) = prod_{j=1..k} (1 - q^-j); exact up to rounding."""
    if k < 0:
        raise ValueError("k must be >= 0")
    dps = _working_dps(tolerance)
    with iv_workdps(dps):
        qi = iv.mpf(q)
        val = iv.mpf(1)
        for j in range(1, k + 1):
            val *= 1 - qi ** (-j)
        _check_width(val, tolerance, "K_q(k)")
        return CertifiedInterval.from_iv(val, f"K_{q}({k}) (dps={dps})")


def Kq_truncated_exact(q: int, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(1, k + 1):
        out *= 1 - Fraction(1, q**j)
    return out


def _check_nome(w):
    wi = to_interval(w)
    if not (wi.a > 0 and wi.b < 1):
        raise ValueError(f"nome {w} must lie in (0, 1)")
    return wi


def theta3(w, tolerance=mpf("1e-40")) -> CertifiedInterval:
    """Enclosure of sum_{k in Z} w^(k^2).

    Tail: sum_{k>K} w^(k^2) <= w^((K+1)^2) / (1 - w).
    """
    dps = _working_dps(tolerance)
    with iv_workdps(dps):
        wi = _check_nome(w)
        tol = iv.mpf(tolerance)
        s = iv.mpf(0)
        K = 0
        while True:
            K += 1
            s += wi ** (K * K)
            bound = wi ** ((K + 1) ** 2) / (1 - wi)
            if (2 * bound).b * 4 < tol.a:
                break
        val = 1 + 2 * s + iv.mpf([0, (2 * bound).b])
        _check_width(val, tolerance, "theta3")
        return CertifiedInterval.from_iv(val, f"theta3({w}) (K={K}, dps={dps})")


def theta2(w, tolerance=mpf("1e-40")) -> CertifiedInterval:
    """Enclosure of sum_{k in Z} w^((k+1/2)^2).

    Terms pair up as 2 * sum_{k>=0} w^(k^2+k+1/4); the tail past K is at most
    w^(1/4) w^((K+1)(K+2)) / (1 - w).
    """
    dps = _working_dps(tolerance)
    with iv_workdps(dps):
        wi = _check_nome(w)
        tol = iv.mpf(tolerance)
        quarter = wi ** iv.mpf(0.25)
        s = iv.mpf(0)
        K = -1
        while True:
            K += 1
            s += wi ** (K * K + K)
            bound = quarter * wi ** ((K + 1) * (K + 2)) / (1 - wi)
            if (2 * bound).b * 4 < tol.a:
                break
        val = 2 * quarter * s + iv.mpf([0, (2 * bound).b])
        _check_width(val, tolerance, "theta2")
        return CertifiedInterval.from_iv(val, f"theta2({w}) (K={K}, dps={dps})")
