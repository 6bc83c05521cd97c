"""Dimension-proportion distributions and their discrete Gaussian theta limits.

Points of Z and of 1/2 + Z are stored as twice their value (an int), so
half-integers never go through floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np
from mpmath import iv, mp, mpf

from .combinatorics import qbinom, qbinom_row, sum_qbinom
from .constants import (
    DEFAULT_DIGITS,
    GUARD_DIGITS,
    CertifiedInterval,
    Kq_truncated,
    euler_Kq,
    iv_workdps,
    theta2,
    theta3,
    to_interval,
)

SAMPLER_TAIL = mpf(2) ** -64
_TAIL_TERMS = 8


def twice(r) -> int:
    """2r as an int, for r an integer or half-integer (int, Fraction, float, str)."""
    t = Fraction(r) * 2
    if t.denominator != 1:
        raise ValueError(f"{r} is neither an integer nor a half-integer")
    return int(t)


def exact_p(k: int, n: int, q: int) -> Fraction:
    """qbinom(n, k) / S(n); zero for k outside [0, n]."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(qbinom(n, k, q), sum_qbinom(n, q))


@dataclass(frozen=True)
class ShiftedDimensionDistribution:
    """p(., n) recentred on n/2: mass at r is p(n/2 - r, n), n = 2m or 2m+1.

    ``masses`` maps 2r to the exact probability.
    """

    parity: str
    m: int
    q: int
    masses: dict[int, Fraction]

    @property
    def n(self) -> int:
        return 2 * self.m + (self.parity == "odd")

    @property
    def half_integer(self) -> bool:
        return self.parity == "odd"

    def pmf(self, r) -> Fraction:
        return self.masses.get(twice(r), Fraction(0))

    def support(self) -> list[Fraction]:
        return [Fraction(t, 2) for t in sorted(self.masses)]

    def items(self) -> Iterable[tuple[Fraction, Fraction]]:
        for t in sorted(self.masses):
            yield Fraction(t, 2), self.masses[t]


def shifted_distribution(parity: str, m: int, q: int) -> ShiftedDimensionDistribution:
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    if m < 0:
        raise ValueError("m must be >= 0")
    n = 2 * m + (parity == "odd")
    row = qbinom_row(n, q)
    total = sum(row)
    # r = n/2 - k, so 2r = n - 2k
    masses = {n - 2 * k: Fraction(c, total) for k, c in enumerate(row)}
    return ShiftedDimensionDistribution(parity, m, q, masses)


@dataclass(frozen=True)
class DiscreteThetaDistribution:
    """pmf(k) = w^(k^2) / theta(w) on Z (theta3) or on 1/2 + Z (theta2)."""

    variant: str
    nome: Fraction | float
    normalizer: CertifiedInterval
    digits: int = DEFAULT_DIGITS

    @property
    def half_integer(self) -> bool:
        return self.variant == "theta2"

    def in_support(self, t: int) -> bool:
        return (t % 2 == 1) == self.half_integer


def theta_distribution(variant: str, nome, digits: int = DEFAULT_DIGITS) -> DiscreteThetaDistribution:
    if isinstance(nome, str):
        nome = Fraction(nome)
    tol = mpf(10) ** (-(digits + GUARD_DIGITS // 2))
    if variant == "theta3":
        norm = theta3(nome, tol)
    elif variant == "theta2":
        norm = theta2(nome, tol)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return DiscreteThetaDistribution(variant, nome, norm, digits)


def _wpow_twice(w, t: int):
    """w ** ((t/2)^2) as an interval."""
    if t % 2 == 0:
        return w ** ((t // 2) ** 2)
    return (w ** iv.mpf(0.25)) ** (t * t)


def _theta_pmf_iv(dist: DiscreteThetaDistribution, t: int):
    w = to_interval(dist.nome)
    return _wpow_twice(w, t) / dist.normalizer.iv


def theta_pmf(dist: DiscreteThetaDistribution, k) -> CertifiedInterval:
    t = twice(k)
    if not dist.in_support(t):
        raise ValueError(f"{k} is not in the support of the {dist.variant} law")
    with iv_workdps(dist.digits + GUARD_DIGITS):
        return CertifiedInterval.from_iv(_theta_pmf_iv(dist, t), f"{dist.variant} pmf({k})")


def _theta_tail_iv(dist: DiscreteThetaDistribution, t_max: int):
    """Mass of the theta law on |2r| > t_max (same lattice as t_max).

    A few terms are summed explicitly; past them, exponent gaps between
    consecutive points are >= 1, so the remainder is at most
    next_term / (1 - w) on each side.
    """
    w = to_interval(dist.nome)
    explicit = iv.mpf(0)
    t = t_max + 2
    for _ in range(_TAIL_TERMS):
        explicit += _wpow_twice(w, t)
        t += 2
    rest = _wpow_twice(w, t) / (1 - w)
    side = explicit + iv.mpf([0, rest.b])
    return 2 * side / dist.normalizer.iv


def asymptotic_p(parity: str, k: int, m: int, q: int, digits: int = DEFAULT_DIGITS) -> CertifiedInterval:
    """K_q / (K_q(k) theta(1/q)) * q^-(m-k)^2, or the odd form with
    theta2 and exponent (m - k + 1/2)^2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    tol = mpf(10) ** (-(digits + GUARD_DIGITS // 2))
    w = Fraction(1, q)
    with iv_workdps(digits + GUARD_DIGITS):
        ratio = euler_Kq(q, tol).iv / Kq_truncated(q, k, tol).iv
        wi = to_interval(w)
        if parity == "even":
            val = ratio / theta3(w, tol).iv * wi ** ((m - k) ** 2)
        elif parity == "odd":
            val = ratio / theta2(w, tol).iv * _wpow_twice(wi, 2 * (m - k) + 1)
        else:
            raise ValueError("parity must be 'even' or 'odd'")
        return CertifiedInterval.from_iv(val, f"asymptotic p^{parity[0]}({k},{m})")


def _check_lattice(d: ShiftedDimensionDistribution, other):
    if d.half_integer != other.half_integer:
        raise ValueError("distributions live on different lattices")


def _frac_iv(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def tv_distance(d1: ShiftedDimensionDistribution, d2) -> CertifiedInterval:
    """Total variation distance, enclosed in an interval.

    ``d2`` may be another exact distribution (exact answer) or a theta law
    (finite part in interval arithmetic plus a certified tail).
    """
    _check_lattice(d1, d2)
    if isinstance(d2, ShiftedDimensionDistribution):
        keys = set(d1.masses) | set(d2.masses)
        tv = sum(abs(d1.masses.get(t, 0) - d2.masses.get(t, 0)) for t in keys) / 2
        with iv_workdps(DEFAULT_DIGITS + GUARD_DIGITS):
            return CertifiedInterval.from_iv(_frac_iv(Fraction(tv)), "tv (exact)")
    with iv_workdps(d2.digits + GUARD_DIGITS):
        inside = iv.mpf(0)
        for t, p in d1.masses.items():
            inside += abs(_frac_iv(p) - _theta_pmf_iv(d2, t))
        tail = _theta_tail_iv(d2, max(d1.masses))
        tv = (inside + tail) / 2
        tv = iv.mpf([max(tv.a, 0), tv.b])
        return CertifiedInterval.from_iv(tv, f"tv(m={d1.m}, {d2.variant})")


def pointwise_gap(d1: ShiftedDimensionDistribution, d2: DiscreteThetaDistribution) -> mpf:
    """sup over the lattice of |d1(r) - d2(r)| (midpoint value)."""
    _check_lattice(d1, d2)
    with iv_workdps(d2.digits + GUARD_DIGITS):
        gaps = [abs(_frac_iv(p) - _theta_pmf_iv(d2, t)) for t, p in d1.masses.items()]
        # outside the finite support the gap is the theta pmf itself
        gaps.append(_theta_pmf_iv(d2, max(d1.masses) + 2))
        best = max(gaps, key=lambda x: x.b)
        return CertifiedInterval.from_iv(best).mid


def _sampler_table(dist: DiscreteThetaDistribution):
    t = 1 if dist.half_integer else 0
    with iv_workdps(dist.digits + GUARD_DIGITS):
        while _theta_tail_iv(dist, t).b >= SAMPLER_TAIL:
            t += 2
        points = list(range(-t, t + 1, 2))
        probs = [float(CertifiedInterval.from_iv(_theta_pmf_iv(dist, s)).mid) for s in points]
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    return np.array(points), cdf


def sample(dist: DiscreteThetaDistribution, seed: int, size: int | None = None):
    """Inverse-CDF draws; the support is cut where the remaining mass is < 2^-64.

    Returns one value (int or Fraction) when ``size`` is None, else a float
    array of support points (half-integers are exact in binary).
    """
    points, cdf = _sampler_table(dist)
    rng = np.random.default_rng(seed)
    u = rng.random(1 if size is None else size)
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)
    t = points[idx]
    if size is None:
        v = Fraction(int(t[0]), 2)
        return int(v) if v.denominator == 1 else v
    return t / 2.0


class ConvergenceRow(NamedTuple):
    m: int
    exact_gap: mpf
    tv: CertifiedInterval


def convergence_report(parity: str, q: int, m_range: Iterable[int], digits: int = 30) -> list[ConvergenceRow]:
    """Distance between the exact shifted law at each m and its theta limit (nome 1/q)."""
    limit = theta_distribution("theta3" if parity == "even" else "theta2", Fraction(1, q), digits)
    rows = []
    for m in m_range:
        d = shifted_distribution(parity, m, q)
        rows.append(ConvergenceRow(m, pointwise_gap(d, limit), tv_distance(d, limit)))
    return rows
