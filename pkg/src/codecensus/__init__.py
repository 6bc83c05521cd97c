"""Counting linear codes up to equivalence: exact censuses, q-binomial
asymptotics and discrete Gaussian limit laws."""

from .asymptotics import (
    ConstantDim,
    HalfCeilPlusConst,
    HalfFloorMinusConst,
    HalfMinusPowerLog,
    LinearFraction,
    LogQValue,
    StarStatus,
    Tabulated,
    central_ratio_to_power,
    d1,
    d2,
    estimate_class_count,
    estimate_qbinom,
    estimate_S,
    estimate_total_classes,
    ratio_to_central,
    star_classify,
)
from .census import (
    CeilingExceeded,
    CensusResult,
    GroupElement,
    MethodDisagreement,
    Subspace,
    act,
    canonicalize,
    census,
    census_all_dims,
    census_burnside,
    census_orbits,
    enumerate_grassmannian,
    enumerate_projective,
    fixed_count,
)
from .combinatorics import check_qbinom_bounds, check_S_bounds, group_order, qbinom, qbinom_row, sum_qbinom
from .constants import CertifiedInterval, Kq_truncated, euler_Kq, theta2, theta3
from .distributions import (
    asymptotic_p,
    convergence_report,
    exact_p,
    sample,
    shifted_distribution,
    theta_distribution,
    theta_pmf,
    tv_distance,
)
from .field import FieldSpec, field_of_order, make_field

__version__ = "0.1.0"
