"""Exact and sampled covariances of reachability events in randomly oriented random graphs."""

from .asymptotics import approx_cov, approx_q, solve_pc
from .gnm import cov_gnm, critical_m, gnm_tables, invert_to_gnm, q_exact
from .gnp import Backend, SizeGuardError, cov_gnp, cov_poly, critical_ps, f_poly, g_poly
from .kernels import BACKEND_NAME as KERNEL
from .montecarlo import Model, estimate_annealed, estimate_quenched
from .oracle import oracle_annealed, oracle_gnm, oracle_quenched
from .poly import PolyP
from .report import CovarianceReport

__version__ = "0.1.0"

__all__ = [
    "Backend", "CovarianceReport", "KERNEL", "Model", "PolyP", "SizeGuardError",
    "approx_cov", "approx_q", "cov_gnm", "cov_gnp", "cov_poly", "critical_m", "critical_ps",
    "estimate_annealed", "estimate_quenched", "f_poly", "g_poly", "gnm_tables", "invert_to_gnm",
    "oracle_annealed", "oracle_gnm", "oracle_quenched", "q_exact", "solve_pc",
]
