"""Seeded Monte Carlo experiments over (model, p, alpha) grids.

Each grid point draws independent datasets, solves the scaling problem,
and summarizes the chosen statistic (cosine similarity against the
population weights, or the macroscopic variables Q = w'w/p and
m = w'1/p) by median and 90-percent range, with the matching theory
value attached.  Replications use counter-derived seeds and are reduced
in replication order, so results are bit-identical for any worker count.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import covmodel, replica, scaling
from .exceptions import (DomainError, EmptySample, NotStrictlyCopositive,
                         NumericalFailure, ZeroVector)


class Statistic(Enum):
    COSINE = "cosine"
    MACRO_Q = "Q"
    MACRO_M = "m"


class Theory(Enum):
    AUTO = "auto"
    IDENTITY_CURVE = "identity"
    SPIKE_CURVE = "spike"
    NONE = "none"


@dataclass(frozen=True)
class ExperimentConfig:
    model: covmodel.CovarianceSpec
    p: int
    alphas: tuple
    reps: int = 100
    seed: int = 0
    statistic: Statistic = Statistic.COSINE
    theory: Theory = Theory.AUTO
    solver: scaling.SolverOptions = field(default_factory=scaling.SolverOptions)

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if not self.alphas or any(a <= 0 for a in self.alphas):
            raise ValueError("alphas must be nonempty and positive")


@dataclass(frozen=True)
class SummaryRow:
    alpha: float
    n: int
    median: float
    q05: float
    q95: float
    theory: float | None
    n_success: int
    n_unsolvable: int


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("cosine similarity undefined for zero vectors")
    return float(np.clip(a @ b / (na * nb), -1.0, 1.0))


def macroscopics(w: np.ndarray, p: int) -> tuple[float, float]:
    """Q = w'w/p and m = w'1/p; m/sqrt(Q) is the cosine against 1."""
    w = np.asarray(w, dtype=float)
    Q = float(w @ w / p)
    m = float(w.sum() / p)
    assert abs(m / np.sqrt(Q) - cosine_similarity(w, np.ones(p))) < 1e-12
    return Q, m


def summarize(samples) -> tuple[float, float, float]:
    """(median, 5th, 95th percentile), linear interpolation."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise EmptySample("cannot summarize an empty sample")
    q05, med, q95 = np.quantile(samples, [0.05, 0.5, 0.95])
    return float(med), float(q05), float(q95)


def _theory_value(cfg: ExperimentConfig, alpha: float) -> float | None:
    mode = cfg.theory
    if mode is Theory.NONE:
        return None
    if mode is Theory.AUTO:
        if cfg.model.kind is covmodel.Kind.SPIKE:
            mode = Theory.SPIKE_CURVE
        else:
            # identity, power-law, stepwise and the t3 experiment are all
            # compared against the identity-covariance curve
            mode = Theory.IDENTITY_CURVE
    omega = cfg.model.omega if mode is Theory.SPIKE_CURVE else 0.0
    try:
        pred = replica.replica_prediction(omega, alpha)
    except DomainError:
        return None
    if cfg.statistic is Statistic.MACRO_Q:
        return pred.Q
    if cfg.statistic is Statistic.MACRO_M:
        return pred.m
    return pred.cosine


def _replicate(cfg: ExperimentConfig, n: int, seed_seq) -> tuple[str, float]:
    """One replication: returns ('ok', value), ('unsolvable', .) or ('failed', .)."""
    spec = cfg.model
    rotated = spec.kind in (covmodel.Kind.POWERLAW, covmodel.Kind.STEPWISE)
    if rotated:
        cov_seed, data_seed = seed_seq.spawn(2)
        cov = covmodel.build_covariance(spec, cfg.p, cov_seed)
        ref = scaling.solve_scaling(
            cov, scaling.SolverOptions(tol=1e-12, max_iter=200)).w
    else:
        data_seed = seed_seq
        cov = covmodel.build_covariance(spec, cfg.p)
        ref = covmodel.population_scaling(spec, cfg.p)
    X = covmodel.sample_data(cov, n, spec.noise, data_seed)
    S = covmodel.sample_covariance(X)
    try:
        sol = scaling.solve_scaling(S, cfg.solver)
    except NotStrictlyCopositive:
        return "unsolvable", 0.0
    except NumericalFailure:
        return "failed", 0.0
    if cfg.statistic is Statistic.COSINE:
        return "ok", cosine_similarity(sol.w, ref)
    Q, m = macroscopics(sol.w, cfg.p)
    return "ok", Q if cfg.statistic is Statistic.MACRO_Q else m


def worker_count() -> int:
    env = os.environ.get("DIAGSCALE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_experiment(cfg: ExperimentConfig) -> list[SummaryRow]:
    """One SummaryRow per alpha; n = round(alpha * p)."""
    rows = []
    workers = worker_count()
    for ai, alpha in enumerate(cfg.alphas):
        n = int(round(alpha * cfg.p))
        seqs = [np.random.SeedSequence(cfg.seed, spawn_key=(ai, rep))
                for rep in range(cfg.reps)]
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(lambda s: _replicate(cfg, n, s), seqs))
        else:
            results = [_replicate(cfg, n, s) for s in seqs]
        values = [v for tag, v in results if tag == "ok"]
        n_unsolvable = sum(1 for tag, _ in results if tag == "unsolvable")
        median, q05, q95 = summarize(values) if values else (np.nan,) * 3
        rows.append(SummaryRow(
            alpha=alpha, n=n, median=median, q05=q05, q95=q95,
            theory=_theory_value(cfg, alpha),
            n_success=len(values), n_unsolvable=n_unsolvable))
    return rows
