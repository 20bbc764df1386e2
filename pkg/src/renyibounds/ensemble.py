"""Random-coding ensemble at desk scale.

Each trial draws an i.i.d. codebook, builds the exact joint of (message,
channel output block) by enumerating every output sequence, and evaluates
``H_alpha(X^n|Y^n)`` on it.  Trials are seeded by ``(seed, trial)`` so any
execution order gives the same numbers.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import BudgetError, Channel, JointPMF, Order, ProbVector, ValidationError, map_error
from .error_bounds import fano_upper_H, lb_H_from_error
from .exponents import exponent_reference
from .measures import arimoto_conditional

CELL_BUDGET = 2**22


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    M: int
    channel: Channel
    prior: ProbVector = None
    alphas: tuple = (1.0,)
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.prior is None:
            object.__setattr__(self, "prior", ProbVector.uniform(self.channel.n_inputs))
        if len(self.prior) != self.channel.n_inputs:
            raise ValidationError("prior does not match the channel input alphabet")
        if self.n < 1 or self.M < 1 or self.trials < 1:
            raise ValidationError("n, M and trials must be positive")
        if self.M > self.channel.n_inputs**self.n:
            raise ValidationError("more messages than input sequences")
        object.__setattr__(self, "alphas", tuple(Order.of(a) for a in self.alphas))
        cells = self.channel.n_outputs**self.n * self.M
        if cells > CELL_BUDGET:
            raise BudgetError(f"{cells} joint cells exceed the budget of {CELL_BUDGET}")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def sample_codebook(cfg: EnsembleConfig, trial: int) -> np.ndarray:
    """``M x n`` array of input letters, i.i.d. from the prior."""
    rng = trial_rng(cfg.seed, trial)
    return rng.choice(len(cfg.prior), size=(cfg.M, cfg.n), p=cfg.prior.masses)


def code_joint(codebook, channel: Channel) -> JointPMF:
    """Joint of a uniform message and the output block over the memoryless channel."""
    codebook = np.asarray(codebook, dtype=int)
    M, n = codebook.shape
    if channel.n_outputs**n * M > CELL_BUDGET:
        raise BudgetError(f"{channel.n_outputs ** n * M} joint cells exceed the budget of {CELL_BUDGET}")
    W = channel.transition
    table = np.full((M, 1), 1.0 / M)
    for i in range(n):
        table = (table[:, :, None] * W[codebook[:, i]][:, None, :]).reshape(M, -1)
    return JointPMF(table)


def code_conditional_entropy(codebook, channel: Channel, alpha) -> float:
    return arimoto_conditional(code_joint(codebook, channel), alpha)


def jackknife_stderr(values) -> float:
    x = np.asarray(values, dtype=float)
    t = x.size
    if t < 2:
        return 0.0
    loo = (x.sum() - x) / (t - 1)
    return float(math.sqrt((t - 1) / t * ((loo - loo.mean()) ** 2).sum()))


@dataclass
class EnsembleResult:
    cfg: EnsembleConfig
    entropies: np.ndarray  # trials x len(alphas)
    errors: np.ndarray  # per-trial exact MAP error
    fano_upper: np.ndarray  # per-trial Fano bound at the code's own error
    entropy_lower: np.ndarray  # per-trial lower bound from the code's own error
    mean: np.ndarray = field(init=False)
    stderr: np.ndarray = field(init=False)

    def __post_init__(self):
        self.mean = self.entropies.mean(axis=0)
        self.stderr = np.array([jackknife_stderr(col) for col in self.entropies.T])

    def rows(self):
        for k, a in enumerate(self.cfg.alphas):
            yield {
                "n": self.cfg.n,
                "alpha": str(a),
                "mean": float(self.mean[k]),
                "stderr": float(self.stderr[k]),
                "bound_upper": float(self.fano_upper[:, k].mean()),
                "bound_lower": float(self.entropy_lower[:, k].mean()),
            }

    def averaged_fano(self, k: int) -> float:
        """Fano bound evaluated at the ensemble-mean error (valid for orders in [0, 1])."""
        eps = min(float(self.errors.mean()), 1 - 1 / self.cfg.M)
        return fano_upper_H(eps, self.cfg.M, self.cfg.alphas[k])


def ensemble_average(cfg: EnsembleConfig) -> EnsembleResult:
    T, A = cfg.trials, len(cfg.alphas)
    ent = np.empty((T, A))
    errs = np.empty(T)
    upper = np.empty((T, A))
    lower = np.empty((T, A))
    top = 1 - 1 / cfg.M
    for t in range(T):
        joint = code_joint(sample_codebook(cfg, t), cfg.channel)
        eps = min(map_error(joint), top)
        errs[t] = eps
        for k, a in enumerate(cfg.alphas):
            ent[t, k] = arimoto_conditional(joint, a)
            upper[t, k] = fano_upper_H(eps, cfg.M, a) if a.value > 0 else math.nan
            lower[t, k] = lb_H_from_error(eps, a) if a.value > 0 else math.nan
    return EnsembleResult(cfg, ent, errs, upper, lower)


CSV_COLUMNS = ("n", "alpha", "mean", "stderr", "bound_upper", "bound_lower")


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


def results_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    for res in results:
        for row in res.rows():
            w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def messages_for_rate(n: int, rate: float) -> int:
    """Codebook size ``max(2, round(e^{nR}))`` for a rate in nats."""
    return max(2, int(round(math.exp(n * rate))))


@dataclass
class ExponentFit:
    alpha: Order
    rate: float
    ns: np.ndarray
    Ms: np.ndarray
    means: np.ndarray
    stderrs: np.ndarray
    slope: float
    slope_stderr: float
    floor: float
    ceiling: float
    saturated: bool
    results: list

    def within_band(self, k_se: float = 2.0) -> bool:
        return self.floor - k_se * self.slope_stderr <= self.slope <= self.ceiling + k_se * self.slope_stderr


def exponent_fit(
    channel: Channel,
    rate: float,
    ns,
    alpha=1.0,
    trials: int = 200,
    seed: int = 0,
    prior: ProbVector = None,
) -> ExponentFit:
    """Least-squares slope of ``-log E[H_alpha(X^n|Y^n)]`` against ``n``.

    Per-point errors on ``log mean`` come from the delta method; the fit is
    weighted by them when all are positive.  Rates are in nats.
    """
    ns = np.asarray(sorted(ns), dtype=int)
    if ns.size < 3:
        raise ValueError("need at least three blocklengths for a fit")
    order = Order.of(alpha)
    prior = prior or ProbVector.uniform(channel.n_inputs)
    results, Ms = [], []
    for n in ns:
        M = messages_for_rate(int(n), rate)
        Ms.append(M)
        cfg = EnsembleConfig(int(n), M, channel, prior, (order,), trials, seed)
        results.append(ensemble_average(cfg))
    means = np.array([r.mean[0] for r in results])
    ses = np.array([r.stderr[0] for r in results])
    floor, ceiling = exponent_reference(rate, order.value, prior, channel)
    if np.any(means <= 0):
        return ExponentFit(order, rate, ns, np.array(Ms), means, ses, math.inf, 0.0, floor, ceiling, True, results)
    y = -np.log(means)
    sy = ses / means
    w = 1.0 / sy**2 if np.all(sy > 0) else np.ones_like(y)
    xbar = (w * ns).sum() / w.sum()
    ybar = (w * y).sum() / w.sum()
    sxx = (w * (ns - xbar) ** 2).sum()
    slope = float((w * (ns - xbar) * (y - ybar)).sum() / sxx)
    if np.all(sy > 0):
        slope_se = math.sqrt(1.0 / sxx)
    else:
        resid = y - (ybar + slope * (ns - xbar))
        slope_se = math.sqrt((resid**2).sum() / max(ns.size - 2, 1) / sxx)
    return ExponentFit(order, rate, ns, np.array(Ms), means, ses, slope, float(slope_se), floor, ceiling, False, results)
