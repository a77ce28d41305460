"""Prize-valuation distributions.

Three built-in families cover all the numerical experiments: power on [0, 1],
Pareto on [0, inf), and Pareto truncated at a finite upper bound.  Every
family exposes an exact quantile so that downstream integrals can run in
probability space u = F(t); this is what makes the unbounded Pareto case
tractable without improper integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ValueDistribution",
    "PowerDistribution",
    "ParetoDistribution",
    "TruncatedParetoDistribution",
    "TruncatedView",
    "elasticity",
    "quantile",
    "parse_dist_spec",
]

ArrayLike = "float | np.ndarray"


class ValueDistribution:
    """Abstract valuation distribution F on an interval support.

    Subclasses implement ``cdf``, ``pdf`` and ``quantile`` as vectorized
    callables and set ``support_lo`` / ``support_hi`` (``math.inf`` marks an
    unbounded upper support).  Instances are immutable and safe to share
    across threads or processes.
    """

    support_lo: float
    support_hi: float

    def cdf(self, v):
        raise NotImplementedError

    def pdf(self, v):
        raise NotImplementedError

    def quantile(self, u):
        raise NotImplementedError

    @property
    def has_bounded_support(self) -> bool:
        return math.isfinite(self.support_hi)

    def elasticity(self, t: float) -> float:
        """Elasticity xi(t) = t f(t) / F(t) of the distribution at t.

        At the lower support point the right limit is used where it exists;
        subclasses override ``_elasticity_limit_at_lo`` accordingly.
        """
        lo, hi = self.support_lo, self.support_hi
        if not (lo <= t <= hi):
            raise ValueError(f"t={t} outside support [{lo}, {hi}]")
        if t == lo:
            return self._elasticity_limit_at_lo()
        c = float(self.cdf(t))
        if c <= 0.0:
            raise ValueError(f"elasticity undefined: F({t}) = 0")
        return t * float(self.pdf(t)) / c

    def _elasticity_limit_at_lo(self) -> float:
        raise ValueError(
            f"elasticity undefined at the lower support point {self.support_lo}"
        )

    def spec_string(self) -> str:
        raise NotImplementedError


def _check_unit_interval(u) -> np.ndarray:
    arr = np.asarray(u, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("quantile argument must lie in [0, 1]")
    return arr


@dataclass(frozen=True)
class PowerDistribution(ValueDistribution):
    """F(v) = v**alpha on [0, 1], alpha > 0.  Constant elasticity alpha."""

    alpha: float
    support_lo: float = 0.0
    support_hi: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ValueError(f"power family needs alpha > 0, got {self.alpha}")

    def cdf(self, v):
        v = np.clip(np.asarray(v, dtype=float), 0.0, 1.0)
        return v**self.alpha

    def pdf(self, v):
        v = np.asarray(v, dtype=float)
        out = self.alpha * v ** (self.alpha - 1.0)
        return np.where((v < 0.0) | (v > 1.0), 0.0, out)

    def quantile(self, u):
        return _check_unit_interval(u) ** (1.0 / self.alpha)

    def _elasticity_limit_at_lo(self) -> float:
        return self.alpha

    def spec_string(self) -> str:
        return f"power:alpha={self.alpha:g}"


@dataclass(frozen=True)
class ParetoDistribution(ValueDistribution):
    """F(v) = 1 - (v+1)**(-p) on [0, inf), p > 0.

    The upper support is unbounded; ``quantile(1.0)`` returns ``math.inf``
    as the documented sentinel.  Quadrature nodes are interior and never
    touch u = 1 exactly.
    """

    p: float
    support_lo: float = 0.0
    support_hi: float = math.inf

    def __post_init__(self):
        if not self.p > 0.0:
            raise ValueError(f"pareto family needs p > 0, got {self.p}")

    def cdf(self, v):
        v = np.maximum(np.asarray(v, dtype=float), 0.0)
        return 1.0 - (v + 1.0) ** (-self.p)

    def pdf(self, v):
        v = np.asarray(v, dtype=float)
        out = self.p * (v + 1.0) ** (-self.p - 1.0)
        return np.where(v < 0.0, 0.0, out)

    def quantile(self, u):
        u = _check_unit_interval(u)
        with np.errstate(divide="ignore"):
            return (1.0 - u) ** (-1.0 / self.p) - 1.0

    def _elasticity_limit_at_lo(self) -> float:
        # xi(t) = t f / F -> t*p / (p*t) -> 1 as t -> 0+
        return 1.0

    def spec_string(self) -> str:
        return f"pareto:p={self.p:g}"


@dataclass(frozen=True)
class TruncatedParetoDistribution(ValueDistribution):
    """Pareto conditioned on v <= v_max: F_t(v) = F(v) / F(v_max) on [0, v_max]."""

    p: float
    v_max: float
    support_lo: float = 0.0

    def __post_init__(self):
        if not self.p > 0.0:
            raise ValueError(f"tpareto family needs p > 0, got {self.p}")
        if not self.v_max > 0.0:
            raise ValueError(f"tpareto family needs v_max > 0, got {self.v_max}")

    @property
    def support_hi(self) -> float:  # type: ignore[override]
        return self.v_max

    @property
    def _f_at_max(self) -> float:
        return 1.0 - (self.v_max + 1.0) ** (-self.p)

    def cdf(self, v):
        v = np.clip(np.asarray(v, dtype=float), 0.0, self.v_max)
        return (1.0 - (v + 1.0) ** (-self.p)) / self._f_at_max

    def pdf(self, v):
        v = np.asarray(v, dtype=float)
        out = self.p * (v + 1.0) ** (-self.p - 1.0) / self._f_at_max
        return np.where((v < 0.0) | (v > self.v_max), 0.0, out)

    def quantile(self, u):
        u = _check_unit_interval(u) * self._f_at_max
        return (1.0 - u) ** (-1.0 / self.p) - 1.0

    def _elasticity_limit_at_lo(self) -> float:
        return 1.0

    def spec_string(self) -> str:
        return f"tpareto:p={self.p:g},vmax={self.v_max:g}"


@dataclass(frozen=True)
class TruncatedView(ValueDistribution):
    """Distribution of an entrant's valuation given v >= cutoff.

    cdf(v) = (F(v) - F(cutoff)) / q with q = 1 - F(cutoff).
    """

    base: ValueDistribution
    cutoff: float

    def __post_init__(self):
        if not (self.base.support_lo <= self.cutoff <= self.base.support_hi):
            raise ValueError(f"cutoff {self.cutoff} outside base support")
        if self.q <= 0.0:
            raise ValueError("degenerate truncation: q = 1 - F(cutoff) must be > 0")

    @property
    def q(self) -> float:
        return 1.0 - float(self.base.cdf(self.cutoff))

    @property
    def support_lo(self) -> float:  # type: ignore[override]
        return self.cutoff

    @property
    def support_hi(self) -> float:  # type: ignore[override]
        return self.base.support_hi

    def cdf(self, v):
        v = np.asarray(v, dtype=float)
        raw = (self.base.cdf(v) - self.base.cdf(self.cutoff)) / self.q
        return np.where(v < self.cutoff, 0.0, np.clip(raw, 0.0, 1.0))

    def pdf(self, v):
        v = np.asarray(v, dtype=float)
        return np.where(v < self.cutoff, 0.0, self.base.pdf(v) / self.q)

    def quantile(self, u):
        u = _check_unit_interval(u)
        u0 = float(self.base.cdf(self.cutoff))
        return self.base.quantile(u0 + u * self.q)


def elasticity(d: ValueDistribution, t: float) -> float:
    """Elasticity xi(t) = t f(t) / F(t); see ValueDistribution.elasticity."""
    return d.elasticity(t)


def quantile_ratio(d: ValueDistribution, u_num, u_den):
    """Q(u_num) / Q(u_den) with the 0/0 corner mapped to 0 (array-safe).

    On triangle domains with u_num <= u_den the ratio is bounded by 1, so
    sending the degenerate corner Q(u_den) = 0 (where Q(u_num) = 0 too) to
    zero is the continuous extension a.e.
    """
    qn = np.asarray(d.quantile(u_num), dtype=float)
    qd = np.asarray(d.quantile(u_den), dtype=float)
    qn, qd = np.broadcast_arrays(qn, qd)
    out = np.zeros_like(qn)
    np.divide(qn, qd, out=out, where=qd > 0.0)
    return out


def quantile(d: ValueDistribution, u):
    """Inverse cdf; F(quantile(u)) = u; inf sentinel at u = 1 for Pareto."""
    return d.quantile(u)


def parse_dist_spec(spec: str) -> ValueDistribution:
    """Parse a CLI distribution string.

    Formats: ``power:alpha=<x>``, ``pareto:p=<x>``, ``tpareto:p=<x>,vmax=<y>``.
    """
    try:
        family, _, argstr = spec.partition(":")
        kv = {}
        if argstr:
            for part in argstr.split(","):
                key, _, value = part.partition("=")
                kv[key.strip()] = float(value)
        if family == "power":
            return PowerDistribution(alpha=kv.pop("alpha"))
        if family == "pareto":
            return ParetoDistribution(p=kv.pop("p"))
        if family == "tpareto":
            return TruncatedParetoDistribution(p=kv.pop("p"), v_max=kv.pop("vmax"))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad distribution spec {spec!r}: {exc}") from exc
    raise ValueError(
        f"unknown distribution family {family!r} "
        "(expected power:alpha=<x>, pareto:p=<x> or tpareto:p=<x>,vmax=<y>)"
    )
