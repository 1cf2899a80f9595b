"""Closed-form example families of weight sequences and weight functions.

Every sequence is tabulated in log domain up to ``pmax`` and carries a
closed-form evaluator trusted up to ``xmax``; every function is given by
its log profile s -> log sigma(e^s).
"""

import math

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import digamma, gammaln

from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.weights.function import WeightFunction, closed_form
from growthindex.weights.sequence import QuotientSequence, WeightSequence, from_quotients

logger = get_logger(__name__)

EULER_GAMMA = float(np.euler_gamma)
LINLOG_MAX_ALPHA = 3.0


def _indices(pmax: int) -> np.ndarray:
    if pmax < 16:
        raise DomainError("pmax", pmax, "the horizon must be at least 16")
    return np.arange(pmax + 1, dtype=float)


def gevrey_seq(alpha: float, pmax: int = 4096, xmax: float = 1e12) -> WeightSequence:
    """The Gevrey sequence (p!^alpha), with quotients (p+1)^alpha."""
    if not alpha > 0:
        raise DomainError("alpha", alpha, "Gevrey order must be positive")
    p = _indices(pmax)
    return WeightSequence(
        log_M=alpha * gammaln(p + 1.0),
        evaluator=lambda x: alpha * gammaln(np.asarray(x, dtype=float) + 1.0),
        quotient_evaluator=lambda x: alpha * np.log1p(np.asarray(x, dtype=float)),
        ceiling=xmax,
        name=f"gevrey({alpha:g})",
        metadata={"family": "gevrey_seq", "alpha": alpha},
    )


def _log_log_shift(x: np.ndarray) -> np.ndarray:
    """log log(e + x + 1)."""
    return np.log(np.log(math.e + np.asarray(x, dtype=float) + 1.0))


def m_alpha_beta(
    alpha: float, beta: float, pmax: int = 4096, xmax: float = 1e12
) -> WeightSequence:
    """M_p = p!^alpha prod_{k<=p} log^beta(e+k); quotients (p+1)^alpha log^beta(e+p+1).

    For beta < 0 the leading quotients may decrease. They are replaced by
    the first quotient from which the sequence is nondecreasing, which
    restores (lc); the index is recorded in ``metadata["lc_fix"]``.

    Raises:
        DomainError: If the quotients still decrease at the end of the table
    """
    if not alpha >= 0:
        raise DomainError("alpha", alpha, "alpha must be nonnegative")
    if alpha == 0 and not beta > 0:
        raise DomainError("beta", beta, "with alpha = 0 the exponent beta must be positive")
    p = _indices(pmax)

    def raw(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return alpha * np.log1p(x) + beta * _log_log_shift(x)

    table = raw(p)
    drops = np.flatnonzero(np.diff(table) < 0)
    fix = int(drops[-1]) + 1 if drops.size else 0
    if fix:
        if fix >= table.size - 1:
            raise DomainError("beta", beta, "too negative to restore (lc) inside the horizon")
        floor = float(table[fix])
        table[:fix] = floor
        logger.debug("Restored log-convexity", beta=beta, first_kept=fix)

    def evaluator(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.where(x < fix, table[fix], raw(x))

    family = "m0_beta" if alpha == 0 else "m_alpha_beta"
    m = QuotientSequence(
        log_m=table[:-1],
        evaluator=evaluator,
        ceiling=xmax - 1.0,
        name=f"M({alpha:g},{beta:g})",
        metadata={"family": family, "alpha": alpha, "beta": beta, "lc_fix": fix},
    )
    return from_quotients(m)


def m0_beta(beta: float, pmax: int = 4096, xmax: float = 1e12) -> WeightSequence:
    """M_p = prod_{k<=p} log^beta(e+k), beta > 0."""
    if not beta > 0:
        raise DomainError("beta", beta, "beta must be positive")
    return m_alpha_beta(0.0, beta, pmax, xmax)


def mq(q: float, pmax: int = 4096, xmax: float = 1e12) -> WeightSequence:
    """The q-Gevrey sequence (q^{p^2}), q > 1."""
    if not q > 1:
        raise DomainError("q", q, "q must exceed 1")
    p = _indices(pmax)
    log_q = math.log(q)
    return WeightSequence(
        log_M=p**2 * log_q,
        evaluator=lambda x: np.asarray(x, dtype=float) ** 2 * log_q,
        quotient_evaluator=lambda x: (2.0 * np.asarray(x, dtype=float) + 1.0) * log_q,
        ceiling=xmax,
        name=f"mq({q:g})",
        metadata={"family": "mq", "q": q},
    )


def power_fn(s: float, xmax: float = 1e12) -> WeightFunction:
    """sigma(t) = t^s."""
    if not s > 0:
        raise DomainError("s", s, "the exponent must be positive")
    return closed_form(
        f"t^{s:g}",
        lambda v: s * v,
        log_ceiling=math.log(xmax),
        metadata={"family": "power_fn", "s": s},
    )


def gevrey_fn(s: float, xmax: float = 1e12) -> WeightFunction:
    """The Gevrey weight omega(t) = t^s, 0 < s <= 1."""
    if not 0 < s <= 1:
        raise DomainError("s", s, "Gevrey weights need 0 < s <= 1")
    return closed_form(
        f"gevrey_fn({s:g})",
        lambda v: s * v,
        log_ceiling=math.log(xmax),
        metadata={"family": "gevrey_fn", "s": s},
    )


def linlog_fn(alpha: float, xmax: float = 1e12) -> WeightFunction:
    """omega(t) = t / log^alpha(e + t)."""
    if alpha > LINLOG_MAX_ALPHA:
        raise DomainError("alpha", alpha, "t/log^alpha(e+t) is monotone only for alpha <= 3")

    def log_profile(v: np.ndarray) -> np.ndarray:
        return v - alpha * np.log(np.log(math.e + np.exp(v)))

    return closed_form(
        f"linlog({alpha:g})",
        log_profile,
        log_ceiling=math.log(xmax),
        metadata={"family": "linlog_fn", "alpha": alpha},
    )


def logpow_fn(s: float, xmax: float = 1e12) -> WeightFunction:
    """omega(t) = max(0, log(t)^s), s > 1."""
    if not s > 1:
        raise DomainError("s", s, "the exponent must exceed 1")

    def log_profile(v: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(v > 0, s * np.log(np.maximum(v, 0.0)), -np.inf)

    return closed_form(
        f"logpow({s:g})",
        log_profile,
        threshold=math.e,
        log_ceiling=math.log(xmax),
        metadata={"family": "logpow_fn", "s": s},
    )


def _harmonic(x: np.ndarray) -> np.ndarray:
    """H_x = digamma(x + 1) + Euler's constant, with H_0 = 0."""
    return digamma(np.asarray(x, dtype=float) + 1.0) + EULER_GAMMA


def _block_signed_harmonic(x: np.ndarray, base: int) -> np.ndarray:
    """Sum_{j=1}^{x} s_j / j with s_j = (-1)^n on [base^n, base^(n+1))."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape)
    top = float(np.max(x)) if x.size else 0.0
    n, start = 0, 1.0
    while start <= top:
        end = start * base - 1.0
        upper = np.clip(x, start - 1.0, end)
        out += (-1.0) ** n * (_harmonic(upper) - _harmonic(start - 1.0))
        n, start = n + 1, start * base
    return out


def orv_from_representation(
    d: float | ArrayLike = 0.0,
    xi: float | ArrayLike = 1.0,
    pmax: int = 4096,
    xmax: float = 1e12,
    blocks: int | None = None,
    bound: float | None = None,
) -> QuotientSequence:
    """The positive sequence a_p = exp(d_p + sum_{j=1}^p xi_j / j).

    Scalars give constant d and xi with a closed-form evaluator through the
    digamma function. With ``blocks = k`` the scalar xi alternates in sign on
    the blocks [k^n, k^(n+1)). Arrays of length pmax + 1 are used as they
    are and give a table-only sequence.

    Raises:
        DomainError: If the inputs are not finite, exceed ``bound``, or
            ``blocks`` is below 2
    """
    p = _indices(pmax)
    if blocks is not None and blocks < 2:
        raise DomainError("blocks", blocks, "block base must be at least 2")
    scalar = np.ndim(d) == 0 and np.ndim(xi) == 0
    d_arr = np.broadcast_to(np.asarray(d, dtype=float), p.shape)
    xi_arr = np.broadcast_to(np.asarray(xi, dtype=float), p.shape)
    for name, values in (("d", d_arr), ("xi", xi_arr)):
        if not np.all(np.isfinite(values)):
            raise DomainError(name, "non-finite", "the representation needs finite inputs")
        worst = float(np.max(np.abs(values)))
        if bound is not None and worst > bound:
            raise DomainError(name, worst, f"|{name}| must stay below {bound:g}")

    if scalar:
        d0, x0 = float(d), float(xi)
        if blocks is None:

            def evaluator(x: np.ndarray) -> np.ndarray:
                return d0 + x0 * _harmonic(x)

        else:

            def evaluator(x: np.ndarray) -> np.ndarray:
                return d0 + x0 * _block_signed_harmonic(x, blocks)

        log_a = evaluator(p)
        return QuotientSequence(
            log_m=log_a,
            evaluator=evaluator,
            ceiling=xmax,
            name=f"orv(d={d0:g},xi={x0:g}{f',blocks={blocks}' if blocks else ''})",
            metadata={"family": "orv_rep", "d": d0, "xi": x0, "blocks": blocks},
        )

    steps = np.concatenate(([0.0], xi_arr[1:] / p[1:]))
    log_a = d_arr + np.cumsum(steps)
    return QuotientSequence(
        log_m=log_a,
        name="orv(table)",
        metadata={
            "family": "orv_rep",
            "d_bound": float(np.max(np.abs(d_arr))),
            "xi_bound": float(np.max(np.abs(xi_arr))),
        },
    )
