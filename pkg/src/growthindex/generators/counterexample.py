"""Weight sequence whose growth index differs from that of its associated function.

The quotients are m_p = exp(sum_{k=1}^p delta_k) with delta_k = c_j on
a_j + 1 <= k <= b_j and delta_k = 0 on b_j + 1 <= k <= a_(j+1), where
a_j = 2^(2(2^(j-1) - 1)), b_j = 2^(2^j - 1) and c_j = 2^(2^(j+1)). The
index k = 1 lies in no block and delta_1 = 0.

All boundaries are exact integers and every c_j is a power of two.
"""

import numpy as np
from numpy.typing import ArrayLike

from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.weights.sequence import QuotientSequence, WeightSequence, from_quotients

logger = get_logger(__name__)

MIN_HORIZON = 128
MAX_BLOCKS = 6


def counterexample_blocks(j_max: int = MAX_BLOCKS) -> list[tuple[int, int, int]]:
    """Exact block data (a_j, b_j, c_j) for j = 1..j_max."""
    if j_max < 1:
        raise DomainError("j_max", j_max, "at least one block")
    return [
        (2 ** (2 * (2 ** (j - 1) - 1)), 2 ** (2**j - 1), 2 ** (2 ** (j + 1)))
        for j in range(1, j_max + 1)
    ]


def _blocks_below(top: float) -> list[tuple[int, int, int]]:
    return [block for block in counterexample_blocks(MAX_BLOCKS) if block[0] <= top]


def counterexample_log_m(p: ArrayLike, top: float | None = None) -> np.ndarray:
    """log m_p = sum_j c_j clip(p - a_j, 0, b_j - a_j)."""
    p = np.asarray(p, dtype=float)
    reach = top if top is not None else (float(np.max(p)) if p.size else 0.0)
    out = np.zeros(p.shape)
    for a, b, c in _blocks_below(reach):
        out = out + float(c) * np.clip(p - a, 0.0, float(b - a))
    return out


def counterexample_log_M(n: ArrayLike, top: float | None = None) -> np.ndarray:
    """log M_n = sum_{q<n} log m_q, summed block by block in closed form."""
    n = np.floor(np.asarray(n, dtype=float))
    reach = top if top is not None else (float(np.max(n)) if n.size else 0.0)
    out = np.zeros(n.shape)
    for a, b, c in _blocks_below(reach):
        length = float(b - a)
        u = n - 1.0 - a
        ramp = np.clip(u, 0.0, length)
        flat = np.maximum(u - length, 0.0)
        out = out + float(c) * (ramp * (ramp + 1.0) / 2.0 + length * flat)
    return out


def counterexample_sequence(pmax: int = 2**15, xmax: float = 1e12) -> WeightSequence:
    """The weight sequence M with gamma(M) = 0 and omega(M) = inf.

    Raises:
        DomainError: If the horizon is below 128
    """
    if pmax < MIN_HORIZON:
        raise DomainError("pmax", pmax, f"the construction needs pmax >= {MIN_HORIZON}")
    p = np.arange(pmax, dtype=float)
    m = QuotientSequence(
        log_m=counterexample_log_m(p, top=xmax),
        evaluator=lambda x: counterexample_log_m(x, top=xmax),
        ceiling=xmax - 1.0,
        name="counterexample",
        metadata={
            "family": "counterexample",
            "blocks": [list(block) for block in _blocks_below(xmax)],
        },
    )
    logger.debug("Built counterexample", horizon=pmax, blocks=len(_blocks_below(xmax)))
    return from_quotients(m, evaluator=lambda x: counterexample_log_M(x, top=xmax + 1.0))


def counterexample_L(M: WeightSequence, P: int | None = None) -> np.ndarray:
    """L_p = log m_p / p for p = 1..P (P defaults to the tabulated quotients)."""
    log_m = M.quotients_table()
    P = log_m.size - 1 if P is None else P
    if P < 1:
        raise DomainError("P", P, "need P >= 1")
    p = np.arange(1, P + 1, dtype=float)
    return M.log_m_at(p) / p


def block_ratio_witnesses(
    M: WeightSequence, ks: tuple[int, ...] = (2, 3, 4)
) -> list[dict[str, float]]:
    """m_{k b_j}/m_{b_j} in log domain for every tabulated k b_j inside a flat stretch."""
    top = M.quotients_table().size - 1
    out: list[dict[str, float]] = []
    blocks = counterexample_blocks(MAX_BLOCKS)
    for j, (_, b, _) in enumerate(blocks[:-1], start=1):
        following = blocks[j][0]
        for k in ks:
            if k * b <= top and k * b < following:
                ends = M.log_m_at(np.array([b, k * b], dtype=float))
                log_ratio = float(ends[1] - ends[0])
                out.append({"j": j, "k": k, "p": b, "log_ratio": log_ratio})
    return out


def upper_block_bound(j: int) -> bool:
    """2 L_{b_j} >= c_j >= L_{a_j} on the exact block data."""
    a, b, c = counterexample_blocks(j)[-1]
    log_m_b = float(counterexample_log_m(np.array([b]), top=b)[0])
    log_m_a = float(counterexample_log_m(np.array([a]), top=b)[0])
    return 2.0 * log_m_b / b >= c >= log_m_a / a
