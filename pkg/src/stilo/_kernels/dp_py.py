"""Pure-Python alignment DP kernel; the reference twin of the Cython version.

Both kernels must evaluate the identical expression tree so a run produces the
same costs and tie-breaks regardless of backend.
"""

from __future__ import annotations

import math
from typing import Sequence

# Bead kinds in tie-break order; index is the kind id shared with align.py.
DELTAS = ((1, 1), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2))

_SQRT2 = math.sqrt(2.0)
_TAIL_FLOOR = 1e-300


def length_cost(l_src: float, l_tgt: float, c: float, s2: float) -> float:
    """-log of the two-sided normal tail of the char-length mismatch."""
    if l_src == 0.0 and l_tgt == 0.0:
        return 0.0
    denom = math.sqrt(max(l_src, 1.0) * s2)
    delta = (l_tgt - c * l_src) / denom
    tail = math.erfc(abs(delta) / _SQRT2)
    if tail < _TAIL_FLOOR:
        tail = _TAIL_FLOOR
    return -math.log(tail)


def align_kinds(
    src_lens: Sequence[float],
    tgt_lens: Sequence[float],
    neg_log_priors: Sequence[float],
    c: float,
    s2: float,
) -> tuple[float, list[int]]:
    """Minimum-cost bead-kind sequence for the given sentence char lengths."""
    n = len(src_lens)
    m = len(tgt_lens)
    src_cum = [0.0] * (n + 1)
    for i, length in enumerate(src_lens):
        src_cum[i + 1] = src_cum[i] + length
    tgt_cum = [0.0] * (m + 1)
    for j, length in enumerate(tgt_lens):
        tgt_cum[j + 1] = tgt_cum[j] + length

    inf = math.inf
    width = m + 1
    cost = [inf] * ((n + 1) * width)
    back = [-1] * ((n + 1) * width)
    cost[0] = 0.0
    for i in range(n + 1):
        row = i * width
        for j in range(m + 1):
            if i == 0 and j == 0:
                continue
            best = inf
            best_kind = -1
            for kind, (di, dj) in enumerate(DELTAS):
                pi = i - di
                pj = j - dj
                if pi < 0 or pj < 0:
                    continue
                prev = cost[pi * width + pj]
                if prev == inf:
                    continue
                total = prev + neg_log_priors[kind] + length_cost(
                    src_cum[i] - src_cum[pi], tgt_cum[j] - tgt_cum[pj], c, s2
                )
                if total < best:
                    best = total
                    best_kind = kind
            cost[row + j] = best
            back[row + j] = best_kind

    kinds: list[int] = []
    i, j = n, m
    while i > 0 or j > 0:
        kind = back[i * width + j]
        kinds.append(kind)
        di, dj = DELTAS[kind]
        i -= di
        j -= dj
    kinds.reverse()
    return cost[n * width + m], kinds
