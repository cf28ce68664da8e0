"""Closed-form quorum statistics and phase-regime bound curves.

For a fixed set U of size m under the generative model, the probability
that U is a quorum is

    (1 - exp(-lambda * (m-1)_{k-1} / (n-1)_{k-1}))^m

with (a)_b the falling factorial. The regime classifier maps the proven
finite-size bound hypotheses onto the (k, lambda) plane: above
2 n^k ln(n) (and k < n/2) quorum intersection fails with high probability;
with k > ln(n) and lambda bounded by n^c it holds with high probability.
"""

from __future__ import annotations

import math
from enum import Enum

from .errors import InvalidParams


class RegimeVerdict(Enum):
    ABOVE_UPPER_BOUND = "above_upper_bound"  # quorum intersection expected to fail
    BELOW_LOWER_BOUND = "below_lower_bound"  # quorum intersection expected to hold
    INDETERMINATE = "indeterminate"


def falling_factorial(a: int, b: int) -> int:
    """(a)_b = a (a-1) ... (a-b+1); 1 when b = 0, 0 when 0 <= a < b."""
    if b < 0:
        raise InvalidParams(f"need b >= 0, got {b}")
    result = 1
    for i in range(b):
        result *= a - i
    return result


def _check_nkm(n: int, k: int, lam: float, m: int) -> None:
    if not 2 <= k <= n:
        raise InvalidParams(f"need 2 <= k <= n, got k={k}, n={n}")
    if not 1 <= m <= n:
        raise InvalidParams(f"need 1 <= m <= n, got m={m}")
    if not lam >= 0:
        raise InvalidParams(f"need lambda >= 0, got {lam}")


def _slice_hit_ratio(n: int, k: int, m: int) -> float:
    """(m-1)_{k-1} / (n-1)_{k-1} as a product of per-factor ratios.

    Per-factor evaluation avoids overflow for large arguments; the result is
    exactly 0 when m < k (a quorum must contain a full slice).
    """
    ratio = 1.0
    for i in range(k - 1):
        num = m - 1 - i
        if num <= 0:
            return 0.0
        ratio *= num / (n - 1 - i)
    return ratio


def quorum_probability(n: int, k: int, lam: float, m: int) -> float:
    """Probability that a fixed size-m set is a quorum."""
    _check_nkm(n, k, lam, m)
    ratio = _slice_hit_ratio(n, k, m)
    # exp underflow clamps to 0 for huge lam*ratio; the error is monotone
    # and far below double precision there
    return (1.0 - math.exp(-lam * ratio)) ** m


def expected_quorum_count(n: int, k: int, lam: float, m: int) -> float:
    """Expected number of size-m quorums: C(n, m) times the fixed-set probability."""
    _check_nkm(n, k, lam, m)
    return math.comb(n, m) * quorum_probability(n, k, lam, m)


def upper_bound_lambda(n: int, k: int) -> float:
    """Threshold 2 n^k ln(n): above it, intersection fails w.h.p. (needs k < n/2)."""
    if not 2 <= k:
        raise InvalidParams(f"need k >= 2, got {k}")
    if not k < n / 2:
        raise InvalidParams(f"upper bound requires k < n/2, got k={k}, n={n}")
    return 2.0 * float(n) ** k * math.log(n)


def classify_regime(n: int, k: int, lam: float, c: float = 1.0) -> RegimeVerdict:
    """Locate (k, lambda) relative to the proven bound curves.

    c is the finite-size reading of the polynomial cap on lambda for the
    holds-w.h.p. regime (lambda <= n^c). Points satisfying both hypotheses
    at once are conservatively reported as indeterminate.
    """
    if not 2 <= k <= n:
        raise InvalidParams(f"need 2 <= k <= n, got k={k}, n={n}")
    if not lam >= 0:
        raise InvalidParams(f"need lambda >= 0, got {lam}")
    if not c >= 0:
        raise InvalidParams(f"need c >= 0, got {c}")
    above = k < n / 2 and lam >= upper_bound_lambda(n, k)
    below = k > math.log(n) and lam <= float(n) ** c
    if above and not below:
        return RegimeVerdict.ABOVE_UPPER_BOUND
    if below and not above:
        return RegimeVerdict.BELOW_LOWER_BOUND
    return RegimeVerdict.INDETERMINATE
