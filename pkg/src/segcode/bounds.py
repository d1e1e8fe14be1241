"""Rate bounds: per-construction pigeonhole lower bounds and the
non-asymptotic converse on any zero-error code's rate.

Lower bounds are exact rationals, so their ceilings are exact. The
converse evaluates two count bounds T1 and T2 in log space; the binomial
tail inequality backing T2 is checked with exact integer arithmetic.
When the parameter regime does not make both bounds meaningful, the
report says so instead of producing a number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .construction import MIN_B, ChannelKind
from .errors import ParameterError


def count_lower_bound(kind: ChannelKind, q: int, b: int) -> Fraction:
    """Exact pigeonhole lower bound on the per-segment codeword count."""
    kind = ChannelKind(kind)
    if q < 2:
        raise ParameterError(f"need q >= 2, got {q}")
    if b < MIN_B[kind]:
        raise ParameterError(f"{kind.value} construction needs b >= {MIN_B[kind]}, got {b}")
    if q == 2:
        if kind is ChannelKind.DELETION:
            return Fraction(2 ** (b - 2), b + 1)
        if kind is ChannelKind.INSERTION:
            return Fraction(2 ** (b - 2) - 2 ** (b - 4) - 1, b + 1)
        return Fraction(2 ** (b - 7), b + 1)
    if kind is ChannelKind.DELETION:
        return Fraction(q ** (b - 2) * (q - 1) ** 2, q * b)
    if kind is ChannelKind.INSERTION:
        return Fraction(q ** (b - 3), q * b)
    return Fraction(q ** (b - 7), q * b)


def lower_bound_bracket(kind: ChannelKind, q: int, b: int) -> int:
    """Ceiling of the exact lower bound (a code this large must exist)."""
    return math.ceil(count_lower_bound(kind, q, b))


def rate_lower_bound(kind: ChannelKind, q: int, b: int) -> float:
    return math.log2(count_lower_bound(kind, q, b)) / b


def default_alpha(b: int) -> float:
    return 1.0 - b ** (-1.0 / 3.0)


def default_kappa(q: int, b: int) -> float:
    return (b ** (1.0 / 3.0) - 1.0) * math.log2(b * (q - 1)) / math.log2(b)


def run_count_threshold(q: int, b: int, kappa: float) -> float:
    """The run-count cutoff r = mu * (1 - eps) used by both count bounds."""
    mu = b * (q - 1) / q
    eps = math.sqrt(2.0 * kappa * q * math.log(b) / ((q - 1) * b))
    return mu * (1.0 - eps)


@dataclass(frozen=True, slots=True)
class RateBoundReport:
    q: int
    b: int
    k: int
    alpha: float
    kappa: float
    r: float
    epsilon: float
    mu: float
    log2_t1: float | None
    log2_t2: float | None
    rate_upper: float | None
    valid: bool

    def summary(self) -> str:
        if not self.valid:
            return (f"q={self.q} b={self.b} k={self.k}: no bound "
                    f"(alpha={self.alpha:.4f}, kappa={self.kappa:.4f} not in the valid regime)")
        return (f"q={self.q} b={self.b} k={self.k}: rate <= {self.rate_upper:.6f} "
                f"(alpha={self.alpha:.4f}, kappa={self.kappa:.4f}, r={self.r:.2f})")


def rate_upper_bound(q: int, b: int, k: int, alpha: float | None = None,
                     kappa: float | None = None) -> RateBoundReport:
    """Evaluate the converse bound rate <= (1 + max(log2 T1, log2 T2)) / (k b).

    T1 counts codewords most of whose segments have many runs; T2 counts
    the rest through the binomial tail. The report is valid only when
    kappa clears log(2q)/log(b), the T1 denominator factor is positive,
    and the run-count cutoff is at least 1.
    """
    if q < 2 or b < 2 or k < 1:
        raise ParameterError(f"need q >= 2, b >= 2, k >= 1; got q={q}, b={b}, k={k}")
    threshold = math.log(2 * q) / math.log(b)
    if alpha is None:
        alpha = default_alpha(b)
    elif not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must be in (0, 1), got {alpha}")
    if kappa is None:
        kappa = default_kappa(q, b)
    elif kappa <= threshold:
        raise ParameterError(f"kappa must exceed log(2q)/log(b) = {threshold:.4f}")

    mu = b * (q - 1) / q
    epsilon = math.sqrt(2.0 * kappa * q * math.log(b) / ((q - 1) * b))
    r = mu * (1.0 - epsilon)
    denom = 1.0 - epsilon - q / ((q - 1) * b)
    valid = kappa > threshold and denom > 0.0 and r >= 1.0
    if not valid:
        return RateBoundReport(q, b, k, alpha, kappa, r, epsilon, mu, None, None, None, False)

    log2_t1 = (1.0 + k * b * math.log2(q)
               - alpha * k * math.log2(b * (q - 1))
               - alpha * k * math.log2(denom))
    log2_t2 = (k + ((b + 1 - alpha) * k + 1) * math.log2(q)
               - kappa * (1 - alpha) * k * math.log2(b))
    rate_upper = (1.0 + max(log2_t1, log2_t2)) / (k * b)
    return RateBoundReport(q, b, k, alpha, kappa, r, epsilon, mu,
                           log2_t1, log2_t2, rate_upper, True)


class ChernoffCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def chernoff_tail_check(q: int, b: int, kappa: float) -> ChernoffCheck:
    """Verify the tail inequality behind T2 with exact integer arithmetic:

        sum_{t=0}^{ceil(r)-1} (1 - 1/q)^t (1/q)^(b-t) C(b-1, t)  <=  b^(-kappa)

    The sum is over a nonnegative run-count cutoff r; when r < 1 the sum
    is empty and the inequality holds vacuously. The sum runs to
    ceil(r) - 1, the conservative direction for the check.
    """
    if q < 2 or b < 2:
        raise ParameterError(f"need q >= 2 and b >= 2, got q={q}, b={b}")
    r = run_count_threshold(q, b, kappa)
    rhs = b ** (-kappa)
    if r < 1.0:
        return ChernoffCheck(0.0, rhs, True)
    upper = math.ceil(r)
    numerator = sum(math.comb(b - 1, t) * (q - 1) ** t for t in range(upper))
    # exact comparison in log space; q**b can be astronomically large
    log_lhs = math.log(numerator) - b * math.log(q)
    holds = log_lhs <= -kappa * math.log(b)
    lhs = math.exp(log_lhs) if log_lhs > -700 else 0.0
    return ChernoffCheck(lhs, rhs, holds)
