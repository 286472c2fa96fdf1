"""Analytic message-error-rate model and empirical MER estimation.

The analytic side relates per-packet block error rate (BLER) to the
message error rate (MER) of an N-packet broadcast round, and models the
success probability of chain decoding from the success probability of a
chain's anchor packet (``p_clean``) and the per-packet success
conditioned on the chain predecessor succeeding (``p_assumed``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# two-sided 95% normal quantile, used by the Wilson interval
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class MerEstimate:
    """Empirical MER with a 95% Wilson score interval."""

    trials: int
    failures: int
    mer: float
    ci_low: float
    ci_high: float


def _check_prob(name: str, value) -> None:
    v = np.asarray(value, dtype=float)
    if np.any(v < 0.0) or np.any(v > 1.0) or not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


def mer_from_bler(bler, n_packets: int):
    """MER of an N-packet round given a uniform per-packet BLER.

    MER = 1 - (1 - BLER)^N.  Accepts scalars or arrays.
    """
    _check_prob("bler", bler)
    if n_packets < 1:
        raise ValueError(f"n_packets must be >= 1, got {n_packets}")
    out = 1.0 - (1.0 - np.asarray(bler, dtype=float)) ** n_packets
    return float(out) if np.ndim(bler) == 0 else out


def bler_for_mer(mer, n_packets: int):
    """Per-packet BLER that yields a target MER: 1 - (1 - MER)^(1/N)."""
    m = np.asarray(mer, dtype=float)
    if np.any(m <= 0.0) or np.any(m >= 1.0):
        raise ValueError(f"mer must lie in (0, 1), got {mer!r}")
    if n_packets < 1:
        raise ValueError(f"n_packets must be >= 1, got {n_packets}")
    out = 1.0 - (1.0 - m) ** (1.0 / n_packets)
    return float(out) if np.ndim(mer) == 0 else out


def p_swsc(p_clean, p_assumed, n_packets: int):
    """Success probability of one forward chain of N packets.

    The anchor packet succeeds with ``p_clean``; each of the remaining
    N-1 packets succeeds with ``p_assumed`` given its predecessor did.
    """
    _check_prob("p_clean", p_clean)
    _check_prob("p_assumed", p_assumed)
    if n_packets < 1:
        raise ValueError(f"n_packets must be >= 1, got {n_packets}")
    pc = np.asarray(p_clean, dtype=float)
    pa = np.asarray(p_assumed, dtype=float)
    out = pc * pa ** (n_packets - 1)
    return float(out) if np.ndim(pc) == 0 and np.ndim(pa) == 0 else out


def _chain_factor(pc, pa, length):
    if length == 0:
        return 1.0
    return pc * pa ** (length - 1)


def p_eswsc(p_clean, p_assumed, n_packets: int, alpha: float):
    """Success probability under bidirectional decoding with tail ratio alpha.

    The last B = ceil(alpha*N) packets form a backward chain anchored on
    the known tail sequence, the first N-B a forward chain anchored on
    the known head; the chains are independent, so the total is the
    product of two forward-chain expressions.  alpha = 0 reduces to
    ``p_swsc``; for any alpha with a nonempty tail the product collapses
    to p_clean^2 * p_assumed^(N-2).
    """
    _check_prob("p_clean", p_clean)
    _check_prob("p_assumed", p_assumed)
    if n_packets < 1:
        raise ValueError(f"n_packets must be >= 1, got {n_packets}")
    if not (0.0 <= alpha <= 0.5):
        raise ValueError(f"alpha must lie in [0, 0.5], got {alpha}")
    n_back = math.ceil(alpha * n_packets)
    n_fwd = n_packets - n_back
    if n_back == 0:
        return p_swsc(p_clean, p_assumed, n_packets)
    pc = np.asarray(p_clean, dtype=float)
    pa = np.asarray(p_assumed, dtype=float)
    out = _chain_factor(pc, pa, n_fwd) * _chain_factor(pc, pa, n_back)
    return float(out) if np.ndim(pc) == 0 and np.ndim(pa) == 0 else out


def wilson_interval(failures: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion failures/trials."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= failures <= trials:
        raise ValueError("failures must lie in [0, trials]")
    p = failures / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials)) / denom
    # clamp so the interval always brackets p despite float rounding
    return max(0.0, min(center - half, p)), min(1.0, max(center + half, p))


def estimate_mer(outcomes) -> MerEstimate:
    """Aggregate per-trial all-packets-correct flags into a MerEstimate.

    ``outcomes`` holds one boolean per trial, True meaning every packet
    of that round decoded correctly.
    """
    flags = np.asarray(outcomes, dtype=bool)
    if flags.ndim != 1 or flags.size == 0:
        raise ValueError("outcomes must be a nonempty 1-D sequence of flags")
    trials = int(flags.size)
    failures = int(np.count_nonzero(~flags))
    lo, hi = wilson_interval(failures, trials)
    return MerEstimate(trials=trials, failures=failures, mer=failures / trials, ci_low=lo, ci_high=hi)
