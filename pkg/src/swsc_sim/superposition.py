"""Two-layer superposed QPSK modulation and soft demodulation.

Each complex symbol carries two bits per layer (one on I, one on Q;
even-indexed bit on I, odd on Q, Gray mapping bit 0 -> +1/sqrt(2)):

    e = sqrt(beta) * u1 + sqrt(1 - beta) * u2

with u1, u2 unit-energy QPSK points, so the average symbol energy is 1
by construction.  Layer 1 gets the larger power share (0.5 < beta < 1).

Demapping is exact per dimension: with circularly symmetric noise the I
and Q problems separate, each a 2-point (known interference) or 4-point
(interference marginalized) scalar Gaussian hypothesis test.  All
functions broadcast over leading batch axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SuperposedBlock:
    """One transmitted block: symbols plus the layout metadata."""

    symbols: np.ndarray
    layer_bits_len: int
    power_ratio_beta: float

    def __post_init__(self):
        sym = np.asarray(self.symbols, dtype=complex)
        sym.setflags(write=False)
        object.__setattr__(self, "symbols", sym)
        if sym.shape[-1] * 2 != self.layer_bits_len:
            raise ValueError("symbol count must be layer_bits_len / 2")


def _check_beta(beta: float) -> None:
    if not 0.5 < beta < 1.0:
        raise ValueError(f"beta must lie in (0.5, 1), got {beta}")


def _check_beta_demod(beta: float) -> None:
    # demappers accept any split so layer roles can be swapped (beta <-> 1-beta)
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")


def _amplitudes(beta: float) -> tuple[float, float]:
    """Per-dimension amplitudes of layer 1 and layer 2."""
    return np.sqrt(beta / 2.0), np.sqrt((1.0 - beta) / 2.0)


def _to_dims(bits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a layer bit sequence into (I, Q) antipodal levels (+1 for 0)."""
    b = np.asarray(bits, dtype=np.int64)
    if b.shape[-1] % 2 != 0:
        raise ValueError("layer bit count must be even")
    lev = 1.0 - 2.0 * b
    return lev[..., 0::2], lev[..., 1::2]


def modulate_superposed(layer1, layer2, beta: float) -> SuperposedBlock:
    """Modulate two equal-length even bit sequences into one block."""
    _check_beta(beta)
    b1 = np.asarray(layer1)
    b2 = np.asarray(layer2)
    if b1.shape != b2.shape:
        raise ValueError(f"layer lengths differ: {b1.shape} vs {b2.shape}")
    a1, a2 = _amplitudes(beta)
    i1, q1 = _to_dims(b1)
    i2, q2 = _to_dims(b2)
    sym = (a1 * i1 + a2 * i2) + 1j * (a1 * q1 + a2 * q2)
    return SuperposedBlock(symbols=sym, layer_bits_len=b1.shape[-1], power_ratio_beta=beta)


def modulate_symbols(layer1, layer2, beta: float) -> np.ndarray:
    """Like ``modulate_superposed`` but returns the bare symbol array."""
    return modulate_superposed(layer1, layer2, beta).symbols


def _dim_view(received) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(received, dtype=complex)
    return y.real, y.imag


def _interleave(i_vals: np.ndarray, q_vals: np.ndarray) -> np.ndarray:
    out = np.empty(i_vals.shape[:-1] + (2 * i_vals.shape[-1],), dtype=float)
    out[..., 0::2] = i_vals
    out[..., 1::2] = q_vals
    return out


def demod_with_known(received, known_layer: int, known_bits, beta: float, noise_var):
    """Exact LLRs for one layer given the other layer's bits.

    Reconstructs and subtracts the known layer, leaving an
    interference-free antipodal decision per dimension:
    LLR = 2 * a_target * residual / sigma^2 with sigma^2 = noise_var / 2.
    Positive LLR means bit 0.  Returns raw (unclipped) values.
    """
    nv = np.asarray(noise_var, dtype=float)
    if np.any(nv <= 0):
        raise ValueError("noise_var must be positive")
    if known_layer not in (1, 2):
        raise ValueError("known_layer must be 1 or 2")
    _check_beta_demod(beta)
    a1, a2 = _amplitudes(beta)
    a_known, a_tgt = (a1, a2) if known_layer == 1 else (a2, a1)
    yi, yq = _dim_view(received)
    ki, kq = _to_dims(known_bits)
    scale = 4.0 * a_tgt / nv  # 2 a / (nv/2)
    return _interleave(scale * (yi - a_known * ki), scale * (yq - a_known * kq))


def demod_tin(received, target_layer: int, beta: float, noise_var, exact: bool = True):
    """LLRs for one layer treating the other layer as unknown interference.

    Marginalizes the other layer's bit per dimension: exact
    log-sum-exp over the two hypotheses, or the max-log variant when
    ``exact`` is False.  Positive LLR means bit 0.  Returns raw values.
    """
    nv = np.asarray(noise_var, dtype=float)
    if np.any(nv <= 0):
        raise ValueError("noise_var must be positive")
    if target_layer not in (1, 2):
        raise ValueError("target_layer must be 1 or 2")
    _check_beta_demod(beta)
    a1, a2 = _amplitudes(beta)
    a_tgt, a_oth = (a1, a2) if target_layer == 1 else (a2, a1)
    yi, yq = _dim_view(received)
    sigma2 = nv / 2.0

    def dim_llr(r):
        branches0 = np.stack([-((r - a_tgt - a_oth) ** 2), -((r - a_tgt + a_oth) ** 2)])
        branches1 = np.stack([-((r + a_tgt - a_oth) ** 2), -((r + a_tgt + a_oth) ** 2)])
        branches0 = branches0 / (2.0 * sigma2)
        branches1 = branches1 / (2.0 * sigma2)
        if exact:
            return np.logaddexp(branches0[0], branches0[1]) - np.logaddexp(branches1[0], branches1[1])
        return np.maximum(branches0[0], branches0[1]) - np.maximum(branches1[0], branches1[1])

    return _interleave(dim_llr(yi), dim_llr(yq))


def demod_joint(received, beta: float, noise_var, exact: bool = True):
    """Per-bit LLRs for both layers with neither known.

    Each layer's bits are demapped marginalizing over the other layer
    (the exact per-bit posterior of the composite 16-point
    constellation, which factorizes over I/Q).  Returns (llrs_layer1,
    llrs_layer2).
    """
    return (demod_tin(received, 1, beta, noise_var, exact=exact),
            demod_tin(received, 2, beta, noise_var, exact=exact))
