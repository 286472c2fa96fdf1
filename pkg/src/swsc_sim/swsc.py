"""Sliding-window superposition coding: encoder and chain decoders.

Layout (N packets, N+1 blocks; c_i1/c_i2 the codeword halves of packet i,
1-based): block 1 layer 1 carries the known head sequence, block N+1
layer 2 the known tail sequence, and

    c_i1 -> layer 2 of block i        (d_i2)
    c_i2 -> layer 1 of block i+1      (d_(i+1)1)

The forward decoder walks windows left to right: demodulate block i's
layer 2 with the current known layer-1 bits, block i+1's layer 1
treating its layer 2 as noise, decode, re-encode, and hand the
re-encoded second half to the next window as its known bits (always,
even when the CRC fails).  The backward decoder is the mirror image
anchored on the tail sequence; a ratio alpha of packets at the tail is
decoded that way, fully independent of the forward chain.

Decoders expect gain-equalized symbols (y/g with noise_var scaled by
1/|g|^2); the harness does that per receiver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ecc
from .superposition import SuperposedBlock, demod_tin, demod_with_known, modulate_symbols

CRC_BITS = 16


@dataclass(frozen=True)
class FrameSequence:
    """Encoder output: N+1 superposed blocks plus layout bookkeeping."""

    blocks: tuple
    packet_count_N: int
    layout: tuple          # per block, (layer1 label, layer2 label)
    clean_head: np.ndarray
    clean_tail: np.ndarray

    @property
    def symbol_matrix(self) -> np.ndarray:
        """(N+1, symbols_per_block) complex view of the blocks."""
        return np.stack([b.symbols for b in self.blocks])


@dataclass(frozen=True)
class DecodeResult:
    """Recovered packets with per-packet CRC flags and chain trace."""

    packets: np.ndarray    # (N, payload_len) uint8
    crc_ok: np.ndarray     # (N,) bool
    chain_trace: tuple     # per packet: (direction, converged)


def payload_len(code: ecc.EccCode, crc: bool) -> int:
    k = code.info_len_k - (CRC_BITS if crc else 0)
    if k < 1:
        raise ValueError("code info length leaves no room for the CRC")
    return k


def clean_sequences(clean_seed: int, half_len: int) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic pseudorandom head/tail known sequences."""
    rng = np.random.default_rng(clean_seed)
    head = rng.integers(0, 2, size=half_len, dtype=np.uint8)
    tail = rng.integers(0, 2, size=half_len, dtype=np.uint8)
    return head, tail


def _encode_layers(packets: np.ndarray, code: ecc.EccCode, crc: bool):
    """CRC-attach (optional), encode, split into halves; batched over packets."""
    pk = np.asarray(packets, dtype=np.uint8)
    k_pay = payload_len(code, crc)
    if pk.ndim != 2 or pk.shape[1] != k_pay:
        raise ValueError(f"packets must be (N, {k_pay}), got {pk.shape}")
    info = ecc.crc_attach(pk) if crc else pk
    b = ecc.encode(code, info)
    half = code.codeword_len_n // 2
    return b[:, :half], b[:, half:]


def swsc_encode(packets, code: ecc.EccCode, beta: float, clean_seed: int,
                crc: bool = True) -> FrameSequence:
    """Encode N packets into N+1 superposed blocks (deterministic)."""
    n = code.codeword_len_n
    if n % 4 != 0:
        raise ValueError("codeword length must be a multiple of 4 for the two-layer split")
    c1, c2 = _encode_layers(packets, code, crc)
    n_pkts = c1.shape[0]
    half = n // 2
    head, tail = clean_sequences(clean_seed, half)
    layer1 = np.concatenate([head[None, :], c2], axis=0)
    layer2 = np.concatenate([c1, tail[None, :]], axis=0)
    sym = modulate_symbols(layer1, layer2, beta)
    blocks = tuple(SuperposedBlock(symbols=sym[i], layer_bits_len=half, power_ratio_beta=beta)
                   for i in range(n_pkts + 1))
    layout = tuple(
        (("clean_head" if i == 0 else f"c{i}2"),
         (f"c{i + 1}1" if i < n_pkts else "clean_tail"))
        for i in range(n_pkts + 1))
    return FrameSequence(blocks=blocks, packet_count_N=n_pkts, layout=layout,
                         clean_head=head, clean_tail=tail)


def _norm_received(received) -> np.ndarray:
    if isinstance(received, FrameSequence):
        y = received.symbol_matrix
    elif isinstance(received, (list, tuple)):
        y = np.stack([np.asarray(getattr(b, "symbols", b), dtype=complex) for b in received])
    else:
        y = np.asarray(received, dtype=complex)
    return y


def _norm_noise(noise_vars, batch: int, n_blocks: int) -> np.ndarray:
    nv = np.asarray(noise_vars, dtype=float)
    if nv.ndim == 0:
        nv = np.full(n_blocks, float(nv))
    if nv.ndim == 1:
        nv = np.broadcast_to(nv[None, :, None], (batch, n_blocks, 1))
    elif nv.ndim == 2:
        nv = nv[:, :, None]
    if nv.shape[1] != n_blocks:
        raise ValueError(f"noise_vars must cover {n_blocks} blocks, got {nv.shape}")
    return nv


def forward_chain_batch(y: np.ndarray, noise_vars, code: ecc.EccCode, beta: float,
                        clean_head: np.ndarray, n_decode: int, crc: bool = True,
                        max_iters: int = ecc.DEFAULT_ITERS, corrupt_hook=None):
    """Decode the first ``n_decode`` packets of batched received frames.

    y is (batch, blocks, symbols), gain-equalized.  Returns
    (payloads (batch, n_decode, k_pay), crc_flags, converged).
    """
    B, n_blocks, _ = y.shape
    nv = _norm_noise(noise_vars, B, n_blocks)
    half = code.codeword_len_n // 2
    k_pay = payload_len(code, crc)
    known = np.broadcast_to(clean_head, (B, half))
    payloads = np.empty((B, n_decode, k_pay), dtype=np.uint8)
    crc_flags = np.ones((B, n_decode), dtype=bool)
    conv = np.empty((B, n_decode), dtype=bool)
    for i in range(n_decode):
        llr_c1 = demod_with_known(y[:, i], 1, known, beta, nv[:, i])
        llr_c2 = demod_tin(y[:, i + 1], 1, beta, nv[:, i + 1])
        L = np.clip(np.concatenate([llr_c1, llr_c2], axis=1), -ecc.LLR_CAP, ecc.LLR_CAP)
        info, ok = ecc.decode_soft_batch(code, L, max_iters)
        conv[:, i] = ok
        if crc:
            crc_flags[:, i] = ecc.crc_check(info)
        payloads[:, i] = info[:, :k_pay]
        # unconditional re-encode: the handoff happens even on CRC failure
        known = ecc.encode(code, info)[:, half:]
        if corrupt_hook is not None and i + 1 < n_decode:
            known = corrupt_hook(i + 1, "forward", known)
    return payloads, crc_flags, conv


def backward_chain_batch(y: np.ndarray, noise_vars, code: ecc.EccCode, beta: float,
                         clean_tail: np.ndarray, n_decode: int, crc: bool = True,
                         max_iters: int = ecc.DEFAULT_ITERS, corrupt_hook=None):
    """Mirror chain: decode the last ``n_decode`` packets, newest first.

    Returned arrays are in packet order (packet N-n_decode .. N-1).
    """
    B, n_blocks, _ = y.shape
    n_pkts = n_blocks - 1
    nv = _norm_noise(noise_vars, B, n_blocks)
    half = code.codeword_len_n // 2
    k_pay = payload_len(code, crc)
    known = np.broadcast_to(clean_tail, (B, half))
    payloads = np.empty((B, n_decode, k_pay), dtype=np.uint8)
    crc_flags = np.ones((B, n_decode), dtype=bool)
    conv = np.empty((B, n_decode), dtype=bool)
    for step, i in enumerate(range(n_pkts - 1, n_pkts - 1 - n_decode, -1)):
        llr_c2 = demod_with_known(y[:, i + 1], 2, known, beta, nv[:, i + 1])
        llr_c1 = demod_tin(y[:, i], 2, beta, nv[:, i])
        L = np.clip(np.concatenate([llr_c1, llr_c2], axis=1), -ecc.LLR_CAP, ecc.LLR_CAP)
        info, ok = ecc.decode_soft_batch(code, L, max_iters)
        slot = n_decode - 1 - step
        conv[:, slot] = ok
        if crc:
            crc_flags[:, slot] = ecc.crc_check(info)
        payloads[:, slot] = info[:, :k_pay]
        known = ecc.encode(code, info)[:, :half]
        if corrupt_hook is not None and step + 1 < n_decode:
            known = corrupt_hook(i - 1, "backward", known)
    return payloads, crc_flags, conv


def swsc_decode(received, code: ecc.EccCode, beta: float, noise_vars, clean_seed: int,
                crc: bool = True, max_iters: int = ecc.DEFAULT_ITERS,
                corrupt_hook=None) -> DecodeResult:
    """Forward sliding-window decode of one received frame."""
    return eswsc_decode(received, 0.0, code, beta, noise_vars, clean_seed,
                        crc=crc, max_iters=max_iters, corrupt_hook=corrupt_hook)


def eswsc_decode(received, alpha: float, code: ecc.EccCode, beta: float, noise_vars,
                 clean_seed: int, crc: bool = True, max_iters: int = ecc.DEFAULT_ITERS,
                 corrupt_hook=None) -> DecodeResult:
    """Bidirectional decode: tail ratio alpha decoded by the mirror chain.

    alpha = 0 reproduces the forward decoder bit for bit.  The chains
    share no state.
    """
    if not 0.0 <= alpha <= 0.5:
        raise ValueError(f"alpha must lie in [0, 0.5], got {alpha}")
    y = _norm_received(received)[None, :, :]
    n_pkts = y.shape[1] - 1
    if n_pkts < 1:
        raise ValueError("received frame must hold at least 2 blocks")
    half = code.codeword_len_n // 2
    head, tail = clean_sequences(clean_seed, half)
    n_back = math.ceil(alpha * n_pkts)
    n_fwd = n_pkts - n_back
    parts, trace = [], []
    if n_fwd:
        pf, cf, vf = forward_chain_batch(y, noise_vars, code, beta, head, n_fwd,
                                         crc=crc, max_iters=max_iters, corrupt_hook=corrupt_hook)
        parts.append((pf, cf, vf))
        trace += [("forward", bool(vf[0, i])) for i in range(n_fwd)]
    if n_back:
        pb, cb, vb = backward_chain_batch(y, noise_vars, code, beta, tail, n_back,
                                          crc=crc, max_iters=max_iters, corrupt_hook=corrupt_hook)
        parts.append((pb, cb, vb))
        trace += [("backward", bool(vb[0, i])) for i in range(n_back)]
    packets = np.concatenate([p[0] for p in parts], axis=1)[0]
    crc_ok = np.concatenate([p[1] for p in parts], axis=1)[0]
    return DecodeResult(packets=packets, crc_ok=crc_ok, chain_trace=tuple(trace))
