"""LDPC baselines: stacked per-block codes and the concatenated-tail variant.

The stacked scheme fills both layers of block i with packet i's codeword
(no sliding-window offset), so demapping is joint: each layer's bits are
demodulated marginalizing over the other layer.  The concatenated
variant (mldpc) jointly encodes the last ceil(alpha*N) packets with one
long code spanning those blocks, trading latency structure for block
length.

Rate compensation: with the same per-block symbol budget the stacked
schemes transmit N blocks versus N+1, so their code rate is lowered to
r_L = r_S * N / (N+1), realized as k_L = floor(k_S * N / (N+1)) at fixed
n.  Per info bit they then send at least as many coded bits as the
sliding-window scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ecc
from .swsc import CRC_BITS, DecodeResult, payload_len
from .superposition import SuperposedBlock, demod_joint, modulate_symbols


@dataclass(frozen=True)
class BaselineLayout:
    """Code assignment for a baseline run."""

    scheme: str                      # "ldpc_stacked" | "mldpc"
    per_packet_code: ecc.EccCode
    tail_code: ecc.EccCode | None
    alpha: float
    block_count: int

    @property
    def tail_packets(self) -> int:
        if self.scheme != "mldpc":
            return 0
        return math.ceil(self.alpha * self.block_count)


def compensated_info_len(k_swsc: int, n_packets: int) -> int:
    """Largest baseline info length with per-info-bit airtime >= the
    sliding-window scheme's: k_L = floor(k * N / (N+1))."""
    k_l = (k_swsc * n_packets) // (n_packets + 1)
    if k_l < 1:
        raise ValueError(f"rate compensation leaves no info bits (k={k_swsc}, N={n_packets})")
    return k_l


def make_baseline_layout(n: int, k_swsc: int, n_packets: int, alpha: float, seed: int,
                         scheme: str = "ldpc_stacked", crc: bool = True) -> BaselineLayout:
    """Build the rate-compensated codes for a baseline run."""
    if scheme not in ("ldpc_stacked", "mldpc"):
        raise ValueError(f"unknown baseline scheme {scheme!r}")
    k_l = compensated_info_len(k_swsc, n_packets)
    if crc and k_l <= CRC_BITS:
        raise ValueError("compensated info length cannot fit the CRC")
    per_packet = ecc.make_ldpc(n, k_l, seed)
    tail = None
    if scheme == "mldpc":
        n_tail = math.ceil(alpha * n_packets)
        if n_tail > 0:
            tail = ecc.make_ldpc(n_tail * n, n_tail * k_l, seed + 1)
    return BaselineLayout(scheme=scheme, per_packet_code=per_packet, tail_code=tail,
                          alpha=alpha, block_count=n_packets)


def _packets_to_info(packets, code: ecc.EccCode, crc: bool) -> np.ndarray:
    pk = np.asarray(packets, dtype=np.uint8)
    k_pay = payload_len(code, crc)
    if pk.ndim != 2 or pk.shape[1] != k_pay:
        raise ValueError(f"packets must be (N, {k_pay}), got {pk.shape}")
    return ecc.crc_attach(pk) if crc else pk


def _codewords_to_blocks(cw: np.ndarray, beta: float) -> np.ndarray:
    half = cw.shape[-1] // 2
    return modulate_symbols(cw[..., :half], cw[..., half:], beta)


def ldpc_stacked_encode(packets, code: ecc.EccCode, beta: float,
                        crc: bool = True) -> list[SuperposedBlock]:
    """One block per packet: codeword halves on the two layers."""
    if code.codeword_len_n % 4 != 0:
        raise ValueError("codeword length must be a multiple of 4 for the two-layer split")
    info = _packets_to_info(packets, code, crc)
    cw = ecc.encode(code, info)
    sym = _codewords_to_blocks(cw, beta)
    half = code.codeword_len_n // 2
    return [SuperposedBlock(symbols=sym[i], layer_bits_len=half, power_ratio_beta=beta)
            for i in range(sym.shape[0])]


def stacked_decode_batch(y: np.ndarray, noise_vars, code: ecc.EccCode, beta: float,
                         crc: bool = True, max_iters: int = ecc.DEFAULT_ITERS,
                         packet_slice: slice | None = None):
    """Joint-demap and decode packets from batched block matrices.

    y is (batch, blocks, symbols); ``packet_slice`` restricts which
    blocks are decoded (defaults to all).  Returns (payloads, crc_flags,
    converged) over the selected packets.
    """
    B, n_blocks, S = y.shape
    nv = np.asarray(noise_vars, dtype=float)
    if nv.ndim == 0:
        nv = np.full(n_blocks, float(nv))
    if nv.ndim == 1:
        nv = np.broadcast_to(nv[None, :, None], (B, n_blocks, 1))
    elif nv.ndim == 2:
        nv = nv[:, :, None]
    sel = packet_slice or slice(0, n_blocks)
    idx = range(*sel.indices(n_blocks))
    k_pay = payload_len(code, crc)
    n_sel = len(idx)
    payloads = np.empty((B, n_sel, k_pay), dtype=np.uint8)
    crc_flags = np.ones((B, n_sel), dtype=bool)
    conv = np.empty((B, n_sel), dtype=bool)
    for j, i in enumerate(idx):
        l1, l2 = demod_joint(y[:, i], beta, nv[:, i])
        L = np.clip(np.concatenate([l1, l2], axis=1), -ecc.LLR_CAP, ecc.LLR_CAP)
        info, ok = ecc.decode_soft_batch(code, L, max_iters)
        conv[:, j] = ok
        if crc:
            crc_flags[:, j] = ecc.crc_check(info)
        payloads[:, j] = info[:, :k_pay]
    return payloads, crc_flags, conv


def ldpc_stacked_decode(received, code: ecc.EccCode, beta: float, noise_vars,
                        crc: bool = True, max_iters: int = ecc.DEFAULT_ITERS) -> DecodeResult:
    from .swsc import _norm_received
    y = _norm_received(received)[None, :, :]
    p, c, v = stacked_decode_batch(y, noise_vars, code, beta, crc=crc, max_iters=max_iters)
    trace = tuple(("stacked", bool(v[0, i])) for i in range(p.shape[1]))
    return DecodeResult(packets=p[0], crc_ok=c[0], chain_trace=trace)


def mldpc_encode(packets, per_packet_code: ecc.EccCode, tail_code: ecc.EccCode | None,
                 alpha: float, beta: float, crc: bool = True) -> list[SuperposedBlock]:
    """Stacked head plus one long codeword spread over the tail blocks."""
    if not 0.0 <= alpha <= 0.5:
        raise ValueError(f"alpha must lie in [0, 0.5], got {alpha}")
    pk = np.asarray(packets, dtype=np.uint8)
    n_pkts = pk.shape[0]
    n_tail = math.ceil(alpha * n_pkts)
    if n_tail == 0:
        return ldpc_stacked_encode(packets, per_packet_code, beta, crc=crc)
    n = per_packet_code.codeword_len_n
    if tail_code is None or tail_code.codeword_len_n != n_tail * n \
            or tail_code.info_len_k != n_tail * per_packet_code.info_len_k:
        raise ValueError("tail code dimensions must be tail_packets x per-packet dimensions")
    info = _packets_to_info(pk, per_packet_code, crc)
    blocks = ldpc_stacked_encode(pk[: n_pkts - n_tail], per_packet_code, beta, crc=crc) \
        if n_tail < n_pkts else []
    long_cw = ecc.encode(tail_code, info[n_pkts - n_tail:].reshape(-1))
    half = n // 2
    per_block = long_cw.reshape(n_tail, n)
    sym = _codewords_to_blocks(per_block, beta)
    blocks += [SuperposedBlock(symbols=sym[i], layer_bits_len=half, power_ratio_beta=beta)
               for i in range(n_tail)]
    return blocks


def mldpc_tail_decode_batch(y_tail: np.ndarray, noise_vars_tail, per_packet_code: ecc.EccCode,
                            tail_code: ecc.EccCode, beta: float, crc: bool = True,
                            max_iters: int = ecc.DEFAULT_ITERS):
    """Decode the concatenated tail from its blocks ((batch, tail, S)).

    Returns per-packet (payloads, crc_flags, converged); converged is the
    long decode's flag replicated per packet.
    """
    B, n_tail, S = y_tail.shape
    nv = np.asarray(noise_vars_tail, dtype=float)
    if nv.ndim == 1:
        nv = np.broadcast_to(nv[None, :, None], (B, n_tail, 1))
    elif nv.ndim == 2:
        nv = nv[:, :, None]
    chunks = []
    for j in range(n_tail):
        l1, l2 = demod_joint(y_tail[:, j], beta, nv[:, j])
        chunks.append(np.concatenate([l1, l2], axis=1))
    L = np.clip(np.concatenate(chunks, axis=1), -ecc.LLR_CAP, ecc.LLR_CAP)
    info, ok = ecc.decode_soft_batch(tail_code, L, max_iters)
    k_each = per_packet_code.info_len_k
    info = info.reshape(B, n_tail, k_each)
    k_pay = payload_len(per_packet_code, crc)
    payloads = info[:, :, :k_pay]
    crc_flags = ecc.crc_check(info.reshape(B * n_tail, k_each)).reshape(B, n_tail) if crc \
        else np.ones((B, n_tail), dtype=bool)
    conv = np.broadcast_to(ok[:, None], (B, n_tail))
    return payloads, crc_flags, conv


def mldpc_decode(received, per_packet_code: ecc.EccCode, tail_code: ecc.EccCode | None,
                 alpha: float, beta: float, noise_vars, crc: bool = True,
                 max_iters: int = ecc.DEFAULT_ITERS) -> DecodeResult:
    from .swsc import _norm_received
    if not 0.0 <= alpha <= 0.5:
        raise ValueError(f"alpha must lie in [0, 0.5], got {alpha}")
    y = _norm_received(received)[None, :, :]
    n_pkts = y.shape[1]
    n_tail = math.ceil(alpha * n_pkts)
    if n_tail == 0:
        return ldpc_stacked_decode(received, per_packet_code, beta, noise_vars,
                                   crc=crc, max_iters=max_iters)
    nv = np.asarray(noise_vars, dtype=float)
    if nv.ndim == 0:
        nv = np.full(n_pkts, float(nv))
    head = slice(0, n_pkts - n_tail)
    parts = []
    trace = []
    if n_pkts - n_tail:
        ph, ch, vh = stacked_decode_batch(y, nv[None, :] if nv.ndim == 1 else nv,
                                          per_packet_code, beta, crc=crc,
                                          max_iters=max_iters, packet_slice=head)
        parts.append((ph, ch, vh))
        trace += [("stacked", bool(vh[0, i])) for i in range(ph.shape[1])]
    nv_tail = nv[n_pkts - n_tail:] if nv.ndim == 1 else nv[:, n_pkts - n_tail:]
    pt, ct, vt = mldpc_tail_decode_batch(y[:, n_pkts - n_tail:], nv_tail, per_packet_code,
                                         tail_code, beta, crc=crc, max_iters=max_iters)
    parts.append((pt, ct, vt))
    trace += [("tail", bool(vt[0, i])) for i in range(pt.shape[1])]
    packets = np.concatenate([p[0] for p in parts], axis=1)[0]
    crc_ok = np.concatenate([p[1] for p in parts], axis=1)[0]
    return DecodeResult(packets=packets, crc_ok=crc_ok, chain_trace=tuple(trace))
