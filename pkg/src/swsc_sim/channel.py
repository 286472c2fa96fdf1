"""Channel models: AWGN, per-receiver scalar fading, imported MIMO-SVD gains.

A ChannelRealization carries one complex gain and one noise variance per
block (gains may also be per-symbol arrays for SVD stream striping).
Receiver files are CSV with a required header, either

    rx_id,gain_db
    rx_id,h00_re,h00_im,...,h33_im      (32 values: row-major 4x4 H)

Noise is circularly symmetric complex Gaussian; everything is
reproducible from explicit seeds or generators.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

MIN_NOISE_VAR = 1e-12


@dataclass(frozen=True)
class ChannelRealization:
    """Per-block gain and noise variance for one receiver."""

    per_block_gain: np.ndarray  # (blocks,) or (blocks, symbols) complex
    noise_var: np.ndarray       # (blocks,) float
    source: str                 # "awgn" | "rayleigh" | "imported_svd" | "noiseless"

    def __post_init__(self):
        g = np.asarray(self.per_block_gain, dtype=complex)
        nv = np.asarray(self.noise_var, dtype=float)
        if self.source != "noiseless" and np.any(nv <= 0):
            raise ValueError("noise_var must be positive for every block")
        g.setflags(write=False)
        nv.setflags(write=False)
        object.__setattr__(self, "per_block_gain", g)
        object.__setattr__(self, "noise_var", nv)


def snr_db_to_noise_var(snr_db: float) -> float:
    """Complex noise variance for unit symbol energy at the given SNR."""
    return 10.0 ** (-snr_db / 10.0)


def awgn_realization(n_blocks: int, snr_db: float) -> ChannelRealization:
    nv = max(snr_db_to_noise_var(snr_db), MIN_NOISE_VAR)
    return ChannelRealization(per_block_gain=np.ones(n_blocks, dtype=complex),
                              noise_var=np.full(n_blocks, nv), source="awgn")


def noiseless_realization(n_blocks: int) -> ChannelRealization:
    return ChannelRealization(per_block_gain=np.ones(n_blocks, dtype=complex),
                              noise_var=np.zeros(n_blocks), source="noiseless")


def rayleigh_realization(n_blocks: int, snr_db: float, rng: np.random.Generator) -> ChannelRealization:
    """Block-constant scalar Rayleigh fading: one CN(0,1) gain per receiver."""
    re, im = rng.standard_normal(2)
    g = (re + 1j * im) / np.sqrt(2.0)
    nv = max(snr_db_to_noise_var(snr_db), MIN_NOISE_VAR)
    return ChannelRealization(per_block_gain=np.full(n_blocks, g),
                              noise_var=np.full(n_blocks, nv), source="rayleigh")


def apply_channel(block, realization_gain, noise_var, rng_seed=None, rng=None) -> np.ndarray:
    """y = g * e + w with w ~ CN(0, noise_var); deterministic per seed."""
    sym = np.asarray(getattr(block, "symbols", block), dtype=complex)
    nv = np.asarray(noise_var, dtype=float)
    if np.any(nv < 0):
        raise ValueError("noise_var must be nonnegative")
    if rng is None:
        rng = np.random.default_rng(rng_seed)
    w = rng.standard_normal(sym.shape + (2,))
    noise = np.sqrt(nv / 2.0) * (w[..., 0] + 1j * w[..., 1])
    return realization_gain * sym + noise


def svd_subchannels(H) -> np.ndarray:
    """Singular values of a channel matrix, non-increasing."""
    Hm = np.asarray(H, dtype=complex)
    if not np.all(np.isfinite(Hm.real)) or not np.all(np.isfinite(Hm.imag)):
        raise ValueError("channel matrix entries must be finite")
    return np.linalg.svd(Hm, compute_uv=False)


def svd_realization(H, n_blocks: int, symbols_per_block: int, snr_db: float) -> ChannelRealization:
    """Eigen-stream realization: symbols striped round-robin over the
    subchannels with equal power per stream."""
    sv = svd_subchannels(H)
    stripe = sv[np.arange(symbols_per_block) % sv.size]
    gains = np.broadcast_to(stripe, (n_blocks, symbols_per_block)).astype(complex)
    nv = max(snr_db_to_noise_var(snr_db), MIN_NOISE_VAR)
    return ChannelRealization(per_block_gain=gains,
                              noise_var=np.full(n_blocks, nv), source="imported_svd")


class ChannelFileError(ValueError):
    """Malformed channel CSV (message carries the offending line number)."""


_SCALAR_HEADER = ["rx_id", "gain_db"]
_MIMO_HEADER = ["rx_id"] + [f"h{i}{j}_{p}" for i in range(4) for j in range(4) for p in ("re", "im")]


@dataclass(frozen=True)
class ReceiverEntry:
    rx_id: str
    gain_db: float | None = None
    h_matrix: np.ndarray | None = None


def load_channel_file(path) -> list[ReceiverEntry]:
    """Parse a receiver CSV into per-receiver entries (up to the trial
    machinery to turn them into realizations)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [(i + 1, [c.strip() for c in r]) for i, r in enumerate(rows) if any(c.strip() for c in r)]
    if not rows:
        raise ChannelFileError("channel file is empty")
    header_line, header = rows[0]
    if header == _SCALAR_HEADER:
        mode = "scalar"
    elif header == _MIMO_HEADER:
        mode = "mimo"
    else:
        raise ChannelFileError(
            f"line {header_line}: header must be '{','.join(_SCALAR_HEADER)}' or the 33-column MIMO form")
    entries: list[ReceiverEntry] = []
    for line_no, row in rows[1:]:
        want = 2 if mode == "scalar" else 33
        if len(row) != want:
            raise ChannelFileError(f"line {line_no}: expected {want} values, got {len(row)}")
        try:
            if mode == "scalar":
                entries.append(ReceiverEntry(rx_id=row[0], gain_db=float(row[1])))
            else:
                vals = np.array([float(v) for v in row[1:]], dtype=float)
                H = (vals[0::2] + 1j * vals[1::2]).reshape(4, 4)
                entries.append(ReceiverEntry(rx_id=row[0], h_matrix=H))
        except ValueError as exc:
            raise ChannelFileError(f"line {line_no}: {exc}") from None
    return entries


def draw_receivers(entries: list[ReceiverEntry], n: int, rng: np.random.Generator) -> list[ReceiverEntry]:
    """Uniformly draw n distinct receivers for a trial."""
    if n > len(entries):
        raise ValueError(f"trial needs {n} receivers but the file provides {len(entries)}")
    idx = rng.choice(len(entries), size=n, replace=False)
    return [entries[i] for i in idx]


def realization_for_entry(entry: ReceiverEntry, n_blocks: int, symbols_per_block: int,
                          snr_db: float) -> ChannelRealization:
    """Turn a file entry into a realization at the configured base SNR."""
    if entry.h_matrix is not None:
        return svd_realization(entry.h_matrix, n_blocks, symbols_per_block, snr_db)
    g = 10.0 ** (entry.gain_db / 20.0)
    nv = max(snr_db_to_noise_var(snr_db), MIN_NOISE_VAR)
    return ChannelRealization(per_block_gain=np.full(n_blocks, g, dtype=complex),
                              noise_var=np.full(n_blocks, nv), source="imported_svd")
