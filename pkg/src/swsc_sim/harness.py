"""Experiment configuration, seeded Monte Carlo runner, sweeps, CSV output.

Every random quantity derives from ``master_seed`` through fixed
SeedSequence spawn keys (stream id, trial index, receiver index), so
results are bit-identical regardless of worker count or batch layout,
and schemes sharing a seed see identical channel noise (common random
numbers).

Two success accountings are provided via ``receiver_model``:

* ``"independent"`` (default): the broadcast reading — each of the N
  receivers gets its own noisy copy of the frame and runs its own chain
  decode just deep enough to reach its packet.  Backward decoding then
  genuinely shortens tail receivers' chains, which is the mechanism
  behind the bidirectional scheme's message-error-rate gain.
* ``"shared"``: one received copy, one full decode per trial; packet i's
  flag is its correctness in that decode.  Under this accounting the
  chain-rule identity MER = 1 - p_clean * p_assumed^(N-1) holds exactly,
  which is what the analytic-consistency checks use.

P_clean is the success rate of chain anchor packets (packet 1, plus
packet N for the bidirectional scheme); P_assumed is success conditioned
on the chain predecessor (forward: previous packet, backward: next).
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import logging
import math
import multiprocessing
import time
from dataclasses import dataclass, fields, replace

import numpy as np

from . import baseline, channel, ecc, swsc
from .analysis import estimate_mer, p_eswsc, p_swsc
from .superposition import modulate_symbols

logger = logging.getLogger(__name__)

SCHEMES = ("swsc", "eswsc", "ldpc_stacked", "mldpc")
RECEIVER_MODELS = ("independent", "shared")
SWEEP_PARAMS = {"snr_db": "snr_db", "k": "transport_block_len_k", "N": "n_packets",
                "alpha": "alpha", "code_rate": "code_rate"}
CSV_HEADER = ("scheme,swept_param,value,trials,failures,mer,ci_low,ci_high,"
              "bler,p_clean,p_assumed,predicted_mer,seed")

_STREAM_MSG, _STREAM_NOISE, _STREAM_CHAN = 0, 1, 2
_STREAM_CODE, _STREAM_CLEAN = 3, 4
_CHUNK = 512


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment; defaults follow the reference downlink setup
    (200-bit transport blocks, rate 460/1024, 16 dB, alpha 0.5, N = 100,
    QPSK, 250 trials)."""

    scheme: str = "swsc"
    transport_block_len_k: int = 200
    code_rate: float = 460 / 1024
    snr_db: float = 16.0
    alpha: float = 0.5
    n_packets: int = 100
    beta: float = 0.8
    modulation: str = "qpsk"
    trials: int = 250
    master_seed: int = 12345
    channel: str = "awgn"          # awgn | rayleigh | noiseless | path to receiver CSV
    crc: bool = True
    receiver_model: str = "independent"
    max_iters: int = 25
    workers: int = 1

    def validate(self) -> None:
        if self.scheme not in SCHEMES:
            raise ConfigError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.modulation != "qpsk":
            raise ConfigError("only QPSK modulation is supported")
        if self.receiver_model not in RECEIVER_MODELS:
            raise ConfigError(f"receiver_model must be one of {RECEIVER_MODELS}")
        if not 0.0 <= self.alpha <= 0.5:
            raise ConfigError(f"alpha must lie in [0, 0.5], got {self.alpha}")
        if not 0.5 < self.beta < 1.0:
            raise ConfigError(f"beta must lie in (0.5, 1), got {self.beta}")
        if self.n_packets < 1:
            raise ConfigError("n_packets must be >= 1")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not 0.0 < self.code_rate < 1.0:
            raise ConfigError("code_rate must lie in (0, 1)")
        if self.transport_block_len_k < 1:
            raise ConfigError("transport_block_len_k must be >= 1")
        if self.max_iters < 1:
            raise ConfigError("max_iters must be >= 1")
        self.code_dims()  # raises on infeasible geometry

    def code_dims(self) -> tuple[int, int]:
        """(n, k_ecc): CRC bits ride inside the code's info part; n is the
        nearest multiple of 4 matching the configured rate."""
        k_ecc = self.transport_block_len_k + (swsc.CRC_BITS if self.crc else 0)
        n = int(round(k_ecc / self.code_rate / 4.0)) * 4
        if n <= k_ecc:
            raise ConfigError(f"code rate {self.code_rate} leaves no parity bits for k_ecc={k_ecc}")
        return n, k_ecc


@dataclass(frozen=True)
class ResultRow:
    """Aggregated outcome of one (scheme, swept value) run."""

    scheme: str
    swept_param: str
    value: float
    trials: int
    failures: int
    mer: float
    ci_low: float
    ci_high: float
    bler: float
    p_clean: float
    p_assumed: float
    predicted_mer: float
    seed: int
    wall_time_s: float = 0.0
    blocks_sent: int = 0
    noise_digest: str = ""
    receiver_model: str = ""
    warnings: tuple = ()

    def csv_line(self) -> str:
        vals = [self.scheme, self.swept_param, _fmt(self.value), str(self.trials),
                str(self.failures), _fmt(self.mer), _fmt(self.ci_low), _fmt(self.ci_high),
                _fmt(self.bler), _fmt(self.p_clean), _fmt(self.p_assumed),
                _fmt(self.predicted_mer), str(self.seed)]
        return ",".join(vals)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


# ---------------------------------------------------------------------------
# seeding
# ---------------------------------------------------------------------------

def _spawn_usable() -> bool:
    """Spawned workers re-import __main__; interactive parents cannot."""
    import os
    import sys
    main_mod = sys.modules.get("__main__")
    path = getattr(main_mod, "__file__", None)
    return bool(path) and os.path.exists(path)


def _rng(master_seed: int, *key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(int(v) for v in key))
    return np.random.default_rng(ss)


def _subseed(master_seed: int, stream: int) -> int:
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(stream,))
    return int(ss.generate_state(1)[0])


def _raw_noise(master_seed: int, trial: int, receiver: int, n_blocks: int, n_sym: int) -> np.ndarray:
    """Unit-variance per-dimension draws, (n_blocks, n_sym, 2); scheme-independent."""
    g = _rng(master_seed, _STREAM_NOISE, trial, receiver)
    return g.standard_normal((n_blocks, n_sym, 2))


def noise_digest(master_seed: int, trials: int, n_packets: int, n_blocks: int, n_sym: int) -> str:
    """Digest of a fixed sample of the noise streams; equal digests mean
    schemes ran on identical channel noise."""
    h = hashlib.sha256()
    probes = [(0, 0)]
    if n_packets > 1:
        probes.append((0, 1))
    if trials > 1:
        probes.append((trials - 1, 0))
    for t, r in probes:
        h.update(_raw_noise(master_seed, t, r, n_blocks, n_sym).tobytes())
    return h.hexdigest()[:16]


# ---------------------------------------------------------------------------
# per-chunk trial engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _RunSpec:
    """Everything a worker needs; built once per run, pickled to workers."""

    config: ExperimentConfig
    code: ecc.EccCode                      # chain code (swsc family) or per-packet code
    tail_code: ecc.EccCode | None
    clean_head: np.ndarray
    clean_tail: np.ndarray
    entries: tuple | None                  # channel file receivers, if any
    k_payload: int
    n_sym: int

    @property
    def n_frame_blocks(self) -> int:
        return self.config.n_packets + (1 if self.config.scheme in ("swsc", "eswsc") else 0)


def _build_spec(config: ExperimentConfig) -> _RunSpec:
    n, k_ecc = config.code_dims()
    if n % 4 != 0:
        raise ConfigError("internal: derived n not a multiple of 4")
    seed_code = _subseed(config.master_seed, _STREAM_CODE)
    entries = None
    if config.channel not in ("awgn", "rayleigh", "noiseless"):
        entries = tuple(channel.load_channel_file(config.channel))
        if config.n_packets > len(entries):
            raise ConfigError(f"config needs {config.n_packets} receivers, "
                              f"file provides {len(entries)}")
    if config.scheme in ("swsc", "eswsc"):
        code = ecc.make_ldpc(n, k_ecc, seed_code)
        tail = None
        k_pay = swsc.payload_len(code, config.crc)
    else:
        layout = baseline.make_baseline_layout(
            n, k_ecc, config.n_packets, config.alpha, seed_code,
            scheme=config.scheme, crc=config.crc)
        code, tail = layout.per_packet_code, layout.tail_code
        k_pay = swsc.payload_len(code, config.crc)
    seed_clean = _subseed(config.master_seed, _STREAM_CLEAN)
    head, tail_seq = swsc.clean_sequences(seed_clean, n // 2)
    return _RunSpec(config=config, code=code, tail_code=tail, clean_head=head,
                    clean_tail=tail_seq, entries=entries, k_payload=k_pay, n_sym=n // 4)


def _trial_messages(spec: _RunSpec, trials: range) -> np.ndarray:
    cfg = spec.config
    out = np.empty((len(trials), cfg.n_packets, spec.k_payload), dtype=np.uint8)
    for i, t in enumerate(trials):
        out[i] = _rng(cfg.master_seed, _STREAM_MSG, t).integers(
            0, 2, size=(cfg.n_packets, spec.k_payload), dtype=np.uint8)
    return out


def _encode_chunk(spec: _RunSpec, msgs: np.ndarray) -> np.ndarray:
    """Transmitted symbols (B, frame_blocks, n_sym) for the chunk."""
    cfg = spec.config
    B, N, _ = msgs.shape
    flat = msgs.reshape(B * N, spec.k_payload)
    if cfg.scheme in ("swsc", "eswsc"):
        c1, c2 = swsc._encode_layers(flat, spec.code, cfg.crc)
        half = spec.code.codeword_len_n // 2
        c1 = c1.reshape(B, N, half)
        c2 = c2.reshape(B, N, half)
        layer1 = np.concatenate([np.broadcast_to(spec.clean_head, (B, 1, half)), c2], axis=1)
        layer2 = np.concatenate([c1, np.broadcast_to(spec.clean_tail, (B, 1, half))], axis=1)
        return modulate_symbols(layer1.reshape(B * (N + 1), half),
                                layer2.reshape(B * (N + 1), half), cfg.beta
                                ).reshape(B, N + 1, spec.n_sym)
    info = ecc.crc_attach(flat) if cfg.crc else flat
    n_tail = math.ceil(cfg.alpha * N) if cfg.scheme == "mldpc" else 0
    n = spec.code.codeword_len_n
    cw = np.empty((B, N, n), dtype=np.uint8)
    info = info.reshape(B, N, -1)
    if N - n_tail:
        cw[:, :N - n_tail] = ecc.encode(spec.code, info[:, :N - n_tail])
    if n_tail:
        long_cw = ecc.encode(spec.tail_code, info[:, N - n_tail:].reshape(B, -1))
        cw[:, N - n_tail:] = long_cw.reshape(B, n_tail, n)
    half = n // 2
    return modulate_symbols(cw[..., :half].reshape(B * N, half),
                            cw[..., half:].reshape(B * N, half), cfg.beta
                            ).reshape(B, N, spec.n_sym)


def _gains_for_chunk(spec: _RunSpec, trials: range):
    """Per-trial, per-receiver gains and noise variances.

    Returns (gain, noise_var): gain is (B, R) complex or (B, R, n_sym)
    for eigen-stream files; noise_var is (B, R) float.  R = N receivers
    (the shared model uses receiver 0).
    """
    cfg = spec.config
    B, R = len(trials), cfg.n_packets
    nv0 = channel.snr_db_to_noise_var(cfg.snr_db)
    if cfg.channel in ("awgn", "noiseless"):
        return np.ones((B, R), dtype=complex), np.full((B, R), max(nv0, channel.MIN_NOISE_VAR))
    if cfg.channel == "rayleigh":
        gain = np.empty((B, R), dtype=complex)
        for i, t in enumerate(trials):
            w = _rng(cfg.master_seed, _STREAM_CHAN, t).standard_normal((R, 2))
            gain[i] = (w[:, 0] + 1j * w[:, 1]) / np.sqrt(2.0)
        return gain, np.full((B, R), max(nv0, channel.MIN_NOISE_VAR))
    # receiver file: scalar gains or per-symbol eigen-stream stripes
    mimo = spec.entries[0].h_matrix is not None
    base_nv = max(nv0, channel.MIN_NOISE_VAR)
    if mimo:
        gain = np.empty((B, R, spec.n_sym), dtype=complex)
    else:
        gain = np.empty((B, R), dtype=complex)
    for i, t in enumerate(trials):
        rng = _rng(cfg.master_seed, _STREAM_CHAN, t)
        picks = channel.draw_receivers(list(spec.entries), R, rng)
        for r, entry in enumerate(picks):
            if mimo:
                sv = channel.svd_subchannels(entry.h_matrix)
                gain[i, r] = sv[np.arange(spec.n_sym) % sv.size]
            else:
                gain[i, r] = 10.0 ** (entry.gain_db / 20.0)
    return gain, np.full((B, R), base_nv)


def _received(spec: _RunSpec, x: np.ndarray, trials: range, receiver: int,
              gain, nv) -> tuple[np.ndarray, np.ndarray]:
    """Gain-equalized received frames and effective per-block noise vars
    for one receiver index across the chunk: y = x + w/g, nv' = nv/|g|^2."""
    cfg = spec.config
    B = len(trials)
    n_blocks = x.shape[1]
    noiseless = cfg.channel == "noiseless"
    y = np.array(x) if noiseless else np.empty_like(x)
    g_r = gain[:, receiver]
    nv_r = nv[:, receiver]
    if not noiseless:
        for i, t in enumerate(trials):
            raw = _raw_noise(cfg.master_seed, t, receiver, cfg.n_packets + 1, spec.n_sym)
            w = (raw[..., 0] + 1j * raw[..., 1]) * np.sqrt(nv_r[i] / 2.0)
            w = w[:n_blocks]
            if g_r.ndim == 2:  # per-symbol eigen gains
                y[i] = x[i] + w / g_r[i][None, :]
            else:
                y[i] = x[i] + w / g_r[i]
    if g_r.ndim == 2:
        nv_eff = nv_r[:, None, None] / np.abs(g_r[:, None, :]) ** 2
        nv_eff = np.broadcast_to(nv_eff, (B, n_blocks, spec.n_sym)).copy()
    else:
        nv_eff = np.broadcast_to((nv_r / np.abs(g_r) ** 2)[:, None], (B, n_blocks)).copy()
    if noiseless:
        nv_eff[:] = channel.MIN_NOISE_VAR
    return y, nv_eff


def _chain_split(cfg: ExperimentConfig) -> tuple[int, int]:
    n_back = math.ceil(cfg.alpha * cfg.n_packets) if cfg.scheme == "eswsc" else 0
    return cfg.n_packets - n_back, n_back


def _decode_shared(spec: _RunSpec, y, nv_eff, msgs) -> np.ndarray:
    cfg = spec.config
    n_fwd, n_back = _chain_split(cfg)
    ok = np.empty(msgs.shape[:2], dtype=bool)
    if cfg.scheme in ("swsc", "eswsc"):
        if n_fwd:
            p, _, _ = swsc.forward_chain_batch(y, nv_eff, spec.code, cfg.beta,
                                               spec.clean_head, n_fwd, crc=cfg.crc,
                                               max_iters=cfg.max_iters)
            ok[:, :n_fwd] = np.all(p == msgs[:, :n_fwd], axis=2)
        if n_back:
            p, _, _ = swsc.backward_chain_batch(y, nv_eff, spec.code, cfg.beta,
                                                spec.clean_tail, n_back, crc=cfg.crc,
                                                max_iters=cfg.max_iters)
            ok[:, n_fwd:] = np.all(p == msgs[:, n_fwd:], axis=2)
        return ok
    n_tail = math.ceil(cfg.alpha * cfg.n_packets) if cfg.scheme == "mldpc" else 0
    head = cfg.n_packets - n_tail
    if head:
        p, _, _ = baseline.stacked_decode_batch(y, nv_eff, spec.code, cfg.beta, crc=cfg.crc,
                                                max_iters=cfg.max_iters,
                                                packet_slice=slice(0, head))
        ok[:, :head] = np.all(p == msgs[:, :head], axis=2)
    if n_tail:
        nvt = nv_eff[:, head:] if nv_eff.ndim >= 2 else nv_eff
        p, _, _ = baseline.mldpc_tail_decode_batch(y[:, head:], nvt, spec.code,
                                                   spec.tail_code, cfg.beta, crc=cfg.crc,
                                                   max_iters=cfg.max_iters)
        ok[:, head:] = np.all(p == msgs[:, head:], axis=2)
    return ok


def _decode_independent(spec: _RunSpec, x, trials, gain, nv, msgs) -> np.ndarray:
    cfg = spec.config
    N = cfg.n_packets
    n_fwd, n_back = _chain_split(cfg)
    n_tail = math.ceil(cfg.alpha * N) if cfg.scheme == "mldpc" else 0
    ok = np.empty((len(trials), N), dtype=bool)
    for r in range(N):
        y, nv_eff = _received(spec, x, trials, r, gain, nv)
        if cfg.scheme in ("swsc", "eswsc") and r < n_fwd:
            p, _, _ = swsc.forward_chain_batch(y, nv_eff, spec.code, cfg.beta,
                                               spec.clean_head, r + 1, crc=cfg.crc,
                                               max_iters=cfg.max_iters)
            ok[:, r] = np.all(p[:, r] == msgs[:, r], axis=1)
        elif cfg.scheme in ("swsc", "eswsc"):
            depth = N - r
            p, _, _ = swsc.backward_chain_batch(y, nv_eff, spec.code, cfg.beta,
                                                spec.clean_tail, depth, crc=cfg.crc,
                                                max_iters=cfg.max_iters)
            ok[:, r] = np.all(p[:, 0] == msgs[:, r], axis=1)
        elif cfg.scheme == "mldpc" and r >= N - n_tail:
            head = N - n_tail
            nvt = nv_eff[:, head:] if nv_eff.ndim >= 2 else nv_eff
            p, _, _ = baseline.mldpc_tail_decode_batch(y[:, head:], nvt, spec.code,
                                                       spec.tail_code, cfg.beta, crc=cfg.crc,
                                                       max_iters=cfg.max_iters)
            ok[:, r] = np.all(p[:, r - head] == msgs[:, r], axis=1)
        else:
            p, _, _ = baseline.stacked_decode_batch(y, nv_eff, spec.code, cfg.beta,
                                                    crc=cfg.crc, max_iters=cfg.max_iters,
                                                    packet_slice=slice(r, r + 1))
            ok[:, r] = np.all(p[:, 0] == msgs[:, r], axis=1)
    return ok


def _run_chunk(spec: _RunSpec, start: int, count: int) -> np.ndarray:
    """Per-packet success flags (count, N) for trials [start, start+count)."""
    cfg = spec.config
    trials = range(start, start + count)
    msgs = _trial_messages(spec, trials)
    x = _encode_chunk(spec, msgs)
    gain, nv = _gains_for_chunk(spec, trials)
    if cfg.receiver_model == "shared":
        y, nv_eff = _received(spec, x, trials, 0, gain, nv)
        return _decode_shared(spec, y, nv_eff, msgs)
    return _decode_independent(spec, x, trials, gain, nv, msgs)


# ---------------------------------------------------------------------------
# accounting and the public runner
# ---------------------------------------------------------------------------

def _accounting(packet_ok: np.ndarray, cfg: ExperimentConfig):
    """(p_clean, p_assumed) measured chain-wise from per-packet flags."""
    n_fwd, n_back = _chain_split(cfg)
    anchors = []
    pairs = []  # (predecessor index, packet index)
    if cfg.scheme == "eswsc":
        if n_fwd:
            anchors.append(0)
            pairs += [(i - 1, i) for i in range(1, n_fwd)]
        if n_back:
            anchors.append(cfg.n_packets - 1)
            pairs += [(i + 1, i) for i in range(cfg.n_packets - 2, n_fwd - 1, -1)]
    else:
        anchors.append(0)
        pairs += [(i - 1, i) for i in range(1, cfg.n_packets)]
    p_clean = float(np.mean(packet_ok[:, anchors]))
    if pairs:
        pred = packet_ok[:, [p for p, _ in pairs]]
        cur = packet_ok[:, [c for _, c in pairs]]
        denom = int(pred.sum())
        p_assumed = float((pred & cur).sum() / denom) if denom else 1.0
    else:
        p_assumed = 1.0
    return p_clean, p_assumed


def run_experiment(config: ExperimentConfig, swept_param: str = "",
                   swept_value: float = float("nan")) -> ResultRow:
    """Run `trials` independent end-to-end trials; aggregate one row."""
    config.validate()
    t0 = time.perf_counter()
    spec = _build_spec(config)
    max_n = max(spec.code.codeword_len_n,
                spec.tail_code.codeword_len_n if spec.tail_code else 0)
    chunk = _CHUNK if max_n <= 2048 else 64
    chunks = [(s, min(chunk, config.trials - s)) for s in range(0, config.trials, chunk)]
    parts = None
    if config.workers > 1 and len(chunks) > 1 and not _spawn_usable():
        logger.warning("worker processes need an importable __main__ module "
                       "(not a REPL/stdin script); running trials serially")
    elif config.workers > 1 and len(chunks) > 1:
        # spawn, not fork: the jitted decoder's threading runtime is not fork-safe
        ctx = multiprocessing.get_context("spawn")
        try:
            with concurrent.futures.ProcessPoolExecutor(max_workers=config.workers,
                                                        mp_context=ctx) as pool:
                parts = list(pool.map(_run_chunk, [spec] * len(chunks),
                                      [c[0] for c in chunks], [c[1] for c in chunks]))
        except (concurrent.futures.process.BrokenProcessPool, OSError) as exc:
            # spawn re-imports __main__, which interactive/stdin parents lack
            logger.warning("worker pool unavailable (%s); running trials serially", exc)
            parts = None
    if parts is None:
        parts = [_run_chunk(spec, s, c) for s, c in chunks]
    packet_ok = np.concatenate(parts, axis=0)
    est = estimate_mer(packet_ok.all(axis=1))
    bler = float(np.mean(~packet_ok))
    p_clean, p_assumed = _accounting(packet_ok, config)
    if config.scheme == "eswsc":
        predicted = 1.0 - p_eswsc(p_clean, p_assumed, config.n_packets, config.alpha)
    else:
        predicted = 1.0 - p_swsc(p_clean, p_assumed, config.n_packets)
    warnings = ()
    if 0 < est.failures < 10:
        warnings = (f"only {est.failures} failures observed; MER resolution "
                    f"is limited to about {10 / config.trials:.2g}",)
        logger.warning(warnings[0])
    digest = noise_digest(config.master_seed, config.trials, config.n_packets,
                          config.n_packets + 1, spec.n_sym)
    return ResultRow(
        scheme=config.scheme, swept_param=swept_param, value=swept_value,
        trials=est.trials, failures=est.failures, mer=est.mer,
        ci_low=est.ci_low, ci_high=est.ci_high, bler=bler,
        p_clean=p_clean, p_assumed=p_assumed, predicted_mer=predicted,
        seed=config.master_seed, wall_time_s=time.perf_counter() - t0,
        blocks_sent=spec.n_frame_blocks, noise_digest=digest,
        receiver_model=config.receiver_model, warnings=warnings)


def sweep(config: ExperimentConfig, param: str, values, schemes=None) -> list[ResultRow]:
    """One run per (scheme, value); same master seed pairs the noise."""
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"unknown sweep parameter {param!r}; choose from {sorted(SWEEP_PARAMS)}")
    values = list(values)
    if not values:
        raise ConfigError("sweep values must be nonempty")
    schemes = list(schemes) if schemes else [config.scheme]
    rows = []
    for scheme in schemes:
        for v in values:
            v_cfg = v / 1024.0 if param == "code_rate" and v > 1 else v
            cfg = replace(config, scheme=scheme,
                          **{SWEEP_PARAMS[param]: type(getattr(config, SWEEP_PARAMS[param]))(v_cfg)})
            rows.append(run_experiment(cfg, swept_param=param, swept_value=float(v)))
    return rows


def trend_flags(rows: list[ResultRow]) -> list[str]:
    """Flag (not fail) MER increases along a sweep that exceed CI overlap."""
    flags = []
    by_scheme: dict[str, list[ResultRow]] = {}
    for r in rows:
        by_scheme.setdefault(r.scheme, []).append(r)
    for scheme, rs in by_scheme.items():
        rs = sorted(rs, key=lambda r: r.value)
        for a, b in zip(rs, rs[1:]):
            if b.mer > a.mer and b.ci_low > a.ci_high:
                flags.append(f"{scheme}: mer rose from {a.mer:.3g} ({a.swept_param}="
                             f"{a.value:g}) to {b.mer:.3g} ({b.value:g}) beyond CI overlap")
    return flags


_PLOT_SCRIPT = '''\
"""Render MER curves from results.csv (log-y); written by emit_results."""
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "results.csv"
rows = list(csv.DictReader(open(path)))
groups = defaultdict(list)
for r in rows:
    groups[(r["scheme"], r["swept_param"])].append(r)
fig, ax = plt.subplots(figsize=(6, 4))
for (scheme, param), rs in sorted(groups.items()):
    rs.sort(key=lambda r: float(r["value"]) if r["value"] != "nan" else 0.0)
    xs = [float(r["value"]) for r in rs]
    ys = [max(float(r["mer"]), 1e-12) for r in rs]
    lo = [max(float(r["ci_low"]), 1e-12) for r in rs]
    hi = [max(float(r["ci_high"]), 1e-12) for r in rs]
    ax.plot(xs, ys, marker="o", label=scheme)
    ax.fill_between(xs, lo, hi, alpha=0.2)
ax.set_yscale("log")
ax.set_xlabel(rows[0]["swept_param"] if rows else "value")
ax.set_ylabel("message error rate")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
fig.tight_layout()
fig.savefig("mer_curves.png", dpi=150)
print("wrote mer_curves.png")
'''


def emit_results(rows: list[ResultRow], out_dir) -> dict[str, str]:
    """Write results.csv (fixed header) and the plot script; returns paths."""
    import os
    if not rows:
        raise ValueError("rows must be nonempty")
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "results.csv")
    with open(csv_path, "w", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            fh.write(r.csv_line() + "\n")
    plot_path = os.path.join(out_dir, "plot_results.py")
    with open(plot_path, "w", newline="\n") as fh:
        fh.write(_PLOT_SCRIPT)
    return {"csv": csv_path, "plot": plot_path}


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from parsed JSON, accepting the N alias."""
    data = dict(data)
    if "N" in data:
        data["n_packets"] = data.pop("N")
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "code_rate" in data and data["code_rate"] > 1:
        data["code_rate"] = data["code_rate"] / 1024.0
    return ExperimentConfig(**data)
