"""Error-correcting-code layer: seeded LDPC, trivial oracle codes, CRC.

The LDPC construction is a staircase-parity code: H = [A | T] where A is
a sparse random information part (column weight 3, 4-cycle-free where
the size permits) and T is the dual-diagonal staircase, which makes H
full row rank by construction and encoding a cumulative-XOR
back-substitution.  Decoding is normalized min-sum (scale 0.75) with a
per-codeword snapshot at first syndrome convergence, so batched and
single-codeword calls give bit-identical results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

try:
    from numba import njit, prange
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency, but keep a pure path
    _HAVE_NUMBA = False

    def njit(*a, **k):
        def wrap(f):
            return f
        return wrap

    prange = range

LLR_CAP = 30.0
MINSUM_SCALE = 0.75
DEFAULT_ITERS = 25

CRC_POLY_16 = 0x11021  # x^16 + x^12 + x^5 + 1


class ConstructionError(ValueError):
    """Raised when an (n, k) combination is infeasible for a construction."""


@dataclass(frozen=True)
class LlrVector:
    """Per-bit log-likelihood ratios; positive means bit 0 more likely.

    Entries are saturated to +-cap when a cap is given; all entries must
    be finite.
    """

    values: np.ndarray
    cap: float | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if self.cap is not None:
            vals = np.clip(vals, -self.cap, self.cap)
        if not np.all(np.isfinite(vals)):
            raise ValueError("LLR values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.shape[-1]


@dataclass(frozen=True)
class EccCode:
    """A linear block code with soft-input decoding.

    ``parity_structure`` is the dense binary parity-check matrix H
    (m x n, m = n - k) for ldpc/repetition; identity codes have an empty
    H.  Work arrays for encoding/decoding are precomputed and immutable,
    so one instance is safely shared across concurrent workers.
    """

    info_len_k: int
    codeword_len_n: int
    kind: str  # "ldpc" | "repetition" | "identity"
    parity_structure: np.ndarray
    construction_seed: int = 0
    # derived, filled in __post_init__
    rate: float = field(init=False)
    _enc_AT: np.ndarray = field(init=False, repr=False)
    _HT: np.ndarray = field(init=False, repr=False)
    _check_edges: tuple = field(init=False, repr=False)

    def __post_init__(self):
        k, n = self.info_len_k, self.codeword_len_n
        if n % 2 != 0:
            raise ConstructionError(f"codeword length must be even, got n={n}")
        if self.kind == "identity":
            if k != n:
                raise ConstructionError("identity code requires k = n")
        elif not 0 < k < n:
            raise ConstructionError(f"need 0 < k < n, got k={k}, n={n}")
        object.__setattr__(self, "rate", k / n)
        H = np.ascontiguousarray(self.parity_structure, dtype=np.uint8)
        H.setflags(write=False)
        object.__setattr__(self, "parity_structure", H)
        # float32 transposes so GF(2) counting runs through BLAS (row sums
        # stay far below 2**24, so float32 accumulation is exact)
        HT = np.ascontiguousarray(H.T, dtype=np.float32)
        HT.setflags(write=False)
        object.__setattr__(self, "_HT", HT)
        if self.kind == "ldpc":
            m = n - k
            if H.shape != (m, n):
                raise ConstructionError(f"H must be {(m, n)}, got {H.shape}")
            AT = np.ascontiguousarray(H[:, :k].T, dtype=np.float32)
            AT.setflags(write=False)
            object.__setattr__(self, "_enc_AT", AT)
            object.__setattr__(self, "_check_edges", _build_graph(H))
        else:
            object.__setattr__(self, "_enc_AT", np.zeros((k, 0), dtype=np.float32))
            object.__setattr__(self, "_check_edges", ())


def _build_graph(H: np.ndarray):
    """Precompute edge layout for the batched min-sum decoder."""
    m, n = H.shape
    chk, var = np.nonzero(H)
    order = np.lexsort((var, chk))  # edges grouped by check
    chk, var = chk[order].astype(np.int64), var[order].astype(np.int64)
    n_edges = chk.size
    deg_chk = np.bincount(chk, minlength=m)
    deg_var = np.bincount(var, minlength=n)
    dc_max = int(deg_chk.max())
    # padded (m, dc_max) gather table of edge ids per check
    pad = np.full((m, dc_max), -1, dtype=np.int64)
    slot = np.concatenate([np.arange(d) for d in deg_chk]) if n_edges else np.empty(0, int)
    pad[chk, slot] = np.arange(n_edges)
    pad_mask = pad >= 0
    pad_safe = np.where(pad_mask, pad, 0)
    # variable-grouped permutation for per-variable sums via reduceat
    by_var = np.argsort(var, kind="stable")
    var_starts = np.zeros(n, dtype=np.int64)
    np.cumsum(deg_var[:-1], out=var_starts[1:])
    # edge runs per check for the jitted kernel
    check_starts = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(deg_chk, out=check_starts[1:])
    for arr in (chk, var, pad_safe, pad_mask, by_var, var_starts, deg_var, check_starts):
        arr.setflags(write=False)
    return chk, var, pad_safe, pad_mask, by_var, var_starts, deg_var, check_starts


def _staircase(m: int) -> np.ndarray:
    T = np.eye(m, dtype=np.uint8)
    if m > 1:
        T[np.arange(1, m), np.arange(m - 1)] = 1
    return T


def make_ldpc(n: int, k: int, seed: int) -> EccCode:
    """Seeded LDPC code with staircase parity and 4-cycle avoidance.

    Deterministic for fixed (n, k, seed).  Column weight of the
    information part is 3 (less when m < 3).  Girth >= 6 is enforced by
    rejecting columns that would repeat a row pair, falling back to the
    least-colliding candidate when the size leaves no 4-cycle-free
    choice (tiny codes only).
    """
    if not 0 < k < n:
        raise ConstructionError(f"need 0 < k < n, got k={k}, n={n}")
    if n % 2 != 0:
        raise ConstructionError(f"codeword length must be even, got n={n}")
    m = n - k
    dv = min(3, m)
    rng = np.random.default_rng(seed)
    used_pairs: set[tuple[int, int]] = set()
    for j in range(m - 1):  # staircase column pairs
        used_pairs.add((j, j + 1))
    A = np.zeros((m, k), dtype=np.uint8)
    for col in range(k):
        best_rows, best_hits = None, None
        for _ in range(200):
            rows = np.sort(rng.choice(m, size=dv, replace=False))
            pairs = list(itertools.combinations(rows.tolist(), 2))
            hits = sum(p in used_pairs for p in pairs)
            if hits == 0:
                best_rows, best_hits = rows, 0
                break
            if best_hits is None or hits < best_hits:
                best_rows, best_hits = rows, hits
        A[best_rows, col] = 1
        for p in itertools.combinations(best_rows.tolist(), 2):
            used_pairs.add(p)
    H = np.concatenate([A, _staircase(m)], axis=1)
    return EccCode(info_len_k=k, codeword_len_n=n, kind="ldpc",
                   parity_structure=H, construction_seed=seed)


def make_repetition(k: int) -> EccCode:
    """Rate-1/2 repetition code: each info bit transmitted twice, adjacent."""
    n = 2 * k
    H = np.zeros((k, n), dtype=np.uint8)
    H[np.arange(k), 2 * np.arange(k)] = 1
    H[np.arange(k), 2 * np.arange(k) + 1] = 1
    return EccCode(info_len_k=k, codeword_len_n=n, kind="repetition", parity_structure=H)


def make_identity(k: int) -> EccCode:
    """Uncoded passthrough (k = n); useful as a test oracle."""
    return EccCode(info_len_k=k, codeword_len_n=k, kind="identity",
                   parity_structure=np.zeros((0, k), dtype=np.uint8))


def encode(code: EccCode, info: np.ndarray) -> np.ndarray:
    """Encode info bits ((..., k) array) to codewords ((..., n)).

    Systematic for every kind: the first k codeword bits are the info.
    """
    u = np.asarray(info, dtype=np.uint8)
    if u.shape[-1] != code.info_len_k:
        raise ValueError(f"info length {u.shape[-1]} != k={code.info_len_k}")
    if code.kind == "identity":
        return u.copy()
    if code.kind == "repetition":
        return np.repeat(u, 2, axis=-1)
    s = (u.astype(np.float32) @ code._enc_AT).astype(np.int64) & 1
    parity = (np.cumsum(s, axis=-1) & 1).astype(np.uint8)  # staircase back-substitution
    return np.concatenate([u, parity], axis=-1)


def syndrome_ok(code: EccCode, bits: np.ndarray) -> np.ndarray:
    """True where all parity checks are satisfied (batched over leading axes)."""
    if code.parity_structure.shape[0] == 0:
        return np.ones(np.asarray(bits).shape[:-1], dtype=bool)
    b = np.asarray(bits, dtype=np.float32)
    syn = (b @ code._HT).astype(np.int64) & 1
    return ~np.any(syn, axis=-1)


def decode_soft(code: EccCode, llrs, max_iters: int = DEFAULT_ITERS):
    """Soft-decision decode; returns (info_bits, converged).

    LDPC uses normalized min-sum; repetition/identity are exact ML.
    ``converged`` is True iff all parity checks were satisfied at exit.
    """
    vals = llrs.values if isinstance(llrs, LlrVector) else np.asarray(llrs, dtype=float)
    single = vals.ndim == 1
    batch = vals[None, :] if single else vals
    bits, conv = decode_soft_batch(code, batch, max_iters)
    if single:
        return bits[0], bool(conv[0])
    return bits, conv


def decode_soft_batch(code: EccCode, llrs: np.ndarray, max_iters: int = DEFAULT_ITERS):
    """Batched decode over axis 0; see ``decode_soft``."""
    L = np.asarray(llrs, dtype=float)
    if L.ndim != 2 or L.shape[1] != code.codeword_len_n:
        raise ValueError(f"llrs must be (batch, {code.codeword_len_n}), got {L.shape}")
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    k = code.info_len_k
    if code.kind == "identity":
        bits = (L < 0).astype(np.uint8)
        return bits, np.ones(L.shape[0], dtype=bool)
    if code.kind == "repetition":
        pair = L.reshape(L.shape[0], k, 2).sum(axis=2)
        bits = (pair < 0).astype(np.uint8)
        return bits, np.ones(L.shape[0], dtype=bool)
    if _HAVE_NUMBA:
        return _minsum_jit(code, L, max_iters)
    return _minsum(code, L, max_iters)


def _minsum_jit(code: EccCode, L: np.ndarray, max_iters: int):
    _, var, _, _, _, _, _, check_starts = code._check_edges
    L = np.ascontiguousarray(np.clip(L, -LLR_CAP, LLR_CAP))
    B = L.shape[0]
    out_bits = np.zeros((B, code.info_len_k), dtype=np.uint8)
    conv = np.zeros(B, dtype=np.bool_)
    _minsum_kernel(L, var, check_starts, code.info_len_k, max_iters,
                   MINSUM_SCALE, out_bits, conv)
    return out_bits, conv


@njit(parallel=True, cache=True)
def _minsum_kernel(L, var_of_edge, check_starts, k, max_iters, scale, out_bits, conv):
    """Normalized min-sum, one independent codeword per batch row.

    Each row stops at its own first syndrome convergence (identical to a
    solo run), so results never depend on batch composition.
    """
    B, n = L.shape
    E = var_of_edge.size
    m = check_starts.size - 1
    for b in prange(B):
        c2v = np.zeros(E)
        totals = L[b].copy()
        hard = np.empty(n, np.uint8)
        for v in range(n):
            hard[v] = 1 if totals[v] < 0 else 0
        ok = True
        for c in range(m):
            s = 0
            for e in range(check_starts[c], check_starts[c + 1]):
                s ^= hard[var_of_edge[e]]
            if s:
                ok = False
                break
        done = ok
        if not done:
            for _ in range(max_iters):
                for c in range(m):
                    e0, e1 = check_starts[c], check_starts[c + 1]
                    min1 = np.inf
                    min2 = np.inf
                    sgn = 1.0
                    for e in range(e0, e1):
                        t = totals[var_of_edge[e]] - c2v[e]
                        if t < 0.0:
                            sgn = -sgn
                        a = abs(t)
                        if a < min1:
                            min2 = min1
                            min1 = a
                        elif a < min2:
                            min2 = a
                    for e in range(e0, e1):
                        t = totals[var_of_edge[e]] - c2v[e]
                        a = abs(t)
                        mval = min2 if a == min1 else min1
                        ssgn = -sgn if t < 0.0 else sgn
                        c2v[e] = scale * ssgn * mval
                for v in range(n):
                    totals[v] = L[b, v]
                for e in range(E):
                    totals[var_of_edge[e]] += c2v[e]
                for v in range(n):
                    hard[v] = 1 if totals[v] < 0 else 0
                ok = True
                for c in range(m):
                    s = 0
                    for e in range(check_starts[c], check_starts[c + 1]):
                        s ^= hard[var_of_edge[e]]
                    if s:
                        ok = False
                        break
                if ok:
                    done = True
                    break
        for v in range(k):
            out_bits[b, v] = hard[v]
        conv[b] = done


def _minsum(code: EccCode, L: np.ndarray, max_iters: int):
    chk, var, pad, pad_mask, by_var, var_starts, deg_var, _ = code._check_edges
    B = L.shape[0]
    L = np.clip(L, -LLR_CAP, LLR_CAP)
    c2v = np.zeros((B, chk.size))
    totals = L.copy()
    out_bits = np.zeros((B, code.codeword_len_n), dtype=np.uint8)
    done = np.zeros(B, dtype=bool)

    # iteration 0 posterior is just the channel LLRs
    hard = (L < 0).astype(np.uint8)
    ok = syndrome_ok(code, hard)
    out_bits[ok] = hard[ok]
    done |= ok

    it = 0
    while it < max_iters and not done.all():
        it += 1
        # variable-to-check: current posterior minus incoming
        v2c = totals[:, var] - c2v
        # check-to-variable: sign product and two smallest magnitudes, self excluded
        v2c_pad = v2c[:, pad]
        mag = np.where(pad_mask, np.abs(v2c_pad), np.inf)
        sgn = np.where(pad_mask & (v2c_pad < 0), -1.0, 1.0)
        sign_tot = sgn.prod(axis=2)
        if mag.shape[2] >= 2:
            part = np.partition(mag, 1, axis=2)
            min1, min2 = part[:, :, 0], part[:, :, 1]
        else:  # degree-1 checks only (degenerate tiny codes)
            min1 = mag[:, :, 0]
            min2 = np.full_like(min1, np.inf)
        e_mag = np.abs(v2c)
        # the edge holding min1 sees min2 as the min over the others
        e_out = np.where(e_mag == min1[:, chk], min2[:, chk], min1[:, chk])
        e_sgn = np.where(v2c < 0, -1.0, 1.0)
        c2v = MINSUM_SCALE * sign_tot[:, chk] * e_sgn * e_out
        # posterior and syndrome snapshot at first convergence
        totals = L + _var_sums(c2v, by_var, var_starts, deg_var)
        hard = (totals < 0).astype(np.uint8)
        ok = syndrome_ok(code, hard) & ~done
        out_bits[ok] = hard[ok]
        done |= ok

    out_bits[~done] = hard[~done]
    return out_bits[:, :code.info_len_k].copy(), done.copy()


def _var_sums(c2v: np.ndarray, by_var, var_starts, deg_var) -> np.ndarray:
    """Per-variable sum of incoming check messages, (B, n)."""
    grouped = c2v[:, by_var]
    sums = np.add.reduceat(grouped, var_starts, axis=1)
    # reduceat repeats the previous segment where a segment is empty
    if np.any(deg_var == 0):
        sums[:, deg_var == 0] = 0.0
    return sums


# ---------------------------------------------------------------------------
# CRC (linear: init = 0, no xor-out, so crc(0) = 0 and crc(x^y)=crc(x)^crc(y))
# ---------------------------------------------------------------------------

def _crc_len(poly: int) -> int:
    return poly.bit_length() - 1


def _crc_remainder_bits(bits: np.ndarray, poly: int) -> np.ndarray:
    r = _crc_len(poly)
    reg = 0
    for b in bits:
        reg = (reg << 1) | int(b)
        if (reg >> r) & 1:
            reg ^= poly
    for _ in range(r):  # flush r zero bits
        reg <<= 1
        if (reg >> r) & 1:
            reg ^= poly
    return np.array([(reg >> (r - 1 - i)) & 1 for i in range(r)], dtype=np.uint8)


@lru_cache(maxsize=64)
def crc_matrix(msg_len: int, poly: int = CRC_POLY_16) -> np.ndarray:
    """GF(2) matrix R with remainder(x) = x @ R for length-msg_len inputs."""
    if msg_len < 1:
        raise ValueError("msg_len must be positive")
    r = _crc_len(poly)
    R = np.zeros((msg_len, r), dtype=np.uint8)
    unit = np.zeros(msg_len, dtype=np.uint8)
    for i in range(msg_len):
        unit[:] = 0
        unit[i] = 1
        R[i] = _crc_remainder_bits(unit, poly)
    R.setflags(write=False)
    return R


def crc_attach(info: np.ndarray, poly: int = CRC_POLY_16) -> np.ndarray:
    """Append CRC remainder bits to info ((..., L) -> (..., L + r))."""
    u = np.asarray(info, dtype=np.uint8)
    if u.shape[-1] < 1:
        raise ValueError("info must be nonempty")
    R = crc_matrix(u.shape[-1], poly)
    rem = ((u.astype(np.float32) @ R.astype(np.float32)).astype(np.int64) & 1).astype(np.uint8)
    return np.concatenate([u, rem], axis=-1)


def crc_check(bits: np.ndarray, poly: int = CRC_POLY_16) -> np.ndarray | bool:
    """True iff the trailing remainder matches; batched over leading axes."""
    b = np.asarray(bits, dtype=np.uint8)
    r = _crc_len(poly)
    if b.shape[-1] <= r:
        raise ValueError(f"input must exceed the {r} CRC bits")
    R = crc_matrix(b.shape[-1] - r, poly)
    rem = ((b[..., :-r].astype(np.float32) @ R.astype(np.float32)).astype(np.int64) & 1).astype(np.uint8)
    ok = ~np.any(rem ^ b[..., -r:], axis=-1)
    return bool(ok) if ok.ndim == 0 else ok


# ---------------------------------------------------------------------------
# alist interchange format for parity-check matrices
# ---------------------------------------------------------------------------

def write_alist(code: EccCode, path) -> None:
    """Write the parity-check matrix in (padded) alist format."""
    H = code.parity_structure
    m, n = H.shape
    col_deg = H.sum(axis=0).astype(int)
    row_deg = H.sum(axis=1).astype(int)
    dc, dr = int(col_deg.max(initial=0)), int(row_deg.max(initial=0))
    lines = [f"{n} {m}", f"{dc} {dr}",
             " ".join(map(str, col_deg)), " ".join(map(str, row_deg))]
    for j in range(n):
        rows = (np.nonzero(H[:, j])[0] + 1).tolist()
        lines.append(" ".join(map(str, rows + [0] * (dc - len(rows)))))
    for i in range(m):
        cols = (np.nonzero(H[i, :])[0] + 1).tolist()
        lines.append(" ".join(map(str, cols + [0] * (dr - len(cols)))))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> np.ndarray:
    """Read an alist file back into a dense parity-check matrix."""
    with open(path) as fh:
        tokens = [line.split() for line in fh if line.strip()]
    n, m = int(tokens[0][0]), int(tokens[0][1])
    H = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        for r in tokens[4 + j]:
            if int(r) > 0:
                H[int(r) - 1, j] = 1
    return H
