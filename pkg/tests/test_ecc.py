import numpy as np
import pytest

from swsc_sim import ecc
from oracles import ml_decode


def test_make_ldpc_rate_and_determinism():
    code = ecc.make_ldpc(448, 200, seed=1)
    assert code.codeword_len_n == 448 and code.info_len_k == 200
    assert code.rate == pytest.approx(460 / 1024, abs=5e-3)
    again = ecc.make_ldpc(448, 200, seed=1)
    assert np.array_equal(code.parity_structure, again.parity_structure)
    other = ecc.make_ldpc(448, 200, seed=2)
    assert not np.array_equal(code.parity_structure, other.parity_structure)


def test_make_ldpc_tiny():
    code = ecc.make_ldpc(4, 2, seed=0)
    H = code.parity_structure.astype(int)
    assert H.shape == (2, 4)
    # two independent parity checks
    assert (H.sum(axis=1) > 0).all()
    assert not np.array_equal(H[0], H[1])


def test_make_ldpc_full_row_rank():
    for n, k, seed in ((96, 48, 7), (200, 100, 0), (64, 16, 3)):
        H = ecc.make_ldpc(n, k, seed).parity_structure.astype(np.uint8)
        # GF(2) Gaussian elimination
        M = H.copy()
        rank = 0
        for col in range(M.shape[1]):
            rows = np.nonzero(M[rank:, col])[0]
            if rows.size == 0:
                continue
            pivot = rank + rows[0]
            M[[rank, pivot]] = M[[pivot, rank]]
            elim = np.nonzero(M[:, col])[0]
            for r in elim:
                if r != rank:
                    M[r] ^= M[rank]
            rank += 1
            if rank == M.shape[0]:
                break
        assert rank == n - k


def test_make_ldpc_girth_six():
    # no pair of rows may share two columns (no 4-cycles)
    H = ecc.make_ldpc(96, 48, seed=7).parity_structure.astype(int)
    overlap = H @ H.T
    np.fill_diagonal(overlap, 0)
    assert overlap.max() <= 1


def test_make_ldpc_infeasible():
    with pytest.raises(ecc.ConstructionError):
        ecc.make_ldpc(10, 10, seed=0)
    with pytest.raises(ecc.ConstructionError):
        ecc.make_ldpc(9, 4, seed=0)  # odd n
    with pytest.raises(ecc.ConstructionError):
        ecc.make_ldpc(8, 0, seed=0)


def test_encode_examples():
    ident = ecc.make_identity(4)
    msg = np.array([1, 0, 1, 0], dtype=np.uint8)
    assert np.array_equal(ecc.encode(ident, msg), msg)

    rep = ecc.make_repetition(2)
    assert np.array_equal(ecc.encode(rep, np.array([1, 0], dtype=np.uint8)), [1, 1, 0, 0])

    ldpc = ecc.make_ldpc(96, 48, seed=7)
    zero = np.zeros(48, dtype=np.uint8)
    assert not ecc.encode(ldpc, zero).any()


def test_encode_is_linear_and_valid():
    rng = np.random.default_rng(0)
    for code in (ecc.make_ldpc(96, 48, seed=7), ecc.make_repetition(10), ecc.make_identity(8)):
        x = rng.integers(0, 2, (200, code.info_len_k), dtype=np.uint8)
        y = rng.integers(0, 2, (200, code.info_len_k), dtype=np.uint8)
        assert np.array_equal(ecc.encode(code, x ^ y), ecc.encode(code, x) ^ ecc.encode(code, y))
        assert ecc.syndrome_ok(code, ecc.encode(code, x)).all()


def test_encode_length_mismatch():
    code = ecc.make_ldpc(32, 16, seed=0)
    with pytest.raises(ValueError):
        ecc.encode(code, np.zeros(15, dtype=np.uint8))
    with pytest.raises(ValueError):
        ecc.decode_soft(code, np.zeros(31))


def test_decode_identity_example():
    ident = ecc.make_identity(4)
    bits, conv = ecc.decode_soft(ident, np.array([9.0, -9.0, 9.0, 9.0]))
    assert np.array_equal(bits, [0, 1, 0, 0]) and conv


def test_noiseless_round_trip_all_kinds():
    rng = np.random.default_rng(1)
    for code in (ecc.make_ldpc(64, 32, seed=5), ecc.make_repetition(16), ecc.make_identity(16)):
        msgs = rng.integers(0, 2, (1000, code.info_len_k), dtype=np.uint8)
        cw = ecc.encode(code, msgs)
        llrs = np.where(cw == 0, 25.0, -25.0)
        dec, conv = ecc.decode_soft_batch(code, llrs)
        assert conv.all()
        assert np.array_equal(dec, msgs)


def test_minsum_matches_ml_mostly():
    # min-sum is near-ML at this size; measure the agreement set
    code = ecc.make_ldpc(32, 16, seed=9)
    rng = np.random.default_rng(42)
    msgs = rng.integers(0, 2, (1000, 16), dtype=np.uint8)
    cw = ecc.encode(code, msgs)
    snr_db = 4.0
    nv = 10 ** (-snr_db / 10)
    tx = 1.0 - 2.0 * cw.astype(float)
    y = tx + rng.normal(0.0, np.sqrt(nv), cw.shape)
    llrs = 2.0 * y / nv
    dec, _ = ecc.decode_soft_batch(code, llrs)
    matches = sum(np.array_equal(dec[i], ml_decode(code, llrs[i])) for i in range(1000))
    assert matches >= 950


def test_minsum_jit_and_numpy_agree():
    code = ecc.make_ldpc(96, 48, seed=7)
    rng = np.random.default_rng(3)
    msgs = rng.integers(0, 2, (300, 48), dtype=np.uint8)
    cw = ecc.encode(code, msgs)
    y = 1.0 - 2.0 * cw.astype(float) + rng.normal(0, 0.6, cw.shape)
    llrs = 2.0 * y / 0.36
    b1, c1 = ecc._minsum_jit(code, llrs, 25)
    b2, c2 = ecc._minsum(code, llrs, 25)
    assert np.array_equal(c1, c2)
    both = c1 & c2
    assert np.array_equal(b1[both], b2[both])


def test_decode_converged_flag_meaning():
    code = ecc.make_ldpc(64, 32, seed=2)
    rng = np.random.default_rng(4)
    msgs = rng.integers(0, 2, (400, 32), dtype=np.uint8)
    cw = ecc.encode(code, msgs)
    y = 1.0 - 2.0 * cw.astype(float) + rng.normal(0, np.sqrt(0.7), cw.shape)
    llrs = 2.0 * y / 0.7
    dec, conv = ecc.decode_soft_batch(code, llrs, max_iters=8)
    assert conv.any() and (~conv).any()
    correct = (dec == msgs).all(axis=1)
    # parity convergence tracks correctness at this noise level
    assert correct[conv].mean() > 0.9
    assert correct[~conv].mean() < 0.5


def test_crc_properties():
    rng = np.random.default_rng(5)
    for _ in range(20):
        msg = rng.integers(0, 2, 100, dtype=np.uint8)
        tagged = ecc.crc_attach(msg)
        assert tagged.shape == (116,)
        assert ecc.crc_check(tagged)
        flip = tagged.copy()
        flip[rng.integers(0, 116)] ^= 1
        assert not ecc.crc_check(flip)
    assert not ecc.crc_attach(np.zeros(80, dtype=np.uint8))[-16:].any()
    batch = rng.integers(0, 2, (50, 64), dtype=np.uint8)
    assert ecc.crc_check(ecc.crc_attach(batch)).all()
    with pytest.raises(ValueError):
        ecc.crc_attach(np.zeros(0, dtype=np.uint8))


def test_llr_vector():
    v = ecc.LlrVector(np.array([1.0, -50.0, 4.0]), cap=30.0)
    assert v.values.min() == -30.0
    assert len(v) == 3
    with pytest.raises(ValueError):
        ecc.LlrVector(np.array([np.inf, 1.0]))


def test_alist_round_trip(tmp_path):
    code = ecc.make_ldpc(96, 48, seed=7)
    path = tmp_path / "code.alist"
    ecc.write_alist(code, path)
    H = ecc.read_alist(path)
    assert np.array_equal(H, code.parity_structure)
    first = path.read_text().splitlines()[0]
    assert first == "96 48"
