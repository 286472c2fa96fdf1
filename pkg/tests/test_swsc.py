import numpy as np
import pytest

from swsc_sim import ecc
from swsc_sim.swsc import (DecodeResult, backward_chain_batch, clean_sequences,
                           eswsc_decode, forward_chain_batch, swsc_decode, swsc_encode)

BETA = 0.8
SEED = 5
NOISELESS = 1e-9


@pytest.fixture(scope="module")
def code():
    return ecc.make_ldpc(64, 32, seed=3)


def _packets(rng, code, n, crc=True):
    k = code.info_len_k - (16 if crc else 0)
    return rng.integers(0, 2, (n, k), dtype=np.uint8)


def _noisy(fr, nv, rng):
    y = fr.symbol_matrix
    w = np.sqrt(nv / 2) * (rng.standard_normal(y.shape) + 1j * rng.standard_normal(y.shape))
    return y + w


def test_encode_layout_staircase(code):
    rng = np.random.default_rng(0)
    for n in (1, 2, 3, 10, 100):
        fr = swsc_encode(_packets(rng, code, n), code, BETA, SEED)
        assert len(fr.blocks) == n + 1
        assert fr.layout[0][0] == "clean_head"
        assert fr.layout[-1][1] == "clean_tail"
        for i in range(n):
            assert fr.layout[i][1] == f"c{i + 1}1"      # c_i1 on layer 2 of block i
            assert fr.layout[i + 1][0] == f"c{i + 1}2"  # c_i2 on layer 1 of block i+1


def test_encode_layout_small_chain_contents(code):
    # N=1: block 1 = (head, c11), block 2 = (c12, tail)
    rng = np.random.default_rng(1)
    pk = _packets(rng, code, 1)
    fr = swsc_encode(pk, code, BETA, SEED)
    info = ecc.crc_attach(pk)
    cw = ecc.encode(code, info)[0]
    half = code.codeword_len_n // 2
    head, tail = clean_sequences(SEED, half)
    from swsc_sim.superposition import modulate_symbols
    blk1 = modulate_symbols(head, cw[:half], BETA)
    blk2 = modulate_symbols(cw[half:], tail, BETA)
    assert np.allclose(fr.blocks[0].symbols, blk1)
    assert np.allclose(fr.blocks[1].symbols, blk2)


def test_encode_deterministic(code):
    rng = np.random.default_rng(2)
    pk = _packets(rng, code, 4)
    a = swsc_encode(pk, code, BETA, SEED)
    b = swsc_encode(pk, code, BETA, SEED)
    assert np.array_equal(a.symbol_matrix, b.symbol_matrix)
    c = swsc_encode(pk, code, BETA, SEED + 1)
    assert not np.array_equal(a.symbol_matrix, c.symbol_matrix)


def test_encode_argument_errors(code):
    with pytest.raises(ValueError):
        swsc_encode(np.zeros((2, 5), dtype=np.uint8), code, BETA, SEED)
    odd = ecc.make_ldpc(34, 16, seed=0)  # even n but not a multiple of 4
    with pytest.raises(ValueError):
        swsc_encode(np.zeros((2, 0), dtype=np.uint8), odd, BETA, SEED)


def test_noiseless_round_trip_various_n(code):
    rng = np.random.default_rng(3)
    for n in (1, 2, 20, 100):
        pk = _packets(rng, code, n)
        fr = swsc_encode(pk, code, BETA, SEED)
        res = swsc_decode(fr.symbol_matrix, code, BETA, np.full(n + 1, NOISELESS), SEED)
        assert np.array_equal(res.packets, pk)
        assert res.crc_ok.all()
        assert all(d == "forward" and c for d, c in res.chain_trace)


def test_eswsc_noiseless_direction_bookkeeping(code):
    rng = np.random.default_rng(4)
    pk = _packets(rng, code, 4)
    fr = swsc_encode(pk, code, BETA, SEED)
    res = eswsc_decode(fr.symbol_matrix, 0.5, code, BETA, np.full(5, NOISELESS), SEED)
    assert np.array_equal(res.packets, pk)
    assert [d for d, _ in res.chain_trace] == ["forward", "forward", "backward", "backward"]


def test_eswsc_alpha_zero_bit_identical(code):
    rng = np.random.default_rng(5)
    for trial in range(50):
        pk = _packets(rng, code, 6)
        fr = swsc_encode(pk, code, BETA, SEED)
        y = _noisy(fr, 0.2, rng)
        nv = np.full(7, 0.2)
        a = swsc_decode(y, code, BETA, nv, SEED)
        b = eswsc_decode(y, 0.0, code, BETA, nv, SEED)
        assert np.array_equal(a.packets, b.packets)
        assert np.array_equal(a.crc_ok, b.crc_ok)
        assert a.chain_trace == b.chain_trace


def test_eswsc_alpha_validation(code):
    rng = np.random.default_rng(6)
    pk = _packets(rng, code, 2)
    fr = swsc_encode(pk, code, BETA, SEED)
    with pytest.raises(ValueError):
        eswsc_decode(fr.symbol_matrix, 0.6, code, BETA, np.full(3, 0.1), SEED)


def test_chain_independence_under_corruption(code):
    # corrupting forward-side blocks never changes backward-chain outputs
    rng = np.random.default_rng(7)
    n = 8
    alpha = 0.5           # backward decodes packets 5..8 from blocks 5..9
    n_back = 4
    pk = _packets(rng, code, n)
    fr = swsc_encode(pk, code, BETA, SEED)
    y = _noisy(fr, 0.25, rng)
    nv = np.full(n + 1, 0.25)
    base = eswsc_decode(y, alpha, code, BETA, nv, SEED)
    y_bad = y.copy()
    y_bad[:3] = 0.5 * (rng.standard_normal(y_bad[:3].shape)
                       + 1j * rng.standard_normal(y_bad[:3].shape))
    res = eswsc_decode(y_bad, alpha, code, BETA, nv, SEED)
    assert np.array_equal(res.packets[n - n_back:], base.packets[n - n_back:])
    assert np.array_equal(res.crc_ok[n - n_back:], base.crc_ok[n - n_back:])
    # and the mirror: corrupting backward-exclusive blocks leaves the forward chain alone
    y_bad2 = y.copy()
    y_bad2[6:] = 0.5 * (rng.standard_normal(y_bad2[6:].shape)
                        + 1j * rng.standard_normal(y_bad2[6:].shape))
    res2 = eswsc_decode(y_bad2, alpha, code, BETA, nv, SEED)
    assert np.array_equal(res2.packets[:n - n_back], base.packets[:n - n_back])


def test_corruption_hook_degrades_downstream(code):
    # flipping the handoff into window j hurts packets >= j, never earlier ones
    rng = np.random.default_rng(8)
    n, j = 6, 3
    nv = 0.22
    hits_before = np.zeros(j)
    hits_after = 0
    trials = 400
    ok_after = 0
    for _ in range(trials):
        pk = _packets(rng, code, n)
        fr = swsc_encode(pk, code, BETA, SEED)
        y = _noisy(fr, nv, rng)

        def corrupt(pkt_idx, direction, bits):
            if pkt_idx == j:
                flipped = bits.copy()
                flipped[:, ::2] ^= 1
                return flipped
            return bits

        res = swsc_decode(y, code, BETA, np.full(n + 1, nv), SEED, corrupt_hook=corrupt)
        clean = swsc_decode(y, code, BETA, np.full(n + 1, nv), SEED)
        match = (res.packets == pk).all(axis=1)
        match_clean = (clean.packets == pk).all(axis=1)
        hits_before += (match[:j] == match_clean[:j])
        ok_after += match[j:].sum()
    assert np.all(hits_before == trials)  # packets before j untouched
    # statistical degradation downstream of the corrupted handoff
    assert ok_after / (trials * (n - j)) < 0.2


def test_decode_result_shapes(code):
    rng = np.random.default_rng(9)
    pk = _packets(rng, code, 5)
    fr = swsc_encode(pk, code, BETA, SEED)
    res = swsc_decode(fr.symbol_matrix, code, BETA, np.full(6, NOISELESS), SEED)
    assert isinstance(res, DecodeResult)
    assert res.packets.shape == (5, code.info_len_k - 16)
    assert res.crc_ok.shape == (5,)
    assert len(res.chain_trace) == 5


def test_crc_disabled_path(code):
    rng = np.random.default_rng(10)
    pk = rng.integers(0, 2, (3, code.info_len_k), dtype=np.uint8)
    fr = swsc_encode(pk, code, BETA, SEED, crc=False)
    res = swsc_decode(fr.symbol_matrix, code, BETA, np.full(4, NOISELESS), SEED, crc=False)
    assert np.array_equal(res.packets, pk)
    assert res.crc_ok.all()  # vacuously true when disabled


def test_batched_chains_match_single(code):
    rng = np.random.default_rng(11)
    n = 5
    frames = []
    packets = []
    for _ in range(8):
        pk = _packets(rng, code, n)
        fr = swsc_encode(pk, code, BETA, SEED)
        packets.append(pk)
        frames.append(_noisy(fr, 0.2, rng))
    y = np.stack(frames)
    nv = np.full(n + 1, 0.2)
    head, tail = clean_sequences(SEED, code.codeword_len_n // 2)
    pf, cf, vf = forward_chain_batch(y, nv, code, BETA, head, n)
    pb, cb, vb = backward_chain_batch(y, nv, code, BETA, tail, n)
    for b in range(8):
        solo_f = forward_chain_batch(y[b:b + 1], nv, code, BETA, head, n)
        solo_b = backward_chain_batch(y[b:b + 1], nv, code, BETA, tail, n)
        assert np.array_equal(pf[b], solo_f[0][0])
        assert np.array_equal(vf[b], solo_f[2][0])
        assert np.array_equal(pb[b], solo_b[0][0])
        assert np.array_equal(vb[b], solo_b[2][0])
