import numpy as np
import pytest

from swsc_sim import ecc
from swsc_sim.baseline import (compensated_info_len, ldpc_stacked_decode, ldpc_stacked_encode,
                               make_baseline_layout, mldpc_decode, mldpc_encode)

BETA = 0.8


def _sym(blocks):
    return np.stack([b.symbols for b in blocks])


def _noisy(y, nv, rng):
    return y + np.sqrt(nv / 2) * (rng.standard_normal(y.shape) + 1j * rng.standard_normal(y.shape))


def test_rate_compensation_rule():
    # r_L <= r_S * N/(N+1), realized by choosing k at fixed n
    assert compensated_info_len(200, 100) == 198
    k_l = compensated_info_len(460, 100)
    assert k_l / 1024 <= (460 / 1024) * (100 / 101) + 1e-12
    assert (k_l + 1) / 1024 > (460 / 1024) * (100 / 101)
    # per info bit the baseline never sends fewer coded bits than the chain scheme
    for k, n_pkts in ((200, 100), (64, 4), (100, 20), (37, 3)):
        k_l = compensated_info_len(k, n_pkts)
        n = 4 * k  # any fixed codeword length
        assert n_pkts * n * k >= (n_pkts + 1) * n * k_l


def test_layout_invariants():
    lay = make_baseline_layout(64, 32, 10, 0.5, seed=1, scheme="mldpc")
    assert lay.per_packet_code.info_len_k == compensated_info_len(32, 10)
    assert lay.tail_packets == 5
    assert lay.tail_code.codeword_len_n == 5 * 64
    assert lay.tail_code.info_len_k == 5 * lay.per_packet_code.info_len_k
    stacked = make_baseline_layout(64, 32, 10, 0.5, seed=1, scheme="ldpc_stacked")
    assert stacked.tail_code is None and stacked.tail_packets == 0
    with pytest.raises(ValueError):
        make_baseline_layout(64, 32, 10, 0.5, seed=1, scheme="bogus")


def test_stacked_noiseless_round_trip():
    rng = np.random.default_rng(0)
    lay = make_baseline_layout(64, 32, 7, 0.0, seed=2)
    k_pay = lay.per_packet_code.info_len_k - 16
    pk = rng.integers(0, 2, (7, k_pay), dtype=np.uint8)
    blocks = ldpc_stacked_encode(pk, lay.per_packet_code, BETA)
    assert len(blocks) == 7  # block_count = N, no extra block
    res = ldpc_stacked_decode(_sym(blocks), lay.per_packet_code, BETA, np.full(7, 1e-9))
    assert np.array_equal(res.packets, pk)
    assert res.crc_ok.all()


def test_mldpc_noiseless_round_trip():
    rng = np.random.default_rng(1)
    lay = make_baseline_layout(64, 32, 4, 0.5, seed=3, scheme="mldpc")
    k_pay = lay.per_packet_code.info_len_k - 16
    pk = rng.integers(0, 2, (4, k_pay), dtype=np.uint8)
    blocks = mldpc_encode(pk, lay.per_packet_code, lay.tail_code, 0.5, BETA)
    assert len(blocks) == 4
    res = mldpc_decode(_sym(blocks), lay.per_packet_code, lay.tail_code, 0.5, BETA,
                       np.full(4, 1e-9))
    assert np.array_equal(res.packets, pk)
    assert [d for d, _ in res.chain_trace] == ["stacked", "stacked", "tail", "tail"]


def test_mldpc_alpha_zero_equals_stacked():
    rng = np.random.default_rng(2)
    lay = make_baseline_layout(64, 32, 5, 0.0, seed=4, scheme="mldpc")
    k_pay = lay.per_packet_code.info_len_k - 16
    for _ in range(30):
        pk = rng.integers(0, 2, (5, k_pay), dtype=np.uint8)
        blocks = mldpc_encode(pk, lay.per_packet_code, None, 0.0, BETA)
        y = _noisy(_sym(blocks), 0.3, rng)
        a = mldpc_decode(y, lay.per_packet_code, None, 0.0, BETA, np.full(5, 0.3))
        b = ldpc_stacked_decode(y, lay.per_packet_code, BETA, np.full(5, 0.3))
        assert np.array_equal(a.packets, b.packets)
        assert np.array_equal(a.crc_ok, b.crc_ok)


def test_mldpc_dimension_validation():
    lay = make_baseline_layout(64, 32, 4, 0.5, seed=5, scheme="mldpc")
    wrong_tail = ecc.make_ldpc(128, 40, seed=6)  # right length, wrong info size
    pk = np.zeros((4, lay.per_packet_code.info_len_k - 16), dtype=np.uint8)
    with pytest.raises(ValueError):
        mldpc_encode(pk, lay.per_packet_code, wrong_tail, 0.5, BETA)
    with pytest.raises(ValueError):
        mldpc_encode(pk, lay.per_packet_code, lay.tail_code, 0.7, BETA)


def test_stacked_minsum_matches_ml_mostly():
    # joint-demapped single block, small code, vs exhaustive ML; 12 dB is
    # the moderate-SNR point for this two-layer constellation at beta 0.8
    from oracles import ml_decode, posterior_llrs_marginal
    rng = np.random.default_rng(3)
    nv = 10 ** -1.2
    code = ecc.make_ldpc(32, 16, seed=7)
    msgs = rng.integers(0, 2, (1000, 16), dtype=np.uint8)
    blocks = ldpc_stacked_encode(msgs, code, BETA, crc=False)
    y = _noisy(_sym(blocks), nv, rng)
    from swsc_sim.baseline import stacked_decode_batch
    p, _, _ = stacked_decode_batch(y[:, None, :], np.full(1, nv), code, BETA, crc=False)
    dec = p[:, 0]
    matches = 0
    for i in range(1000):
        l1 = posterior_llrs_marginal(y[i], BETA, nv, 1)
        l2 = posterior_llrs_marginal(y[i], BETA, nv, 2)
        llr = np.concatenate([l1, l2])
        matches += np.array_equal(dec[i], ml_decode(code, llr))
    assert matches >= 950


def test_concatenation_gain_direction():
    # the long tail code beats per-packet decoding of the same packets in
    # the moderate-error region (below the waterfall both ways, the 4x
    # block length pays off; above it the union bound wins instead)
    from swsc_sim.baseline import mldpc_tail_decode_batch, stacked_decode_batch
    rng = np.random.default_rng(4)
    n_pkts, alpha = 8, 0.5
    lay = make_baseline_layout(64, 32, n_pkts, alpha, seed=8, scheme="mldpc")
    k_pay = lay.per_packet_code.info_len_k - 16
    nv = 0.12
    n_tail = lay.tail_packets
    tail_errs = stacked_errs = 0
    for start in range(0, 2500, 500):
        pk = rng.integers(0, 2, (500, n_pkts, k_pay), dtype=np.uint8)
        ym, ys = [], []
        for i in range(500):
            bm = mldpc_encode(pk[i], lay.per_packet_code, lay.tail_code, alpha, BETA)
            bs = ldpc_stacked_encode(pk[i], lay.per_packet_code, BETA)
            ym.append(_sym(bm[-n_tail:]))
            ys.append(_sym(bs[-n_tail:]))
        ym = _noisy(np.stack(ym), nv, rng)
        ys = _noisy(np.stack(ys), nv, rng)
        pm, _, _ = mldpc_tail_decode_batch(ym, np.full(n_tail, nv), lay.per_packet_code,
                                           lay.tail_code, BETA)
        psb, _, _ = stacked_decode_batch(ys, np.full(n_tail, nv), lay.per_packet_code, BETA)
        tail_errs += int((pm != pk[:, -n_tail:]).any(axis=2).sum())
        stacked_errs += int((psb != pk[:, -n_tail:]).any(axis=2).sum())
    assert stacked_errs > 100  # operating point sanity
    assert tail_errs < stacked_errs
