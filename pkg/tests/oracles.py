"""Independent reference implementations used as test oracles.

These deliberately avoid the library's computation paths: the demapper
oracle enumerates the full 16-point composite constellation with 2-D
Gaussian likelihoods, and the ML decoder enumerates all codewords.
"""

import itertools

import numpy as np


def _logsumexp(vals):
    m = max(vals)
    return float(np.log(np.sum(np.exp(np.asarray(vals) - m))) + m)


def constellation_point(bits4, beta):
    """Symbol for (l1_I, l1_Q, l2_I, l2_Q) by direct formula evaluation."""
    u1 = ((1 - 2 * bits4[0]) + 1j * (1 - 2 * bits4[1])) / np.sqrt(2.0)
    u2 = ((1 - 2 * bits4[2]) + 1j * (1 - 2 * bits4[3])) / np.sqrt(2.0)
    return np.sqrt(beta) * u1 + np.sqrt(1.0 - beta) * u2


def posterior_llrs_known(y, beta, noise_var, known_layer, known_bits):
    """Per-bit LLRs of the unknown layer: 4-hypothesis enumeration."""
    out = []
    for si, ys in enumerate(np.atleast_1d(y)):
        kb = (int(known_bits[2 * si]), int(known_bits[2 * si + 1]))
        off = 0 if known_layer == 1 else 2
        toff = 2 - off
        hyps = []
        for bits in itertools.product((0, 1), repeat=4):
            if (bits[off], bits[off + 1]) != kb:
                continue
            metric = -abs(ys - constellation_point(bits, beta)) ** 2 / noise_var
            hyps.append((bits, metric))
        for pos in range(2):
            num = [m for b, m in hyps if b[toff + pos] == 0]
            den = [m for b, m in hyps if b[toff + pos] == 1]
            out.append(_logsumexp(num) - _logsumexp(den))
    return np.array(out)


def posterior_llrs_marginal(y, beta, noise_var, target_layer):
    """Per-bit LLRs of one layer marginalizing everything else: all 16
    hypotheses of the composite constellation."""
    out = []
    toff = 0 if target_layer == 1 else 2
    for ys in np.atleast_1d(y):
        hyps = [(bits, -abs(ys - constellation_point(bits, beta)) ** 2 / noise_var)
                for bits in itertools.product((0, 1), repeat=4)]
        for pos in range(2):
            num = [m for b, m in hyps if b[toff + pos] == 0]
            den = [m for b, m in hyps if b[toff + pos] == 1]
            out.append(_logsumexp(num) - _logsumexp(den))
    return np.array(out)


def ml_decode(code, llrs):
    """Exhaustive maximum-likelihood decision over all 2^k codewords."""
    k = code.info_len_k
    if k > 16:
        raise ValueError("oracle limited to k <= 16")
    from swsc_sim import ecc
    msgs = np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.uint8)
    books = ecc.encode(code, msgs)
    scores = (1.0 - 2.0 * books.astype(float)) @ np.asarray(llrs, dtype=float)
    return msgs[int(np.argmax(scores))]
