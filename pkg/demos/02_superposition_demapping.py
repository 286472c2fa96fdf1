"""Two-layer superposed QPSK: constellation geometry and soft demapping.

Shows the 16-point composite constellation, then compares the two
demodulation modes: interference cancellation when the other layer is
known, and treating it as noise when it is not.
"""

import numpy as np

from swsc_sim import demod_tin, demod_with_known, modulate_superposed

BETA = 0.8
rng = np.random.default_rng(7)

print(f"Composite constellation at beta={BETA} (layer 1 carries {BETA:.0%} of the power):")
seen = set()
for b1i in (0, 1):
    for b2i in (0, 1):
        blk = modulate_superposed(np.array([b1i, b1i]), np.array([b2i, b2i]), BETA)
        s = blk.symbols[0]
        seen.add((b1i, b2i))
        print(f"  layer1 I-bit={b1i}, layer2 I-bit={b2i}:  Re(e) = {s.real:+.4f}")
print("  (Q mirrors I; four amplitude levels per dimension)")

print("\nMean symbol energy over random bits:")
l1 = rng.integers(0, 2, 10 ** 5)
l2 = rng.integers(0, 2, 10 ** 5)
sym = modulate_superposed(l1, l2, BETA).symbols
print(f"  E|e|^2 = {np.mean(np.abs(sym) ** 2):.5f} (unit by construction)")

snr_db = 10.0
nv = 10 ** (-snr_db / 10)
y = sym + np.sqrt(nv / 2) * (rng.standard_normal(sym.shape) + 1j * rng.standard_normal(sym.shape))

print(f"\nDemapping at {snr_db:.0f} dB:")
llr_known = demod_with_known(y, 1, l1, BETA, nv)
ber_known = np.mean((llr_known < 0) != l2.astype(bool))
llr_tin_strong = demod_tin(y, 1, BETA, nv)
ber_tin_strong = np.mean((llr_tin_strong < 0) != l1.astype(bool))
llr_tin_weak = demod_tin(y, 2, BETA, nv)
ber_tin_weak = np.mean((llr_tin_weak < 0) != l2.astype(bool))
print(f"  weak layer, strong layer known and cancelled: raw BER {ber_known:.4f}")
print(f"  strong layer, weak layer treated as noise:    raw BER {ber_tin_strong:.4f}")
print(f"  weak layer, strong layer treated as noise:    raw BER {ber_tin_weak:.4f}")
print("  exact marginalization lets even the weak layer survive TIN when the")
print("  interferer is well separated from the noise level")
