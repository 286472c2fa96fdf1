"""Link-level simulation of sliding-window superposition coding."""

from .analysis import (MerEstimate, bler_for_mer, estimate_mer, mer_from_bler,
                       p_eswsc, p_swsc, wilson_interval)
from .baseline import (BaselineLayout, compensated_info_len, ldpc_stacked_decode,
                       ldpc_stacked_encode, make_baseline_layout, mldpc_decode, mldpc_encode)
from .channel import (ChannelFileError, ChannelRealization, apply_channel, awgn_realization,
                      load_channel_file, rayleigh_realization, snr_db_to_noise_var,
                      svd_realization, svd_subchannels)
from .ecc import (EccCode, LlrVector, crc_attach, crc_check, decode_soft, encode,
                  make_identity, make_ldpc, make_repetition, read_alist, write_alist)
from .harness import ExperimentConfig, ResultRow, emit_results, run_experiment, sweep
from .superposition import (SuperposedBlock, demod_joint, demod_tin, demod_with_known,
                            modulate_superposed)
from .swsc import DecodeResult, FrameSequence, eswsc_decode, swsc_decode, swsc_encode

__all__ = [
    "MerEstimate", "bler_for_mer", "estimate_mer", "mer_from_bler", "p_eswsc", "p_swsc",
    "wilson_interval",
    "BaselineLayout", "compensated_info_len", "ldpc_stacked_decode", "ldpc_stacked_encode",
    "make_baseline_layout", "mldpc_decode", "mldpc_encode",
    "ChannelFileError", "ChannelRealization", "apply_channel", "awgn_realization",
    "load_channel_file", "rayleigh_realization", "snr_db_to_noise_var", "svd_realization",
    "svd_subchannels",
    "EccCode", "LlrVector", "crc_attach", "crc_check", "decode_soft", "encode",
    "make_identity", "make_ldpc", "make_repetition", "read_alist", "write_alist",
    "ExperimentConfig", "ResultRow", "emit_results", "run_experiment", "sweep",
    "SuperposedBlock", "demod_joint", "demod_tin", "demod_with_known", "modulate_superposed",
    "DecodeResult", "FrameSequence", "eswsc_decode", "swsc_decode", "swsc_encode",
]

__version__ = "0.1.0"
