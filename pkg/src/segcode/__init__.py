"""Zero-error coding for segmented insertion/deletion channels.

The channel model divides a length k*b input into k segments of b
symbols and applies at most one edit (symbol insertion or deletion) per
segment, with no segment markers in the output. This package builds the
VT-subset codes for the three channel variants (deletion only,
insertion only, both), decodes segment by segment in linear time,
verifies zero-error behavior exhaustively or by sampling, and evaluates
rate bounds.
"""

from .bounds import (ChernoffCheck, RateBoundReport, chernoff_tail_check,
                     count_lower_bound, default_alpha, default_kappa,
                     lower_bound_bracket, rate_lower_bound, rate_upper_bound)
from .channel import (apply_pattern, enumerate_patterns, format_pattern,
                      parse_pattern, pattern_count, sample_pattern)
from .construction import (ChannelKind, CodeSet, SegmentedCode, SetSizes,
                           build_code, dumps, encode, load_codebook, loads,
                           message_of, next_role, save_codebook, set_sizes)
from .decoder import (DecodeTrace, SegmentTrace, decode, decode_deletion,
                      decode_insdel, decode_insertion, format_trace)
from .errors import (CodebookFormatError, ContractViolationError,
                     DecodeFailureError, EmptyCodeError, ParameterError,
                     ResourceBudgetError, SegcodeError)
from .seq import Seq
from .verify import (LMReport, VerifyReport, Violation, lm_check,
                     verify_exhaustive, verify_sampled)
from .vt import (VTParams, aux_binary, d1_set, decode_one_deletion,
                 decode_one_insertion, enumerate_vt, i1_set, iter_vt, mod_sum,
                 syndrome, vt_class_size, vt_member, weight)

__version__ = "0.1.0"

__all__ = [
    "ChannelKind", "ChernoffCheck", "CodeSet", "CodebookFormatError",
    "ContractViolationError", "DecodeFailureError", "DecodeTrace",
    "EmptyCodeError", "LMReport", "ParameterError", "RateBoundReport",
    "ResourceBudgetError", "SegcodeError", "SegmentTrace", "SegmentedCode",
    "Seq", "SetSizes", "VTParams", "VerifyReport", "Violation", "apply_pattern",
    "aux_binary", "build_code", "chernoff_tail_check", "count_lower_bound",
    "d1_set", "decode", "decode_deletion", "decode_insdel", "decode_insertion",
    "decode_one_deletion", "decode_one_insertion", "default_alpha",
    "default_kappa", "dumps", "encode", "enumerate_patterns", "enumerate_vt",
    "format_pattern", "format_trace", "i1_set", "iter_vt", "lm_check",
    "load_codebook", "loads", "lower_bound_bracket", "message_of", "mod_sum",
    "next_role", "parse_pattern", "pattern_count", "rate_lower_bound",
    "rate_upper_bound", "sample_pattern", "save_codebook", "set_sizes",
    "syndrome", "verify_exhaustive", "verify_sampled", "vt_class_size",
    "vt_member", "weight",
]
