"""Zero-error verification harnesses and the three-condition set checker.

verify_exhaustive runs every message against every edit pattern and
records each case where decoding does not return the transmitted
sequence. verify_sampled draws seeded random messages and patterns.
Both are deterministic: violations appear in (message index, pattern
index) order regardless of worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .channel import (EditPattern, apply_pattern, pattern_count, sample_pattern,
                      segment_options)
from .construction import SegmentedCode, encode
from .decoder import decode
from .errors import ParameterError, ResourceBudgetError, SegcodeError
from .seq import Seq
from .vt import i1_set

#: default ceiling on decode operations for one exhaustive run.
VERIFY_BUDGET = 10**8

#: fold factors deriving per-(message, pattern) seeds; documented so runs
#: are reproducible across platforms.
_MSG_STRIDE = 2**28
_PAT_STRIDE = 2**14


@dataclass(frozen=True, slots=True)
class Violation:
    message_index: int
    message: tuple[int, ...]
    pattern: EditPattern
    outcome: str    # decoded text or "error: ..."


@dataclass
class VerifyReport:
    kind: str
    q: int
    b: int
    k: int
    codewords_tested: int = 0
    patterns_tested: int = 0
    violations: list[Violation] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "zero-error" if self.ok else f"{len(self.violations)} violations"
        return (f"kind={self.kind} q={self.q} b={self.b} k={self.k} "
                f"messages={self.codewords_tested} pairs={self.patterns_tested} "
                f"elapsed={self.elapsed_s:.2f}s: {status}")


def _message_from_index(idx: int, ms: int, k: int) -> tuple[int, ...]:
    digits = []
    for _ in range(k):
        idx, d = divmod(idx, ms)
        digits.append(d)
    return tuple(reversed(digits))


def _check_pair(code, k, msg_idx, message, x, pat_idx, pattern, violations):
    y = apply_pattern(x, pattern, code.b)
    try:
        decoded, _ = decode(code, y, k)
        if decoded.data != x.data:
            violations.append(Violation(msg_idx, message, pattern, decoded.text()))
    except SegcodeError as exc:
        violations.append(Violation(msg_idx, message, pattern, f"error: {exc}"))


def _exhaustive_range(code: SegmentedCode, k: int, start: int, stop: int):
    options = segment_options(code.kind, code.q, code.b)
    import itertools
    violations: list[Violation] = []
    pairs = 0
    for msg_idx in range(start, stop):
        message = _message_from_index(msg_idx, code.ms, k)
        x = encode(code, message)
        for pat_idx, pattern in enumerate(itertools.product(options, repeat=k)):
            pairs += 1
            _check_pair(code, k, msg_idx, message, x, pat_idx, pattern, violations)
    return stop - start, pairs, violations


def verify_exhaustive(code: SegmentedCode, k: int, budget: int = VERIFY_BUDGET,
                      threads: int = 1) -> VerifyReport:
    """Decode every (message, pattern) pair; zero-error iff no violations."""
    if k < 1:
        raise ParameterError("need k >= 1 segments")
    n_messages = code.ms ** k
    total = n_messages * pattern_count(code.kind, code.q, code.b, k)
    if total > budget:
        raise ResourceBudgetError(
            f"{total} decode operations exceed the budget {budget}; use verify_sampled"
        )
    t0 = time.monotonic()
    report = VerifyReport(code.kind.value, code.q, code.b, k)
    if threads <= 1 or n_messages < 2 * threads:
        msgs, pairs, violations = _exhaustive_range(code, k, 0, n_messages)
        report.codewords_tested, report.patterns_tested = msgs, pairs
        report.violations = violations
    else:
        bounds = [n_messages * j // threads for j in range(threads + 1)]
        chunks = [(code, k, bounds[j], bounds[j + 1]) for j in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_exhaustive_chunk, chunks))
        for msgs, pairs, violations in results:
            report.codewords_tested += msgs
            report.patterns_tested += pairs
            report.violations.extend(violations)
    report.elapsed_s = time.monotonic() - t0
    return report


def _exhaustive_chunk(args):
    return _exhaustive_range(*args)


def verify_sampled(code: SegmentedCode, k: int, n_messages: int, n_patterns: int,
                   seed: int, p_edit: float = 0.5, threads: int = 1) -> VerifyReport:
    """Seeded random messages x seeded random patterns; deterministic."""
    if k < 1:
        raise ParameterError("need k >= 1 segments")
    if n_messages < 0 or n_patterns < 0:
        raise ParameterError("sample counts must be nonnegative")
    t0 = time.monotonic()
    report = VerifyReport(code.kind.value, code.q, code.b, k)
    if threads <= 1 or n_messages < 2 * threads:
        msgs, pairs, violations = _sampled_range(code, k, n_messages, n_patterns,
                                                 seed, p_edit, 0, n_messages)
        report.codewords_tested, report.patterns_tested = msgs, pairs
        report.violations = violations
    else:
        bounds = [n_messages * j // threads for j in range(threads + 1)]
        chunks = [(code, k, n_messages, n_patterns, seed, p_edit, bounds[j], bounds[j + 1])
                  for j in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_sampled_chunk, chunks))
        for msgs, pairs, violations in results:
            report.codewords_tested += msgs
            report.patterns_tested += pairs
            report.violations.extend(violations)
    report.elapsed_s = time.monotonic() - t0
    return report


def _sampled_range(code, k, n_messages, n_patterns, seed, p_edit, start, stop):
    import random
    violations: list[Violation] = []
    pairs = 0
    for mi in range(start, stop):
        rng = random.Random(seed * _MSG_STRIDE + mi)
        message = tuple(rng.randrange(code.ms) for _ in range(k))
        x = encode(code, message)
        for pi in range(n_patterns):
            pattern = sample_pattern(code.kind, code.q, code.b, k, p_edit,
                                     seed * _MSG_STRIDE + mi * _PAT_STRIDE + pi + 1)
            pairs += 1
            _check_pair(code, k, mi, message, x, pi, pattern, violations)
    return stop - start, pairs, violations


def _sampled_chunk(args):
    return _sampled_range(*args)


# ---------------------------------------------------------------------------
# three-condition zero-error test for binary segment codebooks
# ---------------------------------------------------------------------------

@dataclass
class LMReport:
    """Result of the Liu-Mitzenmacher sufficient-condition check."""

    condition1_ok: bool
    condition2_ok: bool
    condition3_ok: bool
    witness1: tuple[Seq, Seq, Seq] | None = None
    witness2: tuple[Seq, Seq, Seq] | None = None
    witness3: Seq | None = None

    @property
    def all_ok(self) -> bool:
        return self.condition1_ok and self.condition2_ok and self.condition3_ok

    def summary(self) -> str:
        marks = ["pass" if ok else "FAIL"
                 for ok in (self.condition1_ok, self.condition2_ok, self.condition3_ok)]
        return (f"condition1={marks[0]} condition2={marks[1]} condition3={marks[2]}")


def _alternating_forms(b: int) -> set[bytes]:
    """All length-b strings of the shapes y^m (zy)^n and y^m (zy)^n z."""
    out: set[bytes] = set()
    for y in (0, 1):
        for z in (0, 1):
            for m in range(b + 1):
                rest = b - m
                word = bytes([y] * m)
                if rest % 2 == 0:
                    out.add(word + bytes([z, y] * (rest // 2)))
                else:
                    out.add(word + bytes([z, y] * (rest // 2)) + bytes([z]))
    return out


def lm_check(codebook: Iterable[Seq]) -> LMReport:
    """Check the three sufficient conditions for a binary segment codebook
    to be zero-error on both segmented channels.

    1. one-insertion neighborhoods of distinct words are disjoint;
    2. prefixes of one set of neighborhoods never collide with suffixes
       of another word's (prefix/suffix = drop last/first bit);
    3. no codeword is an alternating-form string y*(zy)* or y*(zy)*z.
    """
    words = [s if isinstance(s, Seq) else Seq(bytes(s), 2) for s in codebook]
    if not words:
        raise ParameterError("empty codebook")
    b = len(words[0])
    for w in words:
        if w.q != 2:
            raise ParameterError("the three-condition check applies to binary codebooks")
        if len(w) != b:
            raise ParameterError("all codewords must have equal length")
    words = sorted(set(words), key=lambda s: s.data)

    sup_sets = {w: frozenset(z.data for z in i1_set(w)) for w in words}

    cond1_ok, witness1 = True, None
    owner: dict[bytes, Seq] = {}
    for w in words:
        for z in sorted(sup_sets[w]):
            prev = owner.get(z)
            if prev is not None and prev != w:
                cond1_ok, witness1 = False, (prev, w, Seq(z, 2))
                break
            owner[z] = w
        if not cond1_ok:
            break

    cond2_ok, witness2 = True, None
    prefix_owners: dict[bytes, set[Seq]] = {}
    suffix_owners: dict[bytes, set[Seq]] = {}
    for w in words:
        for z in sup_sets[w]:
            prefix_owners.setdefault(z[:-1], set()).add(w)
            suffix_owners.setdefault(z[1:], set()).add(w)
    for shared in sorted(set(prefix_owners) & set(suffix_owners)):
        ps, ss = prefix_owners[shared], suffix_owners[shared]
        pair = next(((u, v) for u in sorted(ps, key=lambda s: s.data)
                     for v in sorted(ss, key=lambda s: s.data) if u != v), None)
        if pair is not None:
            cond2_ok, witness2 = False, (pair[0], pair[1], Seq(shared, 2))
            break

    forms = _alternating_forms(b)
    cond3_ok, witness3 = True, None
    for w in words:
        if w.data in forms:
            cond3_ok, witness3 = False, w
            break

    return LMReport(cond1_ok, cond2_ok, cond3_ok, witness1, witness2, witness3)
