"""Segmented edit channel: apply, enumerate and sample edit patterns.

A pattern lists one action per segment: ``None`` (no edit), a deletion
``("del", pos)`` with 1-based position in [1, b], or an insertion
``("ins", pos, sym)`` whose 0-based slot in [0, b] counts positions
between symbols (0 = before the first symbol, b = after the last).

Patterns are defined on the input indexing, so distinct patterns may
produce identical outputs; exhaustive verification therefore iterates
patterns, not outputs.

Text form: ``seg1:del@3;seg2:none;seg3:ins@0=1``.
"""

from __future__ import annotations

import random
from typing import Iterator

from .construction import ChannelKind
from .errors import ParameterError, ResourceBudgetError
from .seq import Seq

Edit = tuple | None
EditPattern = tuple  # one Edit per segment

#: enumerate_patterns refuses streams larger than this by default.
PATTERN_BUDGET = 10**8

#: multiplier folding a segment index into the sampling seed; the draw for
#: segment i uses random.Random(seed * _SEED_STRIDE + i).
_SEED_STRIDE = 2**20


def _check_edit(edit: Edit, q: int, b: int, seg: int) -> None:
    if edit is None:
        return
    if edit[0] == "del":
        if len(edit) != 2 or not 1 <= edit[1] <= b:
            raise ParameterError(f"segment {seg}: deletion position must be in [1, {b}]")
    elif edit[0] == "ins":
        if len(edit) != 3 or not 0 <= edit[1] <= b:
            raise ParameterError(f"segment {seg}: insertion slot must be in [0, {b}]")
        if not 0 <= edit[2] < q:
            raise ParameterError(f"segment {seg}: inserted symbol must be in [0, {q})")
    else:
        raise ParameterError(f"segment {seg}: unknown edit {edit!r}")


def apply_pattern(x: Seq, pattern: EditPattern, b: int) -> Seq:
    """Apply per-segment edits left to right; output length is exact."""
    k = len(pattern)
    if len(x) != k * b:
        raise ParameterError(f"input length {len(x)} is not k*b = {k}*{b}")
    parts = []
    for i, edit in enumerate(pattern, 1):
        _check_edit(edit, x.q, b, i)
        seg = x.data[(i - 1) * b:i * b]
        if edit is None:
            parts.append(seg)
        elif edit[0] == "del":
            pos = edit[1]
            parts.append(seg[:pos - 1] + seg[pos:])
        else:
            _, pos, sym = edit
            parts.append(seg[:pos] + bytes((sym,)) + seg[pos:])
    return Seq(b"".join(parts), x.q)


def segment_options(kind: ChannelKind, q: int, b: int) -> list[Edit]:
    """All per-segment actions, in the enumeration order (none, deletions,
    insertions by slot then symbol)."""
    kind = ChannelKind(kind)
    options: list[Edit] = [None]
    if kind in (ChannelKind.DELETION, ChannelKind.INSDEL):
        options.extend(("del", pos) for pos in range(1, b + 1))
    if kind in (ChannelKind.INSERTION, ChannelKind.INSDEL):
        options.extend(("ins", pos, sym) for pos in range(b + 1) for sym in range(q))
    return options


def pattern_count(kind: ChannelKind, q: int, b: int, k: int) -> int:
    return len(segment_options(kind, q, b)) ** k


def enumerate_patterns(kind: ChannelKind, q: int, b: int, k: int,
                       budget: int = PATTERN_BUDGET) -> Iterator[EditPattern]:
    """Every valid pattern exactly once, mixed-radix over segments with
    segment 1 as the most significant digit."""
    if k < 1:
        raise ParameterError("need k >= 1 segments")
    total = pattern_count(kind, q, b, k)
    if total > budget:
        raise ResourceBudgetError(f"{total} patterns exceed the budget {budget}")
    options = segment_options(kind, q, b)
    import itertools
    return itertools.product(options, repeat=k)


def sample_pattern(kind: ChannelKind, q: int, b: int, k: int,
                   p_edit: float, seed: int) -> EditPattern:
    """Seeded random pattern: each segment independently edits with
    probability p_edit, positions and symbols uniform, reproducible via
    the (seed, segment index) scheme."""
    kind = ChannelKind(kind)
    if not 0.0 <= p_edit <= 1.0:
        raise ParameterError(f"p_edit must be in [0, 1], got {p_edit}")
    pattern = []
    for i in range(1, k + 1):
        rng = random.Random(seed * _SEED_STRIDE + i)
        if rng.random() >= p_edit:
            pattern.append(None)
            continue
        if kind is ChannelKind.DELETION:
            do_delete = True
        elif kind is ChannelKind.INSERTION:
            do_delete = False
        else:
            do_delete = rng.random() < 0.5
        if do_delete:
            pattern.append(("del", rng.randrange(1, b + 1)))
        else:
            pattern.append(("ins", rng.randrange(0, b + 1), rng.randrange(q)))
    return tuple(pattern)


def format_pattern(pattern: EditPattern) -> str:
    parts = []
    for i, edit in enumerate(pattern, 1):
        if edit is None:
            parts.append(f"seg{i}:none")
        elif edit[0] == "del":
            parts.append(f"seg{i}:del@{edit[1]}")
        else:
            parts.append(f"seg{i}:ins@{edit[1]}={edit[2]}")
    return ";".join(parts)


def parse_pattern(text: str) -> EditPattern:
    """Parse the text form; segments must appear as seg1, seg2, ... in order."""
    pattern: list[Edit] = []
    chunks = [c.strip() for c in text.strip().split(";") if c.strip()]
    if not chunks:
        raise ParameterError("empty pattern")
    for i, chunk in enumerate(chunks, 1):
        try:
            head, action = chunk.split(":", 1)
        except ValueError:
            raise ParameterError(f"malformed pattern chunk {chunk!r}") from None
        if head != f"seg{i}":
            raise ParameterError(f"expected seg{i}, got {head!r}")
        if action == "none":
            pattern.append(None)
        elif action.startswith("del@"):
            try:
                pattern.append(("del", int(action[4:])))
            except ValueError:
                raise ParameterError(f"malformed deletion {chunk!r}") from None
        elif action.startswith("ins@"):
            try:
                pos_text, sym_text = action[4:].split("=", 1)
                pattern.append(("ins", int(pos_text), int(sym_text)))
            except ValueError:
                raise ParameterError(f"malformed insertion {chunk!r}") from None
        else:
            raise ParameterError(f"unknown action in {chunk!r}")
    return tuple(pattern)
