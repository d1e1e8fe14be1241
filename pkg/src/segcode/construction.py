"""Construction of the three segmented-code families.

Each code draws every segment's codeword from a VT class restricted by a
prefix (and, for the insertion-deletion code, also a suffix) pattern:

  * deletion code: the first two symbols avoid the previous segment's
    last symbol (binary roles are the literal prefixes 00 and 11);
  * insertion code: one set with prefix 01, third/fourth symbols not 01,
    and the word 011...1 excluded (binary), or literal prefix 001 (q > 2);
  * insertion-deletion code: prefixes 00111 / 11000 plus three equal
    trailing symbols.

For every role the class maximizing the constrained size is selected
(ties: smallest a, then smallest c), and all sets are trimmed to the
minimum of those maxima by keeping the lexicographically smallest words.
Codebooks larger than the materialization limit stay implicit and are
indexed through exact unranking.
"""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from . import vt
from .errors import (CodebookFormatError, EmptyCodeError, ParameterError,
                     ResourceBudgetError)
from .families import ClassFamily, RoleFamily, class_size_table
from .seq import Seq

#: codeword lists are materialized only up to this many words per set.
MATERIALIZE_LIMIT = 250_000

CODEBOOK_MAGIC = "segcode v1"


class ChannelKind(str, Enum):
    DELETION = "deletion"
    INSERTION = "insertion"
    INSDEL = "insdel"

    def __str__(self) -> str:  # keep file/CLI forms tidy
        return self.value


#: smallest segment length per construction; below these the prefix and
#: suffix patterns collide or leave no freedom.
MIN_B = {
    ChannelKind.DELETION: 4,
    ChannelKind.INSERTION: 6,
    ChannelKind.INSDEL: 8,
}


def role_count(kind: ChannelKind, q: int) -> int:
    if kind is ChannelKind.DELETION:
        return 2 if q == 2 else q
    if kind is ChannelKind.INSERTION:
        return 1
    return 2


def _role_structure(kind: ChannelKind, q: int, b: int, label: int):
    """(list of (allowed, suffix_equal) atoms, excluded words) for one role."""
    full = tuple(range(q))
    if kind is ChannelKind.DELETION:
        if q == 2:
            head = ((label,), (label,))
        else:
            notj = tuple(v for v in range(q) if v != label)
            head = (notj, notj)
        return [(head + (full,) * (b - 2), False)], ()
    if kind is ChannelKind.INSERTION:
        # prefix 01, third/fourth symbols not 01, and 011...1 excluded, for
        # every alphabet: a literal length-3 prefix admits confusable pairs
        # across segment boundaries as soon as q > 2.
        not_one = tuple(v for v in range(q) if v != 1)
        atoms = [(((0,), (1,), (0,), not_one) + (full,) * (b - 4), False)]
        for s3 in range(1, q):
            atoms.append((((0,), (1,), (s3,), full) + (full,) * (b - 4), False))
        return atoms, (bytes((0,)) + bytes((1,)) * (b - 1),)
    prefix = (0, 0, 1, 1, 1) if label == 0 else (1, 1, 0, 0, 0)
    allowed = tuple((p,) for p in prefix) + (full,) * (b - 5)
    return [(allowed, True)], ()


def _word_class_key(word: bytes, q: int, b: int):
    if q == 2:
        return vt.syn_bytes(word)
    return vt.aux_syn_sum(word, q)


def role_class_sizes(kind: ChannelKind, q: int, b: int, label: int) -> dict:
    """Constrained class sizes for one role, keyed by a or (a, c)."""
    atoms, excluded = _role_structure(kind, q, b, label)
    totals: dict = {}
    for allowed, suffix_equal in atoms:
        for key, cnt in class_size_table(q, b, allowed, suffix_equal).items():
            totals[key] = totals.get(key, 0) + cnt
    for word in excluded:
        key = _word_class_key(word, q, b)
        if key in totals:
            totals[key] -= 1
            if totals[key] == 0:
                del totals[key]
    return totals


@dataclass(frozen=True, slots=True)
class RoleChoice:
    label: int
    a: int
    c: int | None
    size: int


@dataclass(frozen=True, slots=True)
class SetSizes:
    kind: ChannelKind
    q: int
    b: int
    roles: tuple[RoleChoice, ...]
    ms: int


def _validate_params(kind: ChannelKind, q: int, b: int) -> ChannelKind:
    kind = ChannelKind(kind)
    if not 2 <= q <= 256:
        raise ParameterError(f"alphabet size must be in [2, 256], got {q}")
    if b < MIN_B[kind]:
        raise ParameterError(f"{kind.value} construction needs b >= {MIN_B[kind]}, got {b}")
    return kind


@lru_cache(maxsize=256)
def set_sizes(kind: ChannelKind, q: int, b: int) -> SetSizes:
    """Per-role maximal constrained class sizes and the resulting M_s."""
    kind = _validate_params(kind, q, b)
    roles = []
    for label in range(role_count(kind, q)):
        totals = role_class_sizes(kind, q, b, label)
        best_key, best = None, -1
        if q == 2:
            keys = range(b + 1)
        else:
            keys = ((a, c) for a in range(b) for c in range(q))
        for key in keys:
            cnt = totals.get(key, 0)
            if cnt > best:
                best_key, best = key, cnt
        if q == 2:
            roles.append(RoleChoice(label, best_key, None, best))
        else:
            roles.append(RoleChoice(label, best_key[0], best_key[1], best))
    ms = min(r.size for r in roles)
    if ms == 0:
        raise EmptyCodeError(f"{kind.value} construction is empty at q={q}, b={b}")
    return SetSizes(kind, q, b, tuple(roles), ms)


class CodeSet:
    """One role's trimmed codeword set.

    Small sets hold their words; large ones stay implicit and answer
    codeword()/index_of() through exact unranking of the underlying
    class family.
    """

    def __init__(self, label: int, a: int, c: int | None, size: int,
                 family: RoleFamily, words: tuple[bytes, ...] | None):
        self.label = label
        self.a = a
        self.c = c
        self.size = size
        self.family = family
        self._words = words
        self._index: dict[bytes, int] | None = None

    def __len__(self) -> int:
        return self.size

    def codeword(self, i: int) -> bytes:
        if not 0 <= i < self.size:
            raise ParameterError(f"message index {i} out of range [0, {self.size})")
        if self._words is not None:
            return self._words[i]
        return self.family.unrank(i)

    def index_of(self, word: bytes) -> int:
        if self._words is not None:
            if self._index is None:
                self._index = {w: i for i, w in enumerate(self._words)}
            try:
                return self._index[word]
            except KeyError:
                raise ParameterError("word is not in this codeword set") from None
        r = self.family.rank(word)
        if r >= self.size:
            raise ParameterError("word is outside the trimmed codeword set")
        return r

    def __iter__(self):
        if self._words is not None:
            return iter(self._words)
        return itertools.islice(iter(self.family), self.size)

    def codewords(self, limit: int = MATERIALIZE_LIMIT) -> tuple[bytes, ...]:
        if self._words is not None:
            return self._words
        if self.size > limit:
            raise ResourceBudgetError(
                f"codeword set of size {self.size} exceeds the materialization limit {limit}"
            )
        return tuple(self)


@dataclass(frozen=True)
class SegmentedCode:
    kind: ChannelKind
    q: int
    b: int
    ms: int
    sets: tuple[CodeSet, ...] = field(repr=False)

    @property
    def rate(self) -> float:
        import math
        return math.log2(self.ms) / self.b

    def role_after(self, last_symbol: int) -> int:
        return role_after(self.kind, self.q, last_symbol)


def role_after(kind: ChannelKind, q: int, last_symbol: int) -> int:
    """Role of the next segment given the previous segment's last symbol."""
    kind = ChannelKind(kind)
    if kind is ChannelKind.DELETION:
        if q == 2:
            return 1 if last_symbol == 0 else 0
        return last_symbol
    if kind is ChannelKind.INSERTION:
        return 0
    return 1 if last_symbol % 2 == 0 else 0


def next_role(code: SegmentedCode, prev_last_symbol: int | None) -> int:
    """Role label for the upcoming segment; None selects segment 1's role."""
    if prev_last_symbol is None:
        return 0
    if not 0 <= prev_last_symbol < code.q:
        raise ParameterError(f"symbol {prev_last_symbol} out of range for q={code.q}")
    return role_after(code.kind, code.q, prev_last_symbol)


def _role_family(kind: ChannelKind, q: int, b: int, label: int,
                 a: int, c: int | None) -> RoleFamily:
    atoms, excluded = _role_structure(kind, q, b, label)
    families = [ClassFamily(q, b, allowed, suffix_equal, a, c)
                for allowed, suffix_equal in atoms]
    return RoleFamily(families, excluded)


@lru_cache(maxsize=64)
def build_code(kind: ChannelKind, q: int, b: int) -> SegmentedCode:
    """Construct the code: pick maximal classes per role and trim to M_s."""
    sizes = set_sizes(ChannelKind(kind), q, b)
    sets = []
    for role in sizes.roles:
        family = _role_family(sizes.kind, q, b, role.label, role.a, role.c)
        words = None
        if sizes.ms <= MATERIALIZE_LIMIT:
            words = tuple(itertools.islice(iter(family), sizes.ms))
        sets.append(CodeSet(role.label, role.a, role.c, sizes.ms, family, words))
    return SegmentedCode(sizes.kind, q, b, sizes.ms, tuple(sets))


def encode(code: SegmentedCode, message: list[int] | tuple[int, ...]) -> Seq:
    """Concatenate per-segment codewords, alternating roles as required."""
    if len(message) < 1:
        raise ParameterError("message needs at least one index")
    parts = []
    role = 0
    for idx in message:
        cs = code.sets[role]
        word = cs.codeword(idx)
        parts.append(word)
        role = role_after(code.kind, code.q, word[-1])
    return Seq(b"".join(parts), code.q)


def message_of(code: SegmentedCode, x: Seq) -> tuple[int, ...]:
    """Recover message indices from a concatenation of codewords."""
    if x.q != code.q or len(x) % code.b:
        raise ParameterError("sequence does not match the code's geometry")
    role = 0
    out = []
    for i in range(0, len(x), code.b):
        word = x.data[i:i + code.b]
        out.append(code.sets[role].index_of(word))
        role = role_after(code.kind, code.q, word[-1])
    return tuple(out)


# ---------------------------------------------------------------------------
# codebook file format
# ---------------------------------------------------------------------------

def dumps(code: SegmentedCode) -> str:
    """Serialize to the line-oriented ``segcode v1`` form."""
    out = io.StringIO()
    out.write(f"{CODEBOOK_MAGIC}\n")
    out.write(f"kind={code.kind.value} q={code.q} b={code.b} Ms={code.ms} sets={len(code.sets)}\n")
    for cs in code.sets:
        head = f"set label={cs.label} a={cs.a}"
        if cs.c is not None:
            head += f" c={cs.c}"
        out.write(f"{head} n={cs.size}\n")
        for word in cs.codewords():
            out.write(Seq(word, code.q).text() + "\n")
    return out.getvalue()


def save_codebook(code: SegmentedCode, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(code))


def _parse_kv(line: str, expected: list[str]) -> dict:
    fields = {}
    for tok in line.split():
        if "=" not in tok:
            raise CodebookFormatError(f"malformed field {tok!r}")
        k, v = tok.split("=", 1)
        fields[k] = v
    missing = [k for k in expected if k not in fields]
    if missing:
        raise CodebookFormatError(f"missing fields {missing} in {line!r}")
    return fields


def loads(text: str) -> SegmentedCode:
    """Parse and revalidate a codebook; any invariant breach is fatal."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != CODEBOOK_MAGIC:
        raise CodebookFormatError(f"expected leading {CODEBOOK_MAGIC!r} line")
    if len(lines) < 2:
        raise CodebookFormatError("missing code header")
    head = _parse_kv(lines[1], ["kind", "q", "b", "Ms", "sets"])
    try:
        kind = ChannelKind(head["kind"])
    except ValueError:
        raise CodebookFormatError(f"unknown kind {head['kind']!r}") from None
    try:
        q, b, ms, nsets = (int(head[k]) for k in ("q", "b", "Ms", "sets"))
    except ValueError:
        raise CodebookFormatError("non-integer header field") from None

    try:
        sizes = set_sizes(kind, q, b)
    except ParameterError as exc:
        raise CodebookFormatError(str(exc)) from None
    if nsets != role_count(kind, q):
        raise CodebookFormatError(f"expected {role_count(kind, q)} sets, header says {nsets}")
    if ms != sizes.ms:
        raise CodebookFormatError(f"Ms={ms} does not match the construction's M_s={sizes.ms}")

    pos = 2
    sets = []
    for label in range(nsets):
        if pos >= len(lines):
            raise CodebookFormatError(f"missing set block for label {label}")
        fields = _parse_kv(lines[pos], ["label", "a", "n"])
        pos += 1
        if int(fields["label"]) != label:
            raise CodebookFormatError(f"set blocks must be ordered by label; got {fields['label']}")
        a = int(fields["a"])
        c = int(fields["c"]) if "c" in fields else None
        if (c is None) != (q == 2):
            raise CodebookFormatError("field c must be present exactly when q > 2")
        n = int(fields["n"])
        if n != ms:
            raise CodebookFormatError(f"set {label} has n={n}, expected Ms={ms}")
        try:
            family = _role_family(kind, q, b, label, a, c)
        except ParameterError as exc:
            raise CodebookFormatError(str(exc)) from None
        words = []
        prev = None
        for _ in range(n):
            if pos >= len(lines):
                raise CodebookFormatError(f"set {label} is truncated")
            try:
                word = Seq.parse(lines[pos], q).data
            except ParameterError as exc:
                raise CodebookFormatError(f"line {pos + 1}: {exc}") from None
            pos += 1
            if len(word) != b:
                raise CodebookFormatError(f"line {pos}: expected length {b}")
            if prev is not None and word <= prev:
                raise CodebookFormatError(f"line {pos}: codewords must be strictly increasing")
            if not family.contains(word):
                raise CodebookFormatError(
                    f"line {pos}: word violates the class or structural constraints of set {label}"
                )
            words.append(word)
            prev = word
        sets.append(CodeSet(label, a, c, ms, family, tuple(words)))
    if pos != len(lines) and any(line.strip() for line in lines[pos:]):
        raise CodebookFormatError("trailing content after the last set")
    return SegmentedCode(kind, q, b, ms, tuple(sets))


def load_codebook(path) -> SegmentedCode:
    with open(path, "r", encoding="ascii") as fh:
        return loads(fh.read())
