"""Varshamov-Tenengolts (VT) code primitives.

A binary VT class fixes the weighted checksum sum(j * s_j) mod (b+1).
The q-ary generalization fixes the checksum of the auxiliary rise/fall
indicator sequence together with the symbol sum mod q. Every class is a
single-edit correcting code: the one-deletion (and one-insertion)
neighborhoods of two distinct members never overlap, which is what makes
candidate-set search a provably correct single-edit decoder.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DecodeFailureError, ParameterError, ResourceBudgetError
from .families import ClassFamily
from .seq import Seq

#: enumerate_vt materializes a list only when q**b stays at or below this.
ENUMERATION_BUDGET = 2**28


@dataclass(frozen=True, slots=True)
class VTParams:
    """Parameters naming one VT class.

    For q = 2 the class is VT_a(b) with 0 <= a <= b and no c. For q > 2
    it is the pair (a, c) with 0 <= a <= b-1 and 0 <= c < q.
    """

    b: int
    q: int
    a: int
    c: int | None = None

    def __post_init__(self):
        if self.b < 1 or self.q < 2:
            raise ParameterError(f"need b >= 1 and q >= 2, got b={self.b}, q={self.q}")
        if self.q == 2:
            if self.c is not None:
                raise ParameterError("c is only defined for q > 2")
            if not 0 <= self.a <= self.b:
                raise ParameterError(f"a={self.a} out of range [0, {self.b}]")
        else:
            if self.b < 2:
                raise ParameterError("q-ary classes need b >= 2")
            if self.c is None:
                raise ParameterError("q > 2 requires the symbol-sum residue c")
            if not 0 <= self.a <= self.b - 1:
                raise ParameterError(f"a={self.a} out of range [0, {self.b - 1}]")
            if not 0 <= self.c < self.q:
                raise ParameterError(f"c={self.c} out of range [0, {self.q - 1}]")


# ---------------------------------------------------------------------------
# byte-level helpers; these are the hot path of the segment decoders
# ---------------------------------------------------------------------------

def syn_bytes(w: bytes) -> int:
    """Weighted checksum sum(j * w_j) mod (len(w) + 1), positions 1-based."""
    s = 0
    for i, v in enumerate(w, 1):
        if v:
            s += i * v
    return s % (len(w) + 1)


def aux_syn_sum(w: bytes, q: int) -> tuple[int, int]:
    """(checksum of the rise/fall indicator mod len(w), symbol sum mod q)."""
    syn = 0
    prev = w[0]
    tot = prev
    for i in range(1, len(w)):
        v = w[i]
        if v >= prev:
            syn += i
        tot += v
        prev = v
    return syn % len(w), tot % q


def class_match(w: bytes, q: int, a: int, c: int | None) -> bool:
    """Does the length-b word lie in the class (a) / (a, c)?"""
    if q == 2:
        return syn_bytes(w) == a
    syn, tot = aux_syn_sum(w, q)
    return syn == a and tot == c


def decode_deletion_window(w: bytes, q: int, a: int, c: int | None) -> bytes | None:
    """Unique class member one deletion away from w, or None.

    Tries every insertion of one symbol into w; disjointness of the
    one-deletion neighborhoods guarantees at most one distinct hit.
    """
    hit = None
    for pos in range(len(w) + 1):
        head, tail = w[:pos], w[pos:]
        for v in range(q):
            cand = head + bytes((v,)) + tail
            if class_match(cand, q, a, c):
                if hit is None:
                    hit = cand
                elif hit != cand:  # pragma: no cover - impossible for VT classes
                    raise AssertionError("one-deletion neighborhoods intersect")
    return hit


def decode_insertion_window(w: bytes, q: int, a: int, c: int | None) -> bytes | None:
    """Unique class member one insertion away from w, or None."""
    hit = None
    for pos in range(len(w)):
        cand = w[:pos] + w[pos + 1:]
        if class_match(cand, q, a, c):
            if hit is None:
                hit = cand
            elif hit != cand:  # pragma: no cover - impossible for VT classes
                raise AssertionError("one-insertion neighborhoods intersect")
    return hit


# ---------------------------------------------------------------------------
# public sequence-level interface
# ---------------------------------------------------------------------------

def syndrome(s: Seq) -> int:
    """VT checksum of a binary sequence: sum(j * s_j) mod (b + 1)."""
    if s.q != 2:
        raise ParameterError("syndrome is defined for binary sequences")
    if len(s) < 1:
        raise ParameterError("syndrome needs a nonempty sequence")
    return syn_bytes(s.data)


def aux_binary(s: Seq) -> Seq:
    """Rise/fall indicator: bit i is 1 iff s_i >= s_{i-1}, length b - 1."""
    if len(s) < 2:
        raise ParameterError("auxiliary sequence needs length >= 2")
    prev = s.data[0]
    out = bytearray()
    for v in s.data[1:]:
        out.append(1 if v >= prev else 0)
        prev = v
    return Seq(bytes(out), 2)


def mod_sum(s: Seq) -> int:
    """Symbol sum mod q."""
    return sum(s.data) % s.q


def weight(s: Seq) -> int:
    """Hamming weight of a binary sequence."""
    if s.q != 2:
        raise ParameterError("weight is defined for binary sequences")
    return sum(1 for v in s.data if v)


def vt_member(s: Seq, p: VTParams) -> bool:
    """Class membership test."""
    if len(s) != p.b:
        raise ParameterError(f"length {len(s)} does not match b={p.b}")
    if s.q != p.q:
        raise ParameterError(f"alphabet {s.q} does not match q={p.q}")
    return class_match(s.data, p.q, p.a, p.c)


def _full_family(p: VTParams) -> ClassFamily:
    full = tuple(range(p.q))
    return ClassFamily(p.q, p.b, (full,) * p.b, False, p.a, p.c)


def iter_vt(p: VTParams) -> Iterator[Seq]:
    """Stream the class in lexicographic order without materializing it."""
    for word in _full_family(p):
        yield Seq(word, p.q)


def enumerate_vt(p: VTParams, budget: int = ENUMERATION_BUDGET) -> list[Seq]:
    """All class members in lexicographic order.

    Materializes a list only while q**b stays within the budget; larger
    spaces must use the streaming iter_vt.
    """
    if p.q ** p.b > budget:
        raise ResourceBudgetError(
            f"q**b = {p.q}**{p.b} exceeds the enumeration budget {budget}; use iter_vt"
        )
    return list(iter_vt(p))


def vt_class_size(p: VTParams) -> int:
    """Exact number of members, computed without enumeration."""
    return _full_family(p).count()


def decode_one_deletion(r: Seq, p: VTParams) -> Seq:
    """Recover the unique class member from which r arose by one deletion."""
    if r.q != p.q:
        raise ParameterError(f"alphabet {r.q} does not match q={p.q}")
    if len(r) != p.b - 1:
        raise ParameterError(f"expected length b-1={p.b - 1}, got {len(r)}")
    hit = decode_deletion_window(r.data, p.q, p.a, p.c)
    if hit is None:
        raise DecodeFailureError(f"no member of the class has {r.text()!r} in its one-deletion set")
    return Seq(hit, p.q)


def decode_one_insertion(r: Seq, p: VTParams) -> Seq:
    """Recover the unique class member from which r arose by one insertion."""
    if r.q != p.q:
        raise ParameterError(f"alphabet {r.q} does not match q={p.q}")
    if len(r) != p.b + 1:
        raise ParameterError(f"expected length b+1={p.b + 1}, got {len(r)}")
    hit = decode_insertion_window(r.data, p.q, p.a, p.c)
    if hit is None:
        raise DecodeFailureError(f"no member of the class has {r.text()!r} in its one-insertion set")
    return Seq(hit, p.q)


def d1_set(s: Seq) -> set[Seq]:
    """All distinct sequences obtained by deleting one symbol."""
    return {Seq(s.data[:i] + s.data[i + 1:], s.q) for i in range(len(s))}


def i1_set(s: Seq) -> set[Seq]:
    """All distinct sequences obtained by inserting one symbol anywhere."""
    out = set()
    for i in range(len(s) + 1):
        head, tail = s.data[:i], s.data[i:]
        for v in range(s.q):
            out.add(Seq(head + bytes((v,)) + tail, s.q))
    return out
