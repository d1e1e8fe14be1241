"""Segment-by-segment zero-error decoders for the three channel kinds.

The decoder walks the received sequence left to right, always knowing
the exact start of the current segment. A per-segment checksum test
tells whether the b-symbol window was edited; the codebooks' prefix and
suffix structure then determines the edit type and the start of the
next segment. Two neighboring segments are occasionally decoded in one
step when boundary symbols entangle them.

Edits in the trace are inferred from consumption arithmetic: a segment
that consumed b-1 received symbols is reported as a deletion, b as no
edit, and more than b as an insertion (boundary resolutions can charge
a segment b+2 symbols when it absorbs the previous segment's trailing
insertion).
"""

from __future__ import annotations

from dataclasses import dataclass

from .construction import ChannelKind, SegmentedCode, role_after
from .errors import ContractViolationError, ParameterError
from .seq import Seq
from .vt import (class_match, decode_deletion_window, decode_insertion_window,
                 syn_bytes)


@dataclass(frozen=True, slots=True)
class SegmentTrace:
    index: int      # 1-based segment number
    start: int      # 1-based position of the segment's window in Y
    edit: str       # "none" | "del" | "ins"
    segment: Seq


DecodeTrace = tuple[SegmentTrace, ...]


def format_trace(trace: DecodeTrace) -> str:
    return "\n".join(
        f"i={t.index} start={t.start} edit={t.edit} seg={t.segment.text()}" for t in trace
    )


def decode(code: SegmentedCode, y: Seq, k: int) -> tuple[Seq, DecodeTrace]:
    """Recover the transmitted sequence from y; zero-error on valid inputs."""
    return _SegmentDecoder(code, y, k).run()


def decode_deletion(code: SegmentedCode, y: Seq, k: int) -> tuple[Seq, DecodeTrace]:
    if code.kind is not ChannelKind.DELETION:
        raise ParameterError("decode_deletion needs a deletion code")
    return decode(code, y, k)


def decode_insertion(code: SegmentedCode, y: Seq, k: int) -> tuple[Seq, DecodeTrace]:
    if code.kind is not ChannelKind.INSERTION:
        raise ParameterError("decode_insertion needs an insertion code")
    return decode(code, y, k)


def decode_insdel(code: SegmentedCode, y: Seq, k: int) -> tuple[Seq, DecodeTrace]:
    if code.kind is not ChannelKind.INSDEL:
        raise ParameterError("decode_insdel needs an insertion-deletion code")
    return decode(code, y, k)


class _SegmentDecoder:
    def __init__(self, code: SegmentedCode, y: Seq, k: int):
        if k < 1:
            raise ParameterError("need k >= 1 segments")
        if y.q != code.q:
            raise ParameterError(f"alphabet {y.q} does not match the code's q={code.q}")
        self.code = code
        self.q = code.q
        self.b = code.b
        self.k = k
        self.yb = y.data
        self.n = len(y.data)
        self.p = 0          # symbols of y consumed so far
        self.i = 1          # 1-based index of the segment being decoded
        self.role = 0
        self.out: list[bytes] = []
        self.trace: list[SegmentTrace] = []

    # -- plumbing -----------------------------------------------------------

    def _violation(self, reason: str, segment: int | None = None):
        raise ContractViolationError(self.i if segment is None else segment, reason)

    def _window(self, start: int, length: int) -> bytes:
        if start + length > self.n:
            self._violation("ran past the end of the received sequence")
        return self.yb[start:start + length]

    def _sym(self, idx: int) -> int:
        if idx >= self.n:
            self._violation("lookahead past the end of the received sequence")
        return self.yb[idx]

    def _params(self) -> tuple[int, int | None]:
        cs = self.code.sets[self.role]
        return cs.a, cs.c

    def _match(self, w: bytes, params=None) -> bool:
        a, c = params if params is not None else self._params()
        return class_match(w, self.q, a, c)

    def _vt_del(self, w: bytes, params=None) -> bytes:
        a, c = params if params is not None else self._params()
        hit = decode_deletion_window(w, self.q, a, c)
        if hit is None:
            self._violation("single-deletion decoding found no codeword")
        return hit

    def _vt_ins(self, w: bytes, params=None) -> bytes:
        a, c = params if params is not None else self._params()
        hit = decode_insertion_window(w, self.q, a, c)
        if hit is None:
            self._violation("single-insertion decoding found no codeword")
        return hit

    def _emit(self, seg: bytes, consumed: int) -> None:
        b = self.b
        if self.code.kind is ChannelKind.INSERTION:
            # structural validation makes speculative tie resolution sound:
            # any two fully valid explanations of the same received
            # sequence carry the same message
            if not self.code.sets[self.role].family.contains(seg):
                self._violation("decoded segment violates the codebook structure")
        edit = "none" if consumed == b else ("del" if consumed < b else "ins")
        self.trace.append(SegmentTrace(self.i, self.p + 1, edit, Seq(seg, self.q)))
        self.out.append(seg)
        self.p += consumed
        self.role = role_after(self.code.kind, self.q, seg[-1])
        self.i += 1

    def _snapshot(self):
        return self.p, self.i, self.role, len(self.out), len(self.trace)

    def _restore(self, state) -> None:
        self.p, self.i, self.role, n_out, n_trace = state
        del self.out[n_out:]
        del self.trace[n_trace:]

    # -- driver -------------------------------------------------------------

    def run(self) -> tuple[Seq, DecodeTrace]:
        n, k, b = self.n, self.k, self.b
        kind = self.code.kind
        if kind is ChannelKind.DELETION:
            lo, hi = k * b - k, k * b
        elif kind is ChannelKind.INSERTION:
            lo, hi = k * b, k * b + k
        else:
            lo, hi = k * b - k, k * b + k
        if not lo <= n <= hi:
            raise ContractViolationError(0, f"length {n} outside [{lo}, {hi}] for k={k}, b={b}")
        self._step = {
            ChannelKind.DELETION: self._step_deletion,
            ChannelKind.INSERTION: self._step_insertion,
            ChannelKind.INSDEL: self._step_insdel,
        }[kind]
        self._decode_loop()
        return Seq(b"".join(self.out), self.q), tuple(self.trace)

    def _decode_loop(self) -> None:
        while self.i <= self.k:
            self._step()
        if self.p != self.n:
            raise ContractViolationError(self.k, "decoder did not consume the whole sequence")

    # -- deletion channel ---------------------------------------------------

    def _step_deletion(self) -> None:
        b = self.b
        rem = self.n - self.p
        if self.i == self.k:
            if rem == b:
                w = self._window(self.p, b)
                if not self._match(w):
                    self._violation("final segment has a checksum mismatch at full length")
                self._emit(w, b)
            elif rem == b - 1:
                self._emit(self._vt_del(self.yb[self.p:self.p + b - 1]), b - 1)
            else:
                self._violation(f"final segment has impossible length {rem}")
            return
        w = self._window(self.p, b)
        if self._match(w):
            self._emit(w, b)
        else:
            self._emit(self._vt_del(self.yb[self.p:self.p + b - 1]), b - 1)

    # -- insertion channel --------------------------------------------------

    def _step_insertion(self) -> None:
        b, p = self.b, self.p
        rem = self.n - p
        if self.i == self.k:
            if rem == b:
                w = self._window(p, b)
                if not self._match(w):
                    self._violation("final segment has a checksum mismatch at full length")
                self._emit(w, b)
            elif rem == b + 1:
                w = self.yb[p:p + b]
                if self._match(w):
                    self._emit(w, b + 1)
                else:
                    self._emit(self._vt_ins(self.yb[p:p + b + 1]), b + 1)
            else:
                self._violation(f"final segment has impossible length {rem}")
            return
        w = self._window(p, b)
        if not self._match(w):
            self._emit(self._vt_ins(self._window(p, b + 1)), b + 1)
            return
        self._insertion_boundary(w, p + b)

    def _insertion_boundary(self, w: bytes, s: int) -> None:
        """Resolve a possible inserted symbol right after a clean window.

        The next codeword starts 01 and never continues 01 (over any
        alphabet), so a non-01 lookahead pins the boundary and a 0101
        lookahead entangles the two segments; the latter is settled by
        checksum comparison among the three possible readings.
        """
        b = self.b
        y0, y1 = self._sym(s), self._sym(s + 1)
        if (y0, y1) != (0, 1):
            self._emit(w, b + 1)        # drop y[s]; next segment starts behind it
            return
        if (self._sym(s + 2), self._sym(s + 3)) != (0, 1):
            self._emit(w, b)            # y[s] opens the next segment
            return
        # lookahead 0101: decode segment i+1 alongside segment i
        candidates = []
        if self.i + 1 == self.k:
            rp = self.n - self.p
            if rp == 2 * b + 1:
                candidates = ["drop3", "drop4"]
            elif rp == 2 * b + 2:
                candidates = ["shift2"]
            else:
                self._violation("0101 lookahead with impossible remaining length",
                                segment=self.i + 1)
        else:
            if self.n < s + b + 2:
                self._violation("0101 lookahead ran past the end", segment=self.i + 1)
            candidates = ["drop3", "drop4", "shift2"]
        hits = []
        if "drop3" in candidates:
            t = self.yb[s:s + 2] + self.yb[s + 3:s + b + 1]
            if self._match(t):
                hits.append((t, False))
        if "drop4" in candidates:
            t = self.yb[s:s + 3] + self.yb[s + 4:s + b + 1]
            if self._match(t):
                hits.append((t, False))
        if "shift2" in candidates:
            t = self.yb[s + 2:s + b + 2]
            if self._match(t):
                hits.append((t, True))
        if len(hits) != 1:
            self._violation("0101 resolution was not unique", segment=self.i + 1)
        seg2, shifted = hits[0]
        self._emit(w, b + 1 if shifted else b)
        self._emit(seg2, b + 1)

    def _spliced_tail_segment(self, skip: int) -> None:
        """Decode the now-current segment from self.p with the identified
        inserted symbol at index ``skip`` removed from the stream."""
        b, s = self.b, self.p
        yb = self.yb
        if self.i == self.k:
            rs = self.n - s
            if rs == b + 1:
                eff = yb[s:skip] + yb[skip + 1:s + b + 1]
                if not self._match(eff):
                    self._violation("final spliced segment has a checksum mismatch")
                self._emit(eff, b + 1)
            elif rs == b + 2:
                eff = yb[s:skip] + yb[skip + 1:s + b + 2]
                self._emit(self._vt_ins(eff), b + 2)
            else:
                self._violation(f"final spliced segment has impossible length {rs}")
            return
        if self.n < s + b + 2:
            self._violation("spliced decode ran past the end")
        eff = yb[s:skip] + yb[skip + 1:s + b + 2]
        if self._match(eff[:b]):
            self._emit(eff[:b], b + 1)
        else:
            self._emit(self._vt_ins(eff), b + 2)

    # -- insertion-deletion channel ------------------------------------------

    def _step_insdel(self) -> None:
        b, p = self.b, self.p
        rem = self.n - p
        if self.i == self.k:
            if rem == b:
                w = self._window(p, b)
                if not self._match(w):
                    self._violation("final segment has a checksum mismatch at full length")
                self._emit(w, b)
            elif rem == b - 1:
                self._emit(self._vt_del(self.yb[p:p + b - 1]), b - 1)
            elif rem == b + 1:
                w = self.yb[p:p + b]
                if self._match(w):
                    self._emit(w, b + 1)
                else:
                    self._emit(self._vt_ins(self.yb[p:p + b + 1]), b + 1)
            else:
                self._violation(f"final segment has impossible length {rem}")
            return
        w = self._window(p, b)
        if not self._match(w):
            if self._insdel_edit_type(p) == "del":
                self._emit(self._vt_del(self.yb[p:p + b - 1]), b - 1)
            else:
                self._emit(self._vt_ins(self._window(p, b + 1)), b + 1)
            return
        self._insdel_boundary(w, p + b)

    def _insdel_edit_type(self, p: int) -> str:
        """Classify the edit of a checksum-mismatched segment from the three
        symbols around its nominal end (the codeword tail is three equal
        symbols, and the next prefix's first two differ from them)."""
        b = self.b
        u = self._sym(p + b - 2)
        v = self._sym(p + b - 1)
        x = self._sym(p + b)
        if u == v == x:
            return "ins"
        if u == v:
            return "del"
        if u == x:
            z = self.yb[p:p + b - 1] + self.yb[p + b:p + b + 1]
            if not self._match(z):
                return "del"
            if x == self._sym(p + b + 1) == self._sym(p + b + 2):
                return "del"
            return "ins"
        if v == x:
            return "del" if self._sym(p + b - 3) == u else "ins"
        # all three distinct (q > 2): only a deletion followed by a foreign
        # inserted symbol at the boundary can produce this
        return "del"

    def _insdel_boundary(self, w: bytes, s: int) -> None:
        """After a clean window, decide whether y[s] is a trailing insertion.

        Lookahead patterns are read relative to the next codeword's prefix
        (00111 or 11000): 0 stands for its first symbol, 1 for its
        complement, and 2 for any other symbol (q > 2 only).
        """
        b = self.b
        beta = role_after(self.code.kind, self.q, w[-1])  # next prefix's first symbol

        def norm(idx: int) -> int:
            v = self._sym(idx)
            if v == beta:
                return 0
            if v == 1 - beta:
                return 1
            return 2

        if norm(s) != 0:
            self._emit(w, b + 1)
            return
        n1, n2 = norm(s + 1), norm(s + 2)
        if n1 == 2:
            self._emit(w, b)
            self._spliced_tail_segment(s + 1)
            return
        if n2 == 2:
            if n1 == 0:
                self._emit(w, b)
                self._spliced_tail_segment(s + 2)
                return
            self._violation("boundary 01x cannot arise from one edit")
        if (n1, n2) == (0, 0):
            self._emit(w, b + 1)
            return
        if (n1, n2) == (1, 1):
            self._emit(w, b)
            return
        n3 = norm(s + 3)
        if (n1, n2) == (1, 0):
            n4 = norm(s + 4)
            if (n3, n4) == (0, 1):
                self._emit(w, b + 1)
            elif (n3, n4) == (1, 1):
                self._emit(w, b)
            else:
                self._violation("boundary 010 pattern cannot arise from one edit")
            return
        # (n1, n2) == (0, 1)
        if n3 in (1, 2):
            self._emit(w, b)
            return
        if norm(s + 4) != 1:
            self._violation("boundary 0010 pattern cannot arise from one edit")
        self._insdel_entangled(w, s)

    def _insdel_entangled(self, w: bytes, s: int) -> None:
        """The 00101-type lookahead: the two readings pin both segments, and
        exactly one of them lands in the next segment's class."""
        b = self.b
        yb = self.yb
        next_label = role_after(self.code.kind, self.q, w[-1])
        cs = self.code.sets[next_label]
        params = (cs.a, cs.c)
        use_z1 = use_z2 = False
        if self.i + 1 == self.k:
            rs = self.n - s
            if rs == b + 2:
                use_z1 = True
            elif rs == b + 1:
                use_z2 = True
            else:
                self._violation("entangled lookahead with impossible remaining length",
                                segment=self.i + 1)
        else:
            if self.n < s + b + 2:
                self._violation("entangled lookahead ran past the end", segment=self.i + 1)
            use_z1 = use_z2 = True
        hits = []
        if use_z1:
            z1 = bytes((yb[s + 1], yb[s + 3])) + yb[s + 4:s + b + 2]
            if self._match(z1, params):
                hits.append((z1, True))
        if use_z2:
            z2 = yb[s:s + 3] + yb[s + 4:s + b + 1]
            if self._match(z2, params):
                hits.append((z2, False))
        if len(hits) == 2:
            # both readings are in the class only when they are the same
            # string (they share a one-insertion supersequence); the longer
            # consumption is then the safe choice: it absorbs what would
            # otherwise have to be the next segment's forced front insertion
            if hits[0][0] != hits[1][0]:
                self._violation("entangled resolution was not unique", segment=self.i + 1)
            hits = [hits[0]]
        if len(hits) != 1:
            self._violation("entangled readings all fail", segment=self.i + 1)
        seg2, shifted = hits[0]
        self._emit(w, b + 1 if shifted else b)
        self._emit(seg2, b + 1)
