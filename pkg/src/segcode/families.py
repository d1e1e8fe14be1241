"""Exact counting, ranking and ordered enumeration of constrained VT classes.

A *class family* is the set of length-b sequences over {0,...,q-1} that

  * take each position's symbol from a per-position allowed set,
  * optionally end with three equal symbols, and
  * lie in one VT class: for q = 2 a fixed checksum sum(j * s_j) mod (b+1),
    for q > 2 a fixed checksum of the rise/fall indicator sequence
    (mod b) together with a fixed symbol sum (mod q).

Counting walks the positions once over the reachable checksum states, so
every size is an exact Python integer at any length; backward completion
tables over the same states drive lexicographic unranking, ranking and
enumeration without materializing the q^b search space.

States: for q = 2 the partial checksum alone; for q > 2 the triple
(last symbol, partial indicator checksum, partial symbol sum), packed as
(last * b + syn) * q + sum.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import ParameterError

AllowedSpec = tuple[tuple[int, ...], ...]


def _check_allowed(q: int, b: int, allowed: AllowedSpec) -> None:
    if len(allowed) != b:
        raise ParameterError(f"allowed sets must cover all {b} positions")
    for pos, options in enumerate(allowed, 1):
        for v in options:
            if not 0 <= v < q:
                raise ParameterError(f"symbol {v} at position {pos} out of range for q={q}")
        if tuple(sorted(set(options))) != options:
            raise ParameterError(f"allowed set at position {pos} must be sorted and duplicate-free")


@lru_cache(maxsize=512)
def class_size_table(q: int, b: int, allowed: AllowedSpec, suffix_equal: bool) -> dict:
    """Sizes of every VT class within the constrained set of sequences.

    Returns a dict keyed by ``a`` for q = 2 and by ``(a, c)`` for q > 2;
    classes with no members are absent.
    """
    _check_allowed(q, b, allowed)
    if q == 2:
        return _binary_counts(b, allowed, suffix_equal)
    return _qary_counts(q, b, allowed, suffix_equal)


def _suffix_choices(allowed: AllowedSpec) -> tuple[int, ...]:
    last3 = [set(opts) for opts in allowed[-3:]]
    return tuple(sorted(last3[0] & last3[1] & last3[2]))


def _binary_counts(b: int, allowed: AllowedSpec, suffix_equal: bool) -> dict:
    m = b + 1
    if suffix_equal:
        if b < 4:
            raise ParameterError("equal-suffix constraint needs b >= 4")
        length, tail = b - 3, _suffix_choices(allowed)
    else:
        length, tail = b, ()
    cur = [0] * m
    cur[0] = 1
    for i in range(1, length + 1):
        nxt = [0] * m
        for s, cnt in enumerate(cur):
            if cnt:
                for v in allowed[i - 1]:
                    nxt[(s + i * v) % m] += cnt
        cur = nxt
    if not suffix_equal:
        return {a: cnt for a, cnt in enumerate(cur) if cnt}
    out: dict[int, int] = {}
    for v in tail:
        d = ((3 * b - 3) * v) % m
        for s, cnt in enumerate(cur):
            if cnt:
                key = (s + d) % m
                out[key] = out.get(key, 0) + cnt
    return out


def _qary_counts(q: int, b: int, allowed: AllowedSpec, suffix_equal: bool) -> dict:
    if b < 2:
        raise ParameterError("q-ary classes need b >= 2")
    mb = b
    if suffix_equal:
        if b < 4:
            raise ParameterError("equal-suffix constraint needs b >= 4")
        length, tail = b - 3, _suffix_choices(allowed)
    else:
        length, tail = b, ()
    size = q * mb * q
    cur = [0] * size
    for v in allowed[0]:
        cur[(v * mb) * q + v % q] += 1
    for i in range(2, length + 1):
        w = (i - 1) % mb
        nxt = [0] * size
        idx = 0
        for last in range(q):
            for syn in range(mb):
                for sm in range(q):
                    cnt = cur[idx]
                    if cnt:
                        for v in allowed[i - 1]:
                            syn2 = syn + w if v >= last else syn
                            if syn2 >= mb:
                                syn2 -= mb
                            nxt[(v * mb + syn2) * q + (sm + v) % q] += cnt
                    idx += 1
        cur = nxt
    out: dict[tuple[int, int], int] = {}
    if suffix_equal:
        w1, w23 = (b - 3) % mb, (2 * b - 3) % mb
        idx = 0
        for last in range(q):
            for syn in range(mb):
                for sm in range(q):
                    cnt = cur[idx]
                    if cnt:
                        for v in tail:
                            a = (syn + (w1 if v >= last else 0) + w23) % mb
                            key = (a, (sm + 3 * v) % q)
                            out[key] = out.get(key, 0) + cnt
                    idx += 1
    else:
        idx = 0
        for last in range(q):
            for syn in range(mb):
                for sm in range(q):
                    cnt = cur[idx]
                    if cnt:
                        key = (syn, sm)
                        out[key] = out.get(key, 0) + cnt
                    idx += 1
    return out


class ClassFamily:
    """One constrained VT class, with exact count / unrank / rank / iteration.

    ``a`` is the checksum residue; ``c`` is the symbol-sum residue and must
    be given exactly when q > 2.
    """

    def __init__(self, q: int, b: int, allowed: AllowedSpec, suffix_equal: bool,
                 a: int, c: int | None = None):
        _check_allowed(q, b, allowed)
        if q == 2:
            if c is not None:
                raise ParameterError("c applies only to q > 2")
            if not 0 <= a <= b:
                raise ParameterError(f"checksum residue {a} out of range for b={b}")
        else:
            if c is None:
                raise ParameterError("q > 2 classes need the symbol-sum residue c")
            if not 0 <= a < b or not 0 <= c < q:
                raise ParameterError(f"class ({a},{c}) out of range for q={q}, b={b}")
        self.q, self.b, self.allowed, self.suffix_equal = q, b, allowed, suffix_equal
        self.a, self.c = a, c
        self._length = b - 3 if suffix_equal else b
        self._tail = _suffix_choices(allowed) if suffix_equal else ()
        self._tables: list | None = None

    # -- direct membership (independent of the DP tables) ------------------

    def contains(self, word: bytes) -> bool:
        if len(word) != self.b:
            return False
        for v, options in zip(word, self.allowed):
            if v not in options:
                return False
        if self.suffix_equal and not word[-3] == word[-2] == word[-1]:
            return False
        if self.q == 2:
            syn = 0
            for i, v in enumerate(word, 1):
                if v:
                    syn += i
            return syn % (self.b + 1) == self.a
        syn = 0
        prev = word[0]
        for i in range(1, self.b):
            v = word[i]
            if v >= prev:
                syn += i
            prev = v
        return syn % self.b == self.a and sum(word) % self.q == self.c

    # -- state machinery ----------------------------------------------------

    def _initial(self) -> int:
        return 0

    def _step(self, i: int, state: int, v: int) -> int:
        """State after emitting symbol v at 1-based position i."""
        if self.q == 2:
            return (state + i * v) % (self.b + 1)
        mb, q = self.b, self.q
        if i == 1:
            return (v * mb) * q + v % q
        sm = state % q
        syn = (state // q) % mb
        last = state // (q * mb)
        if v >= last:
            syn = (syn + i - 1) % mb
        return (v * mb + syn) * q + (sm + v) % q

    def _tail_key(self, state: int, v: int):
        """Class key reached by closing state with the equal 3-symbol tail v."""
        b, q = self.b, self.q
        if q == 2:
            return (state + (3 * b - 3) * v) % (b + 1)
        sm = state % q
        syn = (state // q) % self.b
        last = state // (q * self.b)
        a = (syn + ((b - 3) if v >= last else 0) + (2 * b - 3)) % self.b
        return (a, (sm + 3 * v) % q)

    def _final_key(self, state: int):
        if self.q == 2:
            return state
        return ((state // self.q) % self.b, state % self.q)

    def _target(self):
        return self.a if self.q == 2 else (self.a, self.c)

    def _completion_tables(self) -> list:
        """tables[i][state] = number of valid completions of positions i+1..b."""
        if self._tables is not None:
            return self._tables
        q, b = self.q, self.b
        nstates = (b + 1) if q == 2 else q * b * q
        length = self._length
        tables = [dict() for _ in range(length + 1)]
        last_level: dict[int, int] = {}
        if self.suffix_equal:
            # seed with every state reachable forward, closing over tail symbols
            reachable = self._reachable_states()
            for state in reachable[length]:
                n = sum(1 for v in self._tail if self._tail_key(state, v) == self._target())
                if n:
                    last_level[state] = n
        else:
            reachable = self._reachable_states()
            for state in reachable[length]:
                if self._final_key(state) == self._target():
                    last_level[state] = 1
        tables[length] = last_level
        for i in range(length, 0, -1):
            prev: dict[int, int] = {}
            nxt = tables[i]
            for state in reachable[i - 1]:
                total = 0
                for v in self.allowed[i - 1]:
                    total += nxt.get(self._step(i, state, v), 0)
                if total:
                    prev[state] = total
            tables[i - 1] = prev
        del nstates
        self._tables = tables
        return tables

    def _reachable_states(self) -> list[set[int]]:
        length = self._length
        levels: list[set[int]] = [set() for _ in range(length + 1)]
        levels[0].add(self._initial())
        for i in range(1, length + 1):
            step = self._step
            nxt = levels[i]
            for state in levels[i - 1]:
                for v in self.allowed[i - 1]:
                    nxt.add(step(i, state, v))
        return levels

    # -- public interface ----------------------------------------------------

    def count(self) -> int:
        return self._completion_tables()[0].get(self._initial(), 0)

    def unrank(self, index: int) -> bytes:
        """The index-th member in lexicographic order (0-based)."""
        if index < 0 or index >= self.count():
            raise ParameterError(f"rank {index} out of range (family size {self.count()})")
        tables = self._completion_tables()
        word = bytearray()
        state = self._initial()
        for i in range(1, self._length + 1):
            for v in self.allowed[i - 1]:
                s2 = self._step(i, state, v)
                n = tables[i].get(s2, 0)
                if index < n:
                    word.append(v)
                    state = s2
                    break
                index -= n
            else:  # pragma: no cover - guarded by the count() check
                raise ParameterError("unrank walked off the family")
        if self.suffix_equal:
            for v in self._tail:
                if self._tail_key(state, v) == self._target():
                    if index == 0:
                        word.extend((v, v, v))
                        return bytes(word)
                    index -= 1
            raise ParameterError("unrank walked off the family")  # pragma: no cover
        return bytes(word)

    def rank(self, word: bytes) -> int:
        """Lexicographic position of a member; rejects non-members."""
        if not self.contains(word):
            raise ParameterError(f"{word!r} is not in this family")
        tables = self._completion_tables()
        state = self._initial()
        index = 0
        for i in range(1, self._length + 1):
            target = word[i - 1]
            for v in self.allowed[i - 1]:
                if v == target:
                    break
                index += tables[i].get(self._step(i, state, v), 0)
            state = self._step(i, state, target)
        if self.suffix_equal:
            target = word[-1]
            for v in self._tail:
                if v == target:
                    break
                if self._tail_key(state, v) == self._target():
                    index += 1
        return index

    def __iter__(self) -> Iterator[bytes]:
        """Members in lexicographic order, skipping dead subtrees."""
        tables = self._completion_tables()
        length = self._length
        word = bytearray()

        def walk(i: int, state: int) -> Iterator[bytes]:
            if i == length:
                if self.suffix_equal:
                    for v in self._tail:
                        if self._tail_key(state, v) == self._target():
                            yield bytes(word) + bytes((v, v, v))
                else:
                    yield bytes(word)
                return
            nxt = tables[i + 1]
            for v in self.allowed[i]:
                s2 = self._step(i + 1, state, v)
                if nxt.get(s2, 0):
                    word.append(v)
                    yield from walk(i + 1, s2)
                    word.pop()

        return walk(0, self._initial())


class RoleFamily:
    """Lexicographic union of class families minus a few excluded words.

    Every atom shares the alphabet and length and targets the same class;
    the atoms' allowed-prefix blocks must be lexicographically disjoint and
    increasing, which makes the union's order the concatenation of the
    atoms' orders. Exclusions are handled by rank shifting, so unrank and
    rank stay exact.
    """

    def __init__(self, atoms: list[ClassFamily], excluded: tuple[bytes, ...] = ()):
        if not atoms:
            raise ParameterError("a role family needs at least one class family")
        self.atoms = list(atoms)
        self.q = atoms[0].q
        self.b = atoms[0].b
        self._counts = [atom.count() for atom in self.atoms]
        present = {w for w in excluded if any(atom.contains(w) for atom in self.atoms)}
        self._excluded = tuple(sorted(present))
        self._excluded_ranks = tuple(self._rank_union(w) for w in self._excluded)

    def count(self) -> int:
        return sum(self._counts) - len(self._excluded)

    def _rank_union(self, word: bytes) -> int:
        base = 0
        for atom, cnt in zip(self.atoms, self._counts):
            if atom.contains(word):
                return base + atom.rank(word)
            base += cnt
        raise ParameterError(f"{word!r} is not in this family")

    def _unrank_union(self, index: int) -> bytes:
        for atom, cnt in zip(self.atoms, self._counts):
            if index < cnt:
                return atom.unrank(index)
            index -= cnt
        raise ParameterError("unrank walked off the family")  # pragma: no cover

    def unrank(self, index: int) -> bytes:
        if index < 0 or index >= self.count():
            raise ParameterError(f"rank {index} out of range (family size {self.count()})")
        for r in self._excluded_ranks:
            if index >= r:
                index += 1
        return self._unrank_union(index)

    def rank(self, word: bytes) -> int:
        if word in self._excluded:
            raise ParameterError(f"{word!r} is excluded from this family")
        r = self._rank_union(word)
        return r - sum(1 for er in self._excluded_ranks if er < r)

    def contains(self, word: bytes) -> bool:
        if word in self._excluded:
            return False
        return any(atom.contains(word) for atom in self.atoms)

    def __iter__(self) -> Iterator[bytes]:
        skip = set(self._excluded)
        for atom in self.atoms:
            for word in atom:
                if word not in skip:
                    yield word
