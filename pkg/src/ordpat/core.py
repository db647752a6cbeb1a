"""Combinatorial objects and the two structure maps between them.

The objects: permutations of [n], ordered set partitions of [n] (blocks
carry a linear order), and words over {1..k} with prescribed letter
multiplicities.  The maps: flattening (write each block in decreasing
order and concatenate) and the canonical word (letter i records the
block containing element i).  Pattern containment is decided both by a
generic nested-subsequence scan, which is the reference, and by O(1)
per-letter state machines specialised to each length-3 pattern.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

_BIG = 1 << 30  # sentinel larger than any letter value we handle


def binomial(a: int, b: int) -> int:
    """C(a, b), with 0 outside the range 0 <= b <= a."""
    if a < 0:
        raise DomainError(f"binomial: a must be nonnegative, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def multinomial(sizes: Sequence[int]) -> int:
    """Number of words with letter i appearing sizes[i] times."""
    total = 0
    result = 1
    for s in sizes:
        total += s
        result *= math.comb(total, s)
    return result


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k)."""
    if n < 0 or k < 0:
        raise DomainError("stirling2: arguments must be nonnegative")
    if k == 0:
        return 1 if n == 0 else 0
    if k > n:
        return 0
    # inclusion-exclusion over surjections
    total = sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1))
    return total // math.factorial(k)


class Permutation:
    """A bijective word on {1..n}, stored in one-line notation."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[int], check: bool = True):
        entries = tuple(int(e) for e in entries)
        if check:
            n = len(entries)
            if sorted(entries) != list(range(1, n + 1)):
                raise DomainError(f"not a permutation of 1..{n}: {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse '312' or '3,1,2' into a permutation."""
        text = text.strip()
        if "," in text:
            parts = [p for p in text.split(",") if p]
        else:
            parts = list(text)
        try:
            return cls(int(p) for p in parts)
        except ValueError as exc:
            raise DomainError(f"cannot parse permutation from {text!r}") from exc

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.entries == other.entries

    def __hash__(self):
        return hash(("Permutation", self.entries))

    def __repr__(self):
        return f"Permutation({list(self.entries)})"

    def __str__(self):
        if self.n <= 9:
            return "".join(str(e) for e in self.entries)
        return ",".join(str(e) for e in self.entries)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def inverse(self) -> "Permutation":
        """Group inverse: position of each value."""
        inv = [0] * self.n
        for pos, val in enumerate(self.entries, start=1):
            inv[val - 1] = pos
        return Permutation(inv, check=False)


class OrderedPartition:
    """Nonempty disjoint blocks covering {1..n}, in a fixed linear order.

    Blocks are stored with elements increasing; the block order is the
    semantic payload.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks: Iterable[Iterable[int]], check: bool = True):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        if check:
            seen: set[int] = set()
            for b in blocks:
                if not b:
                    raise DomainError("empty block in ordered partition")
                for e in b:
                    if e in seen:
                        raise DomainError(f"duplicate element {e}")
                    seen.add(e)
            n = sum(len(b) for b in blocks)
            if seen != set(range(1, n + 1)):
                raise DomainError(f"blocks do not cover 1..{n}: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def shape(self) -> "Shape":
        return Shape(len(b) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, OrderedPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(("OrderedPartition", self.blocks))

    def __repr__(self):
        return f"OrderedPartition({[list(b) for b in self.blocks]})"

    def __str__(self):
        sep = "" if self.n <= 9 else ","
        return "/".join(sep.join(str(e) for e in b) for b in self.blocks)

    def __setattr__(self, name, value):
        raise AttributeError("OrderedPartition is immutable")


class MultisetWord:
    """A word over {1..k} with letter i occurring multiplicities[i-1] times."""

    __slots__ = ("letters", "multiplicities")

    def __init__(self, letters: Iterable[int], check: bool = True):
        letters = tuple(int(x) for x in letters)
        k = max(letters) if letters else 0
        mults = [0] * k
        for x in letters:
            if check and x < 1:
                raise DomainError(f"letters must be positive, got {x}")
            mults[x - 1] += 1
        if check and 0 in mults:
            missing = mults.index(0) + 1
            raise DomainError(f"letter {missing} missing from word {letters}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "multiplicities", tuple(mults))

    @property
    def n(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __eq__(self, other):
        return isinstance(other, MultisetWord) and self.letters == other.letters

    def __hash__(self):
        return hash(("MultisetWord", self.letters))

    def __repr__(self):
        return f"MultisetWord({list(self.letters)})"

    def __str__(self):
        if not self.letters or max(self.letters) <= 9:
            return "".join(str(x) for x in self.letters)
        return ",".join(str(x) for x in self.letters)

    def __setattr__(self, name, value):
        raise AttributeError("MultisetWord is immutable")


class Shape:
    """Block-size vector (b1, ..., bk), all sizes >= 1."""

    __slots__ = ("sizes",)

    def __init__(self, sizes: Iterable[int]):
        sizes = tuple(int(s) for s in sizes)
        if any(s < 1 for s in sizes):
            raise DomainError(f"shape sizes must be >= 1: {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def parse(cls, text: str) -> "Shape":
        """Parse '2,2,1' into a shape."""
        try:
            return cls(int(p) for p in text.split(",") if p)
        except ValueError as exc:
            raise DomainError(f"cannot parse shape from {text!r}") from exc

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    def __len__(self):
        return len(self.sizes)

    def __iter__(self):
        return iter(self.sizes)

    def __eq__(self, other):
        return isinstance(other, Shape) and self.sizes == other.sizes

    def __hash__(self):
        return hash(("Shape", self.sizes))

    def __repr__(self):
        return f"Shape({list(self.sizes)})"

    def __str__(self):
        return ",".join(str(s) for s in self.sizes)

    def __setattr__(self, name, value):
        raise AttributeError("Shape is immutable")


# ---------------------------------------------------------------------------
# Generators.  Ordered partitions are emitted in lexicographic order of
# their canonical words, multiset words in plain lexicographic order, so
# every enumeration is deterministic.
# ---------------------------------------------------------------------------

def _surjective_words(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All words of length n over {1..k} using every letter, lex order."""
    word = [0] * n
    used = [False] * (k + 1)

    def rec(pos: int, distinct: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            yield tuple(word)
            return
        remaining = n - pos
        for letter in range(1, k + 1):
            new_distinct = distinct + (not used[letter])
            # every still-unused letter needs a slot later on
            if k - new_distinct > remaining - 1:
                continue
            was = used[letter]
            used[letter] = True
            word[pos] = letter
            yield from rec(pos + 1, new_distinct)
            used[letter] = was
        word[pos] = 0

    return rec(0, 0)


def _words_with_multiplicities(mults: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All words with the given letter multiplicities, lex order."""
    k = len(mults)
    counts = list(mults)
    n = sum(counts)
    word = [0] * n

    def rec(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            yield tuple(word)
            return
        for letter in range(1, k + 1):
            if counts[letter - 1]:
                counts[letter - 1] -= 1
                word[pos] = letter
                yield from rec(pos + 1)
                counts[letter - 1] += 1
        word[pos] = 0

    return rec(0)


def partition_from_word(word: Sequence[int]) -> OrderedPartition:
    """Inverse of the canonical-word map: letter i names element i's block."""
    if not word:
        return OrderedPartition((), check=False)
    k = max(word)
    blocks: list[list[int]] = [[] for _ in range(k)]
    for elem, letter in enumerate(word, start=1):
        if letter < 1:
            raise DomainError(f"letters must be positive, got {letter}")
        blocks[letter - 1].append(elem)
    if any(not b for b in blocks):
        raise DomainError(f"word {tuple(word)} skips a letter, blocks would be empty")
    return OrderedPartition(blocks, check=False)


def gen_ordered_partitions(n: int, k: int) -> Iterator[OrderedPartition]:
    """All ordered partitions of [n] with k blocks; k!*S(n,k) of them.

    k = 0 with n > 0, or k > n, is an empty enumeration, not an error;
    n = k = 0 yields the single empty partition.
    """
    if n < 0 or k < 0:
        raise DomainError("n and k must be nonnegative")
    if n == 0 and k == 0:
        yield OrderedPartition((), check=False)
        return
    if k == 0 or k > n:
        return
    for word in _surjective_words(n, k):
        yield partition_from_word(word)


def gen_ordered_partitions_by_shape(shape: Shape | Sequence[int]) -> Iterator[OrderedPartition]:
    """All ordered partitions whose i-th block has the i-th shape size."""
    if not isinstance(shape, Shape):
        shape = Shape(shape)
    for word in _words_with_multiplicities(shape.sizes):
        yield partition_from_word(word)


def gen_multiset_words(mults: Sequence[int]) -> Iterator[MultisetWord]:
    """All multiset words with the given multiplicities, lex order."""
    mults = tuple(int(m) for m in mults)
    if not mults or any(m < 1 for m in mults):
        raise DomainError(f"multiplicities must be a nonempty positive vector: {mults}")
    for word in _words_with_multiplicities(mults):
        yield MultisetWord(word, check=False)


# ---------------------------------------------------------------------------
# Pattern containment.  Order-isomorphism is strict in both directions:
# equal letters of a word never match two distinct pattern values.
# ---------------------------------------------------------------------------

def _as_letters(w) -> tuple[int, ...]:
    if isinstance(w, (Permutation, MultisetWord)):
        return tuple(w)
    return tuple(int(x) for x in w)


def contains_pattern_word_generic(w, pattern) -> bool:
    """Reference containment test: nested subsequence scan, any pattern length."""
    word = _as_letters(w)
    p = _as_letters(pattern)
    m = len(p)
    if m == 0:
        raise DomainError("pattern must be nonempty")
    n = len(word)
    chosen: list[int] = []

    def rec(start: int) -> bool:
        t = len(chosen)
        if t == m:
            return True
        for i in range(start, n - (m - t) + 1):
            c = word[i]
            ok = True
            for s in range(t):
                v = chosen[s]
                if p[t] > p[s]:
                    if not c > v:
                        ok = False
                        break
                else:
                    if not c < v:
                        ok = False
                        break
            if ok:
                chosen.append(c)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    return rec(0)


# Per-pattern scan machines.  Each consumes letters left to right;
# `check(state, x)` reports whether appending x would complete an
# occurrence, `step(state, x)` folds x into the state.  States are small
# int tuples so pruned enumerators in the counting engine can stack them
# cheaply.  Witnesses are tracked through best-so-far prefix extremes:
# e.g. for 123 it suffices to remember the smallest letter seen and the
# smallest letter that tops an ascent.


def pattern3_machine(pattern):
    """(initial_state, check, step) for a single-pass length-3 scan."""
    pattern = tuple(pattern)

    if pattern == (1, 2, 3):
        # state: (min letter, min ascent top); x completes iff x > top
        def check(state, x):
            return x > state[1]

        def step(state, x):
            lo, mid = state
            if lo < x < mid:
                mid = x
            return (x if x < lo else lo, mid)

        return (_BIG, _BIG), check, step

    if pattern == (3, 2, 1):
        # mirror of 123: (max letter, max descent bottom)
        def check(state, x):
            return x < state[1]

        def step(state, x):
            hi, mid = state
            if hi > x > mid:
                mid = x
            return (x if x > hi else hi, mid)

        return (0, 0), check, step

    if pattern == (1, 3, 2):
        # pairs (prefix min, letter) open the interval of completing values;
        # badmask bit v-1 set iff letter v would complete
        def check(state, x):
            return bool(state[1] >> (x - 1) & 1)

        def step(state, x):
            lo, bad = state
            if lo < x:
                bad |= ((1 << (x - 1)) - 1) & ~((1 << lo) - 1)
                return (lo, bad)
            return (x, bad)

        return (_BIG, 0), check, step

    if pattern == (3, 1, 2):
        # inverted pairs (prefix max, letter) open the completing interval
        def check(state, x):
            return bool(state[1] >> (x - 1) & 1)

        def step(state, x):
            hi, bad = state
            if hi > x:
                bad |= ((1 << (hi - 1)) - 1) & ~((1 << x) - 1)
                return (hi, bad)
            return (x, bad)

        return (0, 0), check, step

    if pattern == (2, 3, 1):
        # x completes iff x < largest first element of an ascent pair
        def check(state, x):
            return x < state[0]

        def step(state, x):
            best, seen = state
            below = seen & ((1 << (x - 1)) - 1)
            if below:
                b = below.bit_length()
                if b > best:
                    best = b
            return (best, seen | (1 << (x - 1)))

        return (0, 0), check, step

    if pattern == (2, 1, 3):
        # x completes iff x > smallest first element of an inversion
        def check(state, x):
            return x > state[0]

        def step(state, x):
            worst, seen = state
            above = seen >> x
            if above:
                w = x + (above & -above).bit_length()
                if w < worst:
                    worst = w
            return (worst, seen | (1 << (x - 1)))

        return (_BIG, 0), check, step

    raise DomainError(f"not a length-3 pattern: {pattern}")


_MACHINES: dict[tuple[int, int, int], tuple] = {}


def _machine(pattern: tuple[int, int, int]):
    m = _MACHINES.get(pattern)
    if m is None:
        m = pattern3_machine(pattern)
        _MACHINES[pattern] = m
    return m


def _contains3(word: Sequence[int], pattern: tuple[int, int, int]) -> bool:
    state, check, step = _machine(pattern)
    for x in word:
        if check(state, x):
            return True
        state = step(state, x)
    return False


def contains_pattern_word(w, pattern) -> bool:
    """True iff the word has a subsequence order-isomorphic to the pattern.

    Length-3 patterns run through the specialised single-pass scan; all
    other lengths fall back to the generic reference scan.
    """
    p = _as_letters(pattern)
    if len(p) == 0:
        raise DomainError("pattern must be nonempty")
    if len(p) == 3:
        return _contains3(_as_letters(w), p)
    return contains_pattern_word_generic(w, p)


def contains_pattern_ordered_partition(op: OrderedPartition, pattern) -> bool:
    """True iff blocks with increasing indices supply one element each,
    in a sequence order-isomorphic to the pattern."""
    p = _as_letters(pattern)
    m = len(p)
    if m == 0:
        raise DomainError("pattern must be nonempty")
    blocks = op.blocks
    k = len(blocks)
    chosen: list[int] = []

    def rec(bi: int) -> bool:
        t = len(chosen)
        if t == m:
            return True
        if k - bi < m - t:
            return False
        for e in blocks[bi]:
            ok = True
            for s in range(t):
                if (e > chosen[s]) != (p[t] > p[s]):
                    ok = False
                    break
            if ok:
                chosen.append(e)
                if rec(bi + 1):
                    return True
                chosen.pop()
        return rec(bi + 1)

    return rec(0)


# ---------------------------------------------------------------------------
# The two structure maps and descent statistics.
# ---------------------------------------------------------------------------

def descent_set(p: Permutation) -> frozenset[int]:
    """Positions i (1-based) with p[i] > p[i+1]."""
    e = p.entries if isinstance(p, Permutation) else _as_letters(p)
    return frozenset(i for i in range(1, len(e)) if e[i - 1] > e[i])


def descents(p: Permutation) -> int:
    return len(descent_set(p))


def flatten_phi(op: OrderedPartition) -> Permutation:
    """Write each block in decreasing order and concatenate."""
    out: list[int] = []
    for b in op.blocks:
        out.extend(reversed(b))
    return Permutation(out, check=False)


def preimage_count(p: Permutation, k: int) -> int:
    """Number of 123-avoiding ordered partitions with k blocks flattening to p.

    Equals C(des(p), n-k); p itself must avoid 123.
    """
    n = p.n
    if k < 1 or k > n:
        raise DomainError(f"k must satisfy 1 <= k <= {n}, got {k}")
    if contains_pattern_word(p, (1, 2, 3)):
        raise DomainError(f"{p} contains 123; the preimage count formula does not apply")
    return binomial(descents(p), n - k)


def canonical_word_psi(op: OrderedPartition) -> MultisetWord:
    """The word whose i-th letter names the block containing element i."""
    n = op.n
    letters = [0] * n
    for j, block in enumerate(op.blocks, start=1):
        for e in block:
            letters[e - 1] = j
    return MultisetWord(letters, check=False)


def psi_inverse(word: MultisetWord | Sequence[int]) -> OrderedPartition:
    """Inverse of canonical_word_psi."""
    return partition_from_word(_as_letters(word))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


ALL_LENGTH3_PATTERNS = tuple(
    Permutation(t, check=False)
    for t in ((1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1))
)
