"""One-sided shift spaces of finite type, exactly.

A shift space is the set of right-infinite symbol sequences allowed by a
0/1 transition matrix.  Everything downstream computes over three finite
stand-ins for that space:

* admissible words (finite allowed blocks),
* eventually periodic points ``u|w`` meaning the sequence u www... , and
* complete prefix-free families of words, which partition the space into
  cylinders.

Symbols are the integers ``1..n``.  Words are plain tuples of symbols; the
empty tuple is the empty word.  All values here are immutable and all
operations are pure, so everything is safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BadPartition, Inadmissible, NotZeroOne, Permutation, Reducible

Word = tuple[int, ...]

EMPTY: Word = ()


@dataclass(frozen=True)
class TransitionMatrix:
    """Validated irreducible, non-permutation 0/1 transition matrix.

    An edge ``i -> j`` exists when ``rows[i-1][j-1] == 1``.  Use
    :func:`validate_matrix` to construct one; the constructor itself does
    not re-check the invariants.
    """

    n: int
    rows: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        return self.rows[i - 1][j - 1]

    def symbols(self) -> range:
        return range(1, self.n + 1)

    def successors(self, a: int) -> tuple[int, ...]:
        return tuple(j for j in self.symbols() if self.entry(a, j))

    def predecessors(self, a: int) -> tuple[int, ...]:
        return tuple(i for i in self.symbols() if self.entry(i, a))

    def is_admissible(self, word: Iterable[int]) -> bool:
        word = tuple(word)
        if any(a < 1 or a > self.n for a in word):
            return False
        return all(self.entry(a, b) for a, b in zip(word, word[1:]))

    def check_admissible(self, word: Word) -> None:
        if not self.is_admissible(word):
            raise Inadmissible(f"word {word} is not admissible")

    def extensions(self, word: Word) -> tuple[Word, ...]:
        """All one-symbol extensions ``word + (a,)`` that stay admissible."""
        if not word:
            return tuple((a,) for a in self.symbols())
        return tuple(word + (a,) for a in self.successors(word[-1]))


def validate_matrix(grid) -> TransitionMatrix:
    """Validate a square integer grid as a transition matrix.

    Raises :class:`NotZeroOne`, :class:`Reducible` (not strongly
    connected) or :class:`Permutation` (all row sums 1) with the first
    failing reason, in that order.
    """
    rows = tuple(tuple(row) for row in grid)
    n = len(rows)
    if n < 1 or any(len(row) != n for row in rows):
        raise ValueError("grid must be square with n >= 1")
    for row in rows:
        for v in row:
            if v not in (0, 1):
                raise NotZeroOne(f"entry {v!r} is not 0 or 1")
    matrix = TransitionMatrix(n, rows)
    # Irreducible: every symbol reaches every symbol by a path of length
    # >= 1.  Reachability is seeded with successors, not the vertex
    # itself, so a loopless vertex never counts as reaching itself.
    for i in matrix.symbols():
        seen = set(matrix.successors(i))
        frontier = list(seen)
        while frontier:
            a = frontier.pop()
            for b in matrix.successors(a):
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        if len(seen) != n:
            raise Reducible(f"symbol {i} does not reach every symbol")
    if all(sum(row) == 1 for row in rows):
        raise Permutation("all row sums are 1")
    return matrix


def enumerate_words(matrix: TransitionMatrix, m: int) -> list[Word]:
    """All admissible words of length ``m`` in lexicographic order."""
    if m < 0:
        raise ValueError("length must be >= 0")
    words: list[Word] = [EMPTY]
    for _ in range(m):
        words = [ext for w in words for ext in matrix.extensions(w)]
    return words


# -- eventually periodic points ------------------------------------------


def _primitive_root(word: Word) -> Word:
    """Shortest word whose repetition gives ``word``."""
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word == word[:p] * (n // p):
            return word[:p]
    return word


@dataclass(frozen=True)
class Point:
    """Eventually periodic point ``transient . cycle^infinity``, canonical.

    Canonical means the cycle is primitive and the transient cannot be
    shortened by absorbing its last symbol into the cycle.  Two inputs
    describe the same infinite sequence exactly when their canonical
    forms are equal, so ``==`` is sequence equality.
    """

    matrix: TransitionMatrix
    transient: Word
    cycle: Word

    def symbol(self, i: int) -> int:
        """The ``i``-th symbol, 1-indexed."""
        u, w = self.transient, self.cycle
        if i <= len(u):
            return u[i - 1]
        return w[(i - 1 - len(u)) % len(w)]

    def prefix(self, m: int) -> Word:
        return tuple(self.symbol(i) for i in range(1, m + 1))

    def starts_with(self, word: Word) -> bool:
        return self.prefix(len(word)) == word

    def is_fixed(self) -> bool:
        return not self.transient and len(self.cycle) == 1


def canonicalize_point(matrix: TransitionMatrix, transient: Word, cycle: Word) -> Point:
    """Canonical point equal to the sequence transient cycle cycle ...

    Raises :class:`Inadmissible` when any transition inside or between
    the two words (including the cycle wrap-around) is forbidden.
    """
    u, w = tuple(transient), tuple(cycle)
    if not w:
        raise Inadmissible("cycle word must be nonempty")
    if not matrix.is_admissible(u + w + w):
        raise Inadmissible(f"point {u}|{w} is not admissible")
    w = _primitive_root(w)
    u = list(u)
    while u and u[-1] == w[-1]:
        u.pop()
        w = w[-1:] + w[:-1]
    return Point(matrix, tuple(u), w)


def shift_point(point: Point) -> Point:
    """Drop the first symbol: the image of the point under the shift map."""
    u, w = point.transient, point.cycle
    if u:
        return canonicalize_point(point.matrix, u[1:], w)
    return canonicalize_point(point.matrix, EMPTY, w[1:] + w[:1])


def shift_point_n(point: Point, n: int) -> Point:
    for _ in range(n):
        point = shift_point(point)
    return point


def prepend_point(word: Word, point: Point) -> Point:
    """The point ``word`` followed by the given point."""
    return canonicalize_point(point.matrix, word + point.transient, point.cycle)


def representative(matrix: TransitionMatrix, word: Word) -> Point:
    """Deterministic canonical point whose sequence starts with ``word``.

    Walks past the word by always taking the least admissible successor;
    the cycle closes as soon as the walk would revisit a symbol it chose
    itself.  Symbols inside ``word`` were forced, not chosen, so they
    never close the cycle.
    """
    word = tuple(word)
    matrix.check_admissible(word)
    path = list(word)
    forced = len(path)
    if not path:
        path.append(1)
    while True:
        nxt = matrix.successors(path[-1])[0]
        if nxt in path[forced:]:
            i = forced + path[forced:].index(nxt)
            return canonicalize_point(matrix, tuple(path[:i]), tuple(path[i:]))
        path.append(nxt)


# -- cylinder partitions ---------------------------------------------------


@dataclass(frozen=True)
class CylinderPartition:
    """Complete prefix-free family of admissible words.

    Every allowed infinite sequence starts with exactly one member, so
    the member cylinders partition the shift space.  The empty word is
    allowed only as the sole member (the trivial partition).
    """

    matrix: TransitionMatrix
    parts: tuple[Word, ...]

    def locate(self, point: Point) -> Word:
        """The unique part whose cylinder contains the point."""
        for part in self.parts:
            if point.starts_with(part):
                return part
        raise AssertionError("complete partition failed to cover a point")


def _check_antichain(parts: Iterable[Word]) -> None:
    seen = sorted(parts)
    for a, b in zip(seen, seen[1:]):
        if b[: len(a)] == a:
            raise BadPartition(f"{a} is a prefix of {b}")


def _check_complete(matrix: TransitionMatrix, parts: frozenset[Word]) -> None:
    stack: list[Word] = [EMPTY]
    while stack:
        node = stack.pop()
        if node in parts:
            continue
        children = matrix.extensions(node)
        for child in children:
            if child in parts:
                continue
            if not any(p[: len(child)] == child for p in parts):
                raise BadPartition(f"no part covers sequences through {child}")
            stack.append(child)


def partition(matrix: TransitionMatrix, parts: Iterable[Word]) -> CylinderPartition:
    """Validate a word family as a cylinder partition."""
    parts = tuple(sorted(set(tuple(p) for p in parts)))
    if not parts:
        raise BadPartition("a partition needs at least one part")
    for p in parts:
        matrix.check_admissible(p)
    _check_antichain(parts)
    _check_complete(matrix, frozenset(parts))
    return CylinderPartition(matrix, parts)


def full_partition(matrix: TransitionMatrix, depth: int) -> CylinderPartition:
    """The partition into all cylinders of the given depth."""
    if depth == 0:
        return CylinderPartition(matrix, (EMPTY,))
    return CylinderPartition(matrix, tuple(enumerate_words(matrix, depth)))


def refine(p: CylinderPartition, q: CylinderPartition) -> CylinderPartition:
    """Coarsest common refinement of two partitions over the same matrix."""
    if p.matrix != q.matrix:
        raise ValueError("partitions live over different matrices")
    out = set()
    for a in p.parts:
        for b in q.parts:
            if b[: len(a)] == a:
                out.add(b)
            elif a[: len(b)] == b:
                out.add(a)
    return CylinderPartition(p.matrix, tuple(sorted(out)))


def refine_words(matrix: TransitionMatrix, families: Iterable[Iterable[Word]]) -> tuple[Word, ...]:
    """Common refinement of several partitions, given as raw word families."""
    acc = partition(matrix, (EMPTY,))
    for family in families:
        acc = refine(acc, CylinderPartition(matrix, tuple(sorted(family))))
    return acc.parts


def expand_to_depth(matrix: TransitionMatrix, word: Word, depth: int) -> list[Word]:
    """All admissible extensions of ``word`` up to the given length."""
    out = [word]
    while len(out[0]) < depth:
        out = [ext for w in out for ext in matrix.extensions(w)]
    return out


# -- higher block presentation ---------------------------------------------


def higher_block(matrix: TransitionMatrix, m: int):
    """The m-block presentation with its encode / decode conjugacies.

    New symbols are the admissible length-``m`` words in lexicographic
    order; blocks are joined when they overlap in ``m - 1`` symbols and
    the joined word is admissible.  Returns ``(block_matrix, encode,
    decode)`` where encode and decode map points and are mutually
    inverse.
    """
    if m < 1:
        raise ValueError("block length must be >= 1")
    blocks = enumerate_words(matrix, m)
    index = {w: i + 1 for i, w in enumerate(blocks)}
    rows = tuple(
        tuple(1 if v[: m - 1] == w[1:] and matrix.entry(w[-1], v[-1]) else 0
              for v in blocks)
        for w in blocks
    )
    block_matrix = TransitionMatrix(len(blocks), rows)

    def encode(point: Point) -> Point:
        u, w = point.transient, point.cycle
        n_u, n_w = len(u), len(w)
        new_u = tuple(index[point.prefix(i + m - 1)[i - 1:]] for i in range(1, n_u + 1))
        new_w = tuple(
            index[tuple(point.symbol(j) for j in range(i, i + m))]
            for i in range(n_u + 1, n_u + n_w + 1)
        )
        return canonicalize_point(block_matrix, new_u, new_w)

    def decode(point: Point) -> Point:
        new_u = tuple(blocks[a - 1][0] for a in point.transient)
        new_w = tuple(blocks[a - 1][0] for a in point.cycle)
        return canonicalize_point(matrix, new_u, new_w)

    return block_matrix, encode, decode
