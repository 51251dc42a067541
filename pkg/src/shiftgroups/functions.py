"""Integer-valued locally constant functions with exact arithmetic.

A function that only depends on a finite prefix of its argument is stored
as a cylinder partition together with one integer per part.  The stored
form is canonical: whenever every admissible one-symbol extension of a
word carries the same value, those siblings are merged into their parent.
Canonical forms are unique, so ``==`` is function equality.

Values are Python ints, hence unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NegativeExponent
from .sft import (
    Point,
    TransitionMatrix,
    Word,
    partition,
    refine_words,
    shift_point,
)


@dataclass(frozen=True)
class LocFun:
    """Locally constant integer function, canonical form.

    ``pieces`` maps each part of a complete prefix-free partition to the
    value taken on that cylinder, sorted by word.  Build instances with
    :func:`make` (validating) or the module operations, not directly.
    """

    matrix: TransitionMatrix
    pieces: tuple[tuple[Word, int], ...]

    @property
    def parts(self) -> tuple[Word, ...]:
        return tuple(w for w, _ in self.pieces)

    def depth(self) -> int:
        return max((len(w) for w, _ in self.pieces), default=0)

    def is_zero(self) -> bool:
        return all(v == 0 for _, v in self.pieces)

    def min_value(self) -> int:
        return min(v for _, v in self.pieces)

    def max_value(self) -> int:
        return max(v for _, v in self.pieces)

    def __add__(self, other: "LocFun") -> "LocFun":
        return linear(1, self, 1, other)

    def __sub__(self, other: "LocFun") -> "LocFun":
        return linear(1, self, -1, other)

    def __neg__(self) -> "LocFun":
        return scale(-1, self)


def _merge_siblings(matrix: TransitionMatrix, table: dict[Word, int]) -> dict[Word, int]:
    """Collapse full sibling families sharing one value, bottom up."""
    changed = True
    while changed:
        changed = False
        for word in sorted(table, key=len, reverse=True):
            if word not in table or not word:
                continue
            parent = word[:-1]
            family = matrix.extensions(parent)
            if all(table.get(c) == table[word] for c in family):
                value = table[word]
                for c in family:
                    del table[c]
                table[parent] = value
                changed = True
    return table


def _canonical(matrix: TransitionMatrix, table: dict[Word, int]) -> LocFun:
    table = _merge_siblings(matrix, dict(table))
    return LocFun(matrix, tuple(sorted(table.items())))


def make(matrix: TransitionMatrix, pieces) -> LocFun:
    """Validate (partition completeness included) and canonicalize."""
    table = {tuple(w): int(v) for w, v in dict(pieces).items()}
    partition(matrix, table.keys())
    return _canonical(matrix, table)


def constant(matrix: TransitionMatrix, value: int) -> LocFun:
    return LocFun(matrix, (((), int(value)),))


def zero(matrix: TransitionMatrix) -> LocFun:
    return constant(matrix, 0)


def indicator(matrix: TransitionMatrix, word: Word) -> LocFun:
    """Characteristic function of the cylinder of ``word``."""
    word = tuple(word)
    matrix.check_admissible(word)
    if not word:
        return constant(matrix, 1)
    table: dict[Word, int] = {word: 1}
    # Fill in the zero branches hanging off every proper prefix.
    for i in range(len(word)):
        for sibling in matrix.extensions(word[:i]):
            if sibling != word[: i + 1]:
                table[sibling] = 0
    return _canonical(matrix, table)


def eval_at(f: LocFun, point: Point) -> int:
    """Value of the function at a point."""
    for word, value in f.pieces:
        if point.starts_with(word):
            return value
    raise AssertionError("canonical partition failed to cover a point")


def restrict(f: LocFun, word: Word) -> list[tuple[Word, int]]:
    """Pieces of ``f`` covering exactly the cylinder of ``word``."""
    out = []
    for w, v in f.pieces:
        if w[: len(word)] == word:
            out.append((w, v))
        elif word[: len(w)] == w:
            out.append((word, v))
    return out


def is_zero_on(f: LocFun, word: Word) -> bool:
    return all(v == 0 for _, v in restrict(f, word))


def on_refinement(*fs: LocFun):
    """Common refinement parts with the value tuple each function takes."""
    matrix = fs[0].matrix
    parts = refine_words(matrix, [f.parts for f in fs])
    lookup = []
    for f in fs:
        table = dict(f.pieces)
        lookup.append(table)

    def value_on(table: dict[Word, int], part: Word) -> int:
        for i in range(len(part), -1, -1):
            if part[:i] in table:
                return table[part[:i]]
        raise AssertionError("refinement part not covered")

    return [(part, tuple(value_on(t, part) for t in lookup)) for part in parts]


def linear(a: int, f: LocFun, b: int, g: LocFun) -> LocFun:
    """The function ``a*f + b*g`` on the common refinement."""
    if f.matrix != g.matrix:
        raise ValueError("functions live over different matrices")
    table = {part: a * u + b * v for part, (u, v) in on_refinement(f, g)}
    return _canonical(f.matrix, table)


def scale(a: int, f: LocFun) -> LocFun:
    return _canonical(f.matrix, {w: a * v for w, v in f.pieces})


def equal(f: LocFun, g: LocFun) -> bool:
    """Function equality; canonical forms make this structural equality."""
    if f.matrix != g.matrix:
        raise ValueError("functions live over different matrices")
    return f.pieces == g.pieces


def compose_shift(f: LocFun, times: int = 1) -> LocFun:
    """The function ``x -> f(shift^times(x))``."""
    out = f
    for _ in range(times):
        table: dict[Word, int] = {}
        for w, v in out.pieces:
            if not w:
                table[w] = v
                continue
            for a in out.matrix.predecessors(w[0]):
                table[(a,) + w] = v
        out = _canonical(out.matrix, table)
    return out


def piecewise(matrix: TransitionMatrix, chunks) -> LocFun:
    """Assemble a function from per-cylinder restrictions.

    ``chunks`` is an iterable of ``(word, pieces)`` where the words form a
    partition and each nested piece list covers that word's cylinder.
    """
    table: dict[Word, int] = {}
    for _, pieces in chunks:
        for w, v in pieces:
            table[w] = v
    partition(matrix, table.keys())
    return _canonical(matrix, table)


def birkhoff(f: LocFun, exponent: LocFun) -> LocFun:
    """Sum of ``f`` along the first ``exponent(x)`` shifts of ``x``.

    The exponent is itself locally constant and must be nonnegative; a
    zero exponent contributes the empty sum.
    """
    if f.matrix != exponent.matrix:
        raise ValueError("functions live over different matrices")
    if exponent.min_value() < 0:
        raise NegativeExponent("iterated-sum exponent takes a negative value")
    top = exponent.max_value()
    shifted = [f]
    for _ in range(1, top):
        shifted.append(compose_shift(shifted[-1]))
    table: dict[Word, int] = {}
    for part, values in on_refinement(exponent, *shifted):
        n = values[0]
        table[part] = sum(values[1: n + 1])
    return _canonical(f.matrix, table)


def birkhoff_at(f: LocFun, n: int, point: Point) -> int:
    """Literal sum of ``f`` along the orbit of one point (test oracle)."""
    total = 0
    for _ in range(n):
        total += eval_at(f, point)
        point = shift_point(point)
    return total
