"""Invertible sliding block codes between shift spaces.

A code reads a window of ``window`` consecutive symbols and emits one
target symbol per position (no memory, anticipation ``window - 1``), so
it commutes with the shifts by construction.  Codes here are always
homeomorphisms: each carries the symbol map of its inverse, and
validation checks exactly that the two maps invert each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAdmissibleImage, NotInverse
from .sft import Point, TransitionMatrix, Word, canonicalize_point, enumerate_words, higher_block


@dataclass(frozen=True)
class BlockCode:
    """Sliding block conjugacy with an explicit inverse.

    ``mapping`` sends every admissible source window to a target symbol;
    ``inverse_mapping`` does the same in the other direction with its own
    window length.
    """

    source: TransitionMatrix
    target: TransitionMatrix
    window: int
    mapping: tuple[tuple[Word, int], ...]
    inverse_window: int
    inverse_mapping: tuple[tuple[Word, int], ...]

    def symbol_map(self) -> dict[Word, int]:
        return dict(self.mapping)

    def apply_word(self, word: Word) -> Word:
        """Target word read off a source word (one symbol per full window)."""
        table = self.symbol_map()
        m = self.window
        return tuple(table[word[i: i + m]] for i in range(len(word) - m + 1))

    def encode(self, point: Point) -> Point:
        """Image of an eventually periodic point."""
        u, w = point.transient, point.cycle
        m = self.window
        table = self.symbol_map()
        new_u = tuple(
            table[tuple(point.symbol(j) for j in range(i, i + m))]
            for i in range(1, len(u) + 1)
        )
        new_w = tuple(
            table[tuple(point.symbol(j) for j in range(i, i + m))]
            for i in range(len(u) + 1, len(u) + len(w) + 1)
        )
        return canonicalize_point(self.target, new_u, new_w)

    def inverse(self) -> "BlockCode":
        return BlockCode(
            self.target,
            self.source,
            self.inverse_window,
            self.inverse_mapping,
            self.window,
            self.mapping,
        )

    def decode(self, point: Point) -> Point:
        return self.inverse().encode(point)


def _raw_code(source, target, window, mapping, inverse_window, inverse_mapping) -> BlockCode:
    mapping = tuple(sorted((tuple(w), int(s)) for w, s in dict(mapping).items()))
    inverse_mapping = tuple(sorted((tuple(w), int(s)) for w, s in dict(inverse_mapping).items()))
    return BlockCode(source, target, window, mapping, inverse_window, inverse_mapping)


def _check_block_map(source: TransitionMatrix, target: TransitionMatrix,
                     window: int, table: dict[Word, int]) -> None:
    for word in enumerate_words(source, window):
        if word not in table:
            raise NotAdmissibleImage(f"no image declared for window {word}")
        if not 1 <= table[word] <= target.n:
            raise NotAdmissibleImage(f"image of {word} is not a target symbol")
    for word in enumerate_words(source, window + 1):
        a, b = table[word[:-1]], table[word[1:]]
        if not target.entry(a, b):
            raise NotAdmissibleImage(
                f"windows of {word} map to the forbidden transition {a} -> {b}")


def make_code(source: TransitionMatrix, target: TransitionMatrix, window: int,
              mapping, inverse_window: int, inverse_mapping) -> BlockCode:
    """Validate a block map plus inverse as a conjugacy.

    Both maps must be total on admissible windows, produce admissible
    transitions, and compose to the identity in both directions (checked
    exactly on all windows of the composite length).
    """
    code = _raw_code(source, target, window, mapping, inverse_window, inverse_mapping)
    _check_block_map(source, target, window, code.symbol_map())
    _check_block_map(target, source, inverse_window, dict(code.inverse_mapping))
    for composite in (compose_codes(code.inverse(), code), compose_codes(code, code.inverse())):
        for word, symbol in composite.mapping:
            if symbol != word[0]:
                raise NotInverse(
                    f"round trip sends the window {word} to {symbol}, not {word[0]}")
    return code


def identity_code(matrix: TransitionMatrix) -> BlockCode:
    table = {(a,): a for a in matrix.symbols()}
    return _raw_code(matrix, matrix, 1, table, 1, table)


def relabel_code(matrix: TransitionMatrix, target: TransitionMatrix, perm: dict[int, int]) -> BlockCode:
    """One-block relabeling along a graph isomorphism ``perm``."""
    table = {(a,): perm[a] for a in matrix.symbols()}
    inverse = {(perm[a],): a for a in matrix.symbols()}
    return make_code(matrix, target, 1, table, 1, inverse)


def compose_codes(outer: BlockCode, inner: BlockCode) -> BlockCode:
    """The code ``outer after inner``; windows add up (minus one).

    Not validated as a conjugacy: used internally, including on pairs
    that compose to the identity during validation itself.
    """
    if inner.target != outer.source:
        raise ValueError("codes do not chain")
    window = inner.window + outer.window - 1
    table = {
        word: outer.apply_word(inner.apply_word(word))[0]
        for word in enumerate_words(inner.source, window)
    }
    inv_window = outer.inverse_window + inner.inverse_window - 1
    inv_table = {
        word: inner.inverse().apply_word(outer.inverse().apply_word(word))[0]
        for word in enumerate_words(outer.target, inv_window)
    }
    return _raw_code(inner.source, outer.target, window, table, inv_window, inv_table)


def is_first_symbol_code(code: BlockCode) -> bool:
    """True when the symbol map just projects each window to its head."""
    return code.source == code.target and all(
        symbol == word[0] for word, symbol in code.mapping)


def higher_block_codes(matrix: TransitionMatrix, m: int):
    """Encode / decode conjugacies of the m-block presentation, as codes.

    Returns ``(block_matrix, encode_code, decode_code)`` where the encode
    code reads windows of length ``m`` and the decode code projects each
    block symbol to its first letter.
    """
    block_matrix, _, _ = higher_block(matrix, m)
    blocks = enumerate_words(matrix, m)
    index = {w: i + 1 for i, w in enumerate(blocks)}
    encode_table = {w: index[w] for w in blocks}
    decode_table = {(index[w],): w[0] for w in blocks}
    encode = make_code(matrix, block_matrix, m, encode_table, 1, decode_table)
    return block_matrix, encode, encode.inverse()
