"""Text formats for matrices, words, points, functions, tables, chains.

All files are UTF-8 with LF line endings; ``#`` starts a comment and
blank lines are ignored.  Words are dot-separated symbols with ``-`` for
the empty word; points are ``u|w`` literals.  Writers emit canonical
sorted forms only, and everything printed re-parses to an equal object.
"""

from __future__ import annotations

import os

from .codes import make_code
from .errors import FormatError
from .functions import LocFun, make as make_function
from .orbit import CoeMap, coe_from_chain
from .sft import Point, TransitionMatrix, Word, canonicalize_point, validate_matrix
from .tables import TableElement, validate_table


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


# -- words and points ---------------------------------------------------------


def format_word(word: Word) -> str:
    return ".".join(str(a) for a in word) if word else "-"


def parse_word(text: str, line: int | None = None) -> Word:
    text = text.strip()
    if text == "-":
        return ()
    try:
        return tuple(int(part) for part in text.split("."))
    except ValueError:
        raise FormatError(f"bad word literal {text!r}", line)


def format_point(point: Point) -> str:
    u = ".".join(str(a) for a in point.transient)
    w = ".".join(str(a) for a in point.cycle)
    return f"{u}|{w}"


def parse_point(text: str, matrix: TransitionMatrix, line: int | None = None) -> Point:
    text = text.strip()
    if "|" not in text:
        raise FormatError(f"point literal {text!r} needs a '|'", line)
    u_text, w_text = text.split("|", 1)
    u = parse_word(u_text, line) if u_text else ()
    w = parse_word(w_text, line)
    return canonicalize_point(matrix, u, w)


# -- matrices -----------------------------------------------------------------


def format_matrix(matrix: TransitionMatrix) -> str:
    lines = [f"matrix {matrix.n}"]
    lines += [" ".join(str(v) for v in row) for row in matrix.rows]
    return "\n".join(lines) + "\n"


def parse_matrix_grid(text: str) -> list[list[int]]:
    """The raw grid of a matrix file, before validation."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty matrix file")
    number, header = lines[0]
    fields = header.split()
    if len(fields) != 2 or fields[0] != "matrix":
        raise FormatError(f"expected 'matrix N', got {header!r}", number)
    try:
        n = int(fields[1])
    except ValueError:
        raise FormatError(f"bad symbol count {fields[1]!r}", number)
    if len(lines) != n + 1:
        raise FormatError(f"expected {n} rows after the header", number)
    grid = []
    for number, line in lines[1:]:
        try:
            row = [int(v) for v in line.split()]
        except ValueError:
            raise FormatError(f"bad matrix row {line!r}", number)
        if len(row) != n:
            raise FormatError(f"expected {n} entries, got {len(row)}", number)
        grid.append(row)
    return grid


def parse_matrix(text: str) -> TransitionMatrix:
    return validate_matrix(parse_matrix_grid(text))


# -- functions ----------------------------------------------------------------


def format_function(f: LocFun) -> str:
    lines = ["function"]
    lines += [f"{format_word(w)} {v}" for w, v in f.pieces]
    return "\n".join(lines) + "\n"


def parse_function(text: str, matrix: TransitionMatrix) -> LocFun:
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != "function":
        raise FormatError("expected a 'function' header",
                          lines[0][0] if lines else None)
    pieces = {}
    for number, line in lines[1:]:
        fields = line.split()
        if len(fields) != 2:
            raise FormatError(f"expected 'word value', got {line!r}", number)
        word = parse_word(fields[0], number)
        if word in pieces:
            raise FormatError(f"word {fields[0]} repeats", number)
        try:
            pieces[word] = int(fields[1])
        except ValueError:
            raise FormatError(f"bad integer {fields[1]!r}", number)
    return make_function(matrix, pieces)


# -- tables -------------------------------------------------------------------


def format_table(table: TableElement) -> str:
    lines = ["table"]
    lines += [f"{format_word(nu)} -> {format_word(mu)}" for nu, mu in table.entries]
    return "\n".join(lines) + "\n"


def parse_table(text: str, matrix: TransitionMatrix) -> TableElement:
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != "table":
        raise FormatError("expected a 'table' header",
                          lines[0][0] if lines else None)
    entries = []
    for number, line in lines[1:]:
        fields = line.split()
        if len(fields) != 3 or fields[1] != "->":
            raise FormatError(f"expected 'nu -> mu', got {line!r}", number)
        entries.append((parse_word(fields[0], number), parse_word(fields[2], number)))
    return validate_table(matrix, entries)


# -- chain maps ---------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    for number, line in _content_lines(text):
        for token in line.replace("{", " { ").replace("}", " } ").split():
            tokens.append((number, token))
    return tokens


class _TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.at = 0

    def done(self) -> bool:
        return self.at >= len(self.tokens)

    def peek(self):
        return self.tokens[self.at]

    def take(self, expect: str | None = None) -> str:
        if self.done():
            last = self.tokens[-1][0] if self.tokens else None
            raise FormatError("unexpected end of file", last)
        number, token = self.tokens[self.at]
        self.at += 1
        if expect is not None and token != expect:
            raise FormatError(f"expected {expect!r}, got {token!r}", number)
        return token

    def take_int(self) -> int:
        number, token = self.peek()
        try:
            return int(self.take())
        except ValueError:
            raise FormatError(f"expected an integer, got {token!r}", number)

    def line(self):
        return self.tokens[min(self.at, len(self.tokens) - 1)][0] if self.tokens else None


def _parse_block_map(stream: _TokenStream) -> dict[Word, int]:
    stream.take("{")
    mapping: dict[Word, int] = {}
    while True:
        number, token = stream.peek()
        if token == "}":
            stream.take()
            return mapping
        word = parse_word(stream.take(), number)
        stream.take("->")
        mapping[word] = stream.take_int()


def parse_coe(text: str, directory: str = ".") -> CoeMap:
    """Parse a chain file: header ``coe A-file B-file`` then stage lines
    ``pre-table file``, one ``code m { .. } inverse m' { .. }``, and
    ``post-table file``, in application order."""
    stream = _TokenStream(_tokenize(text))
    stream.take("coe")
    source = _load(parse_matrix, directory, stream.take(), stream.line())
    target = _load(parse_matrix, directory, stream.take(), stream.line())
    stages = []
    saw_code = False
    while not stream.done():
        number, token = stream.peek()
        if token == "pre-table":
            stream.take()
            if saw_code:
                raise FormatError("pre-table stages must precede the code", number)
            stages.append(_load(parse_table, directory, stream.take(), number, source))
        elif token == "post-table":
            stream.take()
            if not saw_code:
                raise FormatError("post-table stages must follow the code", number)
            stages.append(_load(parse_table, directory, stream.take(), number, target))
        elif token == "code":
            stream.take()
            if saw_code:
                raise FormatError("exactly one code stage is allowed", number)
            window = stream.take_int()
            mapping = _parse_block_map(stream)
            stream.take("inverse")
            inverse_window = stream.take_int()
            inverse_mapping = _parse_block_map(stream)
            stages.append(make_code(source, target, window, mapping,
                                    inverse_window, inverse_mapping))
            saw_code = True
        else:
            raise FormatError(f"unknown stage {token!r}", number)
    if not saw_code:
        raise FormatError("a chain file needs exactly one code stage", stream.line())
    return coe_from_chain(stages, source=source)


def _load(parser, directory, name, line, *args):
    path = os.path.join(directory, name)
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise FormatError(f"cannot read {name!r}: {exc}", line)
    return parser(text, *args)


def load_matrix(path: str) -> TransitionMatrix:
    with open(path, encoding="utf-8") as handle:
        return parse_matrix(handle.read())


def load_function(path: str, matrix: TransitionMatrix) -> LocFun:
    with open(path, encoding="utf-8") as handle:
        return parse_function(handle.read(), matrix)


def load_table(path: str, matrix: TransitionMatrix) -> TableElement:
    with open(path, encoding="utf-8") as handle:
        return parse_table(handle.read(), matrix)


def load_coe(path: str) -> CoeMap:
    with open(path, encoding="utf-8") as handle:
        return parse_coe(handle.read(), os.path.dirname(path) or ".")
