"""Prefix-to-prefix transducers: normal forms for chain maps.

Every map built from prefix-exchange tables and one invertible block code
acts, on a fine enough cylinder, by writing a fixed target word and then
streaming the code over a shifted tail.  A :class:`Transducer` stores
exactly that: a core code plus entries ``(mu, alpha, r)`` meaning

    on the cylinder of ``mu``:  h(x) = alpha . code-stream(shift^r(x))

with the source words forming a complete prefix-free partition (and
``r <= len(mu)`` until a shift is appended on the output side).  Stage
application (one more table, one more code, a shift on either side)
stays in this class, and equality of two maps with the same core is
decidable by refining to a common partition and aligning the shifts of
each pair of entries, which costs linear work in the shift exponent
instead of a cylinder expansion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import BlockCode, compose_codes, identity_code
from .functions import LocFun, _canonical as _canonical_fun
from .sft import (
    Point,
    TransitionMatrix,
    Word,
    enumerate_words,
    prepend_point,
    refine_words,
    shift_point_n,
)
from .tables import TableElement, validate_table

Entry = tuple[Word, Word, int]


@dataclass(frozen=True)
class Transducer:
    core: BlockCode
    entries: tuple[Entry, ...]

    @property
    def source(self) -> TransitionMatrix:
        return self.core.source

    @property
    def target(self) -> TransitionMatrix:
        return self.core.target

    @property
    def parts(self) -> tuple[Word, ...]:
        return tuple(mu for mu, _, _ in self.entries)

    def known_prefix(self, mu: Word, alpha: Word, r: int) -> Word:
        """Target symbols determined by ``mu``: alpha plus streamed ones."""
        m = self.core.window
        table = self.core.symbol_map()
        streamed = tuple(
            table[mu[r + j: r + j + m]]
            for j in range(max(0, len(mu) - r - m + 1))
        )
        return alpha + streamed

    def entry_for(self, point: Point) -> Entry:
        for mu, alpha, r in self.entries:
            if point.starts_with(mu):
                return mu, alpha, r
        raise AssertionError("transducer parts failed to cover a point")


def _sorted(entries) -> tuple[Entry, ...]:
    return tuple(sorted(entries))


def identity_transducer(matrix: TransitionMatrix) -> Transducer:
    return Transducer(identity_code(matrix), (((), (), 0),))


def from_table(table: TableElement) -> Transducer:
    entries = tuple((nu, mu, len(nu)) for nu, mu in table.entries)
    return Transducer(identity_code(table.matrix), _sorted(entries))


def apply_table_stage(t: Transducer, table: TableElement) -> Transducer:
    """The transducer of ``table after t``."""
    if table.matrix != t.target:
        raise ValueError("table acts on the wrong shift space")
    matrix = t.source
    out: list[Entry] = []

    def emit(mu: Word, alpha: Word, r: int) -> None:
        known = t.known_prefix(mu, alpha, r)
        for nu, image in table.entries:
            if known[: len(nu)] == nu:
                if len(nu) <= len(alpha):
                    out.append((mu, image + alpha[len(nu):], r))
                else:
                    out.append((mu, image, r + len(nu) - len(alpha)))
                return
        for child in matrix.extensions(mu):
            emit(child, alpha, r)

    for mu, alpha, r in t.entries:
        emit(mu, alpha, r)
    return Transducer(t.core, _sorted(out))


def apply_code_stage(t: Transducer, code: BlockCode) -> Transducer:
    """The transducer of ``code after t``; cores compose."""
    if code.source != t.target:
        raise ValueError("code reads the wrong shift space")
    matrix = t.source
    new_core = compose_codes(code, t.core)
    out: list[Entry] = []

    def emit(mu: Word, alpha: Word, r: int) -> None:
        needed = len(alpha) + code.window - 1 if alpha else 0
        known = t.known_prefix(mu, alpha, r)
        if len(known) >= needed:
            out.append((mu, code.apply_word(known[:needed]), r))
            return
        for child in matrix.extensions(mu):
            emit(child, alpha, r)

    for mu, alpha, r in t.entries:
        emit(mu, alpha, r)
    return Transducer(new_core, _sorted(out))


def precompose_shift(t: Transducer) -> Transducer:
    """The transducer of ``t after shift``."""
    out: list[Entry] = []
    for mu, alpha, r in t.entries:
        heads = t.source.predecessors(mu[0]) if mu else t.source.symbols()
        for a in heads:
            out.append(((a,) + mu, alpha, r + 1))
    return Transducer(t.core, _sorted(out))


def post_shift(t: Transducer, n: LocFun) -> Transducer:
    """The transducer of ``shift^n after t`` for locally constant ``n >= 0``."""
    if n.matrix != t.source:
        raise ValueError("exponent lives over the wrong shift space")
    if n.min_value() < 0:
        raise ValueError("shift exponent must be nonnegative")
    values = dict(n.pieces)

    def value_on(part: Word) -> int:
        for i in range(len(part), -1, -1):
            if part[:i] in values:
                return values[part[:i]]
        raise AssertionError("exponent partition does not cover a part")

    out: list[Entry] = []
    for mu, alpha, r in t.entries:
        pieces = [p for p in values if p[: len(mu)] == mu] or [mu]
        for piece in pieces:
            word = piece if len(piece) >= len(mu) else mu
            n0 = value_on(word)
            if n0 <= len(alpha):
                out.append((word, alpha[n0:], r))
            else:
                # The shift may exceed the part depth here; only the
                # equality machinery consumes such entries, and it does
                # not rely on r <= len(word).
                out.append((word, (), r + n0 - len(alpha)))
    return Transducer(t.core, _sorted(out))


def point_apply(t: Transducer, point: Point) -> Point:
    mu, alpha, r = t.entry_for(point)
    return prepend_point(alpha, t.core.encode(shift_point_n(point, r)))


def pullback(g: LocFun, t: Transducer) -> LocFun:
    """The function ``x -> g(h(x))`` for the map ``h`` of the transducer."""
    if g.matrix != t.target:
        raise ValueError("function lives over the wrong shift space")
    matrix = t.source
    out: dict[Word, int] = {}
    pieces = dict(g.pieces)

    def emit(mu: Word, alpha: Word, r: int) -> None:
        known = t.known_prefix(mu, alpha, r)
        for i in range(len(known), -1, -1):
            if known[:i] in pieces:
                out[mu] = pieces[known[:i]]
                return
        for child in matrix.extensions(mu):
            emit(child, alpha, r)

    for mu, alpha, r in t.entries:
        emit(mu, alpha, r)
    return _canonical_fun(matrix, out)


# -- exact equality ---------------------------------------------------------


def cores_semantically_equal(c1: BlockCode, c2: BlockCode) -> bool:
    """Same map on every point, decided on aligned windows."""
    if c1.source != c2.source or c1.target != c2.target:
        return False
    if c1.mapping == c2.mapping:
        return True
    t1, t2 = c1.symbol_map(), c2.symbol_map()
    length = max(c1.window, c2.window)
    return all(
        t1[w[: c1.window]] == t2[w[: c2.window]]
        for w in enumerate_words(c1.source, length)
    )


def _restriction(t: Transducer, part: Word) -> tuple[Word, int]:
    for mu, alpha, r in t.entries:
        if part[: len(mu)] == mu:
            return alpha, r
    raise AssertionError("no entry covers the part")


def _window_sets(matrix: TransitionMatrix, window: int, mu: Word, upto: int):
    """Possible code windows at positions 1..upto for points of ``mu``.

    Yields, per position ``p``, the set of admissible ``window``-words
    that can occupy coordinates ``p .. p + window - 1`` of a point in the
    cylinder, a set that stabilizes instead of branching, so deep shift
    exponents stay cheap to analyze.
    """
    def compatible(word: Word, offset: int) -> bool:
        for i, symbol in enumerate(word):
            position = offset + i
            if position < len(mu) and mu[position] != symbol:
                return False
        return True

    current = {w for w in enumerate_words(matrix, window) if compatible(w, 0)}
    for p in range(1, upto + 1):
        yield current
        current = {
            w[1:] + (a,)
            for w in current
            for a in matrix.successors(w[-1])
            if compatible(w[1:] + (a,), p)
        }


def _entries_agree_on(matrix: TransitionMatrix, core1: BlockCode, core2: BlockCode,
                      part: Word, a1: Word, r1: int, a2: Word, r2: int) -> bool:
    """Exact equality of two same-core entry maps on one cylinder.

    Aligned up to the larger shift, the shorter side's output must spell
    the longer side's extra symbols, which happens exactly when the
    intervening stream symbols are constant over the cylinder with the
    right values.
    """
    if r1 > r2:
        a1, r1, a2, r2 = a2, r2, a1, r1
        core1, core2 = core2, core1
    gap = r2 - r1
    if len(a1) + gap != len(a2) or a2[: len(a1)] != a1:
        return False
    if gap == 0:
        return True
    needed = a2[len(a1):]
    table = core1.symbol_map()
    window_sets = _window_sets(matrix, core1.window, part, r2)
    for p, windows in enumerate(window_sets, start=1):
        if p <= r1:
            continue
        symbols = {table[w] for w in windows}
        if symbols != {needed[p - r1 - 1]}:
            return False
    return True


def difference_parts(t1: Transducer, t2: Transducer, under: Word = ()) -> tuple[Word, ...]:
    """Cylinders (within ``under``) where the two maps provably differ.

    Requires semantically equal cores; the returned family is empty
    exactly when the maps agree everywhere on the cylinder of ``under``.
    """
    if not cores_semantically_equal(t1.core, t2.core):
        raise ValueError("transducers have different cores; not comparable")
    matrix = t1.source
    parts = refine_words(matrix, [t1.parts, t2.parts, [under]])
    parts = [p for p in parts if p[: len(under)] == under]
    diffs = []
    for part in parts:
        a1, r1 = _restriction(t1, part)
        a2, r2 = _restriction(t2, part)
        if not _entries_agree_on(matrix, t1.core, t2.core, part, a1, r1, a2, r2):
            diffs.append(part)
    return tuple(sorted(diffs))


def transducer_equal(t1: Transducer, t2: Transducer, under: Word = ()) -> bool:
    return not difference_parts(t1, t2, under)


def is_identity_transducer(t: Transducer) -> bool:
    """Exact decision of whether the map is the identity."""
    if t.source != t.target:
        return False
    m = t.core.window
    table = t.core.symbol_map()

    def projects_to(offset: int) -> bool:
        return all(table[v] == v[offset] for v in enumerate_words(t.source, m))

    def entry_ok(mu: Word, alpha: Word, r: int) -> bool:
        common = min(len(mu), len(alpha))
        if mu[:common] != alpha[:common]:
            return False
        if len(mu) < len(alpha):
            return all(entry_ok(child, alpha, r) for child in t.source.extensions(mu))
        offset = len(alpha) - r
        if offset < 0 or offset >= m:
            return False
        return projects_to(offset)

    return all(entry_ok(mu, alpha, r) for mu, alpha, r in t.entries)


# -- table extraction -------------------------------------------------------


def extract_table(t: Transducer) -> TableElement:
    """Read a prefix-exchange table off a transducer whose core streams
    each point unchanged (a first-symbol projection up to window size)."""
    probe = identity_code(t.source)
    if not (t.source == t.target and cores_semantically_equal(t.core, probe)):
        raise ValueError("core is not the identity; the map is not a table")
    entries = []
    stack = list(t.entries)
    while stack:
        mu, alpha, r = stack.pop()
        if r > len(mu):
            raise AssertionError("shift exceeds the part depth in a table map")
        image = alpha + mu[r:]
        if image:
            entries.append((mu, image))
        else:
            for child in t.source.extensions(mu):
                stack.append((child, alpha, r))
    return validate_table(t.source, entries)


def conjugate_table_by_code(code: BlockCode, table: TableElement, forward: bool = True) -> TableElement:
    """Transport a table across an invertible code.

    ``forward`` conjugates a table over the code's source into one over
    its target; otherwise the other way around.
    """
    if forward:
        first, last = code.inverse(), code
    else:
        first, last = code, code.inverse()
    t = identity_transducer(first.source)
    t = apply_code_stage(t, first)
    t = apply_table_stage(t, table)
    t = apply_code_stage(t, last)
    return extract_table(t)
