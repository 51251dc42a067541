"""Prefix-exchange tables: the computable continuous full group.

A table is a finite list of entries ``nu -> mu`` whose source words and
target words each partition the shift space, with matching follower rows
(the last symbols of ``nu`` and ``mu`` allow the same successors).  The
entry acts by rewriting the prefix: a point ``nu y`` maps to ``mu y``.
Such homeomorphisms match shift orbits up to the locally constant
exponents ``k`` (target side) and ``l`` (source side), and form a group
under composition.

Tables are kept in canonical form -- entries sorted by source word, with
every full sibling family ``(nu a -> mu a)`` over all admissible letters
``a`` collapsed to ``(nu -> mu)`` -- so ``==`` decides equality in the
group.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    DomainNotPartition,
    EqualSymbols,
    FollowerMismatch,
    ImageNotPartition,
    InadmissiblePair,
    InadmissibleWord,
)
from .functions import LocFun, _canonical as _canonical_fun
from .sft import BadPartition, Point, TransitionMatrix, Word, partition, prepend_point, shift_point_n

Entry = tuple[Word, Word]


@dataclass(frozen=True)
class TableElement:
    """Element of the continuous full group, as a canonical table."""

    matrix: TransitionMatrix
    entries: tuple[Entry, ...]

    @property
    def domain_words(self) -> tuple[Word, ...]:
        return tuple(nu for nu, _ in self.entries)

    @property
    def image_words(self) -> tuple[Word, ...]:
        return tuple(mu for _, mu in self.entries)

    def entry_for(self, point: Point) -> Entry:
        for nu, mu in self.entries:
            if point.starts_with(nu):
                return nu, mu
        raise AssertionError("table domain failed to cover a point")

    def is_identity(self) -> bool:
        return all(nu == mu for nu, mu in self.entries)


def _merge_entries(matrix: TransitionMatrix, entries: dict[Word, Word]) -> dict[Word, Word]:
    """Collapse full sibling families; never produces empty words."""
    changed = True
    while changed:
        changed = False
        for nu in sorted(entries, key=len, reverse=True):
            if nu not in entries or len(nu) < 2:
                continue
            mu = entries[nu]
            if len(mu) < 2 or nu[-1] != mu[-1]:
                continue
            p_nu, p_mu = nu[:-1], mu[:-1]
            letters = matrix.successors(p_nu[-1])
            if matrix.successors(p_mu[-1]) != letters:
                continue
            family = [(p_nu + (a,), p_mu + (a,)) for a in letters]
            if all(entries.get(src) == dst for src, dst in family):
                for src, _ in family:
                    del entries[src]
                entries[p_nu] = p_mu
                changed = True
    return entries


def validate_table(matrix: TransitionMatrix, entries) -> TableElement:
    """Validate raw ``(nu, mu)`` pairs and return the canonical table."""
    raw = [(tuple(nu), tuple(mu)) for nu, mu in entries]
    for nu, mu in raw:
        for word in (nu, mu):
            if not word:
                raise InadmissibleWord("table words must be nonempty")
            if not matrix.is_admissible(word):
                raise InadmissibleWord(f"word {word} is not admissible")
    table = {}
    for nu, mu in raw:
        if nu in table:
            raise DomainNotPartition(f"source word {nu} repeats")
        table[nu] = mu
    try:
        partition(matrix, table.keys())
    except BadPartition as exc:
        raise DomainNotPartition(str(exc)) from exc
    try:
        partition(matrix, table.values())
    except BadPartition as exc:
        raise ImageNotPartition(str(exc)) from exc
    for nu, mu in table.items():
        if matrix.successors(nu[-1]) != matrix.successors(mu[-1]):
            raise FollowerMismatch(f"entry {nu} -> {mu} pairs different follower rows")
    table = _merge_entries(matrix, table)
    return TableElement(matrix, tuple(sorted(table.items())))


def identity_table(matrix: TransitionMatrix) -> TableElement:
    return TableElement(matrix, tuple(((a,), (a,)) for a in matrix.symbols()))


def apply(table: TableElement, point: Point) -> Point:
    """Image of a point: rewrite its matching source prefix."""
    nu, mu = table.entry_for(point)
    return prepend_point(mu, shift_point_n(point, len(nu)))


def compose(outer: TableElement, inner: TableElement) -> TableElement:
    """The table of ``outer after inner``, canonical.

    Each inner entry is refined until its target word is deep enough to
    select a unique outer entry, then the words are spliced.
    """
    if outer.matrix != inner.matrix:
        raise ValueError("tables live over different matrices")
    matrix = inner.matrix
    outer_map = dict(outer.entries)
    out: list[Entry] = []

    def emit(nu: Word, mu: Word) -> None:
        for o_nu in outer_map:
            if mu[: len(o_nu)] == o_nu:
                out.append((nu, outer_map[o_nu] + mu[len(o_nu):]))
                return
        for a in matrix.successors(nu[-1]):
            emit(nu + (a,), mu + (a,))

    for nu, mu in inner.entries:
        emit(nu, mu)
    return validate_table(matrix, out)


def invert(table: TableElement) -> TableElement:
    """Swap source and target words; the group inverse."""
    return validate_table(table.matrix, tuple((mu, nu) for nu, mu in table.entries))


def cocycle_data_from_entries(matrix: TransitionMatrix, entries) -> tuple[LocFun, LocFun, LocFun]:
    """Orbit-matching exponents read off raw entries, without merging.

    On the cylinder of ``nu`` the pair ``(k, l) = (|mu|, |nu|)`` satisfies
    ``shift^k(tau(x)) = shift^l(x)``; ``d = l - k`` is the same for every
    valid entry presentation of the same map.
    """
    k = _canonical_fun(matrix, {tuple(nu): len(mu) for nu, mu in entries})
    l = _canonical_fun(matrix, {tuple(nu): len(nu) for nu, mu in entries})
    return k, l, l - k


def cocycle_data(table: TableElement) -> tuple[LocFun, LocFun, LocFun]:
    """Exponent functions ``(k, l, d)`` of a table, from its entries."""
    return cocycle_data_from_entries(table.matrix, table.entries)


def prefix_swap(matrix: TransitionMatrix, z1: int, z2: int) -> TableElement:
    """The involution exchanging the cylinders of ``z1 z2`` and ``z2``.

    Sends ``z1 z2 y`` to ``z2 y``, ``z2 y`` to ``z1 z2 y`` and fixes
    everything else.
    """
    if z1 == z2:
        raise EqualSymbols("swap needs two distinct symbols")
    if not (1 <= z1 <= matrix.n and 1 <= z2 <= matrix.n and matrix.entry(z1, z2)):
        raise InadmissiblePair(f"{z1} -> {z2} is not an admissible transition")
    entries: list[Entry] = [((z1, z2), (z2,)), ((z2,), (z1, z2))]
    for a in matrix.successors(z1):
        if a != z2:
            entries.append(((z1, a), (z1, a)))
    for c in matrix.symbols():
        if c not in (z1, z2):
            entries.append(((c,), (c,)))
    return validate_table(matrix, entries)


def pullback_table(f: LocFun, table: TableElement) -> LocFun:
    """The function ``x -> f(tau(x))``."""
    if f.matrix != table.matrix:
        raise ValueError("function and table live over different matrices")
    matrix = table.matrix
    values = dict(f.pieces)
    out: dict[Word, int] = {}

    def emit(nu: Word, image: Word) -> None:
        for i in range(len(image), -1, -1):
            if image[:i] in values:
                out[nu] = values[image[:i]]
                return
        for a in matrix.successors(nu[-1]):
            emit(nu + (a,), image + (a,))

    for nu, mu in table.entries:
        emit(nu, mu)
    return _canonical_fun(matrix, out)


def pad_entry(matrix: TransitionMatrix, entry: Entry, depth: int) -> list[Entry]:
    """Replace an entry by its sibling refinements, ``depth`` levels down."""
    out = [entry]
    for _ in range(depth):
        out = [
            (nu + (a,), mu + (a,))
            for nu, mu in out
            for a in matrix.successors(nu[-1])
        ]
    return out


def random_element(matrix: TransitionMatrix, depth_budget: int, seed: int) -> TableElement:
    """Seeded random table: a product of transported prefix swaps.

    Factors are prefix swaps taken at block levels up to
    ``depth_budget - 1`` and carried back to the base shift, mixed with
    same-length cylinder exchanges.  Deterministic for a fixed seed.
    """
    from .codes import higher_block_codes
    from .transducer import conjugate_table_by_code

    if depth_budget < 2:
        raise ValueError("depth budget must be >= 2")
    rng = random.Random(seed)
    result = identity_table(matrix)
    for _ in range(rng.randint(1, 3)):
        kind = rng.random()
        if kind < 0.6:
            level = rng.randint(1, depth_budget - 1)
            block_matrix, encode_code, _ = higher_block_codes(matrix, level)
            pairs = [
                (z1, z2)
                for z1 in block_matrix.symbols()
                for z2 in block_matrix.successors(z1)
                if z1 != z2
            ]
            z1, z2 = pairs[rng.randrange(len(pairs))]
            factor = prefix_swap(block_matrix, z1, z2)
            if level > 1:
                factor = conjugate_table_by_code(encode_code, factor, forward=False)
        else:
            factor = _pair_exchange(matrix, depth_budget, rng)
        result = compose(factor, result)
    return result


def _pair_exchange(matrix: TransitionMatrix, depth_budget: int, rng) -> TableElement:
    """Exchange two same-length incomparable cylinders, identity elsewhere."""
    from .sft import enumerate_words

    length = rng.randint(2, depth_budget)
    words = enumerate_words(matrix, length)
    pairs = [
        (a, b)
        for i, a in enumerate(words)
        for b in words[i + 1:]
        if matrix.successors(a[-1]) == matrix.successors(b[-1])
    ]
    if not pairs:
        return identity_table(matrix)
    a, b = pairs[rng.randrange(len(pairs))]
    entries = [(w, w) for w in words if w not in (a, b)]
    entries += [(a, b), (b, a)]
    return validate_table(matrix, entries)
