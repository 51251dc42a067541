"""Deciding shift-commutation and certifying its failure.

A chain map either commutes with the two shifts (so the shifts are
topologically conjugate) or it does not; both outcomes are decided
exactly on the cached normal forms.  In the failing case this module
builds a checkable certificate: after recoding the source to a suitable
block level, a point ``z``, a cylinder indicator ``g`` on the target,
and a prefix swap ``tau0`` such that

* ``tau0`` preserves the level sets of ``g . h`` (so the cocycle of
  ``g . h - g . h . shift`` vanishes on it), yet
* the cocycle of ``g . h - g . shift . h`` is nonzero at ``z``.

Those two facts together show the potential ``g - g . shift`` transfers
to a weight whose vanishing subgroup differs from the pullback weight's,
which is exactly the group-level obstruction to conjugacy.
"""

from __future__ import annotations

from dataclasses import dataclass

from collections import deque

from .cocycles import in_cocycle_group, rho
from .codes import higher_block_codes
from .errors import SearchBudgetExceeded
from .functions import LocFun, compose_shift, constant, eval_at, indicator, is_zero_on
from .orbit import CoeMap, _stage_transducer, coe_apply, coe_from_chain, coe_invert, pullback_map
from .sft import (
    Point,
    TransitionMatrix,
    Word,
    _primitive_root,
    canonicalize_point,
    enumerate_words,
    expand_to_depth,
    representative,
    shift_point,
)
from .tables import TableElement, prefix_swap
from .transducer import (
    Transducer,
    conjugate_table_by_code,
    difference_parts,
    is_identity_transducer,
    point_apply,
    post_shift,
    precompose_shift,
    transducer_equal,
)

DEFAULT_MAX_LEVEL = 6
DEFAULT_MAX_DEPTH = 12


@dataclass(frozen=True)
class Witness:
    """Certificate that a chain map does not commute with the shifts.

    All source-side data lives over the level-``level`` block recoding
    of the source shift; ``g`` is the indicator of a target cylinder.
    """

    level: int
    z: Point
    pair: tuple[int, int]
    g: LocFun
    tau0: TableElement


def _shift_pair(t: Transducer):
    return precompose_shift(t), post_shift(t, constant(t.source, 1))


def is_conjugacy(h: CoeMap) -> bool:
    """Exact decision of ``h . shift == shift . h``."""
    lhs, rhs = _shift_pair(h.transducer)
    return transducer_equal(lhs, rhs)


def difference_locus(h: CoeMap) -> tuple[Word, ...]:
    """Cylinders on which the two sides of the commutation differ."""
    lhs, rhs = _shift_pair(h.transducer)
    return difference_parts(lhs, rhs)


def recode_source(h: CoeMap, level: int):
    """The map ``h`` read from the level-``level`` block presentation.

    Returns ``(h_level, encode_code)`` where the code carries source
    points up to the block presentation.
    """
    _, encode_code, decode_code = higher_block_codes(h.source, level)
    return coe_from_chain((decode_code,) + h.stages()), encode_code


def _least_long_cycle(matrix: TransitionMatrix) -> Word:
    """Least primitive cycle word visiting at least two symbols."""
    for length in range(2, matrix.n + 2):
        for word in enumerate_words(matrix, length):
            if matrix.entry(word[-1], word[0]) and _primitive_root(word) == word:
                return word
    raise AssertionError("an irreducible non-permutation graph has a long cycle")


def _long_cycle_point(matrix: TransitionMatrix, word: Word) -> Point:
    """Deterministic point of the cylinder whose cycle has length >= 2."""
    cycle = _least_long_cycle(matrix)
    bridges = [()]
    while True:
        for bridge in bridges:
            tail = word + bridge
            last = tail[-1] if tail else None
            if last is None or matrix.entry(last, cycle[0]):
                return canonicalize_point(matrix, tail, cycle)
        bridges = [b + (a,) for b in bridges
                   for a in matrix.successors((word + b)[-1])]


def _find_difference_point(h: CoeMap, seeds, max_depth: int) -> Point:
    """Deterministic point where commutation visibly fails.

    Walks the difference cylinders breadth first; at each word tries a
    long-cycle point first (preferred) and the least representative as a
    fallback, keeping the first fallback hit in case no preferred point
    shows up within two extra levels.
    """
    matrix = h.source

    def usable(z: Point) -> bool:
        hz = coe_apply(h, z)
        return (not z.is_fixed() and not hz.is_fixed()
                and coe_apply(h, shift_point(z)) != shift_point(hz))

    queue = deque(sorted(seeds, key=lambda w: (len(w), w)))
    fallback = None
    give_up_at = None
    while queue:
        word = queue.popleft()
        if give_up_at is not None and len(word) > give_up_at:
            break
        preferred = _long_cycle_point(matrix, word)
        if len(preferred.cycle) >= 2 and usable(preferred):
            return preferred
        if fallback is None:
            plain = representative(matrix, word)
            if usable(plain):
                fallback = plain
                give_up_at = len(word) + 2
        if len(word) < max_depth:
            queue.extend(matrix.extensions(word))
    if fallback is not None:
        return fallback
    raise SearchBudgetExceeded(
        "no usable difference point found", max_depth=max_depth)


def witness_non_conjugacy(h: CoeMap, max_level: int = DEFAULT_MAX_LEVEL,
                          max_depth: int = DEFAULT_MAX_DEPTH) -> Witness | None:
    """Build a certificate of non-commutation, or None when ``h`` commutes.

    Follows the constructive route: pick a difference point ``z``, recode
    until the two-symbol cylinder at ``z`` cleanly avoids the shifted
    image point, take ``g`` supported on a deep cylinder around that
    image point, and swap the two leading symbols.  Raises
    :class:`SearchBudgetExceeded` when the caps are hit.
    """
    seeds = difference_locus(h)
    if not seeds:
        return None
    z = _find_difference_point(h, seeds, max_depth)
    w0 = shift_point(coe_apply(h, z))

    for level in range(1, max_level + 1):
        h_level, encode_code = recode_source(h, level)
        z_level = encode_code.encode(z)
        pair = (z_level.symbol(1), z_level.symbol(2))
        if pair[0] == pair[1]:
            continue
        x_star = coe_apply(coe_invert(h_level), w0)
        if x_star.prefix(2) == pair or x_star.symbol(1) == pair[1]:
            continue
        break
    else:
        raise SearchBudgetExceeded(
            "no block level isolates the difference point", max_level=max_level)

    for depth in range(1, max_depth + 1):
        g = indicator(h.target, w0.prefix(depth))
        g_h = pullback_map(g, h_level)
        if is_zero_on(g_h, pair) and is_zero_on(compose_shift(g_h), pair):
            break
    else:
        raise SearchBudgetExceeded(
            "no cylinder depth separates the image point", max_depth=max_depth)

    witness = Witness(level, z_level, pair, g, prefix_swap(h_level.source, *pair))
    assert check_witness(h, witness)
    return witness


def check_witness(h: CoeMap, witness: Witness) -> bool:
    """Exact verification of a certificate against the map.

    Checks (a) the swap preserves the ``g . h`` level sets, as vanishing
    of the cocycle of ``g . h - g . h . shift`` on it, and (b) the
    cocycle of ``g . h - g . shift . h`` is nonzero at the stored point.
    """
    h_level, _ = recode_source(h, witness.level)
    g_h = pullback_map(witness.g, h_level)
    balanced = g_h - compose_shift(g_h)
    if not in_cocycle_group(witness.tau0, balanced):
        return False
    skewed = g_h - pullback_map(compose_shift(witness.g), h_level)
    return eval_at(rho(skewed, witness.tau0), witness.z) != 0


# -- commuting tables --------------------------------------------------------


def _pointwise_difference(t1: Transducer, t2: Transducer, extra_depth: int = 4):
    """A representative where two same-core maps visibly differ, or None."""
    matrix = t1.source
    for part in difference_parts(t1, t2):
        for depth in range(len(part), len(part) + extra_depth + 1):
            for word in expand_to_depth(matrix, part, depth):
                z = representative(matrix, word)
                if point_apply(t1, z) != point_apply(t2, z):
                    return z
    return None


def commutant_witness(h0: CoeMap, max_level: int = DEFAULT_MAX_LEVEL) -> TableElement | None:
    """A table that fails to commute with a self chain map.

    Returns None exactly when ``h0`` is the identity map (decided on the
    normal form).  Otherwise searches prefix swaps at increasing block
    levels, carried back to the base shift, in a fixed deterministic
    order, and returns the first one whose two compositions with ``h0``
    differ; the difference is re-verified at a concrete representative
    before returning.
    """
    if h0.source != h0.target:
        raise ValueError("commutant search needs a self map")
    if is_identity_transducer(h0.transducer):
        return None
    matrix = h0.source
    for level in range(1, max_level + 1):
        block_matrix, encode_code, _ = higher_block_codes(matrix, level)
        for z1 in block_matrix.symbols():
            for z2 in block_matrix.successors(z1):
                if z1 == z2:
                    continue
                swap = prefix_swap(block_matrix, z1, z2)
                table = (swap if level == 1 else
                         conjugate_table_by_code(encode_code, swap, forward=False))
                after = _stage_transducer(matrix, (table,) + h0.stages())
                before = _stage_transducer(matrix, h0.stages() + (table,))
                if transducer_equal(after, before):
                    continue
                if _pointwise_difference(after, before) is not None:
                    return table
    raise SearchBudgetExceeded(
        "no prefix swap separates the compositions", max_level=max_level)
