"""Integer weight cocycles over tables and the subgroups they carve out.

For a locally constant integer weight ``f`` and a table ``tau``, the
cocycle value at ``x`` is the ``f``-sum over the matched initial orbit
segments:

    sum of f along the first l(x) shifts of x
    minus the sum of f along the first k(x) shifts of tau(x),

where ``(k, l)`` is any valid exponent pair for ``tau``; the result is
independent of that choice.  The elements on which the cocycle vanishes
identically form a subgroup; with weight 1 the cocycle degenerates to the
exponent difference ``d``, whose vanishing picks out the exchanges that
never shift the tape.
"""

from __future__ import annotations

from .functions import LocFun, birkhoff, constant, eval_at
from .sft import Point, Word, shift_point
from .tables import (
    TableElement,
    apply,
    cocycle_data,
    cocycle_data_from_entries,
    invert,
    pullback_table,
)


def rho(f: LocFun, table: TableElement) -> LocFun:
    """The weight-transfer cocycle of ``f`` across ``table``, exactly."""
    return rho_from_entries(f, table, table.entries)


def rho_from_entries(f: LocFun, table: TableElement, entries) -> LocFun:
    """Same cocycle computed from an unmerged entry presentation.

    Exposed so refined presentations of one map can be checked to give
    the same function.
    """
    k, l, _ = cocycle_data_from_entries(table.matrix, entries)
    k_on_image = pullback_table(k, invert(table))
    return birkhoff(f, l) - pullback_table(birkhoff(f, k_on_image), table)


def rho_at(f: LocFun, table: TableElement, point: Point, inclusive: bool = False) -> int:
    """Pointwise cocycle value by literal orbit sums (independent oracle).

    With ``inclusive`` the sums run one step further on both sides; the
    extra terms cancel, so both forms agree everywhere.
    """
    nu, mu = table.entry_for(point)
    k, l = len(mu), len(nu)
    if inclusive:
        k, l = k + 1, l + 1
    total = 0
    x = point
    for _ in range(l):
        total += eval_at(f, x)
        x = shift_point(x)
    y = apply(table, point)
    for _ in range(k):
        total -= eval_at(f, y)
        y = shift_point(y)
    return total


def in_cocycle_group(table: TableElement, f: LocFun) -> bool:
    """Whether the cocycle of ``f`` vanishes identically on the table."""
    return rho(f, table).is_zero()


def in_af_group(table: TableElement) -> bool:
    """Whether the exponent difference ``d`` vanishes identically."""
    _, _, d = cocycle_data(table)
    return d.is_zero()


def gauge_weight(table: TableElement, f: LocFun) -> LocFun:
    """Integer phase exponent the table's unitary picks up under the
    circle action with potential ``f``: the cocycle of the inverse."""
    return rho(f, invert(table))


def ck_word_weight(matrix_word: Word, f: LocFun) -> LocFun:
    """Phase exponent attached to the partial isometry of a word: the
    ``f``-sum over as many shifts as the word is long."""
    f.matrix.check_admissible(tuple(matrix_word))
    return birkhoff(f, constant(f.matrix, len(tuple(matrix_word))))
