"""Orbit-matching chain maps between two shift spaces.

A chain map composes prefix-exchange tables with one invertible block
code.  Every such homeomorphism ``h`` intertwines the two shifts up to
locally constant exponents ``(k1, l1)``:

    shift_B^{k1(x)} ( h(shift_A(x)) ) = shift_B^{l1(x)} ( h(x) )

and topological conjugacy is exactly the case where ``(0, 1)`` works.
Chains are normalized to ``post-table . code . pre-table``; the cached
transducer makes map equality decidable and the cached ``(k1, l1)`` is
the smallest pointwise valid pair.  The derived exponent formulas are
always re-verified exactly after construction, so a formula bug cannot
produce a silently wrong map.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import BlockCode, compose_codes, identity_code
from .cocycles import rho
from .errors import IncompatibleChain, VerificationFailed
from .functions import LocFun, compose_shift, constant, equal, on_refinement, _canonical as _canonical_fun
from .sft import Point, TransitionMatrix
from .tables import (
    TableElement,
    apply as table_apply,
    cocycle_data,
    compose as table_compose,
    identity_table,
    invert as table_invert,
)
from .transducer import conjugate_table_by_code
from .transducer import (
    Transducer,
    apply_code_stage,
    apply_table_stage,
    extract_table,
    identity_transducer,
    point_apply,
    post_shift,
    precompose_shift,
    pullback,
    transducer_equal,
)


@dataclass(frozen=True)
class CoeMap:
    """Orbit-matching homeomorphism in normalized chain form.

    ``pre`` acts on the source shift, then ``core`` recodes, then
    ``post`` acts on the target shift.  ``transducer`` is the cached
    normal form of the composite and ``(k1, l1)`` its verified,
    pointwise-minimal shift-matching exponents.
    """

    pre: TableElement
    core: BlockCode
    post: TableElement
    transducer: Transducer
    k1: LocFun
    l1: LocFun

    @property
    def source(self) -> TransitionMatrix:
        return self.core.source

    @property
    def target(self) -> TransitionMatrix:
        return self.core.target

    def stages(self) -> tuple:
        return (self.pre, self.core, self.post)


def _stage_transducer(source: TransitionMatrix, stages) -> Transducer:
    t = identity_transducer(source)
    for stage in stages:
        if isinstance(stage, TableElement):
            t = apply_table_stage(t, stage)
        else:
            t = apply_code_stage(t, stage)
    return t


def _normalize_chain(source: TransitionMatrix, stages):
    """Fold arbitrary compatible stages into (pre, core, post)."""
    pre = identity_table(source)
    core: BlockCode | None = None
    post: TableElement | None = None
    current = source
    for stage in stages:
        if isinstance(stage, TableElement):
            if stage.matrix != current:
                raise IncompatibleChain("table stage acts on the wrong shift space")
            if core is None:
                pre = table_compose(stage, pre)
            else:
                post = table_compose(stage, post)
        elif isinstance(stage, BlockCode):
            if stage.source != current:
                raise IncompatibleChain("code stage reads the wrong shift space")
            if core is None:
                core, post = stage, identity_table(stage.target)
            else:
                post = conjugate_table_by_code(stage, post, forward=True)
                core = compose_codes(stage, core)
            current = stage.target
        else:
            raise TypeError(f"not a chain stage: {stage!r}")
    if core is None:
        core, post = identity_code(current), identity_table(current)
    return pre, core, post


# -- exponent bookkeeping ----------------------------------------------------


def _table_stage_data(table: TableElement) -> tuple[LocFun, LocFun]:
    """A valid exponent pair for a table viewed as a self chain map.

    From the table's own pair ``(k, l)``: take ``k1 = k . shift`` and
    ``l1 = k + s`` with ``s = l . shift + 1 - l``, padding both per part
    so ``s`` stays nonnegative; the matching relation only survives
    extra shifts in the forward direction, so a negative ``s`` would not
    factor through it.
    """
    k_tau, l_tau, _ = cocycle_data(table)
    one = constant(table.matrix, 1)
    s = compose_shift(l_tau) + one - l_tau
    k_table, l_table = {}, {}
    for part, (shifted_k, plain_k, sv) in on_refinement(
            compose_shift(k_tau), k_tau, s):
        pad = max(0, -sv)
        k_table[part] = shifted_k + pad
        l_table[part] = plain_k + sv + pad
    return (_canonical_fun(table.matrix, k_table),
            _canonical_fun(table.matrix, l_table))


def _sum_along(f: LocFun, exponent: LocFun, t: Transducer, behind_shift: bool) -> LocFun:
    """The function ``x -> sum of f over the first exponent(x) target
    shifts of h(x)`` (or of ``h(shift x)`` when ``behind_shift``)."""
    top = max(0, exponent.max_value())
    terms = []
    g = f
    for _ in range(top):
        term = pullback(g, t)
        if behind_shift:
            term = compose_shift(term)
        terms.append(term)
        g = compose_shift(g)
    table = {}
    for part, values in on_refinement(exponent, *terms):
        n = values[0]
        table[part] = sum(values[1: n + 1])
    return _canonical_fun(exponent.matrix, table)


def _fold_stage_data(k: LocFun, l: LocFun, stage_k: LocFun, stage_l: LocFun,
                     t: Transducer) -> tuple[LocFun, LocFun]:
    """Exponents of ``stage . h`` from h's pair, the stage's pair, and
    h's transducer; sums run along the intermediate shift."""
    k_new = _sum_along(stage_l, k, t, True) + _sum_along(stage_k, l, t, False)
    l_new = _sum_along(stage_k, k, t, True) + _sum_along(stage_l, l, t, False)
    return k_new, l_new


def _verify_pair(t: Transducer, k: LocFun, l: LocFun) -> bool:
    lhs = post_shift(precompose_shift(t), k)
    rhs = post_shift(t, l)
    return transducer_equal(lhs, rhs)


def _minimize_pair(t: Transducer, k: LocFun, l: LocFun) -> tuple[LocFun, LocFun]:
    """Largest per-part common reduction that keeps the pair valid."""
    shifted = precompose_shift(t)
    k_table, l_table = {}, {}
    for part, (kv, lv) in on_refinement(k, l):
        best = 0
        for drop in range(min(kv, lv), 0, -1):
            lhs = post_shift(shifted, constant(k.matrix, kv - drop))
            rhs = post_shift(t, constant(k.matrix, lv - drop))
            if transducer_equal(lhs, rhs, under=part):
                best = drop
                break
        k_table[part], l_table[part] = kv - best, lv - best
    return _canonical_fun(k.matrix, k_table), _canonical_fun(k.matrix, l_table)


# -- construction ------------------------------------------------------------


def coe_from_chain(stages, source: TransitionMatrix | None = None) -> CoeMap:
    """Build, normalize, and verify a chain map.

    ``stages`` lists tables and codes in application order; any number of
    codes is allowed (they fold into one).  ``source`` is only needed for
    an empty chain.  Raises :class:`IncompatibleChain` on mismatched
    stages and :class:`VerificationFailed` if the derived exponents fail
    their exact re-check (which would be a library bug, not bad input).
    """
    stages = list(stages)
    if source is None:
        if not stages:
            raise IncompatibleChain("empty chain needs an explicit source matrix")
        first = stages[0]
        source = first.matrix if isinstance(first, TableElement) else first.source
    pre, core, post = _normalize_chain(source, stages)

    t = _stage_transducer(source, (pre, core, post))
    # Codes contribute the pair (0, 1), which folds to a no-op, so only
    # nontrivial table stages move the exponents.
    k, l = constant(source, 0), constant(source, 1)
    if not pre.is_identity():
        stage_k, stage_l = _table_stage_data(pre)
        k, l = _fold_stage_data(k, l, stage_k, stage_l, identity_transducer(source))
    if not post.is_identity():
        stage_k, stage_l = _table_stage_data(post)
        partial = _stage_transducer(source, (pre, core))
        k, l = _fold_stage_data(k, l, stage_k, stage_l, partial)
    k, l = _minimize_pair(t, k, l)
    if not _verify_pair(t, k, l):
        raise VerificationFailed("shift-matching exponents failed their exact check")
    return CoeMap(pre, core, post, t, k, l)


def identity_coe(matrix: TransitionMatrix) -> CoeMap:
    return coe_from_chain((), source=matrix)


def coe_apply(h: CoeMap, point: Point) -> Point:
    """Stage-by-stage image of a point."""
    return table_apply(h.post, h.core.encode(table_apply(h.pre, point)))


def coe_apply_normal(h: CoeMap, point: Point) -> Point:
    """Image through the cached transducer (cross-check path)."""
    return point_apply(h.transducer, point)


def coe_invert(h: CoeMap) -> CoeMap:
    """The inverse chain map, rebuilt and re-verified."""
    return coe_from_chain(
        (table_invert(h.post), h.core.inverse(), table_invert(h.pre)))


def coe_compose(outer: CoeMap, inner: CoeMap) -> CoeMap:
    """The chain map ``outer after inner``."""
    if inner.target != outer.source:
        raise IncompatibleChain("chain maps do not compose")
    return coe_from_chain(inner.stages() + outer.stages())


def compose_cocycles(outer: CoeMap, inner: CoeMap) -> tuple[LocFun, LocFun]:
    """Exponent pair of ``outer after inner`` from the two cached pairs.

    The closed-form sums are re-verified exactly against the composite
    map; :class:`VerificationFailed` signals a library bug, never bad
    input.
    """
    if inner.target != outer.source:
        raise IncompatibleChain("chain maps do not compose")
    k, l = _fold_stage_data(inner.k1, inner.l1, outer.k1, outer.l1, inner.transducer)
    composite = _stage_transducer(inner.source, inner.stages() + outer.stages())
    if not _verify_pair(composite, k, l):
        raise VerificationFailed("composed exponents failed their exact check")
    return k, l


# -- transported structure ---------------------------------------------------


def pullback_map(g: LocFun, h: CoeMap) -> LocFun:
    """The function ``x -> g(h(x))``, computed from the normal form."""
    return pullback(g, h.transducer)


def psi(h: CoeMap, g: LocFun) -> LocFun:
    """Transfer of a target-side potential to the source side.

    The value at ``x`` is the ``g``-sum over the first ``l1(x)`` target
    shifts of ``h(x)`` minus the sum over the first ``k1(x)`` target
    shifts of ``h(shift x)``; additive in ``g`` and independent of the
    exponent pair choice.
    """
    if g.matrix != h.target:
        raise ValueError("potential lives over the wrong shift space")
    t = h.transducer
    return _sum_along(g, h.l1, t, False) - _sum_along(g, h.k1, t, True)


def conjugate_table(h: CoeMap, table: TableElement) -> TableElement:
    """The table of ``h . table . h^{-1}`` over the target shift."""
    if table.matrix != h.source:
        raise ValueError("table lives over the wrong shift space")
    t = identity_transducer(h.target)
    t = apply_table_stage(t, table_invert(h.post))
    t = apply_code_stage(t, h.core.inverse())
    t = apply_table_stage(t, table_compose(h.pre, table_compose(table, table_invert(h.pre))))
    t = apply_code_stage(t, h.core)
    t = apply_table_stage(t, h.post)
    return extract_table(t)


def check_xihg(h: CoeMap, table: TableElement, g: LocFun) -> bool:
    """Exact check that conjugation and potential transfer cooperate:
    the ``g``-cocycle of the conjugated table, pulled back through ``h``,
    is the cocycle of the transferred potential on the original table."""
    lhs = pullback_map(rho(g, conjugate_table(h, table)), h)
    rhs = rho(psi(h, g), table)
    return equal(lhs, rhs)
