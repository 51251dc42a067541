"""Conjugacy decisions, witnesses, and commutant separation."""

import random

import pytest

from shiftgroups.cocycles import in_cocycle_group
from shiftgroups.codes import higher_block_codes, relabel_code
from shiftgroups.conjugacy import (
    Witness,
    check_witness,
    commutant_witness,
    difference_locus,
    is_conjugacy,
    recode_source,
    witness_non_conjugacy,
)
from shiftgroups.errors import SearchBudgetExceeded
from shiftgroups.functions import compose_shift, zero
from shiftgroups.orbit import (
    _stage_transducer,
    coe_apply,
    coe_from_chain,
    identity_coe,
    psi,
    pullback_map,
)
from shiftgroups.sft import representative, shift_point, validate_matrix
from shiftgroups.tables import identity_table, prefix_swap, random_element
from shiftgroups.transducer import point_apply

G = validate_matrix([[1, 1], [1, 0]])
FULL2 = validate_matrix([[1, 1], [1, 1]])
TRIANGLE = validate_matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])

TAU0_CHAIN = coe_from_chain([prefix_swap(G, 1, 2)])


# -- the decision -------------------------------------------------------------


def test_is_conjugacy_examples():
    _, encode, _ = higher_block_codes(G, 2)
    assert is_conjugacy(coe_from_chain([encode]))
    assert is_conjugacy(identity_coe(G))
    assert not is_conjugacy(TAU0_CHAIN)
    flip = relabel_code(FULL2, FULL2, {1: 2, 2: 1})
    assert is_conjugacy(coe_from_chain([flip]))


def test_difference_locus_examples():
    _, encode, _ = higher_block_codes(G, 2)
    assert difference_locus(coe_from_chain([encode])) == ()
    assert difference_locus(identity_coe(G)) == ()
    locus = difference_locus(TAU0_CHAIN)
    assert locus
    # the locus is genuine: commutation fails at some point of each part
    for word in locus[:3]:
        found = False
        for depth in range(len(word), len(word) + 4):
            from shiftgroups.sft import expand_to_depth

            for deep in expand_to_depth(G, word, depth):
                z = representative(G, deep)
                if coe_apply(TAU0_CHAIN, shift_point(z)) != shift_point(
                        coe_apply(TAU0_CHAIN, z)):
                    found = True
                    break
            if found:
                break
        assert found


# -- witnesses ----------------------------------------------------------------


def test_witness_none_for_conjugacies():
    flip = relabel_code(FULL2, FULL2, {1: 2, 2: 1})
    assert witness_non_conjugacy(coe_from_chain([flip])) is None
    assert witness_non_conjugacy(identity_coe(TRIANGLE)) is None


def test_witness_for_swap_chain():
    witness = witness_non_conjugacy(TAU0_CHAIN)
    assert witness is not None
    assert check_witness(TAU0_CHAIN, witness)
    # the certificate data has the promised shape
    assert witness.pair[0] != witness.pair[1]
    assert witness.z.symbol(1) == witness.pair[0]
    assert witness.z.symbol(2) == witness.pair[1]
    values = [v for _, v in witness.g.pieces]
    assert set(values) <= {0, 1} and values.count(1) == 1


def test_witness_certifies_subgroup_obstruction():
    witness = witness_non_conjugacy(TAU0_CHAIN)
    h_level, _ = recode_source(TAU0_CHAIN, witness.level)
    balanced = witness.g - compose_shift(witness.g)
    assert in_cocycle_group(witness.tau0, psi(h_level, balanced)) != in_cocycle_group(
        witness.tau0, pullback_map(balanced, h_level))


def test_tampered_witnesses_fail():
    witness = witness_non_conjugacy(TAU0_CHAIN)
    no_g = Witness(witness.level, witness.z, witness.pair,
                   zero(TAU0_CHAIN.target), witness.tau0)
    assert not check_witness(TAU0_CHAIN, no_g)
    h_level, _ = recode_source(TAU0_CHAIN, witness.level)
    no_swap = Witness(witness.level, witness.z, witness.pair, witness.g,
                      identity_table(h_level.source))
    assert not check_witness(TAU0_CHAIN, no_swap)


def test_witness_survives_recoding():
    """Recoding the source one level up never flips the conclusion."""
    for stages, matrix in (
            ([prefix_swap(G, 1, 2)], G),
            ([prefix_swap(TRIANGLE, 2, 3)], TRIANGLE)):
        h = coe_from_chain(stages, source=matrix)
        recoded, _ = recode_source(h, 2)
        assert not is_conjugacy(recoded)
        witness = witness_non_conjugacy(recoded)
        assert witness is not None and check_witness(recoded, witness)
    _, encode, _ = higher_block_codes(G, 2)
    conjugacy = coe_from_chain([encode])
    recoded, _ = recode_source(conjugacy, 2)
    assert witness_non_conjugacy(recoded) is None


def test_witness_for_random_twists():
    """Seeded random table twists across all three matrices."""
    rng = random.Random(99)
    for matrix in (G, FULL2, TRIANGLE):
        for _ in range(3):
            tau = random_element(matrix, 3, rng.randrange(1 << 30))
            h = coe_from_chain([tau], source=matrix)
            if is_conjugacy(h):
                assert witness_non_conjugacy(h) is None
                continue
            witness = witness_non_conjugacy(h)
            assert witness is not None and check_witness(h, witness)


def test_witness_search_budget_is_loud():
    with pytest.raises(SearchBudgetExceeded):
        witness_non_conjugacy(TAU0_CHAIN, max_level=0)


def test_witness_deterministic():
    a = witness_non_conjugacy(TAU0_CHAIN)
    b = witness_non_conjugacy(TAU0_CHAIN)
    assert (a.level, a.z, a.pair, a.g, a.tau0) == (b.level, b.z, b.pair, b.g, b.tau0)


# -- commutant ----------------------------------------------------------------


def test_commuting_chains_transfer_trivially():
    """On shift-commuting chains the transfer degenerates to pullback and
    conjugation preserves every vanishing subgroup."""
    from shiftgroups.functions import equal, make
    from shiftgroups.orbit import conjugate_table

    rng = random.Random(41)
    flip = relabel_code(FULL2, FULL2, {1: 2, 2: 1})
    _, encode_g, _ = higher_block_codes(G, 2)
    chains = [
        coe_from_chain([encode_g]),
        coe_from_chain([flip]),
        identity_coe(TRIANGLE),
    ]
    for h in chains:
        assert is_conjugacy(h)
        for _ in range(6):
            g = random_target_function(h, rng)
            assert equal(psi(h, g), pullback_map(g, h))
            tau = random_element(h.source, 3, rng.randrange(1 << 30))
            moved = conjugate_table(h, tau)
            assert in_cocycle_group(tau, pullback_map(g, h)) == in_cocycle_group(moved, g)


def random_target_function(h, rng, depth=2):
    matrix = h.target
    parts = {(): rng.randint(-2, 2)}
    for _ in range(rng.randint(0, 3)):
        splittable = sorted(w for w in parts if len(w) < depth)
        if not splittable:
            break
        word = splittable[rng.randrange(len(splittable))]
        del parts[word]
        for child in matrix.extensions(word):
            parts[child] = rng.randint(-2, 2)
    from shiftgroups.functions import make

    return make(matrix, parts)


def test_commutant_identity_gives_none():
    assert commutant_witness(identity_coe(G)) is None
    _, encode, decode = higher_block_codes(G, 2)
    assert commutant_witness(coe_from_chain([encode, decode])) is None


def test_commutant_witness_for_swap_chain():
    table = commutant_witness(TAU0_CHAIN)
    assert table is not None
    after = _stage_transducer(G, (table,) + TAU0_CHAIN.stages())
    before = _stage_transducer(G, TAU0_CHAIN.stages() + (table,))
    from shiftgroups.conjugacy import _pointwise_difference

    z = _pointwise_difference(after, before)
    assert z is not None
    assert point_apply(after, z) != point_apply(before, z)


def test_commutant_deterministic():
    assert commutant_witness(TAU0_CHAIN) == commutant_witness(TAU0_CHAIN)


def test_corpus_verdicts_match_pointwise_behaviour():
    """Every corpus verdict is cross-checked at depth-6 representatives."""
    from shiftgroups.selftest import conjugacy_corpus, twisted_corpus
    from shiftgroups.sft import enumerate_words

    def commutes_at(h, z):
        return coe_apply(h, shift_point(z)) == shift_point(coe_apply(h, z))

    for h in conjugacy_corpus():
        assert is_conjugacy(h)
        for word in enumerate_words(h.source, 6):
            assert commutes_at(h, representative(h.source, word))
    for h in twisted_corpus():
        assert not is_conjugacy(h)
        assert any(not commutes_at(h, representative(h.source, word))
                   for word in enumerate_words(h.source, 6))


def test_identity_through_nontrivial_stages():
    """A four-stage chain composing to the identity map is recognized."""
    from shiftgroups.tables import invert
    from shiftgroups.transducer import conjugate_table_by_code, is_identity_transducer

    tau = prefix_swap(G, 1, 2)
    _, encode, decode = higher_block_codes(G, 2)
    moved_inverse = conjugate_table_by_code(encode, invert(tau), forward=True)
    h = coe_from_chain([tau, encode, moved_inverse, decode])
    assert is_identity_transducer(h.transducer)
    assert is_conjugacy(h)
    assert commutant_witness(h) is None
    assert witness_non_conjugacy(h) is None


def test_witness_needs_deeper_recoding():
    """A twist buried at block level 3 still yields a checkable witness."""
    from shiftgroups.transducer import conjugate_table_by_code

    block3, encode3, _ = higher_block_codes(G, 3)
    # swap two level-3 blocks, carried down to the base shift
    pair = next((z1, z2) for z1 in block3.symbols()
                for z2 in block3.successors(z1) if z1 != z2)
    deep_table = conjugate_table_by_code(encode3, prefix_swap(block3, *pair),
                                         forward=False)
    h = coe_from_chain([deep_table])
    assert not is_conjugacy(h)
    witness = witness_non_conjugacy(h)
    assert witness is not None and check_witness(h, witness)


def test_commutant_random_self_maps():
    rng = random.Random(3)
    for matrix in (G, TRIANGLE):
        for _ in range(4):
            tau = random_element(matrix, 3, rng.randrange(1 << 30))
            h0 = coe_from_chain([tau], source=matrix)
            witness = commutant_witness(h0)
            if tau == identity_table(matrix):
                assert witness is None
            else:
                assert witness is not None
