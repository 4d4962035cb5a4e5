import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdproof import (
    AxiomTag,
    Provenance,
    RuleStore,
    ValidationError,
    canonical_attrset,
    check_step,
    gen_aug,
    gen_comp,
    gen_decomp,
    gen_genuni,
    gen_selfdet,
    gen_trans,
    gen_union,
    implies,
)
from fdproof.axioms import generate
from fdproof.core import INITIAL, Universe
from fdproof.saturation import Saturator

from conftest import CASE_RULES, CASE_UNIVERSE

A = canonical_attrset
AU, GE, CO, UN, DE, TR, SE = (AxiomTag.AU, AxiomTag.GE, AxiomTag.CO, AxiomTag.UN,
                              AxiomTag.DE, AxiomTag.TR, AxiomTag.SE)


def store_of(universe, *rules):
    s = RuleStore(universe)
    for l, r in rules:
        s.insert(A(l), A(r), INITIAL)
    return s


def entries(batch):
    return [(str(l), str(r), p.axiom, p.parents) for l, r, p in batch.produced]


def test_selfdet():
    b = gen_selfdet(RuleStore("A B C"))
    assert entries(b) == [("A", "A", SE, ()), ("B", "B", SE, ()), ("C", "C", SE, ())]
    assert b.changed
    b = gen_selfdet(store_of("A", ("A", "A")))
    assert entries(b) == [] and not b.changed
    assert entries(gen_selfdet(RuleStore([]))) == []


def test_aug_case_study():
    b = gen_aug(store_of(CASE_UNIVERSE, ("A", "B C")))
    assert ("A D", "B C D", AU, (1,)) in entries(b)


def test_aug_small_universe():
    # rule over {A, B}, augmenting only with A: determinant unchanged, dependent gains A
    b = gen_aug(store_of("A B", ("A", "B")), Universe("A"))
    assert entries(b) == [("A", "A B", AU, (1,))]
    assert implies([("A", "B")], "A", "A B")


def test_aug_empty():
    assert not gen_aug(RuleStore(CASE_UNIVERSE)).changed


def test_trans():
    assert entries(gen_trans(store_of("A B C", ("A", "B"), ("B", "C")))) == [("A", "C", TR, (1, 2))]
    # reverse branch keeps the parent order of the pair
    assert entries(gen_trans(store_of("A B C", ("B", "C"), ("A", "B")))) == [("A", "C", TR, (1, 2))]
    assert entries(gen_trans(store_of("A B", ("A", "B")))) == []


def test_trans_is_exclusive():
    # both Y1 = X2 and Y2 = X1 hold; only the first branch fires
    assert entries(gen_trans(store_of("A B", ("A", "B"), ("B", "A")))) == [("A", "A", TR, (1, 2))]


def test_decomp():
    assert entries(gen_decomp(store_of(CASE_UNIVERSE, ("B C D", "E F")))) == [
        ("B C D", "E", DE, (1,)), ("B C D", "F", DE, (1,))]
    assert entries(gen_decomp(store_of("A B", ("A", "B")))) == []
    assert entries(gen_decomp(store_of("A B C D", ("A", "B C D")))) == [
        ("A", "B", DE, (1,)), ("A", "C D", DE, (1,))]


def test_decomp_head_tail_reaches_all_singletons():
    # repeated head/tail splitting yields every singleton, as the all-singletons split would
    store = store_of("A B C D", ("A", "B C D"))
    sat = Saturator(store)
    while sat.run_stage(DE):
        pass
    for a in "BCD":
        assert store.find(A("A"), A(a)) is not None


def test_union():
    assert entries(gen_union(store_of("A B C", ("A", "B"), ("A", "C")))) == [("A", "B C", UN, (1, 2))]
    assert entries(gen_union(store_of("A B C D", ("A", "B"), ("C", "D")))) == []
    b = gen_union(store_of("A B C D", ("A", "B C"), ("A", "C D")))
    assert entries(b) == [("A", "B C D", UN, (1, 2))]


def test_comp():
    assert entries(gen_comp(store_of("A B C D", ("A", "B"), ("C", "D")))) == [("A C", "B D", CO, (1, 2))]
    assert entries(gen_comp(store_of("A B C", ("A", "B"), ("A", "C")))) == [("A", "B C", CO, (1, 2))]
    assert entries(gen_comp(store_of("A B", ("A", "B")))) == []
    # the union result already present is not produced again
    s = store_of("A B C", ("A", "B"), ("A", "C"), ("A", "B C"))
    assert ("A", "B C", CO, (1, 2)) not in entries(gen_comp(s))


def test_genuni():
    b = gen_genuni(store_of(CASE_UNIVERSE, *CASE_RULES))
    assert ("B C D", "E F", GE, (2, 3)) in entries(b)
    # first direction has empty difference {B} - {B}; only the reverse fires
    assert entries(gen_genuni(store_of("A B C", ("A", "B"), ("B", "C")))) == [("A B", "B C", GE, (2, 1))]
    assert entries(gen_genuni(store_of("A B", ("A", "B")))) == []


def test_check_step_examples():
    u = CASE_UNIVERSE
    assert check_step(TR, [("A D", "B C D"), ("B C D", "F")], A("A D"), A("F"), u)
    assert not check_step(UN, [("A", "B"), ("C", "D")], A("A C"), A("B D"), u)
    assert check_step(CO, [("A", "B"), ("C", "D")], A("A C"), A("B D"), u)
    assert check_step(GE, [("B", "E"), ("C D", "E F")], A("B C D"), A("E F"), u)
    assert not check_step(GE, [("A", "B"), ("B", "C")], A("A"), A("B C"), u)


def test_check_step_decomposition_modes():
    u = "A B C D"
    parent = [("A", "B C D")]
    assert check_step(DE, parent, A("A"), A("B"), u)
    assert check_step(DE, parent, A("A"), A("C D"), u)
    assert not check_step(DE, parent, A("A"), A("C"), u)
    assert check_step(DE, parent, A("A"), A("C"), u, strict_decomposition=False)
    assert not check_step(DE, parent, A("A"), A("B C D"), u, strict_decomposition=False)


def test_check_step_errors():
    with pytest.raises(ValidationError):
        check_step(AxiomTag.IN, [], A("A"), A("A"), "A")
    with pytest.raises(ValidationError):
        check_step(TR, [("A", "B")], A("A"), A("B"), "A B")
    with pytest.raises(ValidationError):
        check_step(SE, [("A", "A")], A("A"), A("A"), "A")


# ---- properties over random small stores ----------------------------------

@st.composite
def small_stores(draw):
    """A store with random initial rules, optionally grown by a few stages."""
    n = draw(st.integers(2, 4))
    names = "ABCD"[:n]
    full = (1 << n) - 1
    masks = st.integers(1, full)
    pairs = draw(st.lists(st.tuples(masks, masks), min_size=1, max_size=5, unique=True))
    store = RuleStore(" ".join(names))
    for l, r in pairs:
        store.insert_masks(l, r, INITIAL)
    sat = Saturator(store)
    for tag in draw(st.lists(st.sampled_from([SE, AU, GE, CO, UN, DE, TR]), max_size=3)):
        sat.run_stage(tag)
        if len(store) > 150:
            break
    return store


def initial_rules(store):
    return [(fd.determinant, fd.dependent) for fd in store if fd.provenance.axiom is AxiomTag.IN]


ALL = [SE, AU, GE, CO, UN, DE, TR]


@settings(max_examples=60, deadline=None)
@given(small_stores())
def test_generator_contracts(store):
    init = initial_rules(store)
    snap = store.snapshot()
    for tag in ALL:
        batch = generate(tag, snap)
        assert generate(tag, snap).candidates == batch.candidates  # purity
        assert batch.changed == bool(batch.candidates)
        keys = [(l, r) for l, r, _ in batch.candidates]
        assert len(set(keys)) == len(keys)
        for lhs, rhs, prov in batch.produced:
            assert snap.find(lhs, rhs) is None
            assert prov.axiom is tag and len(prov.parents) == tag.arity
            assert implies(init, lhs, rhs)
            parents = [store.get(p) for p in prov.parents]
            assert check_step(tag, parents, lhs, rhs, store.universe)


@settings(max_examples=40, deadline=None)
@given(small_stores(), st.lists(st.tuples(st.integers(1, 15), st.integers(1, 15)), max_size=4))
def test_incremental_enumeration_matches_full(store, extra):
    # absorb a full batch of each generator, add rules, then compare delta vs full
    full = store.universe.full_mask
    for tag in [AU, GE, CO, UN, DE, TR]:
        s2 = RuleStore(store.universe)
        for fd in store:
            s2.insert_masks(store.lhs[fd.id - 1], store.rhs[fd.id - 1], fd.provenance)
        k = len(s2)
        for l, r, p in generate(tag, s2).candidates:
            s2.insert_masks(l, r, p)
        for l, r in extra:
            if l & full and r & full:
                s2.insert_masks(l & full, r & full, INITIAL)
        snap = s2.snapshot()
        assert generate(tag, snap, since=k).candidates == generate(tag, snap).candidates
