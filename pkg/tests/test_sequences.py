from itertools import permutations

import pytest

from taucluster.errors import DuplicateEntry, InvalidSequence
from taucluster.sequences import SequenceTools

from conftest import CORPUS, side

SIGNED = {"two-cycle": [6, 12], "point": [2], "two-points": [4, 8], "A2": [5, 10], "A3": [9, 42, 84]}


def tools(name):
    return SequenceTools(side(name))


@pytest.mark.parametrize("name", CORPUS)
def test_signed_counts(name):
    st = tools(name)
    assert [len(st.enumerate(t)) for t in range(1, st.side.rank + 1)] == SIGNED[name]


@pytest.mark.parametrize("name", CORPUS)
def test_each_silting_gives_every_ordering(name):
    """Each presilting object of size t contributes t! signed sequences."""
    st = tools(name)
    for u in st.theory.presiltings():
        if not u:
            continue
        valid = [p for p in permutations(u) if st.is_signed_presilting_seq(p)]
        assert len(valid) == len(list(permutations(u)))


@pytest.mark.parametrize("name", CORPUS)
def test_checkers_agree_on_all_tuples(name):
    st = tools(name)
    n = len(st.cat)
    for t in range(1, st.side.rank + 1):
        for tup in permutations(range(n), t):
            assert st.check_recursive(tup) == st.check_direct_sum(tup)


def test_unsigned_sequences_are_a_subset(corpus_side):
    st = SequenceTools(corpus_side)
    for t in range(1, corpus_side.rank + 1):
        unsigned = st.enumerate(t, signed=False)
        assert set(unsigned) <= set(st.enumerate(t))
        for seq in unsigned:
            assert not any(shifted for _, shifted in st.xi(seq))


@pytest.mark.parametrize("name,n", [("point", 1), ("A2", 2), ("A3", 3)])
def test_complete_unsigned_sequences_of_linear_quivers(name, n):
    """A linearly oriented A_n has (n + 1)^(n - 1) complete exceptional sequences."""
    assert len(tools(name).enumerate(n, signed=False)) == (n + 1) ** (n - 1)


def test_unsigned_counts_on_loop_algebra(loop_side):
    st = SequenceTools(loop_side)
    assert [len(st.enumerate(t, signed=False)) for t in (1, 2)] == [4, 4]


@pytest.mark.parametrize("name", CORPUS)
def test_xi_equals_psi_after_H_P(name):
    st = tools(name)
    for t in range(1, st.side.rank + 1):
        for seq in st.enumerate(t):
            assert st.xi(seq) == st.psi_of_h_p(seq)


@pytest.mark.parametrize("name", CORPUS)
def test_xi_is_a_bijection(name):
    st = tools(name)
    for t in range(1, st.side.rank + 1):
        images = {}
        for seq in st.enumerate(t):
            x = tuple(st.xi(seq))
            assert x not in images
            images[x] = seq
            assert st.xi_inverse(list(x)) == list(seq)
        assert set(images) == {tuple(s) for s in st.side.signed_exceptional_sequences(t)}


def test_xi_on_loop_algebra(loop_side):
    st = SequenceTools(loop_side)
    cat, s = st.cat, loop_side
    s2 = next(m for m in s.tau_rigid_modules() if s.registry[m].dims == (0, 1))
    s1 = next(m for m in s.tau_rigid_modules() if s.registry[m].dims == (1, 0))
    seq = [cat.module_entry(s2), cat.stalks[1]]
    assert st.xi(seq) == [(s1, True), (s.projective_id(1), False)]


def test_duplicates_and_invalid_input(loop_side):
    st = SequenceTools(loop_side)
    with pytest.raises(DuplicateEntry):
        st.is_signed_presilting_seq([0, 0])
    bad = next((a, b) for a in range(len(st.cat)) for b in range(len(st.cat))
               if a != b and not st.cat.is_presilting([a, b]))
    assert not st.is_signed_presilting_seq(bad)
    with pytest.raises(InvalidSequence):
        st.xi(list(bad))
    with pytest.raises(ValueError):
        st.enumerate(3)
