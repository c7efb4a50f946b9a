import functools
from itertools import permutations

import pytest

from taucluster.cluster import (
    FiniteCategory,
    FunctorData,
    build_M_C,
    build_M_Lambda,
    check_equivalence,
    check_functor,
    factorizations,
    functor_F,
    is_irreducible,
    quotient_category,
)
from taucluster.errors import NotDiscreteFibration
from taucluster.sequences import SequenceTools

from conftest import CORPUS, side

OBJECTS = {"two-cycle": (13, 6), "point": (3, 2), "two-points": (9, 4), "A2": (11, 5), "A3": (45, 14)}


@functools.lru_cache(maxsize=None)
def built(name):
    s = side(name)
    mc = build_M_C(s.theory)
    ml = build_M_Lambda(s)
    return s, mc, ml, functor_F(s, mc, ml)


def identity_functor(cat):
    return FunctorData(cat, cat, {o: o for o in cat.objects}, list(range(len(cat.morphisms))))


def arrow_category():
    """Two objects and one arrow between them."""
    c = FiniteCategory("arrow")
    for o in "ab":
        c.add_object(o)
    ia = c.add_morphism("a", "a", "id", identity=True)
    ib = c.add_morphism("b", "b", "id", identity=True)
    f = c.add_morphism("a", "b", "f")
    c.compose.update({(ia, ia): ia, (ib, ib): ib, (f, ia): f, (ib, f): f})
    return c, f


# finite categories -------------------------------------------------------------


def test_small_category_passes_axioms():
    c, _ = arrow_category()
    assert c.check_axioms() == []
    assert c.hom("a", "b") == [2] and c.hom("b", "a") == []


def test_broken_identity_is_reported():
    c, f = arrow_category()
    ia = c.identity["a"]
    c.compose[f, ia] = ia
    assert c.check_axioms()


def test_conflicting_codomain_rejected():
    c, _ = arrow_category()
    with pytest.raises(ValueError):
        c.add_morphism("a", "a", "f")


def test_identity_functor_is_everything():
    c, _ = arrow_category()
    fun = identity_functor(c)
    assert fun.check_laws() == []
    rep = check_functor(fun)
    assert rep.dense and rep.faithful and rep.full and rep.discrete_fibration
    quot = quotient_category(fun)
    assert len(quot.cat.objects) == 2 and check_equivalence(quot, c) == []


def test_quotient_needs_a_fibration():
    c, f = arrow_category()
    point = FiniteCategory("point")
    point.add_object("*")
    e = point.add_morphism("*", "*", "id", identity=True)
    point.compose[e, e] = e
    crush = FunctorData(c, point, {"a": "*", "b": "*"}, [e, e, e])
    assert crush.check_laws() == []
    rep = check_functor(crush)
    # faithful hom-set by hom-set, but the identity of * has two lifts at a
    assert rep.faithful and not rep.discrete_fibration
    with pytest.raises(NotDiscreteFibration):
        quotient_category(crush)


# the two categories --------------------------------------------------------------


@pytest.mark.parametrize("name", CORPUS)
def test_object_counts(name):
    _, mc, ml, _ = built(name)
    assert (len(mc.objects), len(ml.objects)) == OBJECTS[name]


@pytest.mark.parametrize("name", CORPUS)
def test_category_axioms(name):
    _, mc, ml, _ = built(name)
    assert mc.check_axioms() == []
    assert ml.check_axioms() == []


def test_point_categories():
    s, mc, ml, fun = built("point")
    assert len([m for m in mc.morphisms if m[2]]) == 2
    top = s.full_key()
    parallel = ml.hom(top, ())
    assert len(parallel) == 2
    p = s.projective_id(0)
    assert sorted(ml.label(g) for g in parallel) == [((p, False),), ((p, True),)]


@pytest.mark.parametrize("name", CORPUS)
def test_maps_to_zero_count_silting_objects(name):
    s, mc, ml, _ = built(name)
    n = len(s.theory.siltings())
    assert len(ml.hom(s.full_key(), ())) == n
    for t in s.theory.siltings():
        assert len(mc.hom((), t)) == 1


@pytest.mark.parametrize("name", CORPUS)
def test_functor_laws_and_properties(name):
    _, _, _, fun = built(name)
    assert fun.check_laws() == []
    rep = check_functor(fun)
    assert rep.dense and rep.faithful and rep.discrete_fibration
    assert not rep.full


@pytest.mark.parametrize("name", CORPUS)
def test_quotient_is_equivalent(name):
    _, _, ml, fun = built(name)
    quot = quotient_category(fun)
    assert quot.cat.check_axioms() == []
    assert len(quot.cat.objects) == len(ml.objects)
    assert check_equivalence(quot, ml) == []


def test_point_quotient_merges_projective_and_shift():
    s, _, _, fun = built("point")
    quot = quotient_category(fun)
    merged = [sorted(c) for c in quot.cat.objects if len(c) == 2]
    assert merged == [sorted([(s.cat.stalks[0],), (s.cat.shifts[0],)])]


# factorizations -------------------------------------------------------------------


def test_irreducible_and_identity_factorizations():
    _, mc, _, _ = built("two-cycle")
    for f, (d, c, v) in enumerate(mc.morphisms):
        if not v:
            assert factorizations(mc, f) == [[]]
        elif len(v) == 1:
            assert is_irreducible(mc, f)
            assert factorizations(mc, f) == [[f]]


def test_rank_two_silting_has_two_factorizations():
    s, mc, _, _ = built("two-cycle")
    for t in s.theory.siltings():
        (f,) = mc.hom((), t)
        assert len(factorizations(mc, f)) == 2


@pytest.mark.parametrize("name", CORPUS)
def test_factorizations_match_sequences(name):
    """Chains of irreducibles out of U correspond to signed sequences ending in U."""
    s, mc, _, _ = built(name)
    st = SequenceTools(s)
    for f, (u, _, v) in enumerate(mc.morphisms):
        chains = factorizations(mc, f)
        labels = {tuple(mc.label(m)[0] for m in chain) for chain in chains}
        seqs = {order for order in permutations(v) if st.check_recursive(list(order[::-1]) + list(u))}
        assert labels == seqs
