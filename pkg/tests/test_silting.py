from collections import Counter

import pytest

from taucluster.errors import BudgetExceeded, NotInReduction, NotPresilting, NotRelativeProjective
from taucluster.silting import SiltingTheory
from taucluster.twoterm import TwoTermCategory

from conftest import CORPUS, algebra, side

COUNTS = {"two-cycle": (6, 13), "point": (2, 3), "two-points": (4, 9), "A2": (5, 11), "A3": (14, 45)}


@pytest.mark.parametrize("name", CORPUS)
def test_silting_and_presilting_counts(name):
    th = side(name).theory
    assert (len(th.siltings()), len(th.presiltings())) == COUNTS[name]


@pytest.mark.parametrize("name", CORPUS)
def test_exchange_graph_is_regular(name):
    th = side(name).theory
    degree = Counter()
    for a, b in th.mutation_edges():
        degree[a] += 1
        degree[b] += 1
    assert set(degree.values()) == {th.rank}
    assert len(th.mutation_edges()) == len(th.siltings()) * th.rank // 2


def test_loop_algebra_exchange_graph_is_a_hexagon(loop_side):
    edges = loop_side.theory.mutation_edges()
    adj = {i: set() for i in range(6)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    # connected and 2-regular on 6 vertices
    seen, todo = {0}, [0]
    while todo:
        for n in adj[todo.pop()] - seen:
            seen.add(n)
            todo.append(n)
    assert len(seen) == 6 and all(len(v) == 2 for v in adj.values())


def test_completions_of_zero(corpus_side):
    th, cat = corpus_side.theory, corpus_side.cat
    assert th.bongartz(()) == tuple(sorted(cat.stalks))
    assert th.cobongartz(()) == tuple(sorted(cat.shifts))


def test_completions_are_silting(corpus_side):
    th = corpus_side.theory
    for u in th.presiltings():
        b, c = th.bongartz(u), th.cobongartz(u)
        assert not set(b) & set(u) and not set(c) & set(u)
        assert len(b) == len(c) == th.rank - len(u)
        assert th.is_silting(th.bongartz_completion(u))
        assert th.is_silting(th.cobongartz_completion(u))
        if th.is_silting(u):
            assert b == c == ()


def test_exchange_pairs_complements(corpus_side):
    th = corpus_side.theory
    for u in th.presiltings():
        ex = th.exchange(u)
        assert sorted(b for b, _, _ in ex) == list(th.bongartz(u))
        assert sorted(c for _, _, c in ex) == list(th.cobongartz(u))
        for _, ubar, _ in ex:
            assert set(ubar) <= set(u)


def test_mutation_is_an_involution(corpus_side):
    th = corpus_side.theory
    for t in th.siltings():
        for i in t:
            new = th.mutate(t, i)
            assert len(set(new) & set(t)) == th.rank - 1
            (j,) = set(new) - set(t)
            assert th.mutate(new, j) == t


def test_budget_is_enforced():
    cat = TwoTermCategory(algebra("A3"))
    with pytest.raises(BudgetExceeded):
        SiltingTheory(cat, cap=3).siltings()


def test_non_presilting_rejected(loop_side):
    th, cat = loop_side.theory, loop_side.cat
    bad = next((a, b) for a in range(len(cat)) for b in range(len(cat)) if a != b and cat.ext(a, b))
    with pytest.raises(NotPresilting):
        th.bongartz(bad)
    with pytest.raises(ValueError):
        th.bongartz((0, 0))


# reduction -------------------------------------------------------------------


def test_reduction_by_zero(corpus_side):
    th, cat = corpus_side.theory, corpus_side.cat
    amb = th.reduction(())
    assert amb.proj == tuple(sorted(cat.stalks)) and amb.inj == tuple(sorted(cat.shifts))
    for s in cat.stalks:
        assert (amb.tilde_sigma(s),) == cat.sigma([s])


def test_reduction_shape(corpus_side):
    th = corpus_side.theory
    for u in th.presiltings():
        amb = th.reduction(u)
        assert len(amb.proj) == len(amb.inj) == th.rank - len(u)
        for b in amb.proj:
            assert amb.tilde_omega(amb.tilde_sigma(b)) == b
            assert amb.quotient_hom_dim(b, b) >= 1
        for x in u:
            assert amb.member(x)
            assert amb.quotient_hom_dim(x, x) == 0


def test_reduction_members_are_orthogonal(corpus_side):
    th, cat = corpus_side.theory, corpus_side.cat
    for u in th.presiltings():
        amb = th.reduction(u)
        for x in amb.members():
            assert all(cat.ext(x, a) == cat.ext(a, x) == 0 for a in u)


def test_iterated_reduction(corpus_side):
    """Reducing by U + V keeps exactly the members of the reduction by U that survive V."""
    th = corpus_side.theory
    pres = set(th.presiltings())
    for u in pres:
        for v in pres:
            if set(u) & set(v) or tuple(sorted(set(u) | set(v))) not in pres:
                continue
            both = th.reduction(tuple(sorted(set(u) | set(v))))
            step = [x for x in th.reduction(u).members() if th.reduction(v).member(x)]
            assert both.members() == step


def test_reduced_relative_projectives_are_bongartz(corpus_side):
    """In the reduction, the relative projectives are those E-projective against every member."""
    th, cat = corpus_side.theory, corpus_side.cat
    for u in th.presiltings():
        amb = th.reduction(u)
        members = [x for x in amb.members() if x not in u]
        proj = sorted(x for x in members if all(cat.ext(x, y) == 0 for y in members))
        inj = sorted(x for x in members if all(cat.ext(y, x) == 0 for y in members))
        assert tuple(proj) == amb.proj
        assert tuple(inj) == amb.inj


def test_reduction_errors(loop_side):
    th, cat = loop_side.theory, loop_side.cat
    u = (cat.stalks[0],)
    amb = th.reduction(u)
    outside = next(x for x in range(len(cat)) if not amb.member(x))
    with pytest.raises(NotInReduction):
        amb.quotient_hom_dim(outside, outside)
    with pytest.raises(NotRelativeProjective):
        amb.tilde_sigma(u[0])
