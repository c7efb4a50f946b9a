from itertools import combinations

import numpy as np
import pytest

from taucluster import fdalg
from taucluster.errors import NotInjective, NotPresilting, NotProjective
from taucluster.twoterm import (
    SupportTauRigid,
    TwoTermCategory,
    TwoTermComplex,
    direct_sum_complex,
    h0,
    minimize_complex,
)

from conftest import CORPUS, algebra, loewy_quotients, side


def full_catalog(s):
    """Register every indecomposable module so the catalog covers all of C."""
    mods = loewy_quotients(s.alg)
    return mods, [s.cat.module_entry(s.registry.index(m)) for m in mods]


@pytest.mark.parametrize("name,size", [("two-cycle", 6), ("point", 2), ("two-points", 4), ("A2", 5), ("A3", 9)])
def test_catalog_size(name, size):
    s = side(name)
    full_catalog(s)
    assert len(s.cat) == size


@pytest.mark.parametrize("name", CORPUS)
def test_ext_matches_hom_into_tau(name):
    s = side(name)
    mods, ids = full_catalog(s)
    for a, m in zip(ids, mods):
        for b, n in zip(ids, mods):
            assert s.cat.ext(a, b) == fdalg.hom_dim(n, fdalg.tau(m))


@pytest.mark.parametrize("name", CORPUS)
def test_ext_against_shifted_projectives(name):
    s = side(name)
    mods, ids = full_catalog(s)
    cat = s.cat
    for v in range(cat.nvert):
        for i, m in zip(ids, mods):
            assert cat.ext(cat.shifts[v], i) == m.dims[v]
            assert cat.ext(i, cat.shifts[v]) == 0


@pytest.mark.parametrize("name", CORPUS)
def test_projectives_and_injectives_by_vanishing(name):
    s = side(name)
    full_catalog(s)
    cat = s.cat
    assert [i for i in range(len(cat)) if cat.is_projective(i)] == sorted(cat.stalks)
    assert [i for i in range(len(cat)) if cat.is_injective(i)] == sorted(cat.shifts)


@pytest.mark.parametrize("name", CORPUS)
def test_catalog_entries_have_local_endomorphisms(name):
    s = side(name)
    full_catalog(s)
    assert all(s.cat.homotopy_end_radical_rank(i) == 1 for i in range(len(s.cat)))


def test_sigma_omega_round_trip(corpus_side):
    cat = corpus_side.cat
    assert cat.sigma(cat.stalks) == tuple(sorted(cat.shifts))
    assert cat.omega(cat.sigma(cat.stalks)) == tuple(sorted(cat.stalks))


def test_sigma_rejects_non_projective(loop_side):
    cat = loop_side.cat
    with pytest.raises(NotProjective):
        cat.sigma([cat.shifts[0]])
    with pytest.raises(NotInjective):
        cat.omega([cat.stalks[0]])


def test_minimize_is_idempotent(corpus_side):
    cat = corpus_side.cat
    alg = cat.alg
    for cx in cat.complexes:
        once = minimize_complex(alg, cx)
        twice = minimize_complex(alg, once)
        assert (once.src, once.tgt) == (twice.src, twice.tgt)
        assert np.array_equal(once.d, twice.d)


def test_direct_sum_decomposes_back(corpus_side):
    cat = corpus_side.cat
    ids = list(range(len(cat)))
    for pair in combinations(ids, 2):
        total = direct_sum_complex(cat.alg, [cat.complexes[i] for i in pair])
        assert cat.decompose(total) == sorted(pair)
    assert cat.decompose(direct_sum_complex(cat.alg, [cat.complexes[0]] * 3)) == [0, 0, 0]


def test_decompose_ignores_contractible_part(loop_side):
    cat = loop_side.cat
    alg = cat.alg
    v = 0
    e = np.zeros((1, 1, alg.dim), dtype=np.int64)
    e[0, 0, alg.idempotents[v]] = 1
    contractible = TwoTermComplex((v,), (v,), e)
    assert cat.decompose(contractible) == []
    assert cat.decompose(direct_sum_complex(alg, [contractible, cat.complexes[3]])) == [3]


def test_h0_recovers_module(corpus_side):
    s = corpus_side
    mods, ids = full_catalog(s)
    for i, m in zip(ids, mods):
        assert fdalg.is_isomorphic(h0(s.alg, s.cat.complexes[i])[0], m)


def test_seed_does_not_change_catalog():
    alg = algebra("two-cycle")
    labels = []
    for seed in (0, 5, 99):
        cat = TwoTermCategory(alg, seed=seed)
        for m in loewy_quotients(alg):
            cat.module_entry(cat.registry.index(m))
        labels.append(sorted(cat.label(i) for i in range(len(cat))))
    assert labels[0] == labels[1] == labels[2]


@pytest.mark.parametrize("name", CORPUS)
def test_H_P_is_a_bijection(name):
    """Presilting objects against brute-force support tau-rigid pairs over the Loewy-quotient oracle."""
    s = side(name)
    alg = s.alg
    reg = s.registry
    mods = {reg.index(m): m for m in loewy_quotients(alg)}
    rigid = [i for i, m in mods.items() if fdalg.hom_dim(m, fdalg.tau(m)) == 0]
    pairs = set()
    pieces = [("m", i) for i in rigid] + [("s", v) for v in range(alg.nvert)]
    for r in range(alg.nvert + 1):
        for combo in combinations(pieces, r):
            ms = [i for k, i in combo if k == "m"]
            vs = [v for k, v in combo if k == "s"]
            if any(fdalg.hom_dim(mods[a], fdalg.tau(mods[b])) for a in ms for b in ms):
                continue
            if any(mods[a].dims[v] for a in ms for v in vs):
                continue
            pairs.add(SupportTauRigid(tuple(ms), tuple(vs)))
    images = [s.cat.H_P(u) for u in s.theory.presiltings()]
    assert len(set(images)) == len(images)
    assert set(images) == pairs
    for u in s.theory.presiltings():
        assert s.cat.H_P_inverse(s.cat.H_P(u)) == u


def test_H_P_rejects_non_presilting(loop_side):
    cat = loop_side.cat
    mods, ids = full_catalog(loop_side)
    bad = next((a, b) for a in ids for b in ids if cat.ext(a, b))
    with pytest.raises(NotPresilting):
        cat.H_P(list(bad))


def test_pi_triangle_on_loop_algebra(loop_side):
    cat = loop_side.cat
    for i in range(len(cat)):
        stalk_part, shift_part = cat.canonical_pi_triangle(i)
        cx = cat.complexes[i]
        assert len(stalk_part) == len(cx.tgt) and len(shift_part) == len(cx.src)
    for v in range(cat.nvert):
        assert cat.canonical_pi_triangle(cat.stalks[v]) == ([cat.stalks[v]], [])
        assert cat.canonical_pi_triangle(cat.shifts[v]) == ([], [cat.shifts[v]])


def test_composition_tensor_agrees_with_identities(corpus_side):
    cat = corpus_side.cat
    fld = cat.alg.field
    for a in range(len(cat)):
        t = cat.composition(a, a, a)
        k = t.shape[0]
        assert k == cat.hom_dim(a, a)
        # some element acts as a left unit
        unit = fld.solve(t.transpose(1, 2, 0).reshape(-1, k), np.eye(k, dtype=np.int64).reshape(-1))
        assert unit is not None
