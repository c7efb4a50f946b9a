"""Support tau-rigid objects over an algebra and the reduction maps between perpendicular categories.

Objects of C(A) = mod A + (proj A)[1] are written as *items* ``(module id,
shifted)`` with ids from the side's module registry. A shifted item over A
itself always carries an indecomposable projective; inside a perpendicular
category J(U) a shifted item carries a relative projective of J(U), which need
not be projective over A.
"""

import numpy as np

from . import fdalg
from .errors import (
    NotCompatible,
    NotSupportTauRigid,
    NotTauRigid,
    TheoryViolation,
)
from .silting import SiltingTheory
from .twoterm import TwoTermCategory


class Perp:
    """A perpendicular category J(U) together with its equivalence to mod Gamma."""

    def __init__(self, parent, U, generator_ids):
        self.parent = parent
        self.U = U
        self.generator_ids = tuple(generator_ids)
        self.functor = None
        self.side = None
        if generator_ids:
            mods = [parent.registry[i] for i in generator_ids]
            self.functor = fdalg.HomFunctor(mods)
            self.side = TauSide(self.functor.algebra, parent=(parent, self.functor), seed=parent.seed)

    @property
    def rank(self):
        return len(self.generator_ids)

    def to_gamma(self, item):
        """Transport an item of C(J(U)) to C(Gamma)."""
        m, shifted = item
        y = self.functor.apply(self.parent.registry[m])
        return self.side.registry.index(y), shifted

    def from_gamma(self, item):
        m, shifted = item
        x = self.functor.inverse(self.side.registry[m])
        return self.parent.registry.index(x), shifted

    def vertex_of(self, mid):
        """The Gamma vertex whose projective corresponds to a generator summand."""
        return fdalg.projective_vertex(self.functor.apply(self.parent.registry[mid]))


class TauSide:
    """tau-tilting data of one algebra: tau-rigid modules, completions, reduction maps."""

    def __init__(self, alg, cat=None, parent=None, seed=0):
        self.alg = alg
        self.seed = seed
        self.cat = cat or TwoTermCategory(alg, seed=seed)
        self.theory = SiltingTheory(self.cat)
        self.registry = self.cat.registry
        self.parent = parent
        self._tau = {}
        self._perp = {}
        self._bongartz = {}
        self._exchange = {}
        self._root = {}
        self._rigid = None

    @property
    def rank(self):
        return self.alg.nvert

    # basic predicates -------------------------------------------------------

    def module(self, mid):
        return self.registry[mid]

    def tau_of(self, mid):
        if mid not in self._tau:
            self._tau[mid] = fdalg.tau(self.registry[mid])
        return self._tau[mid]

    def projective_id(self, v):
        return self.registry.index(self.alg.projective(v))

    def vertex(self, mid):
        return fdalg.projective_vertex(self.registry[mid])

    def hom_dim(self, a, b):
        return fdalg.hom_dim(self.registry[a], self.registry[b])

    def hom_to_tau(self, a, b):
        return fdalg.hom_dim(self.registry[a], self.tau_of(b))

    def split(self, items):
        mods = [m for m, s in items if not s]
        verts = []
        for m, s in items:
            if s:
                v = self.vertex(m)
                if v is None:
                    raise NotSupportTauRigid("shifted entry is not projective")
                verts.append(v)
        return mods, verts

    def is_support_tau_rigid(self, items):
        mods, verts = self.split(items)
        if len(set(items)) != len(items):
            return False
        for a in mods:
            for b in mods:
                if self.hom_to_tau(a, b):
                    return False
        return all(self.registry[m].dims[v] == 0 for m in mods for v in verts)

    def tau_rigid_modules(self):
        """Indecomposable tau-rigid modules, via the presilting two-term complexes."""
        if self._rigid is None:
            ids = self.theory.indecomposable_presiltings()
            self._rigid = sorted(self.cat.module_id(i) for i in ids if not self.cat.is_shift(i))
        return self._rigid

    def indecomposable_items(self):
        """All indecomposable support tau-rigid objects of C(A)."""
        return [(m, False) for m in self.tau_rigid_modules()] + [(self.projective_id(v), True) for v in range(self.rank)]

    def in_J(self, items, x):
        mods, verts = self.split(items)
        xm = self.registry[x]
        if any(xm.dims[v] for v in verts):
            return False
        return all(self.hom_dim(m, x) == 0 and self.hom_to_tau(x, m) == 0 for m in mods)

    def _sum(self, mids):
        if not mids:
            return self.alg.zero_module()
        return fdalg.direct_sum([self.registry[m] for m in mids])[0]

    def torsionfree(self, mids, x):
        """Registry id of f_M(x) for M the sum of ``mids``."""
        return self.registry.index(fdalg.torsionfree(self._sum(mids), self.registry[x]))

    def torsionfree_ids(self, mids, x):
        out = fdalg.torsionfree(self._sum(mids), self.registry[x])
        return self.registry.index_all(out)

    # completions ------------------------------------------------------------

    def bongartz_module(self, items):
        """Module ids of B[U]: the Ext-projectives of ^perp(tau M) cap Q^perp outside add M."""
        key = tuple(sorted(items))
        if key in self._bongartz:
            return self._bongartz[key]
        if not self.is_support_tau_rigid(list(key)):
            raise NotSupportTauRigid(f"{key} is not support tau-rigid")
        mods, verts = self.split(key)

        def in_torsion(y):
            ym = self.registry[y]
            return all(ym.dims[v] == 0 for v in verts) and all(self.hom_to_tau(y, m) == 0 for m in mods)

        torsion = [y for y in self.tau_rigid_modules() if in_torsion(y)]
        out = []
        for x in torsion:
            if x in mods:
                continue
            if all(self.hom_to_tau(y, x) == 0 for y in torsion):
                out.append(x)
        if len(out) + len(key) != self.rank:
            raise TheoryViolation(f"Bongartz complement of {key} has {len(out)} summands")
        self._bongartz[key] = tuple(sorted(out))
        return self._bongartz[key]

    def cobongartz_module(self, mods):
        """(N, Q): Ext-projectives of Gen M outside add M, and vertices with e_v M = 0."""
        msum = self._sum(mods)
        n = [x for x in self.tau_rigid_modules()
             if x not in mods and fdalg.in_gen(msum, self.registry[x]) and self.hom_to_tau_sum(mods, x) == 0]
        q = [v for v in range(self.rank) if msum.dims[v] == 0]
        return tuple(sorted(n)), tuple(q)

    def hom_to_tau_sum(self, mods, x):
        return sum(self.hom_to_tau(m, x) for m in mods)

    def left_approximation(self, mods, x):
        """Minimal left add(mods)-approximation of module x as (copies, map)."""
        fld = self.alg.field
        xm = self.registry[x]
        homs = {m: fdalg.hom_space(xm, self.registry[m]) for m in mods}
        ends = {(a, b): fdalg.hom_space(self.registry[a], self.registry[b]) for a in mods for b in mods}
        copies = [(m, k) for m in mods for k in range(homs[m].shape[0])]

        def covers(chosen):
            for j in mods:
                full = homs[j].shape[0]
                if full == 0:
                    continue
                target = homs[j].reshape(full, -1).T
                vecs = [(g @ homs[m][k] % fld.p).ravel() for m, k in chosen for g in ends[m, j]]
                if not vecs or fld.rank(np.array(vecs).T) < full:
                    return False
                if fld.rank(np.hstack([target, np.array(vecs).T])) != full:
                    raise TheoryViolation("composite outside the Hom space")
            return True

        chosen = list(copies)
        for c in sorted(copies, key=lambda c: (-c[0], -c[1])):
            trial = [y for y in chosen if y != c]
            if covers(trial):
                chosen = trial
        if not chosen:
            return [], np.zeros((0, xm.dim), dtype=np.int64)
        _, incl, _ = fdalg.direct_sum([self.registry[m] for m, _ in chosen])
        mu = sum(incl[c] @ homs[m][k] for c, (m, k) in enumerate(chosen)) % fld.p
        return [m for m, _ in chosen], mu

    def exchange_lambda(self, mods):
        """rho on B[M]: each summand maps to ('module', C_i) in case (i) or ('shift', v) in case (ii)."""
        key = tuple(sorted(mods))
        if key in self._exchange:
            return self._exchange[key]
        if not self.is_support_tau_rigid([(m, False) for m in key]):
            raise NotTauRigid(f"{key} is not tau-rigid")
        out = {}
        for b in self.bongartz_module([(m, False) for m in key]):
            bm = self.registry[b]
            copies, mu = self.left_approximation(list(key), b)
            if copies:
                target = fdalg.direct_sum([self.registry[m] for m in copies])[0]
            else:
                target = self.alg.zero_module()
            rank = self.alg.field.rank(mu) if mu.size else 0
            if rank < target.dim:
                coker = fdalg.quotient(target, mu)[0]
                ids = self.registry.index_all(coker)
                if len(ids) != 1:
                    raise TheoryViolation("case (i) cokernel is not indecomposable")
                out[b] = ("module", ids[0])
            else:
                ker = fdalg.kernel(bm, target, mu)[0]
                _, verts, _ = fdalg.projective_cover(ker)
                if len(verts) != 1:
                    raise TheoryViolation("case (ii) kernel does not have a simple top")
                out[b] = ("shift", verts[0])
        n, q = self.cobongartz_module(list(key))
        got_n = sorted(c for kind, c in out.values() if kind == "module")
        got_q = sorted(c for kind, c in out.values() if kind == "shift")
        if tuple(got_n) != n or tuple(got_q) != q:
            raise TheoryViolation("exchange does not hit the co-Bongartz complement")
        self._exchange[key] = out
        return out

    # perpendicular categories ----------------------------------------------

    def perp(self, items):
        """J(U) with generator f_M(B[U]) and its Hom functor to mod Gamma_U."""
        key = tuple(sorted(items))
        if key not in self._perp:
            mods, _ = self.split(key)
            gens = [self.torsionfree(mods, b) for b in self.bongartz_module(key)]
            if len(set(gens)) != len(gens):
                raise TheoryViolation("generator of J(U) is not basic")
            self._perp[key] = Perp(self, key, sorted(gens))
        return self._perp[key]

    def root_id(self, mid):
        """Id of a module of this side in the registry of the outermost algebra."""
        if self.parent is None:
            return mid
        if mid not in self._root:
            side, functor = self.parent
            self._root[mid] = side.root_id(side.registry.index(functor.inverse(self.registry[mid])))
        return self._root[mid]

    def root_item(self, item):
        return self.root_id(item[0]), item[1]

    def perp_key(self, items):
        """Sorted outermost ids of the relative projective generator of J(U)."""
        return tuple(sorted(self.root_id(g) for g in self.perp(items).generator_ids))

    def full_key(self):
        return tuple(sorted(self.root_id(self.projective_id(v)) for v in range(self.rank)))

    # the maps epsilon ---------------------------------------------------------

    def eps_M(self, mods, item):
        mods = list(mods)
        x, shifted = item
        rho = self.exchange_lambda(mods)
        if shifted:
            v = self.vertex(x)
            partner = [b for b, r in rho.items() if r == ("shift", v)]
        elif fdalg.in_gen(self._sum(mods), self.registry[x]):
            partner = [b for b, r in rho.items() if r == ("module", x)]
        else:
            return self.torsionfree(mods, x), False
        if len(partner) != 1:
            raise NotCompatible(f"no exchange partner for {item}")
        return self.torsionfree(mods, partner[0]), True

    def eps_P1(self, verts, item):
        x, shifted = item
        if not shifted:
            return x, False
        proj = [self.projective_id(v) for v in verts]
        return self.torsionfree(proj, x), True

    def eps(self, items, item):
        """The bijection E_U into C(J(U)), realized as items of this side."""
        items = list(items)
        if item in items:
            raise NotCompatible(f"{item} lies in add U")
        if not self.is_support_tau_rigid(items + [item]):
            raise NotCompatible(f"{item} plus U is not support tau-rigid")
        mods, verts = self.split(items)
        if not verts:
            return self.eps_M(mods, item)
        if not mods:
            return self.eps_P1(verts, item)
        mpart = [(m, False) for m in mods]
        outer = self.perp(mpart)
        y1 = self.eps_M(mods, item)
        ptilde = [self.eps_M(mods, (self.projective_id(v), True))[0] for v in verts]
        pprime = [outer.vertex_of(g) for g in ptilde]
        if None in pprime:
            raise TheoryViolation("E_M(P[1]) is not a generator summand of J(M)")
        self._check_gamma_iso(items, outer, pprime)
        y2 = outer.to_gamma(y1)
        y3 = outer.side.eps_P1(pprime, y2)
        return outer.from_gamma(y3)

    def _check_gamma_iso(self, items, outer, pprime):
        """F_M^{-1} carries the generator of J_{Gamma_M}(P'[1]) onto the generator of J(U)."""
        gside = outer.side
        gens = gside.perp([(gside.projective_id(v), True) for v in pprime]).generator_ids
        back = sorted(outer.from_gamma((g, False))[0] for g in gens)
        if back != sorted(self.perp(items).generator_ids):
            raise TheoryViolation("Gamma of P'[1] over Gamma_M does not match Gamma_U")

    def eps_inverse(self, items, target):
        """Brute-force preimage of an item of C(J(U)) under E_U."""
        hits = [x for x in self.indecomposable_items()
                if x not in items and self.is_support_tau_rigid(list(items) + [x]) and self.eps(items, x) == target]
        if len(hits) != 1:
            raise TheoryViolation(f"E_U is not bijective at {target}")
        return hits[0]

    # sequences ---------------------------------------------------------------

    def psi(self, items):
        """Ordered support tau-rigid object to signed tau-exceptional sequence."""
        items = list(items)
        if not items:
            return []
        if not self.is_support_tau_rigid(items):
            raise NotSupportTauRigid(f"{items} is not support tau-rigid")
        last = items[-1]
        if len(items) == 1:
            return [last]
        reduced = [self.eps([last], x) for x in items[:-1]]
        perp = self.perp([last])
        inner = perp.side.psi([perp.to_gamma(y) for y in reduced])
        return [perp.from_gamma(y) for y in inner] + [last]

    def is_signed_exceptional(self, items):
        """Recursive validity of a signed tau-exceptional sequence of this side's items."""
        items = list(items)
        if not items:
            return True
        last = items[-1]
        m, shifted = last
        if shifted:
            if self.vertex(m) is None:
                return False
        elif m not in self.tau_rigid_modules():
            return False
        perp = self.perp([last])
        for x, _ in items[:-1]:
            if not self.in_J([last], x):
                return False
        if len(items) == 1:
            return True
        if perp.rank == 0:
            return False
        inner = [perp.to_gamma(y) for y in items[:-1]]
        return perp.side.is_signed_exceptional(inner)

    def signed_exceptional_sequences(self, length):
        """All signed tau-exceptional sequences of a given length, as items of this side."""
        if length == 0:
            return [[]]
        out = []
        for last in self.indecomposable_items():
            perp = self.perp([last])
            if length > 1 and perp.rank == 0:
                continue
            inner = perp.side.signed_exceptional_sequences(length - 1) if length > 1 else [[]]
            for seq in inner:
                out.append([perp.from_gamma(y) for y in seq] + [last])
        return out


def items_from_pair(side, obj):
    """Items for a SupportTauRigid (module ids, shifted vertices)."""
    return [(m, False) for m in obj.modules] + [(side.projective_id(v), True) for v in obj.shifts]


def h_tilde(side, U, x_ids):
    """H-tilde of the reduction by U applied to presilting x: items of C(J(H_P(U)))."""
    theory = side.theory
    cat = side.cat
    amb = theory.reduction(U)
    x_ids = list(x_ids)
    if not amb.member(tuple(x_ids)) or set(x_ids) & set(U) or not cat.is_presilting(list(U) + x_ids):
        raise NotCompatible(f"{x_ids} is not presilting in the reduction by {U}")
    hmods = [cat.module_id(u) for u in U if not cat.is_shift(u)]
    out = []
    for x in x_ids:
        if amb.is_relative_injective(x):
            b = amb.tilde_omega(x)
            out.append((side.torsionfree(hmods, cat.module_id(b)), True))
        else:
            out.append((side.torsionfree(hmods, cat.module_id(x)), False))
    return out


def c_side_perp_key(side, U):
    """Key of J(H_P(U)) computed from the two-term Bongartz complement of U."""
    cat = side.cat
    hmods = [cat.module_id(u) for u in U if not cat.is_shift(u)]
    return tuple(sorted(side.torsionfree(hmods, cat.module_id(b)) for b in side.theory.bongartz(U)))
