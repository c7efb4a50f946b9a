"""Presilting and silting objects, their completions, exchange, mutation and reduction.

Objects of the two-term category are handled as sorted tuples of distinct
catalog ids from a :class:`~taucluster.twoterm.TwoTermCategory`.
"""

from collections import deque
from itertools import combinations

import numpy as np

from .errors import (
    BudgetExceeded,
    MutationDegenerate,
    NotInReduction,
    NotPresilting,
    NotRelativeInjective,
    NotRelativeProjective,
    TheoryViolation,
)

DEFAULT_SILTING_CAP = 10000


def key(ids):
    ids = tuple(sorted(ids))
    if len(set(ids)) != len(ids):
        raise ValueError(f"object {ids} is not basic")
    return ids


class SiltingTheory:
    """Completions, exchange and enumeration over one two-term category."""

    def __init__(self, cat, cap=DEFAULT_SILTING_CAP):
        self.cat = cat
        self.cap = cap
        self._bongartz = {}
        self._cobongartz = {}
        self._exchange = {}
        self._ambients = {}
        self._siltings = None
        self._edges = None

    @property
    def rank(self):
        return self.cat.nvert

    def is_presilting(self, ids):
        return self.cat.is_presilting(ids)

    def is_silting(self, ids):
        return self.cat.is_silting(ids)

    def _check(self, ids):
        u = key(ids)
        if not self.is_presilting(u):
            raise NotPresilting(f"{u} is not presilting")
        return u

    # completions -----------------------------------------------------------

    def bongartz(self, ids):
        """B[U]: the cocone of a minimal right add U-approximation of the shifted projectives."""
        u = self._check(ids)
        if u not in self._bongartz:
            out = set()
            for s in self.cat.shifts:
                out.update(self.cat.decompose(self.cat.right_approx_cocone(u, s)))
            # summands already in add U are zero in the reduction; drop them
            self._bongartz[u] = tuple(sorted(out - set(u)))
        return self._bongartz[u]

    def cobongartz(self, ids):
        """C[U]: the cone of a minimal left add U-approximation of the stalk projectives."""
        u = self._check(ids)
        if u not in self._cobongartz:
            out = set()
            for s in self.cat.stalks:
                out.update(self.cat.decompose(self.cat.left_approx_cone(u, s)))
            self._cobongartz[u] = tuple(sorted(out - set(u)))
        return self._cobongartz[u]

    def bongartz_completion(self, ids):
        return key(set(ids) | set(self.bongartz(ids)))

    def cobongartz_completion(self, ids):
        return key(set(ids) | set(self.cobongartz(ids)))

    def exchange(self, ids):
        """Triples (b, ubar, c): b in B[U], ubar the domain of its left approximation, c its cone."""
        u = self._check(ids)
        if u not in self._exchange:
            out = []
            for b in self.bongartz(u):
                ubar = self.cat.approx_domain(u, b, right=False)
                cones = self.cat.decompose(self.cat.left_approx_cone(u, b))
                if len(cones) != 1:
                    raise TheoryViolation(f"exchange cone of {b} over {u} is not indecomposable")
                out.append((b, tuple(ubar), cones[0]))
            self._exchange[u] = out
        return self._exchange[u]

    def rho(self, ids):
        return {b: c for b, _, c in self.exchange(ids)}

    # mutation and enumeration ---------------------------------------------

    def mutate(self, silting, i):
        """Replace summand ``i`` of a silting object by the other completion."""
        t = key(silting)
        if not self.is_silting(t):
            raise NotPresilting(f"{t} is not silting")
        rest = tuple(x for x in t if x != i)
        if len(rest) != len(t) - 1:
            raise ValueError(f"{i} is not a summand of {t}")
        b = self.bongartz_completion(rest)
        c = self.cobongartz_completion(rest)
        if b == c:
            raise MutationDegenerate(f"both completions of {rest} agree")
        if t == b:
            return c
        if t == c:
            return b
        raise TheoryViolation(f"{t} is neither completion of {rest}")

    def siltings(self):
        """All silting objects reachable from the stalk projectives, in BFS order."""
        if self._siltings is None:
            start = key(self.cat.stalks)
            seen = {start: 0}
            order = [start]
            edges = []
            queue = deque([start])
            while queue:
                t = queue.popleft()
                for i in t:
                    new = self.mutate(t, i)
                    if new not in seen:
                        if len(seen) >= self.cap:
                            raise BudgetExceeded(f"more than {self.cap} silting objects")
                        seen[new] = len(order)
                        order.append(new)
                        queue.append(new)
                    a, b = seen[t], seen[new]
                    if a < b:
                        edges.append((a, b))
            self._siltings = order
            self._edges = sorted(set(edges))
        return self._siltings

    def mutation_edges(self):
        self.siltings()
        return self._edges

    def presiltings(self):
        """Every basic presilting object, including 0, as summand subsets of siltings."""
        found = set()
        for t in self.siltings():
            for r in range(len(t) + 1):
                found.update(combinations(t, r))
        return sorted(found, key=lambda u: (len(u), u))

    def indecomposable_presiltings(self):
        return sorted({u[0] for u in self.presiltings() if len(u) == 1})

    # reduction --------------------------------------------------------------

    def reduction(self, ids):
        u = self._check(ids)
        if u not in self._ambients:
            self._ambients[u] = ReducedAmbient(self, u)
        return self._ambients[u]


class ReducedAmbient:
    """The reduction by a presilting U: objects E-orthogonal to U on both sides."""

    def __init__(self, theory, u):
        self.theory = theory
        self.cat = theory.cat
        self.U = u
        self.proj = theory.bongartz(u)
        self.inj = theory.cobongartz(u)
        self._rho = theory.rho(u)
        self._rho_inv = {c: b for b, c in self._rho.items()}
        self._member = {}
        overlap = set(self.proj) & set(self.inj)
        if overlap:
            raise TheoryViolation(f"reduction by {u} has projective-injectives {sorted(overlap)}")

    def member(self, x):
        """Membership of a catalog entry or a tuple of entries."""
        if isinstance(x, (tuple, list)):
            return all(self.member(i) for i in x)
        if x not in self._member:
            self._member[x] = all(self.cat.ext(a, x) == 0 and self.cat.ext(x, a) == 0 for a in self.U)
        return self._member[x]

    def members(self):
        return [i for i in range(len(self.cat)) if self.member(i)]

    def quotient_hom_dim(self, x, y):
        """dim of Hom(x, y) modulo maps factoring through add U."""
        if not (self.member(x) and self.member(y)):
            raise NotInReduction(f"{x} or {y} is not in the reduction by {self.U}")
        fld = self.cat.alg.field
        full = self.cat.hom_dim(x, y)
        if full == 0:
            return 0
        vecs = [self.cat.composition(x, u, y).reshape(-1, full) for u in self.U]
        vecs = [v for v in vecs if v.size]
        return full - (fld.rank(np.vstack(vecs)) if vecs else 0)

    def is_relative_projective(self, x):
        return x in self.proj

    def is_relative_injective(self, x):
        return x in self.inj

    def tilde_sigma(self, b):
        if b not in self._rho:
            raise NotRelativeProjective(f"{b} is not a projective of the reduction by {self.U}")
        return self._rho[b]

    def tilde_omega(self, c):
        if c not in self._rho_inv:
            raise NotRelativeInjective(f"{c} is not an injective of the reduction by {self.U}")
        return self._rho_inv[c]
