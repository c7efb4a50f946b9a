"""Signed presilting sequences of two-term complexes and the bijection to signed tau-exceptional sequences."""

from itertools import permutations

from .errors import BudgetExceeded, DuplicateEntry, InvalidSequence
from .taured import h_tilde, items_from_pair

DEFAULT_SEQUENCE_CAP = 100000


class SequenceTools:
    """Sequence predicates and maps over a root :class:`~taucluster.taured.TauSide`."""

    def __init__(self, side, cap=DEFAULT_SEQUENCE_CAP):
        self.side = side
        self.cat = side.cat
        self.theory = side.theory
        self.cap = cap

    @staticmethod
    def _distinct(ids):
        if len(set(ids)) != len(ids):
            raise DuplicateEntry(f"repeated entry in {tuple(ids)}")

    def tail(self, ids, i):
        return tuple(sorted(ids[i + 1:]))

    # validity ---------------------------------------------------------------

    def check_recursive(self, ids):
        """The recursive definition, evaluated through nested reductions."""
        ids = list(ids)
        self._distinct(ids)
        for i in range(len(ids) - 1, -1, -1):
            amb = self.theory.reduction(self.tail(ids, i))
            x = ids[i]
            if x in amb.U or not amb.member(x):
                return False
            if amb.is_relative_injective(x):
                # the shift of a relative projective
                if amb.tilde_omega(x) not in amb.proj:
                    return False
            elif self.cat.ext(x, x):
                return False
        return True

    def check_direct_sum(self, ids):
        ids = list(ids)
        self._distinct(ids)
        return self.cat.is_presilting(ids)

    def is_signed_presilting_seq(self, ids):
        a = self.check_recursive(ids)
        b = self.check_direct_sum(ids)
        if a != b:
            raise InvalidSequence(f"checkers disagree on {tuple(ids)}")
        return a

    def is_presilting_seq(self, ids):
        """Signed sequence in which no entry is injective in its reduction."""
        if not self.is_signed_presilting_seq(ids):
            return False
        ids = list(ids)
        return not any(self.theory.reduction(self.tail(ids, i)).is_relative_injective(ids[i]) for i in range(len(ids)))

    # the bijection ----------------------------------------------------------

    def xi(self, ids):
        ids = list(ids)
        if not self.is_signed_presilting_seq(ids):
            raise InvalidSequence(f"{tuple(ids)} is not a signed presilting sequence")
        out = []
        for i in range(len(ids) - 1):
            out.extend(h_tilde(self.side, self.tail(ids, i), [ids[i]]))
        out.extend(items_from_pair(self.side, self.cat.H_P([ids[-1]])))
        return out

    def xi_inverse(self, items):
        """Rebuild a signed presilting sequence from the innermost entry outward."""
        items = list(items)
        if not self.side.is_signed_exceptional(items):
            raise InvalidSequence(f"{items} is not a signed tau-exceptional sequence")
        found = []
        for i in range(len(items) - 1, -1, -1):
            tail = tuple(sorted(found))
            hits = []
            for x in self.theory.indecomposable_presiltings():
                if x in tail or not self.cat.is_presilting(list(tail) + [x]):
                    continue
                image = h_tilde(self.side, tail, [x])[0] if tail else items_from_pair(self.side, self.cat.H_P([x]))[0]
                if image == items[i]:
                    hits.append(x)
            if len(hits) != 1:
                raise InvalidSequence(f"entry {i} has {len(hits)} preimages")
            found.append(hits[0])
        return found[::-1]

    def psi_of_h_p(self, ids):
        """psi applied to the entrywise H_P images."""
        objs = [items_from_pair(self.side, self.cat.H_P([i]))[0] for i in ids]
        return self.side.psi(objs)

    # enumeration ------------------------------------------------------------

    def enumerate(self, length, signed=True):
        """All valid sequences of a given length, ordered lexicographically by catalog ids."""
        if not 1 <= length <= self.cat.nvert:
            raise ValueError(f"length must be between 1 and {self.cat.nvert}")
        out = []
        for u in self.theory.presiltings():
            if len(u) != length:
                continue
            for perm in permutations(u):
                ok = self.is_signed_presilting_seq(perm) if signed else self.is_presilting_seq(perm)
                if ok:
                    out.append(tuple(perm))
                    if len(out) > self.cap:
                        raise BudgetExceeded(f"more than {self.cap} sequences")
        return sorted(out)
