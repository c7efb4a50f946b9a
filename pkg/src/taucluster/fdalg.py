"""Exact linear algebra over GF(p), finite-dimensional algebras and their modules.

Conventions
-----------
Paths in a quiver presentation are read left to right: ``["a", "b"]`` means
"a, then b". As an algebra element that path is the product ``b * a``, so the
product ``x * y`` of two paths is "y then x". With this choice a left module is
the same thing as a representation of the quiver: an arrow ``a: i -> j`` lies in
``e_j A e_i`` and acts from the space at ``i`` to the space at ``j``.

The projective at a vertex ``v`` is ``P(v) = A e_v`` and the injective is
``I(v) = D(e_v A)``.

A homomorphism ``P(v) -> P(w)`` is right multiplication by an element of
``e_v A e_w``. Maps between direct sums of indecomposable projectives are
therefore stored as matrices of algebra elements: an array of shape
``(rows, cols, dim A)`` where rows index the source summands. Composition
"f then g" is the matrix product ``f @ g``.
"""

import json
from dataclasses import dataclass, field as dc_field

import numpy as np
import sympy
from sympy.polys import galoistools as gt
from sympy.polys.domains import ZZ

from .errors import (
    AlgebraMismatch,
    ArtifactError,
    DecompositionFailed,
    FieldTooSmall,
    NotAdmissible,
    TheoryViolation,
)

DEFAULT_PRIME = 1000003
DEFAULT_LMAX = 30


# ---------------------------------------------------------------------------
# prime field


class PrimeField:
    """Dense matrix arithmetic modulo a prime, on int64 numpy arrays."""

    def __init__(self, p=DEFAULT_PRIME):
        p = int(p)
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        # products of two reduced entries must stay far inside int64
        if p >= 2**31:
            raise ValueError("prime too large for int64 accumulation")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def array(self, a):
        return np.asarray(a, dtype=np.int64) % self.p

    def mul(self, a, b):
        return (a @ b) % self.p

    def rref(self, a):
        """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
        p = self.p
        r_mat = np.array(a, dtype=np.int64) % p
        if r_mat.ndim != 2:
            raise ValueError("rref needs a matrix")
        rows, cols = r_mat.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(r_mat[r:, c])
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                r_mat[[r, k]] = r_mat[[k, r]]
            r_mat[r] = r_mat[r] * self.inv(r_mat[r, c]) % p
            col = r_mat[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                r_mat[hit] = (r_mat[hit] - np.outer(col[hit], r_mat[r])) % p
            pivots.append(c)
            r += 1
        return r_mat[:r], pivots

    def rank(self, a):
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def nullspace(self, a):
        """Columns spanning {x : a x = 0}."""
        a = np.asarray(a, dtype=np.int64)
        cols = a.shape[1]
        if a.shape[0] == 0:
            return np.eye(cols, dtype=np.int64)
        r_mat, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        out = np.zeros((cols, len(free)), dtype=np.int64)
        for k, f in enumerate(free):
            out[f, k] = 1
            for i, pc in enumerate(pivots):
                out[pc, k] = (-r_mat[i, f]) % self.p
        return out

    def colspace(self, a):
        """An independent set of columns spanning the column space of a."""
        a = np.asarray(a, dtype=np.int64)
        if a.size == 0:
            return np.zeros((a.shape[0], 0), dtype=np.int64)
        r_mat, _ = self.rref(a.T)
        return r_mat.T.copy()

    def solve(self, a, b):
        """Some x with a x = b, or None when the system is inconsistent."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        vec = b.ndim == 1
        if vec:
            b = b[:, None]
        n = a.shape[1]
        if a.shape[0] == 0:
            x = np.zeros((n, b.shape[1]), dtype=np.int64)
            return x[:, 0] if vec else x
        r_mat, pivots = self.rref(np.hstack([a, b]))
        if pivots and pivots[-1] >= n:
            return None
        x = np.zeros((n, b.shape[1]), dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = r_mat[i, n:]
        return x[:, 0] if vec else x

    def inverse(self, a):
        a = np.asarray(a, dtype=np.int64)
        n = a.shape[0]
        r_mat, pivots = self.rref(np.hstack([a, np.eye(n, dtype=np.int64)]))
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("singular matrix")
        return r_mat[:n, n:].copy()

    def power(self, a, k):
        out = np.eye(a.shape[0], dtype=np.int64)
        base = a % self.p
        while k:
            if k & 1:
                out = out @ base % self.p
            base = base @ base % self.p
            k >>= 1
        return out

    def is_nilpotent(self, a):
        n = a.shape[0]
        return n == 0 or not self.power(a, n).any()

    def minimal_polynomial(self, a):
        """Monic minimal polynomial of a square matrix, high degree first."""
        n = a.shape[0]
        powers = [np.eye(n, dtype=np.int64).ravel()]
        cur = np.eye(n, dtype=np.int64)
        while True:
            cur = cur @ a % self.p
            basis = np.array(powers).T
            coeffs = self.solve(basis, cur.ravel())
            if coeffs is not None:
                # a^k = sum c_i a^i
                poly = [1] + [int(-c) % self.p for c in coeffs[::-1]]
                return poly
            powers.append(cur.ravel())

    def poly_at(self, poly, a):
        n = a.shape[0]
        out = np.zeros((n, n), dtype=np.int64)
        for c in poly:
            out = (out @ a + int(c) * np.eye(n, dtype=np.int64)) % self.p
        return out


class SpanCoords:
    """Fast coordinates with respect to a fixed set of independent columns."""

    def __init__(self, fld, basis):
        basis = np.asarray(basis, dtype=np.int64)
        self.field = fld
        self.basis = basis
        k = basis.shape[1]
        if k == 0:
            self.rows = []
            self.inv = np.zeros((0, 0), dtype=np.int64)
            return
        _, piv = fld.rref(basis.T)
        if len(piv) != k:
            raise ValueError("columns are not independent")
        self.rows = piv
        self.inv = fld.inverse(basis[piv])

    def __call__(self, x, check=False):
        x = np.asarray(x, dtype=np.int64)
        if not self.rows:
            c = np.zeros((0,) + x.shape[1:], dtype=np.int64)
        else:
            c = self.inv @ x[self.rows] % self.field.p
        if check and not np.array_equal(self.basis @ c % self.field.p, x % self.field.p):
            raise TheoryViolation("vector outside the expected span")
        return c


# ---------------------------------------------------------------------------
# quiver presentations


@dataclass
class QuiverPresentation:
    vertices: list
    arrows: list  # (name, source, target)
    relations: list = dc_field(default_factory=list)  # [[(coeff, [arrow names]), ...], ...]
    prime: int = DEFAULT_PRIME
    name: str = ""

    @classmethod
    def from_dict(cls, data, name=""):
        arrows = [(a["name"], str(a["from"]), str(a["to"])) for a in data.get("arrows", [])]
        rels = []
        for rel in data.get("relations", []):
            rels.append([(int(t["coeff"]), list(t["path"])) for t in rel])
        return cls(
            vertices=[str(v) for v in data["vertices"]],
            arrows=arrows,
            relations=rels,
            prime=int(data.get("prime", DEFAULT_PRIME)),
            name=data.get("name", name),
        )

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh), name=str(path))

    def to_dict(self):
        return {
            "prime": self.prime,
            "vertices": list(self.vertices),
            "arrows": [{"name": a, "from": s, "to": t} for a, s, t in self.arrows],
            "relations": [[{"coeff": c, "path": list(pth)} for c, pth in rel] for rel in self.relations],
        }


def builtin_presentations():
    """The small test corpus, keyed by a short name."""
    return {
        "two-cycle": QuiverPresentation(
            ["1", "2"], [("a", "1", "2"), ("b", "2", "1")],
            [[(1, ["a", "b"])], [(1, ["b", "a"])]], name="two-cycle"),
        "point": QuiverPresentation(["1"], [], name="point"),
        "two-points": QuiverPresentation(["1", "2"], [], name="two-points"),
        "A2": QuiverPresentation(["1", "2"], [("a", "1", "2")], name="A2"),
        "A3": QuiverPresentation(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], name="A3"),
    }


# ---------------------------------------------------------------------------
# algebras


class FDAlgebra:
    """Basic algebra given by structure constants on a Peirce-adapted basis.

    The basis starts with one idempotent per vertex; every other basis element
    lies in the radical and in a single block ``e_u A e_w`` (recorded in
    ``blocks`` as the pair ``(u, w)``).
    """

    def __init__(self, fld, mult, idempotents, blocks, labels, vertex_names, generators=None, paths=None):
        self.field = fld
        self.mult = np.asarray(mult, dtype=np.int64) % fld.p
        self.dim = self.mult.shape[0]
        self.idempotents = list(idempotents)
        self.blocks = [tuple(b) for b in blocks]
        self.labels = list(labels)
        self.vertex_names = list(vertex_names)
        self.nvert = len(self.idempotents)
        self.paths = paths
        if self.dim >= fld.p:
            raise FieldTooSmall(f"p={fld.p} does not exceed dim A={self.dim}")
        idem = set(self.idempotents)
        self.radical_basis = [b for b in range(self.dim) if b not in idem]
        if generators is None:
            generators = self._radical_generators()
        self.generators = list(generators)
        self.proj_basis = [
            sorted((b for b in range(self.dim) if self.blocks[b][1] == v), key=lambda b: (self.blocks[b][0], b))
            for v in range(self.nvert)
        ]
        self.inj_basis = [
            sorted((b for b in range(self.dim) if self.blocks[b][0] == v), key=lambda b: (self.blocks[b][1], b))
            for v in range(self.nvert)
        ]
        self.block_basis = {}
        for b, uw in enumerate(self.blocks):
            self.block_basis.setdefault(uw, []).append(b)
        self._proj = {}
        self._inj = {}
        self._cache = {}

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim}, vertices={self.vertex_names})"

    # elements -------------------------------------------------------------

    def basis_vector(self, b):
        v = np.zeros(self.dim, dtype=np.int64)
        v[b] = 1
        return v

    def product(self, x, y):
        return np.einsum("a,b,abc->c", x, y, self.mult) % self.field.p

    def unit(self):
        u = np.zeros(self.dim, dtype=np.int64)
        u[self.idempotents] = 1
        return u

    def block_of_vector(self, x):
        """The unique block containing a nonzero element, or None."""
        found = {self.blocks[b] for b in np.flatnonzero(x % self.field.p)}
        if len(found) > 1:
            raise TheoryViolation("element is not Peirce-homogeneous")
        return found.pop() if found else None

    def unit_inverse(self, x, v):
        """Inverse of a unit of e_v A e_v."""
        p = self.field.p
        lam = int(x[self.idempotents[v]]) % p
        if lam == 0:
            raise ZeroDivisionError("not a unit")
        li = self.field.inv(lam)
        e = self.basis_vector(self.idempotents[v])
        r = x * li % p
        r[self.idempotents[v]] = 0
        r = (-r) % p
        # (e + n)^{-1} = e - n + n^2 - ...
        out = e.copy()
        term = e.copy()
        for _ in range(self.dim + 1):
            term = self.product(term, r)
            if not term.any():
                break
            out = (out + term) % p
        return out * li % p

    def _radical_generators(self):
        """Radical basis elements whose span covers rad / rad^2."""
        rad = self.radical_basis
        if not rad:
            return []
        sq = self.mult[np.ix_(rad, rad)].reshape(-1, self.dim)
        span = self.field.colspace(sq.T) if sq.any() else np.zeros((self.dim, 0), dtype=np.int64)
        gens = []
        cur = span
        for b in rad:
            cand = np.hstack([cur, self.basis_vector(b)[:, None]])
            if self.field.rank(cand) > cur.shape[1]:
                gens.append(b)
                cur = self.field.colspace(cand)
        return gens

    # checks ---------------------------------------------------------------

    def check_associative(self):
        m = self.mult
        lhs = np.einsum("ijl,lkc->ijkc", m, m) % self.field.p
        rhs = np.einsum("jkl,ilc->ijkc", m, m) % self.field.p
        return bool(np.array_equal(lhs, rhs))

    def check_idempotents(self):
        p = self.field.p
        ok = True
        for u, a in enumerate(self.idempotents):
            for w, b in enumerate(self.idempotents):
                prod = self.mult[a, b]
                want = self.basis_vector(a) if u == w else np.zeros(self.dim, dtype=np.int64)
                ok &= bool(np.array_equal(prod % p, want))
        one = self.unit()
        for b in range(self.dim):
            ok &= bool(np.array_equal(self.product(one, self.basis_vector(b)), self.basis_vector(b)))
            ok &= bool(np.array_equal(self.product(self.basis_vector(b), one), self.basis_vector(b)))
        return ok

    def check_peirce(self):
        for b, (u, w) in enumerate(self.blocks):
            eb = self.basis_vector(b)
            got = self.product(self.product(self.basis_vector(self.idempotents[u]), eb),
                               self.basis_vector(self.idempotents[w]))
            if not np.array_equal(got, eb):
                return False
        return True

    def cartan(self):
        c = np.zeros((self.nvert, self.nvert), dtype=int)
        for u, w in self.blocks:
            c[u, w] += 1
        return c

    # standard modules -----------------------------------------------------

    def projective(self, v):
        if v not in self._proj:
            basis = self.proj_basis[v]
            act = self.mult[:, basis][:, :, basis].transpose(0, 2, 1)  # act[a][k, j] = mult[a, j, k]
            dims = [sum(1 for b in basis if self.blocks[b][0] == u) for u in range(self.nvert)]
            self._proj[v] = Module(self, dims, act)
        return self._proj[v]

    def injective(self, v):
        if v not in self._inj:
            basis = self.inj_basis[v]
            # act(a)[k, j] = coefficient of b_j in b_k * a
            act = self.mult[basis][:, :, basis].transpose(1, 0, 2)
            dims = [sum(1 for b in basis if self.blocks[b][1] == u) for u in range(self.nvert)]
            self._inj[v] = Module(self, dims, act)
        return self._inj[v]

    def simple(self, v):
        dims = [1 if u == v else 0 for u in range(self.nvert)]
        act = np.zeros((self.dim, 1, 1), dtype=np.int64)
        act[self.idempotents[v], 0, 0] = 1
        return Module(self, dims, act)

    def regular(self):
        return direct_sum([self.projective(v) for v in range(self.nvert)])[0]

    def zero_module(self):
        return Module(self, [0] * self.nvert, np.zeros((self.dim, 0, 0), dtype=np.int64))

    # construction ---------------------------------------------------------

    @classmethod
    def from_structure(cls, fld, mult, idempotents, blocks, labels, vertex_names):
        """Normalize a basic split algebra so that non-idempotents span the radical.

        Returns the algebra and the change-of-basis matrix whose columns express
        the new basis in the old one.
        """
        p = fld.p
        mult = np.asarray(mult, dtype=np.int64) % p
        n = mult.shape[0]
        if n >= p:
            raise FieldTooSmall(f"p={p} does not exceed algebra dimension {n}")
        # Dickson: rad = {x : Tr(L_{xy}) = 0 for all y}
        traces = np.einsum("ikk->i", mult) % p
        gram = mult @ traces % p
        rad = fld.nullspace(gram)
        nv = len(idempotents)
        new_cols = [np.eye(n, dtype=np.int64)[:, i] for i in idempotents]
        new_blocks = [(v, v) for v in range(nv)]
        new_labels = [labels[i] for i in idempotents]
        for uw in sorted(set(blocks)):
            idx = [b for b in range(n) if blocks[b] == uw]
            proj = np.zeros((n, rad.shape[1]), dtype=np.int64)
            proj[idx] = rad[idx]
            sub = fld.colspace(proj)
            expect = len(idx) - (1 if uw[0] == uw[1] else 0)
            if sub.shape[1] != expect:
                raise ArtifactError("algebra is not basic with split residue fields")
            # prefer original basis vectors when they already lie in the radical
            picked = []
            cur = np.zeros((n, 0), dtype=np.int64)
            for b in idx:
                e = np.eye(n, dtype=np.int64)[:, b]
                if fld.solve(sub, e) is not None and fld.rank(np.hstack([cur, e[:, None]])) > cur.shape[1]:
                    picked.append((e, labels[b]))
                    cur = np.hstack([cur, e[:, None]])
            for k in range(sub.shape[1]):
                col = sub[:, k]
                if fld.rank(np.hstack([cur, col[:, None]])) > cur.shape[1]:
                    picked.append((col, f"r{uw[0]}{uw[1]}_{len(picked)}"))
                    cur = np.hstack([cur, col[:, None]])
            for col, lab in picked:
                new_cols.append(col)
                new_blocks.append(uw)
                new_labels.append(lab)
        s = np.array(new_cols, dtype=np.int64).T
        s_inv = fld.inverse(s)
        prod = np.einsum("ai,bj,abc->ijc", s, s, mult) % p
        new_mult = np.einsum("ck,ijk->ijc", s_inv, prod) % p
        alg = cls(fld, new_mult, list(range(nv)), new_blocks, new_labels, vertex_names)
        return alg, s


def build_algebra(pres, fld=None, lmax=DEFAULT_LMAX):
    """Path algebra of a quiver modulo admissible relations.

    The basis is found by linear reduction on paths of length < N for growing
    N, stopping at the first N where every path of length N - 1 already lies in
    the truncated ideal. Returns the algebra; ``alg.nilpotency`` records N - 1.
    """
    fld = fld or PrimeField(pres.prime)
    p = fld.p
    vidx = {v: i for i, v in enumerate(pres.vertices)}
    if len(vidx) != len(pres.vertices):
        raise NotAdmissible("duplicate vertex names")
    arrows = []
    aidx = {}
    for name, s, t in pres.arrows:
        if name in aidx or s not in vidx or t not in vidx:
            raise NotAdmissible(f"bad arrow {name}")
        aidx[name] = len(arrows)
        arrows.append((vidx[s], vidx[t]))

    def endpoints(path):
        return arrows[path[0]][0], arrows[path[-1]][1]

    rels = []
    for rel in pres.relations:
        terms = {}
        for coeff, names in rel:
            if any(a not in aidx for a in names):
                raise NotAdmissible(f"unknown arrow in relation {names}")
            path = tuple(aidx[a] for a in names)
            if len(path) < 2:
                raise NotAdmissible("relation term of length < 2")
            for x, y in zip(path, path[1:]):
                if arrows[x][1] != arrows[y][0]:
                    raise NotAdmissible(f"relation path {names} is not composable")
            terms[path] = (terms.get(path, 0) + coeff) % p
        # split into components with fixed endpoints
        by_ends = {}
        for path, c in terms.items():
            if c:
                by_ends.setdefault(endpoints(path), {})[path] = c
        rels.extend(by_ends.values())

    out_arrows = [[a for a, (s, _) in enumerate(arrows) if s == v] for v in range(len(vidx))]

    def paths_of_length(length):
        if length == 0:
            return [("e", v) for v in range(len(vidx))]
        cur = [(a,) for a in range(len(arrows))]
        for _ in range(length - 1):
            cur = [q + (a,) for q in cur for a in out_arrows[arrows[q[-1]][1]]]
        return cur

    def src(q):
        return q[1] if q[0] == "e" else arrows[q[0]][0]

    def tgt(q):
        return q[1] if q[0] == "e" else arrows[q[-1]][1]

    def concat(q, r):
        if tgt(q) != src(r):
            return None
        if q[0] == "e":
            return r
        if r[0] == "e":
            return q
        return q + r

    strata = [paths_of_length(0)]
    for n_trunc in range(2, lmax + 2):
        while len(strata) < n_trunc:
            strata.append(paths_of_length(len(strata)))
        # column order: long paths first so that pivots fall on long paths
        cols = [q for length in range(n_trunc - 1, -1, -1) for q in strata[length]]
        col_of = {q: i for i, q in enumerate(cols)}
        rows = []
        for rel in rels:
            minlen = min(len(q) for q in rel)
            s0, t0 = endpoints(next(iter(rel)))
            for lu in range(0, n_trunc - minlen):
                for u in strata[lu]:
                    if tgt(u) != s0:
                        continue
                    for lv in range(0, n_trunc - minlen - lu):
                        for v in strata[lv]:
                            if src(v) != t0:
                                continue
                            row = np.zeros(len(cols), dtype=np.int64)
                            for q, c in rel.items():
                                full = concat(concat(u, q), v)
                                if full is not None and (full[0] == "e" or len(full) < n_trunc):
                                    row[col_of[full]] = (row[col_of[full]] + c) % p
                            if row.any():
                                rows.append(row)
        if rows:
            red, pivots = fld.rref(np.array(rows))
        else:
            red, pivots = np.zeros((0, len(cols)), dtype=np.int64), []
        pivset = set(pivots)
        top = strata[n_trunc - 1]
        if all(col_of[q] in pivset and _reduces_to_zero(red, pivots, col_of[q]) for q in top):
            break
    else:
        raise NotAdmissible(f"no nilpotency bound up to L_max={lmax}")
    nil = n_trunc - 1
    basis_paths = [q for q in reversed(cols) if col_of[q] not in pivset]
    # idempotents first, then by length
    basis_paths = sorted(basis_paths, key=lambda q: (0 if q[0] == "e" else len(q), _path_sort_key(q)))
    n = len(basis_paths)
    if n >= p:
        raise FieldTooSmall(f"p={p} does not exceed algebra dimension {n}")
    bidx = {q: i for i, q in enumerate(basis_paths)}
    piv_row = {c: i for i, c in enumerate(pivots)}

    def normal_form(q):
        vec = np.zeros(n, dtype=np.int64)
        if q is None or (q[0] != "e" and len(q) >= n_trunc):
            return vec
        c = col_of[q]
        if c not in pivset:
            vec[bidx[q]] = 1
            return vec
        row = red[piv_row[c]]
        for j in np.flatnonzero(row):
            if j != c:
                vec[bidx[cols[j]]] = (vec[bidx[cols[j]]] - row[j]) % p
        return vec

    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, x in enumerate(basis_paths):
        for j, y in enumerate(basis_paths):
            mult[i, j] = normal_form(concat(y, x))
    names = [a for a, _, _ in pres.arrows]
    labels = []
    for q in basis_paths:
        labels.append(f"e{pres.vertices[q[1]]}" if q[0] == "e" else "*".join(names[a] for a in q))
    blocks = [(tgt(q), src(q)) for q in basis_paths]
    idem = [bidx[("e", v)] for v in range(len(vidx))]
    gens = [bidx[(a,)] for a in range(len(arrows)) if (a,) in bidx]
    alg = FDAlgebra(fld, mult, idem, blocks, labels, list(pres.vertices), generators=gens,
                    paths=[() if q[0] == "e" else q for q in basis_paths])
    alg.nilpotency = nil
    alg.presentation = pres
    alg.arrow_index = aidx
    return alg


def _path_sort_key(q):
    return (-1, q[1]) if q[0] == "e" else (0,) + tuple(q)


def _reduces_to_zero(red, pivots, c):
    """True when the pivot row for column c has no other support."""
    i = pivots.index(c)
    row = red[i]
    return int(np.count_nonzero(row)) == 1


# ---------------------------------------------------------------------------
# modules


class Module:
    """A left module given by the action matrix of every algebra basis element.

    The module basis is ordered by vertex: the first ``dims[0]`` coordinates
    span ``e_0 M`` and so on.
    """

    def __init__(self, algebra, dims, act):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.dim = sum(self.dims)
        self.act = np.asarray(act, dtype=np.int64)
        self.offsets = [0]
        for d in self.dims:
            self.offsets.append(self.offsets[-1] + d)

    def __repr__(self):
        return f"Module(dims={self.dims})"

    def block(self, v):
        return slice(self.offsets[v], self.offsets[v + 1])

    def is_zero(self):
        return self.dim == 0

    def check(self):
        """Action respects the structure constants and the idempotent blocks."""
        alg = self.algebra
        p = alg.field.p
        lhs = np.einsum("iab,jbc->ijac", self.act, self.act) % p
        rhs = np.einsum("ijk,kac->ijac", alg.mult, self.act) % p
        if not np.array_equal(lhs, rhs):
            return False
        for v, e in enumerate(alg.idempotents):
            want = np.zeros((self.dim, self.dim), dtype=np.int64)
            s = self.block(v)
            want[s, s] = np.eye(self.dims[v], dtype=np.int64)
            if not np.array_equal(self.act[e] % p, want):
                return False
        return True

    @classmethod
    def from_representation(cls, algebra, dims, arrow_maps):
        """Module from a quiver representation: one matrix per arrow name.

        ``arrow_maps[name]`` has shape (dim at target, dim at source).
        """
        if algebra.paths is None:
            raise AlgebraMismatch("representation input needs a path algebra")
        p = algebra.field.p
        dims = list(dims)
        off = np.concatenate([[0], np.cumsum(dims)]).astype(int)
        d = int(off[-1])
        pres = algebra.presentation
        arrows = {name: (pres.vertices.index(s), pres.vertices.index(t)) for name, s, t in pres.arrows}
        names = [a for a, _, _ in pres.arrows]
        mats = {}
        for name, (s, t) in arrows.items():
            m = np.asarray(arrow_maps.get(name, np.zeros((dims[t], dims[s]))), dtype=np.int64) % p
            if m.shape != (dims[t], dims[s]):
                raise ValueError(f"arrow {name} needs shape {(dims[t], dims[s])}")
            big = np.zeros((d, d), dtype=np.int64)
            big[off[t]:off[t + 1], off[s]:off[s + 1]] = m
            mats[name] = big

        def path_matrix(path):
            out = np.eye(d, dtype=np.int64)
            for a in path:
                out = mats[names[a]] @ out % p
            return out

        for rel in pres.relations:
            total = np.zeros((d, d), dtype=np.int64)
            for coeff, pth in rel:
                total = (total + coeff * path_matrix([algebra.arrow_index[a] for a in pth])) % p
            if total.any():
                raise ValueError("representation violates a relation")
        act = np.zeros((algebra.dim, d, d), dtype=np.int64)
        for b, path in enumerate(algebra.paths):
            if not path:
                v = algebra.blocks[b][0]
                act[b, off[v]:off[v + 1], off[v]:off[v + 1]] = np.eye(dims[v], dtype=np.int64)
            else:
                act[b] = path_matrix(path)
        return cls(algebra, dims, act)


def _check_same(m, n):
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("modules over different algebras")


def direct_sum(mods):
    """Direct sum with the vertex-ordered basis; returns (sum, inclusions, projections)."""
    if not mods:
        raise ValueError("empty direct sum needs an algebra; use zero_module")
    alg = mods[0].algebra
    for m in mods:
        _check_same(mods[0], m)
    dims = [sum(m.dims[v] for m in mods) for v in range(alg.nvert)]
    d = sum(dims)
    perm = []  # perm[k] = (summand, local index) for global index k
    for v in range(alg.nvert):
        for i, m in enumerate(mods):
            for j in range(m.offsets[v], m.offsets[v + 1]):
                perm.append((i, j))
    incl = [np.zeros((d, m.dim), dtype=np.int64) for m in mods]
    for k, (i, j) in enumerate(perm):
        incl[i][k, j] = 1
    act = np.zeros((alg.dim, d, d), dtype=np.int64)
    for i, m in enumerate(mods):
        act += np.einsum("ka,nab,lb->nkl", incl[i], m.act, incl[i])
    proj = [e.T.copy() for e in incl]
    return Module(alg, dims, act % alg.field.p), incl, proj


def hom_space(m, n):
    """Basis of Hom_A(m, n) as an array of shape (k, dim n, dim m)."""
    _check_same(m, n)
    alg = m.algebra
    fld = alg.field
    p = fld.p
    sizes = [n.dims[v] * m.dims[v] for v in range(alg.nvert)]
    start = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    total = int(start[-1])
    if total == 0:
        return np.zeros((0, n.dim, m.dim), dtype=np.int64)
    eqs = []
    for g in alg.generators:
        u, w = alg.blocks[g]
        rows = n.dims[u] * m.dims[w]
        if rows == 0:
            continue
        am = m.act[g][m.block(u), m.block(w)]
        an = n.act[g][n.block(u), n.block(w)]
        eq = np.zeros((rows, total), dtype=np.int64)
        if sizes[u]:
            eq[:, start[u]:start[u + 1]] += np.kron(np.eye(n.dims[u], dtype=np.int64), am.T)
        if sizes[w]:
            eq[:, start[w]:start[w + 1]] -= np.kron(an, np.eye(m.dims[w], dtype=np.int64))
        eqs.append(eq % p)
    if eqs:
        ns = fld.nullspace(np.vstack(eqs))
    else:
        ns = np.eye(total, dtype=np.int64)
    out = np.zeros((ns.shape[1], n.dim, m.dim), dtype=np.int64)
    for v in range(alg.nvert):
        if sizes[v]:
            blk = ns[start[v]:start[v + 1]].T.reshape(-1, n.dims[v], m.dims[v])
            out[:, n.block(v), m.block(v)] = blk
    return out


def hom_dim(m, n):
    return hom_space(m, n).shape[0]


def is_hom(m, n, f):
    p = m.algebra.field.p
    lhs = np.einsum("ab,nbc->nac", f, m.act) % p
    rhs = np.einsum("nab,bc->nac", n.act, f) % p
    return bool(np.array_equal(lhs, rhs))


def submodule(m, cols):
    """Submodule spanned by invariant columns; returns (sub, inclusion)."""
    alg = m.algebra
    fld = alg.field
    p = fld.p
    cols = np.asarray(cols, dtype=np.int64).reshape(m.dim, -1)
    parts = []
    dims = []
    for v in range(alg.nvert):
        ev = m.act[alg.idempotents[v]] @ cols % p
        basis = fld.colspace(ev)
        parts.append(basis)
        dims.append(basis.shape[1])
    incl = np.hstack(parts) if parts else np.zeros((m.dim, 0), dtype=np.int64)
    if sum(dims) == 0:
        return alg.zero_module(), np.zeros((m.dim, 0), dtype=np.int64)
    coords = SpanCoords(fld, incl)
    img = np.einsum("nab,bc->nac", m.act, incl) % p  # (n, d, k)
    act = np.stack([coords(img[i]) for i in range(alg.dim)])
    return Module(alg, dims, act), incl


def quotient(m, cols):
    """Quotient by the submodule spanned by invariant columns; returns (quot, projection)."""
    alg = m.algebra
    fld = alg.field
    p = fld.p
    sub, incl = submodule(m, cols)
    comp = []
    dims = []
    for v in range(alg.nvert):
        s = m.block(v)
        wv = incl[s][:, sub.block(v)]
        k = wv.shape[1]
        local = np.hstack([wv, np.eye(m.dims[v], dtype=np.int64)])
        _, piv = fld.rref(local)
        chosen = [c - k for c in piv if c >= k]
        dims.append(len(chosen))
        for c in chosen:
            vec = np.zeros(m.dim, dtype=np.int64)
            vec[m.offsets[v] + c] = 1
            comp.append(vec)
    if not comp:
        return alg.zero_module(), np.zeros((0, m.dim), dtype=np.int64)
    cmat = np.array(comp, dtype=np.int64).T
    full = np.hstack([cmat, incl])
    inv = fld.inverse(full)
    proj = inv[: cmat.shape[1]]
    act = np.einsum("ab,nbc,cd->nad", proj, m.act, cmat) % p
    return Module(alg, dims, act), proj


def kernel(m, n, f):
    """Kernel of f: m -> n as (module, inclusion)."""
    return submodule(m, m.algebra.field.nullspace(f))


def image(m, n, f):
    return submodule(n, f)


def cokernel(m, n, f):
    return quotient(n, f)


def radical_submodule(m):
    alg = m.algebra
    if not alg.radical_basis or m.dim == 0:
        return np.zeros((m.dim, 0), dtype=np.int64)
    return np.hstack([m.act[b] for b in alg.radical_basis])


def top_generators(m):
    """Per vertex, vectors of e_v M lifting a basis of the top."""
    alg = m.algebra
    fld = alg.field
    rad = fld.colspace(radical_submodule(m)) if m.dim else np.zeros((0, 0), dtype=np.int64)
    gens = []
    for v in range(alg.nvert):
        s = m.block(v)
        rv = rad[s] if rad.size else np.zeros((m.dims[v], 0), dtype=np.int64)
        rv = fld.colspace(rv) if rv.size else np.zeros((m.dims[v], 0), dtype=np.int64)
        k = rv.shape[1]
        local = np.hstack([rv, np.eye(m.dims[v], dtype=np.int64)])
        _, piv = fld.rref(local) if local.size else (None, [])
        for c in piv:
            if c >= k:
                vec = np.zeros(m.dim, dtype=np.int64)
                vec[m.offsets[v] + c - k] = 1
                gens.append((v, vec))
    return gens


def top_vector(m):
    return [sum(1 for v, _ in top_generators(m) if v == u) for u in range(m.algebra.nvert)]


def _map_from_projective(m, v, gen):
    """The map P(v) -> M sending e_v to gen."""
    alg = m.algebra
    return np.stack([m.act[b] @ gen for b in alg.proj_basis[v]], axis=1) % alg.field.p


def projective_cover(m):
    """(P, vertices, cover map) with P = sum of P(v) over the top of m."""
    alg = m.algebra
    gens = top_generators(m)
    verts = [v for v, _ in gens]
    if not gens:
        return alg.zero_module(), [], np.zeros((m.dim, 0), dtype=np.int64)
    big, incl, proj = direct_sum([alg.projective(v) for v in verts])
    cover = sum(_map_from_projective(m, v, g) @ proj[i] for i, (v, g) in enumerate(gens)) % alg.field.p
    return big, verts, cover


@dataclass
class Presentation:
    """A minimal projective presentation P1 -> P0 -> M -> 0."""

    src: tuple  # vertices of P1
    tgt: tuple  # vertices of P0
    elems: np.ndarray  # (len src, len tgt, dim A) algebra elements
    cover: np.ndarray  # P0 -> M


def proj_sum(alg, verts):
    if not verts:
        return alg.zero_module(), [], []
    return direct_sum([alg.projective(v) for v in verts])


def elements_to_map(alg, src, tgt, elems):
    """Module map between sums of projectives from a matrix of algebra elements."""
    p = alg.field.p
    psrc, isrc, _ = proj_sum(alg, src)
    ptgt, itgt, _ = proj_sum(alg, tgt)
    out = np.zeros((ptgt.dim, psrc.dim), dtype=np.int64)
    for i, v in enumerate(src):
        bs = alg.proj_basis[v]
        for j, w in enumerate(tgt):
            x = elems[i, j]
            if not x.any():
                continue
            bt = alg.proj_basis[w]
            # basis element b of P(v) goes to b * x in P(w)
            blk = np.einsum("a,bac->cb", x, alg.mult[bs][:, :, bt]) % p
            out += itgt[j] @ blk @ isrc[i].T
    return psrc, ptgt, out % p


def map_to_elements(alg, src, tgt, f):
    """Inverse of elements_to_map."""
    _, isrc, _ = proj_sum(alg, src)
    _, _, ptgt = proj_sum(alg, tgt)
    elems = np.zeros((len(src), len(tgt), alg.dim), dtype=np.int64)
    for i, v in enumerate(src):
        col = alg.proj_basis[v].index(alg.idempotents[v])
        img = f @ isrc[i][:, col]
        for j, w in enumerate(tgt):
            comp = ptgt[j] @ img
            for k, b in enumerate(alg.proj_basis[w]):
                elems[i, j, b] = comp[k]
    return elems % alg.field.p


def minimal_presentation(m):
    alg = m.algebra
    p0, tgt, cover = projective_cover(m)
    if not tgt:
        return Presentation((), (), np.zeros((0, 0, alg.dim), dtype=np.int64), cover)
    k, kincl = kernel(p0, m, cover)
    if k.dim == 0:
        return Presentation((), tuple(tgt), np.zeros((0, len(tgt), alg.dim), dtype=np.int64), cover)
    _, src, kcover = projective_cover(k)
    d = kincl @ kcover % alg.field.p
    elems = map_to_elements(alg, src, tgt, d)
    return Presentation(tuple(src), tuple(tgt), elems, cover)


def nakayama_map(alg, src, tgt, elems):
    """nu applied to a map between projectives, as a map of injective sums."""
    p = alg.field.p
    isrc_mod, isrc, _ = _inj_sum(alg, src)
    itgt_mod, itgt, _ = _inj_sum(alg, tgt)
    out = np.zeros((itgt_mod.dim, isrc_mod.dim), dtype=np.int64)
    for i, v in enumerate(src):
        bl = alg.inj_basis[v]
        for j, w in enumerate(tgt):
            x = elems[i, j]
            if not x.any():
                continue
            bk = alg.inj_basis[w]
            # L_x : e_w A -> e_v A, z -> x z ; L[l, k] = sum_a x_a mult[a, k, l]
            lmat = np.einsum("a,akl->lk", x, alg.mult[:, bk][:, :, bl]) % p
            out += itgt[j] @ lmat.T @ isrc[i].T
    return isrc_mod, itgt_mod, out % p


def _inj_sum(alg, verts):
    if not verts:
        return alg.zero_module(), [], []
    return direct_sum([alg.injective(v) for v in verts])


def tau(m):
    """Auslander-Reiten translate: kernel of nu applied to a minimal presentation."""
    alg = m.algebra
    if m.dim == 0:
        return alg.zero_module()
    pres = minimal_presentation(m)
    if not pres.src:
        return alg.zero_module()
    isrc, itgt, nu = nakayama_map(alg, pres.src, pres.tgt, pres.elems)
    return kernel(isrc, itgt, nu)[0]


def trace(m, x):
    """Column basis of the trace of m in x (sum of images of all maps m -> x)."""
    fld = x.algebra.field
    homs = hom_space(m, x)
    if homs.shape[0] == 0:
        return np.zeros((x.dim, 0), dtype=np.int64)
    return fld.colspace(np.hstack(list(homs)))


def trace_and_torsionfree(m, x):
    """(trace columns in x, f_m(x), projection x -> f_m(x)).

    The quotient is iterated until no nonzero map from m remains; for a
    tau-rigid m one step already suffices.
    """
    fld = x.algebra.field
    total = np.eye(x.dim, dtype=np.int64)
    cur = x
    while True:
        t = trace(m, cur)
        if t.shape[1] == 0:
            break
        cur, proj = quotient(cur, t)
        total = proj @ total % fld.p
    kernel_cols = fld.nullspace(total) if x.dim else np.zeros((0, 0), dtype=np.int64)
    return kernel_cols, cur, total


def torsionfree(m, x):
    return trace_and_torsionfree(m, x)[1]


def in_gen(m, x):
    """x is a quotient of a sum of copies of m."""
    return trace(m, x).shape[1] == x.dim


# ---------------------------------------------------------------------------
# decomposition and isomorphism


def _radical_rank(fld, ends, dim):
    """Dimension of End / rad via the trace form on the module."""
    k = len(ends)
    if k >= fld.p or dim >= fld.p:
        raise FieldTooSmall(f"p={fld.p} does not exceed endomorphism dimension {k}")
    flat = ends.reshape(k, -1)
    # tr(E_i E_j) = sum_ab E_i[a,b] E_j[b,a]
    gram = flat @ ends.transpose(0, 2, 1).reshape(k, -1).T % fld.p
    return fld.rank(gram)


def decompose(m, rng=None, trials=64):
    """Indecomposable summands of m (as modules), by Fitting splitting."""
    fld = m.algebra.field
    p = fld.p
    if rng is None:
        rng = np.random.default_rng(0)
    out = []
    stack = [m]
    while stack:
        x = stack.pop()
        if x.dim == 0:
            continue
        ends = hom_space(x, x)
        if ends.shape[0] == 1:
            out.append(x)
            continue
        s = _radical_rank(fld, ends, x.dim)
        if s == 1:
            out.append(x)
            continue
        pieces = None
        local = False
        for _ in range(trials):
            coeffs = rng.integers(0, p, size=ends.shape[0])
            phi = np.einsum("k,kab->ab", coeffs, ends) % p
            mp = fld.minimal_polynomial(phi)
            _, factors = gt.gf_factor([ZZ(c) for c in mp], p, ZZ)
            if len(factors) >= 2:
                g, e = factors[0]
                psi = fld.power(fld.poly_at([int(c) for c in g], phi), e)
                ker_cols = fld.nullspace(psi)
                img_cols = fld.colspace(psi)
                pieces = [submodule(x, ker_cols)[0], submodule(x, img_cols)[0]]
                break
            g, _ = factors[0]
            if len(g) - 1 == s:
                local = True
                break
        if pieces:
            stack.extend(pieces)
        elif local:
            out.append(x)
        else:
            raise DecompositionFailed("no splitting endomorphism found")
    return out


def is_isomorphic_indecomposable(m, n):
    """Certificate for indecomposables: some composite m -> n -> m is invertible."""
    if m.dims != n.dims:
        return False
    if m.dim == 0:
        return True
    fld = m.algebra.field
    fwd = hom_space(m, n)
    if fwd.shape[0] == 0:
        return False
    back = hom_space(n, m)
    for f in fwd:
        for g in back:
            if not fld.is_nilpotent(g @ f % fld.p):
                return True
    return False


def is_isomorphic(m, n, rng=None):
    _check_same(m, n)
    if m.dims != n.dims:
        return False
    left = decompose(m, rng)
    right = decompose(n, rng)
    if len(left) != len(right):
        return False
    unused = list(right)
    for x in left:
        for i, y in enumerate(unused):
            if is_isomorphic_indecomposable(x, y):
                del unused[i]
                break
        else:
            return False
    return True


class ModuleRegistry:
    """Dense integer ids for isomorphism classes of indecomposable modules."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.modules = []
        self._by_dims = {}

    def __len__(self):
        return len(self.modules)

    def __getitem__(self, i):
        return self.modules[i]

    def find(self, m):
        for i in self._by_dims.get(m.dims, []):
            if is_isomorphic_indecomposable(self.modules[i], m):
                return i
        return None

    def index(self, m):
        """Id of an indecomposable module, registering it if new."""
        i = self.find(m)
        if i is None:
            i = len(self.modules)
            self.modules.append(m)
            self._by_dims.setdefault(m.dims, []).append(i)
        return i

    def index_all(self, m, rng=None):
        """Sorted ids of the indecomposable summands of m."""
        return sorted(self.index(x) for x in decompose(m, rng))


# ---------------------------------------------------------------------------
# endomorphism algebras and the Hom(G, -) transport


class HomFunctor:
    """X -> Hom(G, X) from mod A to modules over End(G)^op, optionally modulo an ideal.

    ``G`` is given by its indecomposable summands, which must be pairwise
    non-isomorphic. With ``modulo`` the ideal of maps factoring through add of
    those modules is divided out; summands in that add disappear from the
    quotient. Without ``modulo``, ``inverse`` realizes Y -> G (x) Y as the
    cokernel of the lifted projective presentation of Y.
    """

    def __init__(self, summands, modulo=()):
        if not summands:
            raise ValueError("need at least one summand")
        base = summands[0].algebra
        fld = base.field
        p = fld.p
        self.base = base
        self.summands = list(summands)
        self.modulo = list(modulo)
        r = len(summands)
        homs = {(i, j): hom_space(summands[i], summands[j]) for i in range(r) for j in range(r)}
        ideal = {}
        for i in range(r):
            for j in range(r):
                gens = []
                for nmod in self.modulo:
                    into = hom_space(summands[i], nmod)
                    outof = hom_space(nmod, summands[j])
                    for g in into:
                        for h in outof:
                            gens.append((h @ g % p).ravel())
                mat = np.array(gens).T if gens else np.zeros((summands[j].dim * summands[i].dim, 0), dtype=np.int64)
                ideal[i, j] = fld.colspace(mat) if mat.size else mat
        kept = []
        for i in range(r):
            ident = np.eye(summands[i].dim, dtype=np.int64).ravel()
            if ideal[i, i].shape[1] == 0 or fld.solve(ideal[i, i], ident) is None:
                kept.append(i)
        self.kept = kept
        # quotient bases per block, identity first on the diagonal
        old = []  # (i, j, matrix)
        self._coords = {}
        for a, i in enumerate(kept):
            for b, j in enumerate(kept):
                shape = (summands[j].dim, summands[i].dim)
                chosen = []
                cur = ideal[i, j]
                cands = list(homs[i, j])
                if i == j:
                    cands = [np.eye(summands[i].dim, dtype=np.int64)] + cands
                for h in cands:
                    col = h.ravel()[:, None]
                    if fld.rank(np.hstack([cur, col])) > cur.shape[1]:
                        chosen.append(h % p)
                        cur = np.hstack([cur, col])
                for h in chosen:
                    old.append((a, b, h))
                full = np.hstack([np.array([h.ravel() for h in chosen]).T.reshape(-1, len(chosen)),
                                  ideal[i, j]]) if chosen else ideal[i, j]
                self._coords[a, b] = (len(chosen), SpanCoords(fld, full) if full.size else None, shape)
        self._old = old
        pos = {}
        for k, (a, b, _) in enumerate(old):
            pos.setdefault((a, b), []).append(k)
        self._pos = pos
        n = len(old)
        mult = np.zeros((n, n, n), dtype=np.int64)
        for x, (a, b, f) in enumerate(old):
            for y, (c, d, g) in enumerate(old):
                if b != c:
                    continue
                # product in End^op: f * g = g o f
                comp = g @ f % p
                mult[x, y, pos[a, d]] = self._block_coords(a, d, comp)
        idem = [pos[a, a][0] for a in range(len(kept))]
        blocks = [(a, b) for a, b, _ in old]
        labels = [f"h{a}{b}_{k}" for k, (a, b, _) in enumerate(old)]
        names = [f"G{i}" for i in kept]
        self.algebra, self.change = FDAlgebra.from_structure(fld, mult, idem, blocks, labels, names)

    def _block_coords(self, a, b, mat):
        k, coords, _ = self._coords[a, b]
        if coords is None:
            return np.zeros(0, dtype=np.int64)
        return coords(mat.ravel(), check=True)[:k]

    def element_to_map(self, x):
        """A representative A-map G_i -> G_j for a Gamma element in block (i, j)."""
        p = self.base.field.p
        oldc = self.change @ x % p
        blk = self.algebra.block_of_vector(x)
        if blk is None:
            return None
        a, b = blk
        i, j = self.kept[a], self.kept[b]
        out = np.zeros((self.summands[j].dim, self.summands[i].dim), dtype=np.int64)
        for k in self._pos[a, b]:
            out = (out + oldc[k] * self._old[k][2]) % p
        return out

    def apply(self, x):
        """Hom(G, x) as a module over the endomorphism algebra."""
        fld = self.base.field
        p = fld.p
        gam = self.algebra
        bases = [hom_space(self.summands[i], x) for i in self.kept]
        dims = [b.shape[0] for b in bases]
        off = np.concatenate([[0], np.cumsum(dims)]).astype(int)
        d = int(off[-1])
        coords = [SpanCoords(fld, b.reshape(b.shape[0], -1).T) if b.shape[0] else None for b in bases]
        act_old = np.zeros((len(self._old), d, d), dtype=np.int64)
        for k, (a, b, f) in enumerate(self._old):
            if not dims[a] or not dims[b]:
                continue
            # f in block (a, b) sends phi in Hom(G_b, x) to phi o f in Hom(G_a, x)
            imgs = np.stack([(phi @ f % p).ravel() for phi in bases[b]], axis=1)
            act_old[k, off[a]:off[a + 1], off[b]:off[b + 1]] = coords[a](imgs, check=True)
        act = np.einsum("kn,kab->nab", self.change, act_old) % p
        return Module(gam, dims, act)

    def inverse(self, y):
        """The A-module G (x) y, computed as a cokernel of maps between summands of G."""
        if self.modulo:
            raise ValueError("inverse transport needs G to be a projective generator without an ideal")
        if y.algebra is not self.algebra:
            raise AlgebraMismatch("module is not over this endomorphism algebra")
        p = self.base.field.p
        if y.dim == 0:
            return self.base.zero_module()
        pres = minimal_presentation(y)
        tgt_mods = [self.summands[self.kept[w]] for w in pres.tgt]
        big_t, inc_t, _ = direct_sum(tgt_mods)
        if not pres.src:
            return big_t
        src_mods = [self.summands[self.kept[v]] for v in pres.src]
        big_s, inc_s, _ = direct_sum(src_mods)
        dmat = np.zeros((big_t.dim, big_s.dim), dtype=np.int64)
        for i in range(len(pres.src)):
            for j in range(len(pres.tgt)):
                x = pres.elems[i, j]
                if not x.any():
                    continue
                phi = self.element_to_map(x)
                dmat = (dmat + inc_t[j] @ phi @ inc_s[i].T) % p
        return quotient(big_t, dmat)[0]


def endomorphism_algebra(summands, modulo=()):
    """End(G)^op (optionally modulo maps through add of ``modulo``) with its Hom functor."""
    functor = HomFunctor(summands, modulo)
    return functor.algebra, functor


def projective_vertex(m):
    """The vertex v with m isomorphic to P(v), or None."""
    if m.dim == 0:
        return None
    tv = top_vector(m)
    if sum(tv) != 1:
        return None
    v = tv.index(1)
    return v if m.dims == m.algebra.projective(v).dims and minimal_presentation(m).src == () else None
