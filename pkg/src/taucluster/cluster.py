"""Finite categories, the two tau-cluster morphism categories and the functor between them."""

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations

from .errors import FunctorLawViolation, NotDiscreteFibration
from .taured import c_side_perp_key, h_tilde, items_from_pair


class FiniteCategory:
    """Objects, morphisms (dom, cod, label) and a full composition table.

    ``compose[(g, f)]`` is the index of g after f, defined when cod f = dom g.
    """

    def __init__(self, name=""):
        self.name = name
        self.objects = []
        self._obj_index = {}
        self.morphisms = []
        self._mor_index = {}
        self.identity = {}
        self.compose = {}
        self._out = {}

    def add_object(self, obj):
        if obj not in self._obj_index:
            self._obj_index[obj] = len(self.objects)
            self.objects.append(obj)
            self._out[obj] = []
        return obj

    def add_morphism(self, dom, cod, label, identity=False):
        key = (dom, label)
        if key in self._mor_index:
            i = self._mor_index[key]
            if self.morphisms[i][1] != cod:
                raise ValueError(f"morphism {label} from {dom} has two codomains")
            return i
        i = len(self.morphisms)
        self.morphisms.append((dom, cod, label))
        self._mor_index[key] = i
        self._out[dom].append(i)
        if identity:
            self.identity[dom] = i
        return i

    def find(self, dom, label):
        return self._mor_index.get((dom, label))

    def dom(self, f):
        return self.morphisms[f][0]

    def cod(self, f):
        return self.morphisms[f][1]

    def label(self, f):
        return self.morphisms[f][2]

    def out(self, obj):
        return list(self._out[obj])

    def hom(self, a, b):
        return [f for f in self._out[a] if self.cod(f) == b]

    def composable_pairs(self):
        for f in range(len(self.morphisms)):
            for g in self._out[self.cod(f)]:
                yield g, f

    def check_axioms(self):
        """Violations of closure, identities and associativity (empty when it is a category)."""
        bad = []
        for g, f in self.composable_pairs():
            h = self.compose.get((g, f))
            if h is None:
                bad.append(("missing composite", g, f))
            elif self.dom(h) != self.dom(f) or self.cod(h) != self.cod(g):
                bad.append(("composite has wrong ends", g, f))
        for obj in self.objects:
            e = self.identity.get(obj)
            if e is None:
                bad.append(("missing identity", obj))
                continue
            for f in self._out[obj]:
                if self.compose.get((f, e)) != f:
                    bad.append(("right identity", obj, f))
        for f in range(len(self.morphisms)):
            e = self.identity.get(self.cod(f))
            if e is not None and self.compose.get((e, f)) != f:
                bad.append(("left identity", f))
        for g, f in self.composable_pairs():
            for h in self._out[self.cod(g)]:
                left = self.compose.get((h, self.compose.get((g, f))))
                right = self.compose.get((self.compose.get((h, g)), f))
                if left != right:
                    bad.append(("associativity", h, g, f))
        return bad

    def to_dict(self, obj_name=str, label_name=str):
        names = {obj: obj_name(obj) for obj in self.objects}
        return {
            "objects": sorted(names.values()),
            "morphisms": sorted(
                [{"dom": names[d], "cod": names[c], "label": label_name(lab)} for d, c, lab in self.morphisms],
                key=lambda m: (m["dom"], m["cod"], m["label"]),
            ),
        }

    def to_dot(self, obj_name=str, label_name=str):
        lines = [f'digraph "{self.name}" {{']
        for n in sorted(obj_name(o) for o in self.objects):
            lines.append(f'  "{n}";')
        edges = sorted(
            (obj_name(d), obj_name(c), label_name(lab))
            for i, (d, c, lab) in enumerate(self.morphisms)
            if self.identity.get(d) != i
        )
        for d, c, lab in edges:
            lines.append(f'  "{d}" -> "{c}" [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class FunctorData:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: dict
    mor_map: list

    def check_laws(self):
        s, t = self.source, self.target
        bad = []
        for f, (d, c, _) in enumerate(s.morphisms):
            g = self.mor_map[f]
            if t.dom(g) != self.obj_map[d] or t.cod(g) != self.obj_map[c]:
                bad.append(("ends", f))
        for obj, e in s.identity.items():
            if self.mor_map[e] != t.identity.get(self.obj_map[obj]):
                bad.append(("identity", obj))
        for (g, f), h in s.compose.items():
            if t.compose.get((self.mor_map[g], self.mor_map[f])) != self.mor_map[h]:
                bad.append(("composition", g, f))
        return bad


# ---------------------------------------------------------------------------
# the category on the two-term side


def build_M_C(theory):
    """Objects: basic presilting U. Morphisms: h_V from U to U + V."""
    cat = FiniteCategory("M(C)")
    pres = theory.presiltings()
    preset = set(pres)
    for u in pres:
        cat.add_object(u)
    for u in pres:
        for w in pres:
            if set(u) <= set(w):
                v = tuple(sorted(set(w) - set(u)))
                cat.add_morphism(u, w, v, identity=not v)
    for g, f in list(cat.composable_pairs()):
        u = cat.dom(f)
        label = tuple(sorted(set(cat.label(f)) | set(cat.label(g))))
        h = cat.find(u, label)
        assert tuple(sorted(set(u) | set(label))) in preset
        cat.compose[g, f] = h
    return cat


def is_irreducible(cat, f):
    return len(cat.label(f)) == 1


def factorizations(cat, f):
    """Chains of irreducible morphisms (first applied first) composing to f."""
    u = cat.dom(f)
    label = cat.label(f)
    out = []
    for order in permutations(label):
        chain = []
        cur = u
        ok = True
        for x in order:
            m = cat.find(cur, (x,))
            if m is None:
                ok = False
                break
            chain.append(m)
            cur = cat.cod(m)
        if not ok:
            continue
        total = cat.identity[u]
        for m in chain:
            total = cat.compose[m, total]
        if total == f:
            out.append(chain)
    return out


# ---------------------------------------------------------------------------
# the category on the module side


class LambdaCategory:
    """M(Lambda) built by exploring perpendicular categories from mod Lambda."""

    def __init__(self, side):
        self.side = side
        self.cat = FiniteCategory("M(Lambda)")
        self.ambients = {}  # key -> TauSide realizing the category (None for 0)
        self._objects_of = {}  # (key, label) -> list of items of the ambient
        self._build()

    def _support_tau_rigid(self, amb):
        """Basic support tau-rigid objects of C(amb), as item lists."""
        theory = amb.theory
        out = []
        for u in theory.presiltings():
            out.append(items_from_pair(amb, amb.cat.H_P(u)))
        return out

    def _label(self, amb, items):
        return tuple(sorted(amb.root_item(x) for x in items))

    def _build(self):
        root_key = self.side.full_key()
        self.ambients[root_key] = self.side
        self.cat.add_object(root_key)
        queue = deque([root_key])
        while queue:
            key = queue.popleft()
            amb = self.ambients[key]
            if amb is None:
                self.cat.add_morphism(key, key, (), identity=True)
                self._objects_of[key, ()] = []
                continue
            for items in self._support_tau_rigid(amb):
                label = self._label(amb, items)
                if not items:
                    cod = key
                else:
                    perp = amb.perp(items)
                    cod = amb.perp_key(items)
                    if cod not in self.ambients:
                        self.ambients[cod] = perp.side if cod else None
                        self.cat.add_object(cod)
                        queue.append(cod)
                self.cat.add_morphism(key, cod, label, identity=not items)
                self._objects_of[key, label] = items
        for g, f in list(self.cat.composable_pairs()):
            self.cat.compose[g, f] = self._compose(g, f)

    def _compose(self, g, f):
        cat = self.cat
        w1 = cat.dom(f)
        u_items = self._objects_of[w1, cat.label(f)]
        v_label = set(cat.label(g))
        if not u_items:
            return g
        if not v_label:
            return f
        amb = self.ambients[w1]
        pre = []
        for x in amb.indecomposable_items():
            if x in u_items or not amb.is_support_tau_rigid(u_items + [x]):
                continue
            if amb.root_item(amb.eps(u_items, x)) in v_label:
                pre.append(x)
        if len(pre) != len(v_label):
            raise FunctorLawViolation("inverse reduction map is not bijective")
        h = cat.find(w1, self._label(amb, u_items + pre))
        if h is None:
            raise FunctorLawViolation("composite is not a morphism")
        return h


def build_M_Lambda(side):
    return LambdaCategory(side).cat


# ---------------------------------------------------------------------------
# the functor and its properties


def functor_F(side, mc, ml):
    obj_map = {u: c_side_perp_key(side, u) for u in mc.objects}
    mor_map = []
    for d, c, v in mc.morphisms:
        label = tuple(sorted(h_tilde(side, d, list(v)))) if v else ()
        g = ml.find(obj_map[d], label)
        if g is None:
            raise FunctorLawViolation(f"image of h_{v} from {d} is not a morphism")
        mor_map.append(g)
    return FunctorData(mc, ml, obj_map, mor_map)


@dataclass
class FunctorReport:
    dense: bool
    faithful: bool
    full: bool
    discrete_fibration: bool
    witnesses: list = field(default_factory=list)


def check_functor(fun):
    s, t = fun.source, fun.target
    wit = []
    image_objs = set(fun.obj_map.values())
    dense = all(o in image_objs for o in t.objects)
    if not dense:
        wit.append(("not dense", [o for o in t.objects if o not in image_objs]))
    faithful = True
    full = True
    for a in s.objects:
        for b in s.objects:
            hs = s.hom(a, b)
            imgs = [fun.mor_map[f] for f in hs]
            if len(set(imgs)) != len(imgs):
                faithful = False
                wit.append(("not faithful", a, b))
            if hs and len(set(imgs)) != len(t.hom(fun.obj_map[a], fun.obj_map[b])):
                full = False
                wit.append(("not full", a, b))
            elif not hs and t.hom(fun.obj_map[a], fun.obj_map[b]):
                full = False
                wit.append(("not full", a, b))
    fib = True
    for a in s.objects:
        lifts = {}
        for f in s.out(a):
            lifts.setdefault(fun.mor_map[f], []).append(f)
        for g in t.out(fun.obj_map[a]):
            if len(lifts.get(g, [])) != 1:
                fib = False
                wit.append(("lift count", a, g, len(lifts.get(g, []))))
    return FunctorReport(dense, faithful, full, fib, wit)


class QuotientCategory:
    """Source objects identified along a discrete fibration F, with unique-lift composition."""

    def __init__(self, fun):
        report = check_functor(fun)
        if not report.discrete_fibration:
            raise NotDiscreteFibration(str(report.witnesses[:3]))
        self.fun = fun
        s = fun.source
        self.classes = {}
        for o in s.objects:
            self.classes.setdefault(fun.obj_map[o], []).append(o)
        self.cat = FiniteCategory("M(C)/~")
        self.rep_of = {}
        for img, objs in self.classes.items():
            self.cat.add_object(tuple(objs))
        self._rep = {}
        for f, (d, c, _) in enumerate(s.morphisms):
            key = fun.mor_map[f]
            if key not in self._rep:
                self._rep[key] = f
                dcls = tuple(self.classes[fun.obj_map[d]])
                ccls = tuple(self.classes[fun.obj_map[c]])
                is_id = key == fun.target.identity.get(fun.obj_map[d])
                self.cat.add_morphism(dcls, ccls, key, identity=is_id)
        for g, f in list(self.cat.composable_pairs()):
            self.cat.compose[g, f] = self._compose(g, f)

    def _lift(self, target_mor, start):
        hits = [f for f in self.fun.source.out(start) if self.fun.mor_map[f] == target_mor]
        if len(hits) != 1:
            raise NotDiscreteFibration(f"no unique lift of {target_mor} at {start}")
        return hits[0]

    def _compose(self, g, f):
        s = self.fun.source
        rf = self._rep[self.cat.label(f)]
        rg = self._rep[self.cat.label(g)]
        lifted = self._lift(self.fun.mor_map[rg], s.cod(rf))
        h = s.compose[lifted, rf]
        return self.cat.find(self.cat.dom(f), self.fun.mor_map[h])


def quotient_category(fun):
    return QuotientCategory(fun)


def check_equivalence(quot, target):
    """The comparison functor from the quotient is bijective on objects and on every hom-set."""
    fun = quot.fun
    wit = []
    q = quot.cat
    obj = {c: fun.obj_map[c[0]] for c in q.objects}
    if sorted(map(repr, obj.values())) != sorted(map(repr, target.objects)) or len(set(obj.values())) != len(obj):
        wit.append(("objects",))
    for a in q.objects:
        for b in q.objects:
            qs = q.hom(a, b)
            ts = target.hom(obj[a], obj[b])
            if sorted(q.label(f) for f in qs) != sorted(ts):
                wit.append(("hom-set", a, b, len(qs), len(ts)))
    for (g, f), h in q.compose.items():
        if target.compose.get((q.label(g), q.label(f))) != q.label(h):
            wit.append(("composition", g, f))
    return wit
