"""Command-line entry point: inspect an algebra, enumerate, export categories and run property suites."""

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from itertools import permutations

from . import __version__, fdalg
from .cluster import (
    build_M_C,
    build_M_Lambda,
    check_equivalence,
    check_functor,
    functor_F,
    quotient_category,
)
from .errors import (
    ArtifactError,
    BudgetExceeded,
    FieldTooSmall,
    NotAdmissible,
    TheoryViolation,
)
from .sequences import DEFAULT_SEQUENCE_CAP, SequenceTools
from .silting import DEFAULT_SILTING_CAP
from .taured import TauSide, c_side_perp_key, h_tilde, items_from_pair

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4
CHECKS = ("compat", "xi-psi", "fibration", "equivalence", "remark")


@dataclass
class RunConfig:
    algebra: str
    prime: int = None
    seed: int = 0
    lmax: int = fdalg.DEFAULT_LMAX
    silting_cap: int = DEFAULT_SILTING_CAP
    sequence_cap: int = DEFAULT_SEQUENCE_CAP
    fmt: str = "json"

    def __post_init__(self):
        for name in ("lmax", "silting_cap", "sequence_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def load_presentation(source, prime=None):
    builtins = fdalg.builtin_presentations()
    pres = builtins[source] if source in builtins else fdalg.QuiverPresentation.load(source)
    if prime is not None:
        pres.prime = prime
    return pres


class Session:
    """Algebra, two-term category and tau side for one RunConfig, built lazily."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.pres = load_presentation(cfg.algebra, cfg.prime)
        self.alg = fdalg.build_algebra(self.pres, lmax=cfg.lmax)
        self._side = None

    @property
    def side(self):
        if self._side is None:
            self._side = TauSide(self.alg, seed=self.cfg.seed)
            self._side.theory.cap = self.cfg.silting_cap
        return self._side

    @property
    def cat(self):
        return self.side.cat

    def header(self):
        blob = json.dumps(self.pres.to_dict(), sort_keys=True).encode()
        return {
            "schema": 1,
            "version": __version__,
            "prime": self.alg.field.p,
            "seed": self.cfg.seed,
            "budgets": {
                "lmax": self.cfg.lmax,
                "silting_cap": self.cfg.silting_cap,
                "sequence_cap": self.cfg.sequence_cap,
            },
            "algebra": hashlib.sha256(blob).hexdigest()[:16],
        }

    # names ------------------------------------------------------------------

    def module_name(self, mid):
        """Name of a module of the root registry, unique among those named so far."""
        reg = self.side.registry
        dims = reg[mid].dims
        twins = [j for j in range(len(reg)) if reg[j].dims == dims]
        tag = "M(" + ",".join(map(str, dims)) + ")"
        return tag if len(twins) == 1 else f"{tag}#{twins.index(mid)}"

    def item_name(self, item):
        mid, shifted = item
        if not shifted:
            return self.module_name(mid)
        v = self.side.vertex(mid)
        # relative projectives of a perpendicular category need not be projective
        return f"P{self.alg.vertex_names[v]}[1]" if v is not None else f"{self.module_name(mid)}[1]"

    def object_name(self, ids):
        return "+".join(self.cat.label(i) for i in ids) if ids else "0"

    def key_name(self, key):
        return "J<" + ",".join(self.module_name(m) for m in key) + ">" if key else "0"


# ---------------------------------------------------------------------------
# property suites; each returns a list of witnesses (empty means pass)


def suite_compat(side):
    """Both reduction maps agree on every eligible (U, X)."""
    cat, theory = side.cat, side.theory
    bad = []
    for u in theory.presiltings():
        u_items = items_from_pair(side, cat.H_P(u))
        for x in theory.indecomposable_presiltings():
            if x in u or not cat.is_presilting(list(u) + [x]):
                continue
            c_side = h_tilde(side, u, [x])[0]
            l_side = side.eps(u_items, items_from_pair(side, cat.H_P([x]))[0])
            if c_side != l_side:
                bad.append({"U": list(u), "X": x, "c_side": list(c_side), "lambda_side": list(l_side)})
    return bad


def suite_bongartz(side):
    """B/C completions are silting and B agrees with the module-side Bongartz complement."""
    cat, theory = side.cat, side.theory
    bad = []
    for u in theory.presiltings():
        if not theory.is_silting(theory.bongartz_completion(u)) or not theory.is_silting(theory.cobongartz_completion(u)):
            bad.append({"U": list(u), "why": "completion not silting"})
        lam = side.bongartz_module(items_from_pair(side, cat.H_P(u)))
        two = tuple(sorted(cat.module_id(b) for b in theory.bongartz(u)))
        if lam != two:
            bad.append({"U": list(u), "why": "Bongartz mismatch"})
        if side.perp_key(items_from_pair(side, cat.H_P(u))) != c_side_perp_key(side, u):
            bad.append({"U": list(u), "why": "perpendicular key mismatch"})
    return bad


def suite_xi_psi(side, tools=None):
    tools = tools or SequenceTools(side)
    bad = []
    for t in range(1, side.rank + 1):
        images = set()
        for seq in tools.enumerate(t):
            x = tools.xi(seq)
            if x != tools.psi_of_h_p(seq):
                bad.append({"sequence": list(seq), "why": "xi differs from psi of H_P"})
            elif tools.xi_inverse(x) != list(seq):
                bad.append({"sequence": list(seq), "why": "xi inverse"})
            images.add(tuple(x))
        lam = {tuple(s) for s in side.signed_exceptional_sequences(t)}
        if lam != images:
            bad.append({"length": t, "why": "image differs from the signed tau-exceptional sequences"})
    return bad


def suite_remark(side, tools=None):
    """The recursive and the direct-sum checker agree on all ordered tuples of distinct entries."""
    tools = tools or SequenceTools(side)
    bad = []
    for t in range(1, side.rank + 1):
        for tup in permutations(range(len(side.cat)), t):
            if tools.check_recursive(tup) != tools.check_direct_sum(tup):
                bad.append({"tuple": list(tup)})
    return bad


def build_categories(side):
    mc = build_M_C(side.theory)
    ml = build_M_Lambda(side)
    return mc, ml, functor_F(side, mc, ml)


def suite_fibration(side, built=None):
    mc, ml, fun = built or build_categories(side)
    bad = []
    for name, c in (("M(C)", mc), ("M(Lambda)", ml)):
        bad += [{"category": name, "axiom": repr(w)} for w in c.check_axioms()]
    bad += [{"functor law": repr(w)} for w in fun.check_laws()]
    rep = check_functor(fun)
    for prop in ("dense", "faithful", "discrete_fibration"):
        if not getattr(rep, prop):
            bad.append({"property": prop, "witnesses": repr([w for w in rep.witnesses if "full" not in str(w[0])][:3])})
    return bad


def suite_equivalence(side, built=None):
    mc, ml, fun = built or build_categories(side)
    quot = quotient_category(fun)
    bad = [{"quotient axiom": repr(w)} for w in quot.cat.check_axioms()]
    bad += [{"equivalence": repr(w)} for w in check_equivalence(quot, ml)]
    return bad


def run_checks(side, checks):
    tools = SequenceTools(side)
    built = build_categories(side) if {"fibration", "equivalence"} & set(checks) else None
    runners = {
        "compat": lambda: suite_compat(side) + suite_bongartz(side),
        "xi-psi": lambda: suite_xi_psi(side, tools),
        "remark": lambda: suite_remark(side, tools),
        "fibration": lambda: suite_fibration(side, built),
        "equivalence": lambda: suite_equivalence(side, built),
    }
    return {c: runners[c]() for c in checks}


# ---------------------------------------------------------------------------
# commands


def cmd_algebra_check(s, args):
    alg = s.alg
    rec = {
        "dimension": alg.dim,
        "idempotents": alg.nvert,
        "admissible": True,
        "nilpotency": alg.nilpotency,
        "basis": list(alg.labels),
        "cartan": alg.cartan().tolist(),
    }
    text = f"dim {alg.dim}, {alg.nvert} idempotents, admissible at L = {alg.nilpotency}"
    return rec, text, EXIT_OK


def cmd_catalog(s, args):
    cat = s.cat
    # entries are registered as the silting enumeration meets them
    s.side.theory.presiltings()
    recs = []
    for i in sorted(range(len(cat)), key=cat.canonical_key):
        src, tgt = cat.complexes[i].multiplicities(cat.nvert)
        recs.append({
            "name": cat.label(i),
            "source": list(src),
            "target": list(tgt),
            "h0": list(cat.h0_module(i).dims),
            "presilting": cat.ext(i, i) == 0,
        })
    lines = [f"{r['name']:<14} {r['source']} -> {r['target']}  H0 {r['h0']}  rigid={r['presilting']}" for r in recs]
    return {"count": len(recs), "catalog": recs}, "\n".join(lines), EXIT_OK


def cmd_siltings(s, args):
    theory = s.side.theory
    names = sorted(sorted(s.cat.label(i) for i in t) for t in theory.siltings())
    return {"count": len(names), "siltings": names}, "\n".join(" + ".join(n) for n in names), EXIT_OK


def cmd_presiltings(s, args):
    theory = s.side.theory
    names = sorted((sorted(s.cat.label(i) for i in u) for u in theory.presiltings()), key=lambda n: (len(n), n))
    return {"count": len(names), "presiltings": names}, "\n".join(" + ".join(n) or "0" for n in names), EXIT_OK


def cmd_sequences(s, args):
    tools = SequenceTools(s.side, cap=s.cfg.sequence_cap)
    seqs = tools.enumerate(args.length, signed=args.signed)
    if args.count_only:
        return {"count": len(seqs)}, str(len(seqs)), EXIT_OK
    recs = []
    for seq in seqs:
        recs.append({
            "sequence": [s.cat.label(i) for i in seq],
            "tau_exceptional": [s.item_name(x) for x in tools.xi(seq)],
        })
    recs.sort(key=lambda r: r["sequence"])
    lines = [" , ".join(r["sequence"]) + "  ->  " + " , ".join(r["tau_exceptional"]) for r in recs]
    return {"count": len(recs), "sequences": recs}, "\n".join(lines), EXIT_OK


def _category_output(cat, obj_name, label_name, fmt, extra=None):
    if fmt == "dot":
        return None, cat.to_dot(obj_name, label_name).rstrip("\n")
    data = cat.to_dict(obj_name, label_name)
    if extra:
        data.update(extra)
    lines = [f"{len(data['objects'])} objects, {len(data['morphisms'])} morphisms"]
    lines += [f"{m['dom']} --{m['label']}--> {m['cod']}" for m in data["morphisms"]]
    return data, "\n".join(lines)


def cmd_cluster(s, args):
    side = s.side
    if args.side == "c":
        cat = build_M_C(side.theory)
        data, text = _category_output(cat, s.object_name, lambda v: s.object_name(v) if v else "id", args.format)
    else:
        cat = build_M_Lambda(side)
        data, text = _category_output(
            cat, s.key_name, lambda v: "+".join(s.item_name(x) for x in v) if v else "id", args.format)
    return data, text, EXIT_OK


def cmd_quotient(s, args):
    mc, ml, fun = build_categories(s.side)
    quot = quotient_category(fun)
    report = check_equivalence(quot, ml)

    def cls_name(objs):
        return "{" + ", ".join(sorted(s.object_name(u) for u in objs)) + "}"

    def lab(key):
        return "+".join(s.item_name(x) for x in ml.label(key)) or "id"

    extra = {"equivalent": not report, "witnesses": [repr(w) for w in report]}
    data, text = _category_output(quot.cat, cls_name, lab, args.format, extra)
    if data is not None:
        text += f"\nequivalent to M(Lambda): {not report}"
    return data, text, EXIT_OK if not report else EXIT_FAIL


def cmd_verify(s, args):
    checks = list(CHECKS) if "all" in args.checks else [c for c in CHECKS if c in args.checks]
    results = run_checks(s.side, checks)
    rec = {c: {"pass": not w, "witness": w[0] if w else None, "count": len(w)} for c, w in results.items()}
    lines = [f"{c:<12} {'PASS' if not w else 'FAIL'}" + (f"  {w[0]}" if w else "") for c, w in results.items()]
    ok = all(not w for w in results.values())
    return {"checks": rec, "pass": ok}, "\n".join(lines), EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "algebra-check": cmd_algebra_check,
    "catalog": cmd_catalog,
    "siltings": cmd_siltings,
    "presiltings": cmd_presiltings,
    "sequences": cmd_sequences,
    "cluster": cmd_cluster,
    "quotient": cmd_quotient,
    "verify": cmd_verify,
}


def make_parser():
    parser = argparse.ArgumentParser(prog="taucluster", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("algebra", help="JSON quiver presentation, or a builtin name: "
                        + ", ".join(fdalg.builtin_presentations()))
    common.add_argument("--prime", type=int, help="override the field size")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--lmax", type=int, default=fdalg.DEFAULT_LMAX, help="path length budget")
    common.add_argument("--silting-cap", type=int, default=DEFAULT_SILTING_CAP)
    common.add_argument("--sequence-cap", type=int, default=DEFAULT_SEQUENCE_CAP)
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = ["json", "table"]
    for name in ("algebra-check", "catalog", "siltings", "presiltings"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--format", choices=fmt, default="json")
    p = sub.add_parser("sequences", parents=[common])
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--signed", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=fmt, default="json")
    p = sub.add_parser("cluster", parents=[common])
    p.add_argument("--side", choices=["c", "lambda"], default="c")
    p.add_argument("--format", choices=["json", "dot", "table"], default="json")
    p = sub.add_parser("quotient", parents=[common])
    p.add_argument("--format", choices=["json", "dot", "table"], default="json")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--checks", nargs="+", choices=list(CHECKS) + ["all"], default=["all"])
    p.add_argument("--format", choices=fmt, default="json")
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.algebra, args.prime, args.seed, args.lmax, args.silting_cap, args.sequence_cap, args.format)
        session = Session(cfg)
        data, text, code = COMMANDS[args.command](session, args)
    except (NotAdmissible, FieldTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TheoryViolation, AssertionError, ArithmeticError, IndexError, TypeError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ArtifactError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json" and data is not None:
        doc = {"header": session.header(), "command": args.command, "result": data}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        if args.format == "dot":
            print("// " + json.dumps(session.header(), sort_keys=True))
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
