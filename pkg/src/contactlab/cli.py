"""Command-line interface: ``contactlab <command> ...``.

Exit status: 0 when every reported property holds (or matches its
expectation), 1 when some property fails with a witness, 2 on input,
parse or capability errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Any, Optional, Sequence

from . import __version__
from .checks import Axiom, check_axiom
from .contact import ContactStructure
from .errors import ContactLabError, ParseError
from .interval.checks import check_axioms_interval
from .interval.nest import (
    DEFAULT_DEPTH,
    Nest,
    center_of,
    g_rep_certified,
    local_basis_certificate,
    nest_coinitial,
    nest_covering,
    nest_prefix_check,
    parse_nest,
    separation_refinement,
)
from .interval.space import AmbientSpace, contact_T, ll_T, num, parse_ambient, parse_region, ro_complement, ro_join
from .modelfile import IntervalModel, dump_model, read_model
from .reports import CheckReport, DepthReport, SearchOutcome, Status, to_jsonable
from .representatives import (
    check_bijection,
    enumerate_g_representatives,
    equivalence_classes,
    filter_of,
)
from .search.enumerate import enumerate_bca, enumerate_bwca
from .search.suite import GROUPS, run_paper_suite, search_countermodel

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_SEED = 0
ALL_AXIOMS = [a.value for a in Axiom]


class Document:
    """Ordered reports plus the metadata that makes a run reproducible."""

    def __init__(self, command: str, digest: str):
        self.command = command
        self.digest = digest
        self.reports: list = []
        self.info: list[str] = []

    def add(self, rep) -> None:
        self.reports.append(rep)

    @staticmethod
    def passed(rep) -> bool:
        if isinstance(rep, SearchOutcome):
            return rep.matches_expectation
        return rep.holds

    @property
    def ok(self) -> bool:
        return all(self.passed(r) for r in self.reports)

    def as_json(self) -> dict:
        return {
            "tool": "contactlab",
            "version": __version__,
            "command": self.command,
            "input_digest": self.digest,
            "reports": [to_jsonable(r) for r in self.reports],
            "status": "pass" if self.ok else "fail",
        }

    def as_text(self) -> str:
        lines = list(self.info)
        for r in self.reports:
            lines.append(_line(r, self.passed(r)))
        lines.append(f"status: {'pass' if self.ok else 'fail'}")
        return "\n".join(lines)


def _fmt(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), ensure_ascii=False)


def _line(rep, ok: bool) -> str:
    tag = "PASS" if ok else "FAIL"
    if isinstance(rep, SearchOutcome):
        exp = f" (expected {rep.expected.value})" if rep.expected else ""
        s = f"{tag}  {rep.name}: {rep.status.value}{exp}, {rep.models_checked} models"
        if rep.status is Status.COUNTERMODEL:
            s += f"\n      model: {_fmt(rep.model)}\n      witness: {_fmt(rep.witness)}"
        if rep.note:
            s += f"\n      {rep.note}"
        return s
    if isinstance(rep, DepthReport):
        cert = "certified" if rep.certified else f"verified to depth {rep.verified_to_depth}"
        s = f"{tag}  {rep.name}: {'holds' if rep.holds else 'fails'} ({cert})"
        if rep.witness is not None:
            s += f"\n      witness: {_fmt(rep.witness)}"
        if rep.theorem:
            s += f"\n      by: {rep.theorem}"
        if rep.note:
            s += f"\n      {rep.note}"
        return s
    s = f"{tag}  {rep.name}"
    if rep.witness is not None:
        s += f"\n      witness: {_fmt(rep.witness)}"
    if rep.note:
        s += f"\n      {rep.note}"
    return s


def _digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def _args_digest(args: argparse.Namespace) -> str:
    keep = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "func")}
    return _digest(json.dumps(keep, sort_keys=True, default=str).encode())


def _emit(doc: Document, as_json: bool) -> int:
    if as_json:
        print(json.dumps(doc.as_json(), indent=2, ensure_ascii=False))
    else:
        print(doc.as_text())
    return EXIT_OK if doc.ok else EXIT_FAIL


def _axiom_list(text: Optional[str], default: Sequence[str]) -> list[str]:
    if not text:
        return list(default)
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part and part[0] == "C":
            lo, hi = part.split("-")
            lo_i, hi_i = int(lo[1:]), int(hi.lstrip("C"))
            out.extend(f"C{i}" for i in range(lo_i, hi_i + 1))
        elif part:
            out.append(part)
    return out


def _finite_model(path: str):
    model, raw = read_model(path)
    if not isinstance(model, ContactStructure):
        raise ParseError(f"{path}: expected a finite model (algebra + contact), got an interval ambient")
    return model, raw


# -- commands --------------------------------------------------------------------
def cmd_check(args) -> int:
    cs, raw = _finite_model(args.model)
    doc = Document("check", _digest(raw))
    doc.info.append(f"model: {_fmt(cs)}")
    for name in _axiom_list(args.axioms, ALL_AXIOMS):
        if name not in ALL_AXIOMS:
            raise ParseError(f"unknown axiom {name!r}; expected some of {', '.join(ALL_AXIOMS)}")
        mode = args.gia_mode if name == "GIA" else "direct"
        doc.add(check_axiom(cs, name, mode=mode))
    return _emit(doc, args.json)


def cmd_greps(args) -> int:
    cs, raw = _finite_model(args.model)
    doc = Document("greps", _digest(raw))
    greps = enumerate_g_representatives(cs)
    classes = equivalence_classes(cs, greps)
    doc.info.append(f"model: {_fmt(cs)}")
    doc.info.append(f"G-representatives ({len(greps)}):")
    doc.info.extend(f"  {q}" for q in greps)
    doc.info.append(f"classes ({len(classes)}):")
    for i, block in enumerate(classes.classes):
        doc.info.append(f"  [{i}] {', '.join(str(q) for q in block)}  ->  point {filter_of(cs, block[0])}")
    bij = check_bijection(cs, greps)
    details = dict(bij.details)
    details["greps"] = [str(q) for q in greps]
    details["points"] = [str(filter_of(cs, b[0])) for b in classes.classes]
    doc.add(CheckReport(bij.name, bij.holds, bij.witness, bij.note, details))
    return _emit(doc, args.json)


def cmd_enumerate(args) -> int:
    if (args.atoms is None) == (args.universe is None):
        raise ParseError("give exactly one of --atoms (contact algebras via atom graphs) or --universe (weak ones)")
    models = list(enumerate_bca(args.atoms) if args.atoms is not None else enumerate_bwca(args.universe))
    doc = Document("enumerate", _args_digest(args))
    label = f"atoms={args.atoms}" if args.atoms is not None else f"universe={args.universe}"
    doc.info.append(f"{len(models)} models up to isomorphism ({label})")
    doc.info.extend(f"  {i}: {_fmt(cs)}" for i, cs in enumerate(models))
    doc.add(CheckReport("enumeration", True, details={"count": len(models), "models": [dump_model(m) for m in models]}))
    return _emit(doc, args.json)


def cmd_search(args) -> int:
    outcome = search_countermodel(args.expression, args.family, args.bound)
    doc = Document("search", _args_digest(args))
    doc.add(outcome)
    if args.json:
        print(json.dumps(doc.as_json(), indent=2, ensure_ascii=False))
    else:
        print(_line(outcome, outcome.status is Status.CONFIRMED))
    return EXIT_OK if outcome.status is Status.CONFIRMED else EXIT_FAIL


def _ambient_of(args) -> tuple[AmbientSpace, Optional[IntervalModel], str]:
    if args.model:
        model, raw = read_model(args.model)
        if not isinstance(model, IntervalModel):
            raise ParseError(f"{args.model}: expected an interval model with an ambient")
        return model.ambient, model, _digest(raw)
    return parse_ambient(args.ambient or "R"), None, _args_digest(args)


def _nest_reports(nest: Nest, depth: int, seed: int, point=None) -> list:
    out = [nest_prefix_check(nest, depth)]
    if nest.approximate:
        return out
    p = point if point is not None else center_of(nest)
    if p is not None:
        out.append(local_basis_certificate(nest, p, depth))
    out.append(g_rep_certified(nest, p, depth, seed))
    return out


def cmd_interval(args) -> int:
    amb, model, digest = _ambient_of(args)
    doc = Document(f"interval {args.sub}", digest)
    doc.info.append(f"ambient: {amb}")
    if args.sub == "check":
        wanted = set(_axiom_list(args.axioms, []))
        for rep in check_axioms_interval(amb, args.budget, args.seed):
            if not wanted or rep.name in wanted:
                doc.add(rep)
        return _emit(doc, args.json)
    if args.sub == "nest":
        nests = dict(model.nests) if model else {}
        if args.nest:
            nests["nest"] = parse_nest(args.nest, amb)
        if not nests:
            raise ParseError("no nest given; use --nest KIND:ARGS or a model file with nests")
        point = num(args.point) if args.point is not None else None
        for name, nest in nests.items():
            doc.info.append(f"{name}: {nest}")
            if args.check in ("all", "prefix"):
                doc.add(nest_prefix_check(nest, args.depth))
            if args.check in ("all", "local-basis") and not nest.approximate:
                p = point if point is not None else center_of(nest)
                if p is not None:
                    doc.add(local_basis_certificate(nest, p, args.depth))
            if args.check in ("all", "grep") and not nest.approximate:
                doc.add(g_rep_certified(nest, point, args.depth, args.seed))
            if args.against:
                other = parse_nest(args.against, amb)
                doc.add(nest_covering(nest, other, args.depth))
                doc.add(nest_covering(other, nest, args.depth))
        return _emit(doc, args.json)
    # demo
    _demo(doc, amb, args)
    return _emit(doc, args.json)


def _demo(doc: Document, amb: AmbientSpace, args) -> None:
    if amb.is_connected and not amb.isolated_points():
        x, y = parse_region(amb, "(0,1)"), parse_region(amb, "(1,2)")
        doc.info.append(f"x = {x}, y = {y}: disjoint, join = {ro_join(x, y)}, contact = {contact_T(x, y)}")
        inner = parse_region(amb, "(1/4,1/2)")
        doc.info.append(f"{inner} << {x}: {ll_T(inner, x)}; complement of {x} = {ro_complement(x)}")
        for rep in _nest_reports(parse_nest("harmonic:0:1", amb), args.depth, args.seed, 0):
            doc.add(rep)
        doc.add(nest_coinitial(parse_nest("harmonic:0:1", amb), parse_nest("odd_harmonic:0:1", amb), args.depth))
    for rep in check_axioms_interval(amb, args.budget, args.seed):
        doc.add(rep)
    if len(amb.pieces) >= 2:
        ends = [amb.pieces[0].hi, amb.pieces[1].lo]
        nest = Nest.multi_harmonic(ends, ambient=amb)
        doc.info.append(f"two-point nest {nest}")
        doc.add(g_rep_certified(nest, None, args.depth, args.seed))
        u, v = amb.piece_region(0), amb.piece_region(1)
        doc.add(separation_refinement(nest, u, v, args.depth))


def _interval_suite(depth: int, seed: int) -> list:
    """Certified interval examples that accompany the finite suite."""
    R = AmbientSpace.real_line()
    X = parse_ambient("[0,1]+[2,3]")
    Y = parse_ambient("[0,1]+{2}")
    h = parse_nest("harmonic:0:1", R)
    out: list = []
    rx = {r.name: r for r in check_axioms_interval(R, 200, seed)}
    out.append(_as_outcome("R satisfies C0-C6 and IA", all(rx[a].holds for a in ("C0", "C1", "C2", "C3", "C4", "C5", "C6", "IA")), Status.CONFIRMED))
    c6 = {r.name: r for r in check_axioms_interval(X, 200, seed)}["C6"]
    out.append(_as_outcome("[0,1]+[2,3] fails C6", not c6.holds, Status.COUNTERMODEL, c6.witness))
    atom = {r.name: r for r in check_axioms_interval(Y, 200, seed)}["atomless"]
    out.append(_as_outcome("[0,1]+{2} has the atom {2}", not atom.holds, Status.COUNTERMODEL, atom.witness))
    g = g_rep_certified(h, 0, depth, seed)
    out.append(_as_outcome("harmonic(0,1) is a certified G-representative", g.holds and g.certified, Status.CONFIRMED))
    w = local_basis_certificate(h, 0, depth)
    out.append(_as_outcome("harmonic(0,1) is a certified W-representative", w.holds and w.certified, Status.CONFIRMED))
    co = nest_coinitial(h, parse_nest("odd_harmonic:0:1", R), depth)
    out.append(_as_outcome("harmonic and odd_harmonic at 0 are coinitial", co.holds and co.certified, Status.CONFIRMED))
    two = Nest.multi_harmonic([1, 2], ambient=X)
    sep = separation_refinement(two, X.piece_region(0), X.piece_region(1), depth)
    out.append(_as_outcome(f"covered-but-not-covering refinement to depth {depth}", sep.holds, Status.CONFIRMED))
    return out


def _as_outcome(name: str, ok: bool, kind: Status, witness=None) -> SearchOutcome:
    status = kind if ok else (Status.CONFIRMED if kind is Status.COUNTERMODEL else Status.COUNTERMODEL)
    return SearchOutcome(name, status, 1, witness=witness if ok else None, note="interval backend", expected=kind)


def cmd_verify_paper(args) -> int:
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    groups = None if only is None else [g for g in only if g != "interval"]
    unknown = set(only or ()) - set(GROUPS) - {"interval"}
    if unknown:
        raise ParseError(f"unknown group(s) {sorted(unknown)}; expected some of {', '.join(GROUPS + ('interval',))}")
    doc = Document("verify-paper", _args_digest(args))
    if groups is None or groups:
        for o in run_paper_suite(groups):
            doc.add(o)
    if only is None or "interval" in only:
        for o in _interval_suite(args.depth, args.seed):
            doc.add(o)
    return _emit(doc, args.json)


# -- parser ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contactlab", description="Decide contact-algebra axioms and point constructions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False, depth=False):
        p.add_argument("--json", action="store_true", help="emit the structured report document")
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        if depth:
            p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    p = sub.add_parser("check", help="check axioms on a finite model file")
    p.add_argument("--model", required=True)
    p.add_argument("--axioms", help="comma list, ranges like C0-C4 allowed (default: all)")
    p.add_argument("--gia-mode", choices=("direct", "reduced"), default="direct")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("greps", help="list G-representatives, classes and G-points")
    p.add_argument("--model", required=True)
    common(p)
    p.set_defaults(func=cmd_greps)

    p = sub.add_parser("enumerate", help="enumerate finite structures up to isomorphism")
    p.add_argument("--atoms", type=int, help="contact algebras from atom graphs (1-4 atoms)")
    p.add_argument("--universe", type=int, help="weak contact algebras on 2, 4 or 8 regions")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("search", help="search a family for a countermodel to a property")
    p.add_argument("expression")
    p.add_argument("--family", choices=("bwca", "bca", "d_contact"), default="bwca")
    p.add_argument("--bound", type=int, help="universe size (bwca) or atom count (bca, d_contact)")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("interval", help="interval-backend checks")
    p.add_argument("sub", choices=("demo", "check", "nest"))
    p.add_argument("--ambient", help='e.g. "R", "[0,1]+[2,3]", "[0,1]+{2}"')
    p.add_argument("--model", help="interval model file")
    p.add_argument("--axioms", help="restrict `check` to these reports")
    p.add_argument("--budget", type=int, default=200, help="random cases per sampled axiom")
    p.add_argument("--nest", help="e.g. harmonic:0:1, geometric:0:1/2, multi_harmonic:1,2")
    p.add_argument("--against", help="second nest for covering checks")
    p.add_argument("--point", help="point for the local-basis certificate (default: the nest centre)")
    p.add_argument("--check", choices=("all", "prefix", "local-basis", "grep"), default="all")
    common(p, seed=True, depth=True)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("verify-paper", help="run the reproduction table")
    p.add_argument("--only", help=f"comma list of groups: {', '.join(GROUPS + ('interval',))}")
    common(p, seed=True, depth=True)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ContactLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
