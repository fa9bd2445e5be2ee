"""Turn a parsed DSL file into algebras, morphisms and diagrams, and run its checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    AlgebraMorphism,
    FPAlgebra,
    domain_by_embedding,
    domain_by_simplification,
    is_nonzerodivisor,
    kernel_is_trivial,
    make_algebra,
    verify_morphism,
)
from .descent import CoverDiagram, Piece, ProductNode, build_cech
from .dsl import CheckStmt, Diagnostic, DiagramDecl, MapDecl, RingDecl, SourceFile, Var, eval_expr, format_statement
from .errors import ResourceCap, TordiffError
from .field import CoeffField
from .gb import radical_membership
from .kaehler import FPModule, _paren, is_torsion, omega_presentation, pullback, torsion_submodule
from .poly import PolyRing, format_poly


class SemanticError(Exception):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def field_from_name(name: str) -> CoeffField:
    return CoeffField(0) if name == "Q" else CoeffField(int(name[1:]))


@dataclass
class Workspace:
    source: SourceFile
    rings: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    diagrams: dict = field(default_factory=dict)

    def ring(self, name: str) -> FPAlgebra:
        if name not in self.rings:
            raise KeyError(f"no ring named {name!r}")
        return self.rings[name]

    def map(self, name: str) -> AlgebraMorphism:
        if name not in self.maps:
            raise KeyError(f"no map named {name!r}")
        return self.maps[name]

    def diagram(self, name: str) -> CoverDiagram:
        if name not in self.diagrams:
            raise KeyError(f"no diagram named {name!r}")
        return self.diagrams[name]

    def lookup(self, name: str):
        for table in (self.rings, self.maps, self.diagrams):
            if name in table:
                return table[name]
        raise KeyError(f"nothing named {name!r}")


def _diag(line, message, suggestion=""):
    return Diagnostic("error", line, 1, message, suggestion)


def build_workspace(sf: SourceFile) -> Workspace:
    """Evaluate declarations in order; every failure becomes a Diagnostic."""
    ws = Workspace(sf)
    diags = []
    for st in sf.statements:
        try:
            if isinstance(st, RingDecl):
                _check_fresh(ws, st.name)
                F = field_from_name(st.field)
                ring = PolyRing(F, st.variables)
                rels = [eval_expr(r, ring) for r in st.relations]
                ws.rings[st.name] = make_algebra(F, st.variables, rels, st.domain)
            elif isinstance(st, MapDecl):
                _check_fresh(ws, st.name)
                A, B = ws.ring(st.source), ws.ring(st.target)
                given = dict(st.images)
                unknown = set(given) - set(A.names)
                if unknown:
                    raise KeyError(f"{sorted(unknown)} are not variables of {st.source}")
                images = [eval_expr(given[v], B.ring) if v in given else None for v in A.names]
                missing = [v for v, im in zip(A.names, images) if im is None]
                if missing:
                    raise KeyError(f"no image given for {', '.join(missing)}")
                ws.maps[st.name] = verify_morphism(AlgebraMorphism.build(A, B, images))
            elif isinstance(st, DiagramDecl):
                _check_fresh(ws, st.name)
                ws.diagrams[st.name] = _build_diagram(ws, st)
        except ResourceCap:
            raise
        except (KeyError, ValueError, TordiffError) as e:
            msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
            diags.append(_diag(st.line, f"{format_statement(st).splitlines()[0]}: {msg}"))
    if diags:
        raise SemanticError(diags)
    return ws


def _check_fresh(ws: Workspace, name: str):
    if name in ws.rings or name in ws.maps or name in ws.diagrams:
        raise ValueError(f"{name!r} is already defined")


def _build_diagram(ws: Workspace, st: DiagramDecl) -> CoverDiagram:
    base = ws.ring(st.base)
    pieces = []
    for mname in st.pieces:
        m = ws.map(mname)
        pieces.append(Piece(_ring_name(ws, m.target), m.target, m))
    products = {}
    for i, j, r1, r2 in st.products:
        a, b = ws.map(r1), ws.map(r2)
        products[(i, j)] = ProductNode(_ring_name(ws, a.target), a.target, a, b)
    return CoverDiagram(base, pieces, products, "cdp+open", st.name)


def _ring_name(ws: Workspace, A: FPAlgebra) -> str:
    for name, B in ws.rings.items():
        if B is A:
            return name
    return repr(A)


# ---------------------------------------------------------------------------
# checks


@dataclass
class CheckOutcome:
    statement: str
    status: str
    witness: str
    line: int


def eval_element(expr, module: FPModule):
    """Evaluate a linear combination like ``z^2*dx + y*dz`` in ``module``."""
    A = module.algebra
    labels = list(module.labels)
    for lab in labels:
        if not lab.isidentifier():
            raise ValueError(f"label {lab!r} cannot be written in an expression")
    big = PolyRing(A.field, tuple(A.names) + tuple(labels))
    f = eval_expr(expr, big)
    n = A.ring.nvars
    coeffs = [dict() for _ in labels]
    for e, c in f.terms:
        tail = e[n:]
        if sum(tail) != 1:
            raise ValueError(f"{format_poly(f)} is not linear in {', '.join(labels)}")
        k = tail.index(1)
        coeffs[k][e[:n]] = c
    return module.element([A.ring.from_dict(d) for d in coeffs])


def proved_domain(ws: Workspace, A: FPAlgebra, _seen=None) -> FPAlgebra | None:
    """``A`` with a domain justification: asserted, by simplification, or via a declared embedding."""
    seen = (_seen or set()) | {id(A)}
    if A.known_domain:
        return A
    proved = domain_by_simplification(A)
    if proved:
        return proved
    for m in ws.maps.values():
        if m.source is A and id(m.target) not in seen:
            target = proved_domain(ws, m.target, seen)
            if target is None:
                continue
            found = domain_by_embedding(A, AlgebraMorphism.build(A, target, m.images))
            if found:
                return found
    return None


def _domain_ring(ws: Workspace, name: str) -> FPAlgebra:
    A = ws.ring(name)
    return proved_domain(ws, A) or A


def _name(arg) -> str:
    if not isinstance(arg, Var):
        raise ValueError("expected a name")
    return arg.name


def _nargs(st: CheckStmt, k: int):
    if len(st.args) != k:
        raise ValueError(f"{st.name} takes {k} argument(s), got {len(st.args)}")


def run_check(ws: Workspace, st: CheckStmt) -> CheckOutcome:
    text = format_statement(st)
    try:
        status, witness = _dispatch(ws, st)
    except ResourceCap:
        raise
    except (KeyError, ValueError, TordiffError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        status, witness = "fail", f"{type(e).__name__}: {msg}"
    return CheckOutcome(text, status, witness, st.line)


def _dispatch(ws: Workspace, st: CheckStmt):
    name = st.name
    if name == "morphism":
        _nargs(st, 1)
        m = ws.map(_name(st.args[0]))
        verify_morphism(m)
        return "pass", f"{m} respects all relations"
    if name in ("zero", "nonzero", "nonzerodivisor", "nilpotent"):
        _nargs(st, 2)
        A = ws.ring(_name(st.args[0]))
        f = A(eval_expr(st.args[1], A.ring))
        if name == "zero":
            return ("pass" if not f else "fail"), f"normal form {format_poly(f)}"
        if name == "nonzero":
            return ("pass" if f else "fail"), f"normal form {format_poly(f)}"
        if name == "nonzerodivisor":
            ok = bool(f) and is_nonzerodivisor(A, f)
            return ("pass" if ok else "fail"), f"{format_poly(f)} {'is' if ok else 'is not'} a nonzerodivisor"
        ok = radical_membership(f, A.ideal)
        return ("pass" if ok else "fail"), f"{format_poly(f)} {'is' if ok else 'is not'} nilpotent"
    if name == "domain":
        _nargs(st, 1)
        A = ws.ring(_name(st.args[0]))
        proved = proved_domain(ws, A)
        if proved is None:
            return "unknown", "no domain justification"
        return "pass", proved.provenance or "polynomial ring"
    if name in ("torsion", "not_torsion"):
        _nargs(st, 2)
        A = _domain_ring(ws, _name(st.args[0]))
        M = omega_presentation(A)
        v = eval_element(st.args[1], M)
        w = is_torsion(v, M)
        if name == "torsion":
            return ("pass" if w is not None else "fail"), (f"{format_poly(w)} * {_paren(M.format(v))} = 0" if w else "not torsion")
        return ("pass" if w is None else "fail"), ("not torsion" if w is None else f"killed by {format_poly(w)}")
    if name == "torsion_free":
        _nargs(st, 1)
        A = _domain_ring(ws, _name(st.args[0]))
        T = torsion_submodule(omega_presentation(A))
        return ("pass" if T.is_zero else "fail"), ("no torsion" if T.is_zero else "; ".join(T.describe()))
    if name == "pullback_zero":
        _nargs(st, 2)
        m = ws.map(_name(st.args[0]))
        d = pullback(m)
        v = eval_element(st.args[1], d.source)
        img = d.apply(v)
        return ("pass" if not img else "fail"), f"{d.source.format(v)} -> {d.target.format(img)}"
    if name == "kernel_zero":
        _nargs(st, 1)
        m = ws.map(_name(st.args[0]))
        ok = kernel_is_trivial(m)
        return ("pass" if ok else "fail"), f"kernel of {st.args[0].name} {'is' if ok else 'is not'} trivial"
    if name == "cocycle":
        _nargs(st, 1)
        D = ws.diagram(_name(st.args[0]))
        build_cech(D)
        return "pass", "beta∘alpha = 0 on all generators"
    raise ValueError(f"unknown check {name!r}")


def run_checks(ws: Workspace) -> list[CheckOutcome]:
    return [run_check(ws, st) for st in ws.source.statements if isinstance(st, CheckStmt)]
