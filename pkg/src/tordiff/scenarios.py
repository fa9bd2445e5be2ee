"""Parameterized reconstructions of the worked examples, each producing a Report.

Every scenario builds its rings and maps from scratch, runs a fixed list of
named checks, and records a witness string per check.  Checks never raise:
engine errors become failed checks, except ResourceCap which propagates so
the caller can report it separately.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .algebra import (
    FPAlgebra,
    are_inverse,
    domain_by_embedding,
    domain_by_simplification,
    identity,
    is_nonzerodivisor,
    make_algebra,
    morphism,
    morphism_kernel,
    quotient_by_ideal,
    reduced_candidate_verify,
    simplify_presentation,
    tensor_product,
    zerodivisor_witness,
)
from .descent import CoverDiagram, Piece, ProductNode, build_cech, evaluate, exactness_witness
from .errors import NotADomain, ParamOutOfRange, ResourceCap, TordiffError, UnknownScenario
from .field import CoeffField, is_prime
from .gb import Ideal, collect_stats, radical_membership
from .kaehler import (
    DivisionProof,
    annihilator,
    hyperplane_criterion,
    is_torsion,
    jacobian_row,
    omega_presentation,
    prune,
    pullback,
    semilinear_image_membership,
    torsion_submodule,
    universal_d,
)
from .poly import format_poly
from .report import Check, Report

MAX_P = 7
MAX_N = 4


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Param:
    name: str
    default: object
    choices: tuple | None = None
    help: str = ""
    kind: type = int

    def coerce(self, value):
        if self.kind is int:
            try:
                value = int(value)
            except (TypeError, ValueError):
                raise ParamOutOfRange(f"{self.name} must be an integer, got {value!r}") from None
        else:
            value = str(value)
        if self.choices is not None and value not in self.choices:
            raise ParamOutOfRange(f"{self.name}={value} outside {list(self.choices)}")
        return value


@dataclass(frozen=True)
class Scenario:
    name: str
    summary: str
    params: tuple
    anchors: tuple
    run: Callable = field(repr=False, compare=False)
    validate: Callable | None = field(default=None, repr=False, compare=False)

    def resolve(self, given: dict) -> dict:
        known = {p.name for p in self.params}
        extra = set(given) - known
        if extra:
            raise ParamOutOfRange(f"{self.name} takes no parameter(s) {sorted(extra)}")
        out = {}
        for p in self.params:
            value = given.get(p.name)
            out[p.name] = p.coerce(p.default if value is None else value)
        if self.validate:
            self.validate(out)
        return out

    def listing(self) -> dict:
        return {
            "name": self.name,
            "summary": self.summary,
            "params": {p.name: {"default": p.default, "choices": list(p.choices) if p.choices else None,
                                "help": p.help} for p in self.params},
            "anchors": list(self.anchors),
        }


REGISTRY: dict[str, Scenario] = {}
PRIMES = tuple(p for p in range(2, MAX_P + 1) if is_prime(p))


def scenario(name, summary, params, anchors, validate=None):
    def deco(fn):
        REGISTRY[name] = Scenario(name, summary, tuple(params), tuple(anchors), fn, validate)
        return fn

    return deco


def list_scenarios() -> list[dict]:
    return [REGISTRY[k].listing() for k in REGISTRY]


def get_scenario(name: str) -> Scenario:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownScenario(f"unknown scenario {name!r}; known: {', '.join(REGISTRY)}") from None


def run_scenario(name: str, params: dict | None = None) -> Report:
    sc = get_scenario(name)
    resolved = sc.resolve(dict(params or {}))
    report = Report(name, resolved)
    t0 = time.perf_counter()
    with collect_stats() as stats:
        sc.run(Runner(report), **resolved)
    report.stats = stats.as_dict()
    report.stats["elapsed_ms"] = round((time.perf_counter() - t0) * 1000)
    return report


class Runner:
    """Executes checks in order and records them on the report."""

    def __init__(self, report: Report):
        self.report = report

    def note(self, text: str):
        self.report.notes.append(text)

    def check(self, id: str, anchor: str, fn: Callable):
        """``fn`` returns ``(ok, witness)``; ``ok`` may also be a status string."""
        t0 = time.perf_counter()
        try:
            ok, witness = fn()
            status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        except ResourceCap:
            raise
        except (TordiffError, AssertionError) as e:
            status, witness = "fail", f"{type(e).__name__}: {e}"
        self.report.checks.append(Check(id, status, witness, anchor, time.perf_counter() - t0))
        return status == "pass"


def _require_prime(params, allowed=None):
    p = params["p"]
    if not is_prime(p):
        raise ParamOutOfRange(f"p={p} is not prime")
    if allowed is not None and p not in allowed:
        raise ParamOutOfRange(f"p={p} outside {list(allowed)}")


# ---------------------------------------------------------------------------
# shared constructions


ANCHOR_WHITNEY = "Whitney umbrella in characteristic 2: dx is a torsion form"
ANCHOR_NONFUNCTORIAL = "torsion forms do not pull back to torsion forms"
ANCHOR_BLOWUP = "the blow-up of the Whitney umbrella kills the pulled-back torsion"
ANCHOR_CDH = "cdh-torsion exists: kernel of the cover sequence of the umbrella"
ANCHOR_H = "h-covers kill da: Spec A[T]/(T^m - a) with m = 0 in k"
ANCHOR_SDH = "sdh-descent fails for the degree-p cover z^p + z*x^n = y"
ANCHOR_SALT = "s-alt-descent fails for the same cover when n >= 2"
ANCHOR_FIBRE = "explicit fibre products of the degree-p cover"
ANCHOR_NILPOTENT = "torsion over a dense open is not stable under pull-back to nilpotent schemes"
ANCHOR_HYPERPLANE = "restriction of torsion to a reduced irreducible hyperplane injects into its differentials"


def whitney_ring(p: int = 2) -> FPAlgebra:
    F = CoeffField(p)
    R = make_algebra(F, ["x", "y", "z"], ["y^2 - x*z^2"])
    U = make_algebra(F, ["u", "z"])
    proved = domain_by_embedding(R, morphism(R, U, ["u^2", "u*z", "z"]))
    if proved is None:
        raise NotADomain("the umbrella ring does not embed into k[u,z] in this characteristic")
    return proved


def degree_p_cover(p: int, n: int):
    """``X = Spec k[x,y]`` and ``X~ = Spec k[x,y,z]/(z^p + z*x^n - y)``."""
    F = CoeffField(p)
    X = make_algebra(F, ["x", "y"])
    S0 = make_algebra(F, ["x", "y", "z"], [f"z^{p} + z*x^{n} - y"])
    S = domain_by_simplification(S0)
    pi = morphism(X, S, ["x", "y"])
    return F, X, S, pi


# ---------------------------------------------------------------------------
# scenarios


@scenario(
    "whitney_torsion",
    "dx is torsion on the char-2 Whitney umbrella, and its pull-back to the singular line is not",
    [Param("p", 2, (2,), "characteristic")],
    (ANCHOR_WHITNEY, ANCHOR_NONFUNCTORIAL),
)
def _whitney_torsion(run: Runner, p: int):
    R = whitney_ring(p)
    M = omega_presentation(R)
    state = {}

    def torsion_generator():
        T = torsion_submodule(M)
        state["T"] = T
        dx = M.gen("dx")
        ok = (len(T.generators) == 1 and M.equal(T.generators[0].element, dx)
              and R.equal(T.generators[0].witness, "z^2") and T.generators[0].verify(M))
        return ok, T.describe()[0] if T.generators else "no torsion found"

    run.check("torsion_generator", ANCHOR_WHITNEY, torsion_generator)

    def quotient_free():
        T = state["T"]
        P = prune(T.quotient).module
        ok = P.is_free and P.rank == 2 and T.rank == 2 and not torsion_submodule(T.quotient).generators
        return ok, f"Ω¹/tor = {P}, generic rank {T.rank}"

    run.check("quotient_free_rank_2", ANCHOR_WHITNEY, quotient_free)

    def z_nonzerodivisor():
        ok = is_nonzerodivisor(R, "z")
        return ok, "z is a nonzerodivisor in k[x,y,z]/(y^2 - x*z^2)"

    run.check("z_nonzerodivisor", ANCHOR_WHITNEY, z_nonzerodivisor)

    X = make_algebra(CoeffField(p), ["x"])

    def pullback_dx():
        f = morphism(R, X, ["x", "0", "0"])
        d = pullback(f)
        img = d.apply(M.gen("dx"))
        state["img"] = (d, img)
        return d.target.equal(img, d.target.gen("dx")), f"f#: {f}; dx -> {d.target.format(img)}"

    run.check("pullback_dx", ANCHOR_NONFUNCTORIAL, pullback_dx)

    def pullback_not_torsion():
        d, img = state["img"]
        w = is_torsion(img, d.target)
        ann = annihilator(img, d.target)
        gens = ", ".join(format_poly(g) for g in ann.gb().elements) or "0"
        return w is None, f"annihilator of dx in Ω¹(k[x]) is ({gens}); not torsion"

    run.check("pullback_not_torsion", ANCHOR_NONFUNCTORIAL, pullback_not_torsion)


def whitney_diagram(p: int = 2):
    F = CoeffField(p)
    R = whitney_ring(p)
    U = make_algebra(F, ["u", "z"])
    X = make_algebra(F, ["x"])
    pi = morphism(R, U, ["u^2", "u*z", "z"])
    f = morphism(R, X, ["x", "0", "0"])
    # E = preimage of the singular line, computed as a fibre product and simplified
    tp = tensor_product(U, X, pi, f)
    D = CoverDiagram(
        R,
        [Piece("Y~", U, pi), Piece("X", X, f)],
        {(0, 1): ProductNode("E", tp.algebra, tp.left, tp.right)},
        "cdp+open",
        "whitney",
    )
    return D, pi, f


@scenario(
    "whitney_cdh",
    "the blow-up kills dx, and 0 ⊕ dx is a nonzero kernel element of the cover sequence",
    [Param("p", 2, (2,), "characteristic")],
    (ANCHOR_BLOWUP, ANCHOR_CDH, ANCHOR_NONFUNCTORIAL),
)
def _whitney_cdh(run: Runner, p: int):
    run.note("ker b is identified with the cdh-differentials of the umbrella by cdp-descent; "
             "that identification is imported, only membership in ker b is computed")
    state = {}

    def pi_verified():
        D, pi, f = whitney_diagram(p)
        state.update(D=D, pi=pi)
        U = pi.target
        lhs = U.ring("(u*z)^2 - u^2*z^2")
        return not U.reduce(lhs), f"π#: {pi}; (u*z)^2 - u^2*z^2 = {format_poly(U.reduce(lhs))}"

    run.check("pi_verified", ANCHOR_BLOWUP, pi_verified)

    def d_u2_zero():
        U = state["pi"].target
        d = universal_d(U, "u^2")
        return not d, f"d(u^2) = {omega_presentation(U).format(d)} in Ω¹(k[u,z])"

    run.check("d_u2_zero", ANCHOR_BLOWUP, d_u2_zero)

    def pullback_kills_dx():
        dpi = pullback(state["pi"])
        img = dpi.apply(dpi.source.gen("dx"))
        return not img, f"dπ(dx) = {dpi.target.format(img)}"

    run.check("pullback_kills_dx", ANCHOR_BLOWUP, pullback_kills_dx)

    def cocycle():
        pair = build_cech(state["D"])
        state["pair"] = pair
        node = pair.diagram.products[(0, 1)]
        return True, f"beta∘alpha = 0 on all generators; E = Spec {node.algebra}"

    run.check("cocycle", ANCHOR_CDH, cocycle)

    def beta_zero():
        pair = state["pair"]
        cand = pair.middle({"X": {"dx": 1}})
        state["cand"] = cand
        out = evaluate(pair, "beta", cand)
        return not any(out), f"beta({pair.format_middle(cand)}) = {pair.format_last(out)}"

    run.check("beta_zero", ANCHOR_CDH, beta_zero)

    def kernel_element():
        pair, cand = state["pair"], state["cand"]
        ok = not cand[0] and bool(cand[1])
        return ok, f"Y~-component {pair.piece_modules[0].format(cand[0])}, X-component {pair.piece_modules[1].format(cand[1])}"

    run.check("kernel_element_nonzero", ANCHOR_CDH, kernel_element)

    def restriction_not_torsion():
        pair, cand = state["pair"], state["cand"]
        MX = pair.piece_modules[1]
        w = is_torsion(cand[1], MX)
        return w is None, f"{MX.format(cand[1])} is not torsion in Ω¹(k[x])"

    run.check("restriction_not_torsion", ANCHOR_NONFUNCTORIAL, restriction_not_torsion)

    def comes_from_torsion():
        pair, cand = state["pair"], state["cand"]
        v = exactness_witness(pair, cand)
        pre = v.image.preimage
        if v.in_image != "member":
            return False, f"in_image = {v.in_image}"
        M = pair.base_module
        w = is_torsion(pre, M)
        ok = v.in_kernel and w is not None and v.image.verify(_AlphaView(pair), cand)
        return ok, f"alpha({M.format(pre)}) = {pair.format_middle(cand)} with {format_poly(w)} * {M.format(pre)} = 0"

    run.check("kernel_element_is_torsion_form", ANCHOR_CDH, comes_from_torsion)


class _AlphaView:
    """Makes ``alpha`` of a CechPair look like a single map for verdict checks."""

    def __init__(self, pair):
        self.pair = pair
        self.target = self

    def apply(self, v):
        return evaluate(self.pair, "alpha", v)

    def equal(self, a, b):
        return all(M.equal(x, y) for M, x, y in zip(self.pair.piece_modules, a, b))


def _h_validate(params):
    _require_prime(params)
    p = params["p"]
    if params["m"] == 0:
        params["m"] = p
    m = params["m"]
    if m < 1 or m % p:
        raise ParamOutOfRange(f"m={m} must be a positive multiple of p={p}")
    if m > 4 * MAX_P:
        raise ParamOutOfRange(f"m={m} exceeds {4 * MAX_P}")


@scenario(
    "h_vanishing",
    "da dies on the finite cover Spec A[T]/(T^m - a) when p divides m",
    [Param("p", 2, PRIMES, "characteristic"),
     Param("m", 0, None, "exponent, a multiple of p (0 means m = p)"),
     Param("a", "x", None, "element a of A = k[x,y]", str)],
    (ANCHOR_H,),
    _h_validate,
)
def _h_vanishing(run: Runner, p: int, m: int, a: str):
    F = CoeffField(p)
    A = make_algebra(F, ["x", "y"])
    state = {}

    def cover_verified():
        av = A(a)
        B = make_algebra(F, ["x", "y", "T"], [f"T^{m} - ({format_poly(av)})"])
        state.update(av=av, B=B, phi=morphism(A, B, ["x", "y"]))
        return True, f"k[x,y] -> {B}"

    run.check("cover_verified", ANCHOR_H, cover_verified)

    def da_vanishes():
        av = state["av"]
        d = pullback(state["phi"])
        da = universal_d(A, av)
        img = d.apply(da)
        return not img, f"d({format_poly(av)}) = {d.source.format(da)} -> {d.target.format(img)}"

    run.check("da_vanishes", ANCHOR_H, da_vanishes)

    def d_Tm_zero():
        row = jacobian_row(state["B"].ring.var("T") ** m)
        T = state["B"].ring.var("T")
        return not row, f"d(T^{m}) = {m} * {format_poly(T ** (m - 1))} * dT = 0 in characteristic {p}"

    run.check("d_T_m_zero", ANCHOR_H, d_Tm_zero)


def _range_validate(primes, ns):
    def validate(params):
        _require_prime(params, primes)
        if params["n"] not in ns:
            raise ParamOutOfRange(f"n={params['n']} outside {list(ns)}")

    return validate


def sdh_diagram(p: int, n: int):
    """The cover X~ ⊔ Z -> X with its four fibre products."""
    F, X, S, pi = degree_p_cover(p, n)
    Zq, _ = quotient_by_ideal(X, ["x"])
    zs = simplify_presentation(Zq)
    Z = domain_by_simplification(zs.algebra) or zs.algebra
    iota = morphism(X, Z, [zs.forward.apply(v) for v in X.gens()])
    p01 = tensor_product(S, Z, pi, iota)
    p10 = tensor_product(Z, S, iota, pi)
    p00 = tensor_product(S, S, pi, pi)
    products = {
        (0, 0): ProductNode("X~×X~", p00.algebra, p00.left, p00.right),
        (0, 1): ProductNode("Z~", p01.algebra, p01.left, p01.right),
        (1, 0): ProductNode("Z~'", p10.algebra, p10.left, p10.right),
        (1, 1): ProductNode("Z", Z, identity(Z), identity(Z)),
    }
    D = CoverDiagram(X, [Piece("X~", S, pi), Piece("Z", Z, iota)], products, "sdh", "sdh")
    return D, S, Z, pi


@scenario(
    "sdh_failure",
    "0 ⊕ dy is a kernel element of the sdh Čech sequence that does not come from Ω¹(X)",
    [Param("p", 2, (2, 3, 5), "characteristic"), Param("n", 1, (1, 2, 3, 4), "exponent of x")],
    (ANCHOR_SDH, ANCHOR_FIBRE),
    _range_validate((2, 3, 5), (1, 2, 3, 4)),
)
def _sdh_failure(run: Runner, p: int, n: int):
    state = {}

    def cover_injective():
        D, S, Z, pi = sdh_diagram(p, n)
        state.update(D=D, S=S, Z=Z, pi=pi)
        K = morphism_kernel(pi)
        ok = K.is_zero() or all(not g for g in K.gb().elements)
        return ok, f"π#: {pi}; ker π# = (0); X~ ≅ {simplify_presentation(S).algebra}"

    run.check("cover_injective", ANCHOR_SDH, cover_injective)

    def zt_presentation():
        F = state["S"].field
        S0 = make_algebra(F, ["x", "y", "z"], [f"z^{p} + z*x^{n} - y"])
        Zt, _ = quotient_by_ideal(S0, ["x"])
        expected = Ideal(S0.ring, [S0.ring(f"z^{p} + z*x^{n} - y"), S0.ring("x")])
        mid = make_algebra(F, ["y", "z"], [f"z^{p} - y"])
        kz = make_algebra(F, ["z"])
        to_mid = morphism(Zt, mid, ["0", "y", "z"])
        from_mid = morphism(mid, Zt, ["y", "z"])
        to_kz = morphism(mid, kz, [f"z^{p}", "z"])
        from_kz = morphism(kz, mid, ["z"])
        node = state["D"].products[(0, 1)].algebra
        ok = (Zt.ideal.equals(expected) and are_inverse(to_mid, from_mid) and are_inverse(to_kz, from_kz)
              and node.is_polynomial_ring and node.names == ("z",))
        return ok, f"{Zt} ≅ {mid} ≅ {kz}; fibre product computed as Spec {node}"

    run.check("zt_presentation", ANCHOR_FIBRE, zt_presentation)

    def omega_xt_free():
        M = omega_presentation(state["S"])
        P = prune(M).module
        ok = P.is_free and P.labels == ("dx", "dz")
        return ok, f"Ω¹(X~) = {M} ≅ {P}"

    run.check("omega_xt_free", ANCHOR_FIBRE, omega_xt_free)

    def pullback_matrix():
        d = pullback(state["pi"]).pruned()
        state["dpi"] = d
        want_dy = d.target.element({"dx": f"{n}*z*x^{n - 1}", "dz": f"x^{n}"})
        ok = d.target.equal(d.columns[0], d.target.gen("dx")) and d.target.equal(d.columns[1], want_dy)
        return ok, "; ".join(d.describe())

    run.check("pullback_matrix", ANCHOR_FIBRE, pullback_matrix)

    def zt_pullback_zero():
        node = state["D"].products[(0, 1)]
        d = pullback(node.right)
        return d.is_zero(), f"d(π|Z~): {'; '.join(d.describe())}"

    run.check("zt_pullback_zero", ANCHOR_FIBRE, zt_pullback_zero)

    def beta_zero():
        pair = build_cech(state["D"])
        cand = pair.middle({"Z": {"dy": 1}})
        out = evaluate(pair, "beta", cand)
        state.update(pair=pair, cand=cand)
        return not any(out), f"beta({pair.format_middle(cand)}) = ({', '.join(pair.format_last(out).split(' ⊕ '))})"

    run.check("beta_zero", ANCHOR_SDH, beta_zero)

    def not_in_image():
        pair, cand = state["pair"], state["cand"]
        v = exactness_witness(pair, cand)
        proof = v.image.proof
        cert = getattr(getattr(proof, "verdict", None), "certificate", None)
        x_n = pair.diagram.pieces[0].algebra.ring(f"x^{n}")
        ok = (v.in_kernel and v.in_image == "non_member" and proof.verify()
              and cert is not None and pair.diagram.pieces[0].algebra.equal(cert.minor, x_n))
        return ok, f"in_kernel={str(v.in_kernel).lower()}, in_image={v.in_image}: {proof}"

    run.check("exactness_fails", ANCHOR_SDH, not_in_image)


@scenario(
    "salt_failure",
    "x^{-1} dy lies in Ω¹(X~) but is not a pull-back; the fibre product is as claimed",
    [Param("p", 2, (2, 3), "characteristic"), Param("n", 2, (2, 3, 4), "exponent of x, at least 2")],
    (ANCHOR_SALT, ANCHOR_FIBRE),
    _range_validate((2, 3), (2, 3, 4)),
)
def _salt_failure(run: Runner, p: int, n: int):
    F = CoeffField(p)
    X = make_algebra(F, ["x", "y"])
    Xt = make_algebra(F, ["x", "z"])
    pi = morphism(X, Xt, ["x", f"z^{p} + z*x^{n}"])
    d = pullback(pi)
    omega = d.target.element({"dx": f"{n}*z*x^{n - 2}", "dz": f"x^{n - 1}"})
    state = {}

    def omega_identity():
        lhs = omega * Xt.ring("x")
        rhs = d.apply(d.source.gen("dy"))
        return d.target.equal(lhs, rhs), f"x * ({d.target.format(omega)}) = {d.target.format(rhs)} = dπ(dy)"

    run.check("x_omega_is_dpi_dy", ANCHOR_SALT, omega_identity)

    def not_pullback():
        v = semilinear_image_membership(d, omega, "triangular")
        step = getattr(v.proof, "step", None)
        ok = (v.status == "non_member" and isinstance(step, DivisionProof) and v.proof.verify()
              and step.divisor == Xt.ring(f"x^{n}"))
        return ok, f"{v.status}: {v.proof}"

    run.check("omega_not_pullback", ANCHOR_SALT, not_pullback)

    def fibre_product():
        tp = tensor_product(Xt, Xt, pi, pi)
        P = tp.algebra
        B = make_algebra(F, ["x", "z_1", "u"], [f"u^{p} + x^{n}*u"])
        to_b = morphism(P, B, ["x", "z_1", "u + z_1"])
        from_b = morphism(B, P, ["x", "z_1", "z_2 - z_1"])
        expected = Ideal(P.ring, [P.ring(f"z_2^{p} + z_2*x^{n} - z_1^{p} - z_1*x^{n}")])
        proj_ok = (B.equal(tp.left.then(to_b).apply("z"), "z_1")
                   and B.equal(tp.right.then(to_b).apply("z"), "u + z_1"))
        ok = P.names == ("x", "z_1", "z_2") and P.ideal.equals(expected) and are_inverse(to_b, from_b) and proj_ok
        state.update(B=B)
        return ok, f"X~ ×_X X~ = Spec {P} ≅ Spec {B} via u = z_2 - z_1; projections z -> z_1, z -> u + z_1"

    run.check("fibre_product_presentation", ANCHOR_FIBRE, fibre_product)

    def z2_locus():
        B = state["B"]
        Z2, _ = quotient_by_ideal(B, ["x", "u"])
        s = simplify_presentation(Z2)
        return s.algebra.is_polynomial_ring and s.algebra.names == ("z_1",), f"V(x, u) = Spec {Z2} ≅ Spec {s.algebra}"

    run.check("singular_locus", ANCHOR_FIBRE, z2_locus)

    def reduced_candidate():
        kz = make_algebra(F, ["z"])
        ky = make_algebra(F, ["y"])
        frob = morphism(ky, kz, [f"z^{p}"])
        tp = tensor_product(kz, kz, frob, frob)
        A = tp.algebra
        red, verdict = reduced_candidate_verify(A, ["z_2 - z_1"])
        state.update(tp=tp, red=red)
        return verdict.passed, f"({A})_red = {red}; {red.provenance}"

    run.check("reduced_candidate", ANCHOR_SALT, reduced_candidate)

    def projections_agree():
        tp, red = state["tp"], state["red"]
        A = tp.algebra
        surj = morphism(A, red, A.gens())
        a, b = tp.left.then(surj), tp.right.then(surj)
        za, zb = tp.left.apply("z"), tp.right.apply("z")
        return a.equals(b), (f"the projections send z to {format_poly(za)} and {format_poly(zb)}; "
                             f"both reduce to {format_poly(a.apply('z'))} in the reduced ring")

    run.check("projections_agree", ANCHOR_SALT, projections_agree)

    def x_nonzerodivisor():
        B = state["B"]
        w = zerodivisor_witness(B, "x")
        return w is None, f"x is a nonzerodivisor in {B}"

    run.check("x_nonzerodivisor", ANCHOR_FIBRE, x_nonzerodivisor)


@scenario(
    "nilpotent_torsion",
    "x is torsion on k[x,y]/(x^2, x*y) but its pull-back to k[x]/(x^2) is not",
    [Param("p", 2, PRIMES, "characteristic")],
    (ANCHOR_NILPOTENT,),
    _require_prime,
)
def _nilpotent_torsion(run: Runner, p: int):
    run.note("the ideal is taken as (x^2, x*y); with (x^2, y) the quotient is k[x]/(x^2) and the claim is vacuous")
    F = CoeffField(p)
    A = make_algebra(F, ["x", "y"], ["x^2", "x*y"])
    B = make_algebra(F, ["x"], ["x^2"])
    state = {}

    def torsion_over_dy():
        ok = A.is_zero("x*y") and not A.is_zero("x")
        return ok, "y * x = 0 in k[x,y]/(x^2, x*y) while x != 0"

    run.check("killed_on_D(y)", ANCHOR_NILPOTENT, torsion_over_dy)

    def dense_open():
        red, verdict = reduced_candidate_verify(A, ["x"])
        ok = verdict.passed and not radical_membership(A.ring("y"), A.ideal)
        return ok, f"nilradical is (x) with A_red = {red} a domain; y is not nilpotent, so D(y) is dense"

    run.check("D(y)_dense", ANCHOR_NILPOTENT, dense_open)

    def image_nonzero():
        f = morphism(A, B, ["x", "0"])
        img = f.apply("x")
        state["img"] = img
        return bool(img), f"x -> {format_poly(img)} in {B}"

    run.check("image_nonzero", ANCHOR_NILPOTENT, image_nonzero)

    def one_point():
        nil = all(radical_membership(v, B.ideal) for v in B.gens())
        ok = nil and bool(state["img"])
        return ok, f"every variable of {B} is nilpotent: Spec is one point, its only dense open is itself, and x != 0 there"

    run.check("not_torsion_on_point", ANCHOR_NILPOTENT, one_point)


@scenario(
    "hyperplane_criterion",
    "the torsion of the umbrella restricted to H = V(x - z) injects into Ω¹ of the cusp",
    [Param("p", 2, (2,), "characteristic")],
    (ANCHOR_HYPERPLANE, ANCHOR_WHITNEY),
)
def _hyperplane(run: Runner, p: int):
    F = CoeffField(p)
    R = whitney_ring(p)
    state = {}

    def hyperplane_is_cusp():
        H, _ = quotient_by_ideal(R, ["x - z"])
        C = make_algebra(F, ["y", "z"], ["y^2 - z^3"])
        to_c = morphism(H, C, ["z", "y", "z"])
        from_c = morphism(C, H, ["y", "z"])
        t = make_algebra(F, ["t"])
        Cd = domain_by_embedding(C, morphism(C, t, ["t^3", "t^2"]))
        ok = are_inverse(to_c, from_c) and Cd is not None
        state["note"] = f"isomorphic to the cusp {C}, which {Cd.provenance if Cd else 'is not proved a domain'}"
        return ok, f"H = Spec {H} ≅ Spec {C}; {Cd.provenance if Cd else 'no embedding'}"

    run.check("hyperplane_is_cusp", ANCHOR_HYPERPLANE, hyperplane_is_cusp)

    def criterion():
        T = torsion_submodule(omega_presentation(R))
        v = hyperplane_criterion(R, "x - z", T, state["note"])
        z2 = all(
            Ideal(v.hyperplane.ring, e.annihilator_h + list(v.hyperplane.ideal.gens)).equals(
                Ideal(v.hyperplane.ring, [v.hyperplane.ring("z^2")] + list(v.hyperplane.ideal.gens)))
            for e in v.entries
        )
        return v.passed and z2 and len(v.entries) == 1, "; ".join(v.describe())

    run.check("injective_on_torsion", ANCHOR_HYPERPLANE, criterion)

    def non_reduced_rejected():
        T = torsion_submodule(omega_presentation(R))
        try:
            hyperplane_criterion(R, "x", T, "not a domain")
        except NotADomain as e:
            return True, f"h = x rejected: {e}"
        return False, "h = x was accepted"

    run.check("non_reduced_rejected", ANCHOR_HYPERPLANE, non_reduced_rejected)
