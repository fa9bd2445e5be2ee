"""Randomized and exhaustive property suites for the engine.

The exhaustive torsion and syzygy suites compare against a small oracle for
``F2[x]`` written directly on bit-packed integers (bit ``i`` = coefficient of
``x^i``), which shares no code with the Gröbner engine.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .field import CoeffField
from .gb import FreeElem, Ideal, groebner_basis, normal_form, syzygies
from .kaehler import FPModule, torsion_submodule
from .algebra import make_algebra
from .orders import GREVLEX, LEX, Block, GrevLex, Lex
from .poly import Poly, PolyRing


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, detail: str):
        self.failures.append(detail)

    def __str__(self):
        return f"{self.name}: {self.cases} cases, {len(self.failures)} failures"


# ---------------------------------------------------------------------------
# random generation


def random_poly(ring: PolyRing, rng: random.Random, max_deg: int = 3, max_terms: int = 4) -> Poly:
    d = {}
    F = ring.field
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_deg)
        e = [0] * ring.nvars
        for _ in range(deg):
            e[rng.randrange(ring.nvars)] += 1
        c = rng.randrange(1, F.p) if F.p else rng.randint(-5, 5) or 1
        d[tuple(e)] = d.get(tuple(e), 0) + c
    return ring.from_dict(d)


def random_ideal(ring: PolyRing, rng: random.Random, ngens=(1, 3), max_deg: int = 3) -> Ideal:
    gens = []
    while len(gens) < rng.randint(*ngens):
        f = random_poly(ring, rng, max_deg, 3)
        if f:
            gens.append(f)
    return Ideal(ring, gens)


ORDERS = (GREVLEX, LEX, Block(1, GrevLex(), GrevLex()))


# ---------------------------------------------------------------------------
# suites


def gb_suite(seed: int, count: int = 100, primes=(2, 3, 5)) -> SuiteResult:
    """Buchberger fixpoint and NF idempotence on sampled ideals."""
    rng = random.Random(seed)
    res = SuiteResult("gb fixpoint / nf idempotence")
    for k in range(count):
        p = primes[k % len(primes)] if k % 4 else 0
        order = ORDERS[k % len(ORDERS)]
        ring = PolyRing(CoeffField(p), ("x", "y", "z"), order)
        I = random_ideal(ring, rng)
        G = I.gb()
        again = groebner_basis(Ideal(ring, G.elements))
        res.cases += 1
        if again.elements != G.elements:
            res.fail(f"fixpoint: {I.gens} -> {G.elements} -> {again.elements}")
            continue
        if not G.self_test():
            res.fail(f"buchberger criterion fails for {I.gens}")
        for g in I.gens:
            if normal_form(g, G):
                res.fail(f"generator {g} does not reduce to 0")
        for _ in range(3):
            v = random_poly(ring, rng, 4, 5)
            r = normal_form(v, G)
            if normal_form(r, G) != r:
                res.fail(f"nf not idempotent on {v}")
            w = sum((random_poly(ring, rng, 2, 2) * g for g in I.gens), ring.zero)
            if normal_form(w, G):
                res.fail(f"combination {w} of generators not reduced to 0")
    return res


def derivation_suite(seed: int, count: int = 100, primes=(2, 3, 5)) -> SuiteResult:
    """Leibniz rule and ``d(g^p) = 0`` for sampled polynomials, ``count`` per prime."""
    rng = random.Random(seed)
    res = SuiteResult("leibniz / frobenius")
    for p in primes:
        ring = PolyRing(CoeffField(p), ("x", "y", "z"))
        for _ in range(count):
            f, g = random_poly(ring, rng), random_poly(ring, rng)
            res.cases += 1
            for i in range(ring.nvars):
                lhs = (f * g).derivative(i)
                rhs = f * g.derivative(i) + g * f.derivative(i)
                if lhs != rhs:
                    res.fail(f"leibniz fails for {f}, {g} in variable {i}")
                if (g ** p).derivative(i):
                    res.fail(f"d({g}^{p}) != 0 in variable {i}")
    return res


def omega_leibniz_suite(seed: int, count: int = 30) -> SuiteResult:
    """Leibniz in Ω¹ of a quotient ring: d(fg) = f dg + g df modulo the Jacobian relations."""
    rng = random.Random(seed)
    res = SuiteResult("leibniz in omega")
    from .kaehler import omega_presentation, universal_d

    for p, rels in ((2, ["y^2 - x*z^2"]), (3, ["z^3 + z*x - y"]), (0, ["y^2 - x^3"])):
        names = ["x", "y", "z"] if p else ["x", "y"]
        A = make_algebra(CoeffField(p), names, rels)
        M = omega_presentation(A)
        for _ in range(count):
            f, g = random_poly(A.ring, rng), random_poly(A.ring, rng)
            res.cases += 1
            lhs = universal_d(A, f * g, M)
            rhs = universal_d(A, g, M) * f + universal_d(A, f, M) * g
            if not M.equal(lhs, rhs):
                res.fail(f"leibniz in omega fails for {f}, {g}")
    return res


def order_suite(seed: int, count: int = 200) -> SuiteResult:
    """Monomial orders are total, antisymmetric and multiplicative."""
    rng = random.Random(seed)
    res = SuiteResult("monomial orders")
    for order in (*ORDERS, Block(2, Lex(), GrevLex())):
        for _ in range(count):
            a, b, m = (tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(3))
            res.cases += 1
            c = order.compare(a, b)
            if c != -order.compare(b, a) or (c == 0) != (a == b):
                res.fail(f"{order.name}: not total/antisymmetric on {a}, {b}")
            am = tuple(x + y for x, y in zip(a, m))
            bm = tuple(x + y for x, y in zip(b, m))
            if c != order.compare(am, bm):
                res.fail(f"{order.name}: not multiplicative on {a}, {b}, {m}")
    return res


# ---------------------------------------------------------------------------
# F2[x] oracle on bit-packed integers


def bmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def bdeg(a: int) -> int:
    return a.bit_length() - 1


def polys_upto(deg: int):
    """All F2[x] polynomials of degree <= deg, including 0."""
    return range(1 << (deg + 1))


class F2Span:
    """Row-echelon basis of an F2-span of bit-packed vectors."""

    def __init__(self, vectors=()):
        self.basis: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            if top not in self.basis:
                return v
            v ^= self.basis[top]
        return 0

    def add(self, v: int):
        v = self.reduce(v)
        if v:
            self.basis[v.bit_length() - 1] = v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0


def f2_span_contains(vectors: list[int], target: int) -> bool:
    """Is ``target`` in the F2-span of ``vectors`` (all bit-packed)?"""
    return target in F2Span(vectors)


def f2_kernel(columns: list[int]) -> list[int]:
    """Basis of ``{c in F2^n : sum c_j columns[j] = 0}``, each as a bitmask over j."""
    basis: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(columns):
        v, tag = col, 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                bv, bt = basis[top]
                v ^= bv
                tag ^= bt
            else:
                basis[top] = (v, tag)
                break
        if not v:
            kernel.append(tag)
    return kernel


def _pack(vec: tuple[int, ...], width: int) -> int:
    """Concatenate bit-polynomials of a vector into one integer, ``width`` bits per slot."""
    out = 0
    for k, c in enumerate(vec):
        out |= c << (k * width)
    return out


WIDTH = 64


def relation_span(rels: list[tuple[int, ...]], coeff_deg: int) -> F2Span:
    """F2-span of ``x^s * q`` for each relation ``q`` and ``s <= coeff_deg``."""
    return F2Span(_pack(tuple(c << s for c in q), WIDTH) for q in rels for s in range(coeff_deg + 1))


def oracle_in_submodule(v: tuple[int, ...], rels: list[tuple[int, ...]], coeff_deg: int) -> bool:
    """``v`` in the F2[x]-span of ``rels`` using multipliers of degree <= coeff_deg."""
    return _pack(v, WIDTH) in relation_span(rels, coeff_deg)


def oracle_is_torsion(v, rels, ann_deg: int = 4, coeff_deg: int = 10, span: F2Span | None = None) -> bool:
    """Is some nonzero ``a`` of degree <= ann_deg with ``a*v`` in the relation span?"""
    if not any(v):
        return True
    span = span or relation_span(rels, coeff_deg)
    return any(_pack(tuple(bmul(a, c) for c in v), WIDTH) in span for a in range(1, 1 << (ann_deg + 1)))


def _to_poly(ring: PolyRing, a: int) -> Poly:
    return ring.from_dict({(i,): 1 for i in range(a.bit_length()) if a >> i & 1})


def f2x_modules(max_single: int = 3, max_pair: int = 1):
    """Presentations over F2[x]: one relation of degree <= max_single in rank 1 or 2,
    and two relations of degree <= max_pair in rank 2."""
    for q in range(1, 1 << (max_single + 1)):
        yield 1, [(q,)]
    for q in itertools.product(polys_upto(max_single), repeat=2):
        if any(q):
            yield 2, [q]
    vecs = [q for q in itertools.product(polys_upto(max_pair), repeat=2) if any(q)]
    for a, b in itertools.combinations(vecs, 2):
        yield 2, [a, b]


def torsion_bruteforce_suite(elem_deg: int = 2, max_single: int = 3, max_pair: int = 1) -> SuiteResult:
    """Engine torsion vs. the bounded search for killed elements, on every listed presentation."""
    res = SuiteResult("torsion vs brute force over F2[x]")
    F = CoeffField(2)
    A = make_algebra(F, ["x"])
    ring = A.ring
    elems = {r: [v for v in itertools.product(polys_upto(elem_deg), repeat=r)] for r in (1, 2)}
    for r, rels in f2x_modules(max_single, max_pair):
        M = FPModule(A, [f"e{i}" for i in range(r)], [FreeElem([_to_poly(ring, c) for c in q]) for q in rels])
        T = torsion_submodule(M)
        span = relation_span(rels, 10)
        res.cases += 1
        for g in T.generators:
            if not g.verify(M):
                res.fail(f"witness fails for {rels}")
        for v in elems[r]:
            engine = T.contains(FreeElem([_to_poly(ring, c) for c in v]))
            oracle = oracle_is_torsion(v, rels, span=span)
            if engine != oracle:
                res.fail(f"rels {rels}: element {v} engine={engine} oracle={oracle}")
    return res


def bdivmod(a: int, b: int) -> tuple[int, int]:
    q, db = 0, bdeg(b)
    while a and bdeg(a) >= db:
        s = bdeg(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def bgcd(a: int, b: int) -> int:
    while b:
        a, b = b, bdivmod(a, b)[1]
    return a


def bdet(u: tuple[int, int], v: tuple[int, int]) -> int:
    return bmul(u[0], v[1]) ^ bmul(u[1], v[0])


def hermite_key(rels: list[tuple[int, int]]) -> tuple:
    """Hermite normal form of the F2[x]-span of rank-2 row vectors; equal keys mean equal spans."""
    col = [r for r in rels if r[0]]
    rest = [r for r in rels if not r[0] and r[1]]
    while len(col) > 1:
        col.sort(key=lambda r: bdeg(r[0]))
        piv, nxt = col[0], [col[0]]
        for r in col[1:]:
            q = bdivmod(r[0], piv[0])[0]
            r = (r[0] ^ bmul(q, piv[0]), r[1] ^ bmul(q, piv[1]))
            (nxt if r[0] else rest).append(r)
        col = nxt
    g = 0
    for r in rest:
        g = bgcd(g, r[1])
    if not col:
        return ((0, g),)
    a, b = col[0]
    return ((a, bdivmod(b, g)[1] if g else b), (0, g))


def f2x_submodules(max_deg: int = 3):
    """Every relation submodule N of F2[x]^r (r <= 2) spanned by at most r vectors of
    degree <= max_deg, once per distinct N (rank 1 spans are principal ideals)."""
    yield 1, []
    for q in range(1, 1 << (max_deg + 1)):
        yield 1, [(q,)]
    yield 2, []
    vecs = [q for q in itertools.product(polys_upto(max_deg), repeat=2) if any(q)]
    seen = set()
    for rels in itertools.chain(([v] for v in vecs), (list(c) for c in itertools.combinations(vecs, 2))):
        key = hermite_key(rels)
        if key not in seen:
            seen.add(key)
            yield 2, rels


def pid_torsion(rank: int, rels: list[tuple[int, ...]]):
    """Torsion of F2[x]^rank / N by structure over a PID.

    Returns ``("zero", None)``, ``("all", d)`` with ``d`` killing every basis vector,
    or ``("line", w)`` when the torsion is F2[x]*w for a primitive vector ``w``."""
    if not rels:
        return "zero", None
    if rank == 1:
        return "all", rels[0][0]
    d = bdet(rels[0], rels[1]) if len(rels) == 2 else 0
    if d:
        return "all", d
    r = rels[0]
    g = bgcd(r[0], r[1])
    return "line", (bdivmod(r[0], g)[0], bdivmod(r[1], g)[0])


def _to_bits(p: Poly) -> int:
    return sum(1 << e[0] for e, c in p.as_dict().items() if c)


def torsion_exhaustive_suite(max_deg: int = 3) -> SuiteResult:
    """Engine torsion vs. the PID description on every submodule from f2x_submodules.

    The oracle's claims are checked by brute force: ``d * e_i`` lies in the relation
    span with multipliers of degree <= max_deg (the adjugate bound)."""
    res = SuiteResult("torsion vs PID structure over F2[x], exhaustive")
    A = make_algebra(CoeffField(2), ["x"])
    ring = A.ring
    for r, rels in f2x_submodules(max_deg):
        M = FPModule(A, [f"e{i}" for i in range(r)], [FreeElem([_to_poly(ring, c) for c in q]) for q in rels])
        T = torsion_submodule(M)
        res.cases += 1
        kind, data = pid_torsion(r, rels)
        basis = [tuple(int(i == j) for i in range(r)) for j in range(r)]
        gens = [tuple(_to_bits(c) for c in g.element.comps) for g in T.generators]
        if not all(g.verify(M) for g in T.generators):
            res.fail(f"witness fails for {rels}")
        if kind == "zero":
            ok = T.is_zero
        elif kind == "all":
            span = relation_span(rels, max_deg)
            ok = all(_pack(tuple(bmul(data, c) for c in e), WIDTH) in span for e in basis)
            ok = ok and all(T.contains(FreeElem([_to_poly(ring, c) for c in e])) for e in basis)
        else:
            ok = T.contains(FreeElem([_to_poly(ring, c) for c in data])) and all(bdet(g, data) == 0 for g in gens)
        if not ok:
            res.fail(f"rank {r} rels {rels}: oracle {kind} {data}, engine {T.describe()}")
    return res


def syzygy_bruteforce_suite(max_deg: int = 3, coeff_deg: int = 3, count: int = 60, seed: int = 0) -> SuiteResult:
    """Syzygies of columns in F2[x]^s (s <= 2): exactness, and every bounded syzygy is generated."""
    rng = random.Random(seed)
    res = SuiteResult("syzygies vs brute force over F2[x]")
    F = CoeffField(2)
    ring = PolyRing(F, ["x"])
    for _ in range(count):
        s = rng.randint(1, 2)
        r = rng.randint(2, 3)
        cols = []
        while len(cols) < r:
            c = tuple(rng.randrange(1 << (max_deg + 1)) for _ in range(s))
            if any(c):
                cols.append(c)
        S = syzygies([FreeElem([_to_poly(ring, a) for a in c]) for c in cols])
        res.cases += 1
        for g in S.gens:
            total = [ring.zero] * s
            for a, c in zip(g.comps, cols):
                for k in range(s):
                    total[k] = total[k] + a * _to_poly(ring, c[k])
            if any(total):
                res.fail(f"syzygy {g} of {cols} is not exact")
        # all (a_1..a_r) with deg a_j <= coeff_deg and sum a_j col_j = 0
        basis_vars = [(j, t) for j in range(r) for t in range(coeff_deg + 1)]
        images = [_pack(tuple(c << t for c in cols[j]), WIDTH) for j, t in basis_vars]
        for tag in f2_kernel(images):
            a = [0] * r
            for k, (j, t) in enumerate(basis_vars):
                if tag >> k & 1:
                    a[j] ^= 1 << t
            if not S.contains(FreeElem([_to_poly(ring, c) for c in a])):
                res.fail(f"bounded syzygy {a} of {cols} not generated")
    return res


def run_all(seed: int = 0, count: int = 100) -> list[SuiteResult]:
    return [
        gb_suite(seed, count),
        derivation_suite(seed, count),
        omega_leibniz_suite(seed, max(10, count // 4)),
        order_suite(seed, 2 * count),
        syzygy_bruteforce_suite(seed=seed, count=max(20, count // 2)),
        torsion_bruteforce_suite(),
        torsion_exhaustive_suite(),
    ]
