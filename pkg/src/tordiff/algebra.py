"""Finitely presented algebras k[x]/I, verified morphisms, and constructions on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CandidateRejected, IllDefinedMorphism, NotADomain, RingMismatch
from .field import CoeffField
from .gb import Ideal, eliminate, fresh_name, quotient, radical_membership
from .orders import GREVLEX, Block
from .poly import Poly, PolyRing


class DomainFlag(enum.Enum):
    ASSERTED = "asserted"
    VERIFIED_NOT = "verified-not"
    UNKNOWN = "unknown"


class FPAlgebra:
    """``k[x_1..x_n] / I``; elements are polynomials kept in normal form."""

    def __init__(self, ring: PolyRing, relations: Sequence = (), domain: DomainFlag = DomainFlag.UNKNOWN,
                 provenance: str | None = None):
        if domain is DomainFlag.ASSERTED and not provenance:
            raise ValueError("asserting a domain needs a provenance note")
        self.ring = ring
        self.ideal = Ideal(ring, [ring(r) for r in relations])
        self.ideal.gb()
        self.domain = domain
        self.provenance = provenance

    @property
    def field(self) -> CoeffField:
        return self.ring.field

    @property
    def names(self) -> tuple[str, ...]:
        return self.ring.names

    @property
    def relations(self) -> tuple[Poly, ...]:
        return self.ideal.gens

    def gens(self) -> tuple[Poly, ...]:
        return self.ring.gens()

    def var(self, name) -> Poly:
        return self.ring.var(name)

    def __call__(self, value) -> Poly:
        return self.reduce(self.ring(value))

    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        return self.ideal.reduce(f)

    def is_zero(self, f) -> bool:
        return not self.reduce(self.ring(f))

    def equal(self, f, g) -> bool:
        return self.is_zero(self.ring(f) - self.ring(g))

    @property
    def is_polynomial_ring(self) -> bool:
        return self.ideal.is_zero()

    @property
    def known_domain(self) -> bool:
        """Asserted with provenance, or a polynomial ring over a field."""
        return self.domain is DomainFlag.ASSERTED or self.is_polynomial_ring

    def require_domain(self):
        if not self.known_domain:
            raise NotADomain(f"{self} is not known to be a domain")

    def with_domain(self, note: str) -> FPAlgebra:
        return FPAlgebra(self.ring, self.ideal.gens, DomainFlag.ASSERTED, note)

    def with_not_domain(self, note: str) -> FPAlgebra:
        return FPAlgebra(self.ring, self.ideal.gens, DomainFlag.VERIFIED_NOT, note)

    def same_presentation(self, other: FPAlgebra) -> bool:
        return self.ring == other.ring and self.ideal.equals(other.ideal)

    def __repr__(self):
        base = f"{self.field}[{','.join(self.names)}]"
        if self.ideal.gens:
            base += "/(" + ", ".join(str(g) for g in self.ideal.gens) + ")"
        return base


def make_algebra(field: CoeffField, variables: Sequence[str], relations: Sequence = (), domain_note=None) -> FPAlgebra:
    ring = PolyRing(field, variables, GREVLEX)
    if domain_note:
        return FPAlgebra(ring, relations, DomainFlag.ASSERTED, domain_note)
    return FPAlgebra(ring, relations)


@dataclass(frozen=True)
class AlgebraMorphism:
    """``source -> target`` given by one image per source variable."""

    source: FPAlgebra
    target: FPAlgebra
    images: tuple
    verified: bool = False

    @classmethod
    def build(cls, source: FPAlgebra, target: FPAlgebra, images) -> AlgebraMorphism:
        if isinstance(images, dict):
            images = [images.get(n, n) for n in source.names]
        imgs = tuple(target(im) for im in images)
        if len(imgs) != len(source.names):
            raise ValueError("need one image per source variable")
        return cls(source, target, imgs)

    @property
    def field(self) -> CoeffField:
        return self.source.field

    def apply(self, f) -> Poly:
        f = self.source.ring(f)
        return self.target.reduce(f.subs(self.images, self.target.ring))

    __call__ = apply

    def then(self, other: AlgebraMorphism) -> AlgebraMorphism:
        """``other ∘ self``."""
        imgs = tuple(other.apply(im) for im in self.images)
        return AlgebraMorphism(self.source, other.target, imgs, self.verified and other.verified)

    def equals(self, other: AlgebraMorphism) -> bool:
        return all(self.target.equal(a, b) for a, b in zip(self.images, other.images))

    def __repr__(self):
        body = ", ".join(f"{n} -> {im}" for n, im in zip(self.source.names, self.images))
        return f"{{{body}}}"


def identity(A: FPAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, A.gens(), True)


def verify_morphism(phi: AlgebraMorphism) -> AlgebraMorphism:
    for rel in phi.source.ideal.gens:
        img = phi.apply(rel)
        if img:
            raise IllDefinedMorphism(rel, img)
    return AlgebraMorphism(phi.source, phi.target, phi.images, True)


def morphism(source: FPAlgebra, target: FPAlgebra, images) -> AlgebraMorphism:
    return verify_morphism(AlgebraMorphism.build(source, target, images))


def _tag_ring(phi: AlgebraMorphism):
    """Target variables followed by one tag per source variable, target block first."""
    taken = list(phi.target.names)
    tags = []
    for n in phi.source.names:
        t = fresh_name(taken + tags, f"_{n}")
        tags.append(t)
    ring = PolyRing(phi.field, tuple(taken) + tuple(tags), Block(len(taken), GREVLEX, GREVLEX))
    gens = [g.to_ring(ring) for g in phi.target.ideal.gens]
    for t, im in zip(tags, phi.images):
        gens.append(ring.var(t) - im.to_ring(ring))
    return ring, tags, gens


def morphism_kernel(phi: AlgebraMorphism) -> Ideal:
    """``ker phi`` as an ideal of the source polynomial ring (it contains the source ideal)."""
    ring, tags, gens = _tag_ring(phi)
    K = eliminate(Ideal(ring, gens), tags)
    src = phi.source.ring
    out = [Poly(src, dict(g._d)) for g in K.gens]
    return Ideal(src, list(phi.source.ideal.gens) + out)


def kernel_is_trivial(phi: AlgebraMorphism) -> bool:
    K = morphism_kernel(phi)
    return phi.source.ideal.contains(K)


def are_inverse(phi: AlgebraMorphism, psi: AlgebraMorphism) -> bool:
    """Both composites are identities (checked on variables)."""
    a = phi.then(psi)
    b = psi.then(phi)
    return all(phi.source.equal(im, v) for im, v in zip(a.images, phi.source.gens())) and all(
        psi.source.equal(im, v) for im, v in zip(b.images, psi.source.gens())
    )


# ---------------------------------------------------------------------------
# presentations


@dataclass
class Simplified:
    algebra: FPAlgebra
    forward: AlgebraMorphism  # original -> simplified
    backward: AlgebraMorphism  # simplified -> original
    eliminated: list = field(default_factory=list)


def _isolated_linear(r: Poly, i: int):
    """If ``r = c*x_i + h`` with ``c`` constant and ``x_i`` absent from ``h``, return ``(c, h)``."""
    c = None
    for e, a in r._d.items():
        if e[i]:
            if e[i] != 1 or any(k for j, k in enumerate(e) if j != i):
                return None
            c = a
    if c is None:
        return None
    unit = [0] * r.ring.nvars
    unit[i] = 1
    h = r - r.ring.monomial(unit, c)
    return c, h


def simplify_presentation(A: FPAlgebra) -> Simplified:
    """Remove variables fixed by relations of the form ``c*x + h(other vars)``.

    The last eligible variable of each relation is eliminated, relations in
    order; the result comes with verified mutually inverse morphisms.
    """
    ring = A.ring
    images = list(ring.gens())
    rels = [g for g in A.ideal.gens]
    alive = list(range(ring.nvars))
    eliminated = []
    changed = True
    while changed:
        changed = False
        for k, r in enumerate(rels):
            cands = [i for i in sorted(r.support()) if i in alive and _isolated_linear(r, i) is not None]
            if not cands:
                continue
            i = cands[-1]
            c, h = _isolated_linear(r, i)
            value = h.scale(-A.field.inv(c))
            sub = list(ring.gens())
            sub[i] = value
            rels = [q.subs(sub, ring) for j, q in enumerate(rels) if j != k]
            rels = [q for q in rels if q]
            images = [im.subs(sub, ring) for im in images]
            alive.remove(i)
            eliminated.append(ring.names[i])
            changed = True
            break
    new_ring = PolyRing(ring.field, [ring.names[i] for i in alive], ring.order)
    B = FPAlgebra(new_ring, [q.to_ring(new_ring) for q in rels])
    if not B.is_polynomial_ring and A.domain is DomainFlag.ASSERTED:
        B = B.with_domain(A.provenance)
    fwd = verify_morphism(AlgebraMorphism(A, B, tuple(B.reduce(im.to_ring(new_ring)) for im in images)))
    bwd = verify_morphism(AlgebraMorphism(B, A, tuple(A.reduce(ring.var(n)) for n in new_ring.names)))
    return Simplified(B, fwd, bwd, eliminated)


def rename(A: FPAlgebra, mapping: dict) -> Simplified:
    names = [mapping.get(n, n) for n in A.names]
    ring = PolyRing(A.field, names, A.ring.order)
    rels = [Poly(ring, dict(g._d)) for g in A.ideal.gens]
    B = FPAlgebra(ring, rels, A.domain, A.provenance)
    fwd = verify_morphism(AlgebraMorphism(A, B, ring.gens()))
    bwd = verify_morphism(AlgebraMorphism(B, A, A.ring.gens()))
    return Simplified(B, fwd, bwd, [])


def domain_by_simplification(A: FPAlgebra) -> FPAlgebra | None:
    """Assert the domain flag if the presentation simplifies to a polynomial ring."""
    s = simplify_presentation(A)
    if s.algebra.is_polynomial_ring:
        return A.with_domain(f"isomorphic to the polynomial ring {s.algebra} (verified substitution)")
    return None


def domain_by_embedding(A: FPAlgebra, phi: AlgebraMorphism) -> FPAlgebra | None:
    """Assert the domain flag if ``phi`` embeds ``A`` into a known domain."""
    if phi.source is not A and not phi.source.same_presentation(A):
        raise ValueError("morphism does not start at A")
    if not phi.target.known_domain:
        return None
    phi = verify_morphism(phi)
    if kernel_is_trivial(phi):
        return A.with_domain(f"embeds into the domain {phi.target} via {phi} (kernel verified)")
    return None


# ---------------------------------------------------------------------------
# constructions


@dataclass
class TensorProduct:
    algebra: FPAlgebra
    left: AlgebraMorphism
    right: AlgebraMorphism
    renamed: dict  # variable clashes resolved by suffixing


def tensor_product(A: FPAlgebra, B: FPAlgebra, f: AlgebraMorphism, g: AlgebraMorphism,
                   simplify: bool = True) -> TensorProduct:
    """``A ⊗_C B`` for verified ``f: C -> A`` and ``g: C -> B``."""
    f, g = verify_morphism(f), verify_morphism(g)
    if not f.source.same_presentation(g.source):
        raise ValueError("morphisms do not share a base")
    if not (f.target.same_presentation(A) and g.target.same_presentation(B)):
        raise ValueError("morphisms do not land in the factors")
    clash = set(A.names) & set(B.names)
    taken: list[str] = []
    a_names, b_names, renamed = [], [], {}
    for n in A.names:
        m = fresh_name(set(A.names) | set(B.names) | set(taken), f"{n}_1") if n in clash else n
        a_names.append(m)
        taken.append(m)
        if m != n:
            renamed[("left", n)] = m
    for n in B.names:
        m = fresh_name(set(A.names) | set(B.names) | set(taken), f"{n}_2") if n in clash else n
        b_names.append(m)
        taken.append(m)
        if m != n:
            renamed[("right", n)] = m
    ring = PolyRing(A.field, a_names + b_names, GREVLEX)
    ra = PolyRing(A.field, a_names, A.ring.order)
    rb = PolyRing(A.field, b_names, B.ring.order)

    def lift_a(p: Poly) -> Poly:
        return Poly(ra, dict(p._d)).to_ring(ring)

    def lift_b(p: Poly) -> Poly:
        return Poly(rb, dict(p._d)).to_ring(ring)

    rels = [lift_a(r) for r in A.ideal.gens] + [lift_b(r) for r in B.ideal.gens]
    for ia, ib in zip(f.images, g.images):
        d = lift_a(ia) - lift_b(ib)
        if d:
            rels.append(d)
    P = FPAlgebra(ring, rels)
    left = verify_morphism(AlgebraMorphism(A, P, tuple(P.reduce(ring.var(n)) for n in a_names)))
    right = verify_morphism(AlgebraMorphism(B, P, tuple(P.reduce(ring.var(n)) for n in b_names)))
    if simplify:
        s = simplify_presentation(P)
        P2 = s.algebra
        left, right = left.then(s.forward), right.then(s.forward)
        # drop a clash suffix when only one variant of the name survives
        strip = {}
        suffixed = set(renamed.values())
        groups: dict = {}
        for n in P2.names:
            if n in suffixed:
                groups.setdefault(n.rsplit("_", 1)[0], []).append(n)
        for plain, members in groups.items():
            if len(members) == 1 and plain not in P2.names:
                strip[members[0]] = plain
        if strip:
            r = rename(P2, strip)
            left, right = left.then(r.forward), right.then(r.forward)
            P2 = r.algebra
        P = P2
    return TensorProduct(P, left, right, renamed)


def quotient_by_ideal(A: FPAlgebra, J) -> tuple[FPAlgebra, AlgebraMorphism]:
    gens = J.gens if isinstance(J, Ideal) else [A.ring(j) for j in J]
    B = FPAlgebra(A.ring, list(A.ideal.gens) + list(gens))
    surj = verify_morphism(AlgebraMorphism(A, B, tuple(B.reduce(v) for v in A.gens())))
    return B, surj


def is_nonzerodivisor(A: FPAlgebra, f) -> bool:
    return zerodivisor_witness(A, f) is None


nonzerodivisor_check = is_nonzerodivisor


def zerodivisor_witness(A: FPAlgebra, f) -> Poly | None:
    """An element ``g`` nonzero in ``A`` with ``f*g = 0``, or ``None``."""
    f = A(f)
    if not f:
        raise ValueError("zero is not a valid test element")
    if A.ideal.is_zero():
        return None
    Q = quotient(A.ideal, f)
    for g in Q.gb().elements:
        r = A.reduce(g)
        if r:
            return r
    return None


def subalgebra_membership(g, phi: AlgebraMorphism) -> Poly | None:
    """A preimage of ``g`` under ``phi`` (in source variables), or ``None``."""
    g = phi.target(g)
    ring, tags, gens = _tag_ring(phi)
    G = Ideal(ring, gens).gb()
    r = G.reduce(g.to_ring(ring))
    ntarget = len(phi.target.names)
    if any(i < ntarget for i in r.support()):
        return None
    src = phi.source.ring
    pre = Poly(src, {e[ntarget:]: c for e, c in r._d.items()})
    pre = phi.source.reduce(pre)
    if not phi.target.equal(phi.apply(pre), g):
        raise AssertionError("preimage does not map back")  # engine bug guard
    return pre


@dataclass
class CandidateVerdict:
    passed: bool
    contains_ideal: bool
    in_radical: bool
    domain_note: str


def reduced_candidate_verify(A: FPAlgebra, J, domain_note: str | None = None):
    """Accept ``J`` as the lift of the nilradical of ``A``; returns ``(A/J, verdict)``."""
    J = J if isinstance(J, Ideal) else Ideal(A.ring, [A.ring(j) for j in J])
    full = Ideal(A.ring, list(A.ideal.gens) + list(J.gens))
    for g in A.ideal.gens:
        if not J.contains(g):
            raise CandidateRejected("containment", f"{g} is not in the candidate")
    for g in J.gens:
        if not radical_membership(g, A.ideal):
            raise CandidateRejected("radical", f"{g} is not nilpotent modulo {A.ideal}")
    B = FPAlgebra(A.ring, full.gens)
    if domain_note is None:
        proved = domain_by_simplification(B)
        if proved is None:
            raise CandidateRejected("domain", "no domain justification for the quotient")
        B = proved
    else:
        B = B.with_domain(domain_note)
    return B, CandidateVerdict(True, True, True, B.provenance)


def nilpotent_variable(A: FPAlgebra) -> str | None:
    """A variable that is nonzero but nilpotent in ``A`` (a cheap non-reducedness test)."""
    for n in A.names:
        v = A.ring.var(n)
        if A.reduce(v) and radical_membership(v, A.ideal):
            return n
    return None
