"""Kähler differentials as finitely presented modules, pull-backs, and torsion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    AlgebraMorphism,
    FPAlgebra,
    domain_by_simplification,
    kernel_is_trivial,
    morphism_kernel,
    nilpotent_variable,
    quotient_by_ideal,
    subalgebra_membership,
    verify_morphism,
)
from .errors import (
    DegenerateHyperplane,
    DegreeOutOfRange,
    IllDefinedMap,
    MethodInapplicable,
    NotADomain,
    RankMismatch,
)
from .gb import FreeElem, Ideal, Submodule, saturate, syzygies
from .linalg import solve
from .poly import Poly, format_poly

WEDGE = "∧"


class FPModule:
    """``A^s / relations`` with named generators."""

    def __init__(self, algebra: FPAlgebra, labels: Sequence[str], relations: Sequence[FreeElem] = ()):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {labels}")
        self.algebra = algebra
        self.labels = labels
        rels = []
        for r in relations:
            if r.rank != len(labels):
                raise RankMismatch(f"relation of rank {r.rank} for {len(labels)} generators")
            r = r.map(algebra.reduce)
            if r:
                rels.append(r)
        self.relations = tuple(rels)
        self.submodule = Submodule(algebra.ring, len(labels), self.relations, algebra.ideal)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def ring(self):
        return self.algebra.ring

    def zero(self) -> FreeElem:
        return FreeElem.zero(self.ring, self.rank)

    def gen(self, label) -> FreeElem:
        i = self.labels.index(label) if isinstance(label, str) else label
        return FreeElem.basis(self.ring, self.rank, i)

    def element(self, coeffs) -> FreeElem:
        """Build an element from ``{label: poly}`` or a sequence of polys."""
        if isinstance(coeffs, dict):
            unknown = set(coeffs) - set(self.labels)
            if unknown:
                raise KeyError(f"unknown generators {sorted(unknown)}")
            coeffs = [coeffs.get(lab, 0) for lab in self.labels]
        if len(coeffs) != self.rank:
            raise RankMismatch(f"{len(coeffs)} coefficients for {self.rank} generators")
        return FreeElem([self.algebra(c) for c in coeffs])

    def reduce(self, v: FreeElem) -> FreeElem:
        return self.submodule.reduce(v)

    def is_zero(self, v: FreeElem) -> bool:
        return not self.reduce(v)

    def equal(self, v: FreeElem, w: FreeElem) -> bool:
        return self.is_zero(v - w)

    @property
    def is_free(self) -> bool:
        return not self.relations

    def format(self, v: FreeElem) -> str:
        return format_element(v, self.labels)

    def __repr__(self):
        gens = " ⊕ ".join(f"A·{lab}" for lab in self.labels) or "0"
        if not self.relations:
            return gens
        return gens + " / (" + ", ".join(self.format(r) for r in self.relations) + ")"


def format_element(v: FreeElem, labels) -> str:
    out = ""
    for c, lab in zip(v.comps, labels):
        if not c:
            continue
        neg = False
        if len(c) == 1:
            text = format_poly(c)
            if text.startswith("-"):
                neg, text = True, text[1:]
            part = lab if text == "1" else f"{text} * {lab}"
        else:
            part = f"({format_poly(c)}) * {lab}"
        if not out:
            out = f"-{part}" if neg else part
        else:
            out += f" - {part}" if neg else f" + {part}"
    return out or "0"


# ---------------------------------------------------------------------------
# Ω^n


def jacobian_row(f: Poly) -> FreeElem:
    return FreeElem([f.derivative(i) for i in range(f.ring.nvars)])


def omega_presentation(A: FPAlgebra, n: int = 1) -> FPModule:
    """``Ω^n_{A/k}``; for ``n = 1`` the Jacobian rows of the defining generators."""
    if n < 1:
        raise DegreeOutOfRange(f"degree {n} < 1")
    if n > len(A.names):
        raise DegreeOutOfRange(f"Ω^{n} of a ring on {len(A.names)} variables is zero; zero modules are not represented")
    labels = [f"d{name}" for name in A.names]
    M = FPModule(A, labels, [jacobian_row(f) for f in A.ideal.gens])
    return M if n == 1 else exterior_power(M, n)


def universal_d(A: FPAlgebra, f, module: FPModule | None = None) -> FreeElem:
    M = module or omega_presentation(A)
    return M.reduce(jacobian_row(A.ring(f)))


def _wedge_labels(labels, tuples):
    return [WEDGE.join(labels[i] for i in t) for t in tuples]


def _insert_sign(i: int, J: tuple) -> tuple[int, tuple] | None:
    """``e_i ∧ e_J`` as ``sign * e_K`` with ``K`` sorted; ``None`` if it vanishes."""
    if i in J:
        return None
    before = sum(1 for j in J if j < i)
    K = tuple(sorted(J + (i,)))
    return (-1 if before % 2 else 1), K


def exterior_power(M: FPModule, n: int) -> FPModule:
    s = M.rank
    if not 1 <= n <= s:
        raise DegreeOutOfRange(f"degree {n} outside 1..{s}")
    if n == 1:
        return M
    tuples = list(itertools.combinations(range(s), n))
    index = {t: k for k, t in enumerate(tuples)}
    ring = M.ring
    rels = []
    for q in M.relations:
        for J in itertools.combinations(range(s), n - 1):
            comps = [ring.zero] * len(tuples)
            for i, c in enumerate(q.comps):
                if not c:
                    continue
                hit = _insert_sign(i, J)
                if hit is None:
                    continue
                sign, K = hit
                comps[index[K]] = comps[index[K]] + (c if sign > 0 else -c)
            v = FreeElem(comps)
            if v:
                rels.append(v)
    return FPModule(M.algebra, _wedge_labels(M.labels, tuples), rels)


# ---------------------------------------------------------------------------
# presentations


@dataclass
class Pruned:
    module: FPModule
    kept: list  # indices of surviving generators
    images: list  # old generator i -> element of the pruned module


def prune(M: FPModule) -> Pruned:
    """Drop generators that some relation expresses through the others.

    A relation with a nonzero constant coefficient eliminates that generator
    (the last such index is used); repeated until no relation qualifies.
    """
    A = M.algebra
    ring = A.ring
    F = A.field
    rels = [list(r.comps) for r in M.relations]
    alive = list(range(M.rank))
    # images[i] expressed in the current alive coordinates (dict old index -> coeff)
    images = {i: {i: ring.one} for i in alive}
    while True:
        hit = None
        for k, r in enumerate(rels):
            units = [i for i in alive if r[i] and r[i].is_constant()]
            if units:
                hit = (k, units[-1])
                break
        if hit is None:
            break
        k, i = hit
        r = rels.pop(k)
        c_inv = F.inv(r[i].constant_value())
        # e_i = -c^{-1} * sum_{j != i} r_j e_j
        sub = {j: A.reduce(r[j].scale(-c_inv)) for j in alive if j != i and r[j]}
        alive.remove(i)

        def substitute(vec):
            a = vec[i]
            if not a:
                return vec
            out = list(vec)
            out[i] = ring.zero
            for j, b in sub.items():
                out[j] = A.reduce(out[j] + a * b)
            return out

        rels = [substitute(q) for q in rels]
        rels = [q for q in rels if any(q[j] for j in alive)]
        for old, img in images.items():
            a = img.pop(i, None)
            if a:
                for j, b in sub.items():
                    nv = A.reduce(img.get(j, ring.zero) + a * b)
                    if nv:
                        img[j] = nv
                    else:
                        img.pop(j, None)
    P = FPModule(A, [M.labels[i] for i in alive], [FreeElem([q[j] for j in alive]) for q in rels])
    pos = {j: k for k, j in enumerate(alive)}
    elems = []
    for old in range(M.rank):
        comps = [ring.zero] * len(alive)
        for j, c in images[old].items():
            comps[pos[j]] = c
        elems.append(P.reduce(FreeElem(comps)))
    return Pruned(P, alive, elems)


def minimal_presentation(M: FPModule) -> FPModule:
    return prune(M).module


# ---------------------------------------------------------------------------
# semilinear maps


def determinant(rows, reduce) -> Poly:
    """Laplace expansion along the first row; entries are reduced by ``reduce``."""
    n = len(rows)
    if n == 1:
        return reduce(rows[0][0])
    total = rows[0][0].ring.zero
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        sub = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * determinant(sub, reduce)
        total = total - term if j % 2 else total + term
    return reduce(total)


def minor(matrix, rows, cols, reduce) -> Poly:
    return determinant([[matrix[i][j] for j in cols] for i in rows], reduce)


class SemilinearMap:
    """``source -> target`` over ``phi``; column ``j`` is the image of generator ``j``."""

    def __init__(self, phi: AlgebraMorphism, source: FPModule, target: FPModule, columns: Sequence[FreeElem],
                 check: bool = True):
        if len(columns) != source.rank:
            raise RankMismatch(f"{len(columns)} columns for {source.rank} source generators")
        self.phi = phi
        self.source = source
        self.target = target
        self.columns = tuple(target.reduce(FreeElem(list(c.comps))) for c in columns)
        if check:
            self.check_well_defined()

    @property
    def matrix(self):
        """Rows indexed by target generators, columns by source generators."""
        return [[col[k] for col in self.columns] for k in range(self.target.rank)]

    def check_well_defined(self):
        for rel in self.source.relations:
            img = self.apply(rel)
            if img:
                raise IllDefinedMap(f"relation {self.source.format(rel)} maps to {self.target.format(img)}")
        return True

    def apply(self, v: FreeElem) -> FreeElem:
        if v.rank != self.source.rank:
            raise RankMismatch(f"element of rank {v.rank}, source rank {self.source.rank}")
        acc = self.target.zero()
        for c, col in zip(v.comps, self.columns):
            if c:
                a = self.phi.apply(c)
                if a:
                    acc = acc + col * a
        return self.target.reduce(acc)

    __call__ = apply

    def then(self, other: SemilinearMap) -> SemilinearMap:
        """``other ∘ self``."""
        return SemilinearMap(self.phi.then(other.phi), self.source, other.target,
                             [other.apply(c) for c in self.columns])

    def equals(self, other: SemilinearMap) -> bool:
        return all(self.target.equal(a, b) for a, b in zip(self.columns, other.columns))

    def is_zero(self) -> bool:
        return not any(self.columns)

    def pruned(self) -> SemilinearMap:
        """The same map between minimal presentations of source and target."""
        ps, pt = prune(self.source), prune(self.target)
        cols = [pt.module.reduce(_push(self.columns[j], pt)) for j in ps.kept]
        return SemilinearMap(self.phi, ps.module, pt.module, cols)

    def describe(self) -> list[str]:
        return [f"{lab} -> {self.target.format(col)}" for lab, col in zip(self.source.labels, self.columns)]


def _push(v: FreeElem, pr: Pruned) -> FreeElem:
    acc = pr.module.zero()
    for c, img in zip(v.comps, pr.images):
        if c:
            acc = acc + img * c
    return acc


def pullback(phi: AlgebraMorphism, n: int = 1, source: FPModule | None = None,
             target: FPModule | None = None) -> SemilinearMap:
    """``dφ: Ω^n_source -> Ω^n_target``; the ``n``-th compound of the Jacobian for ``n >= 2``."""
    phi = phi if phi.verified else verify_morphism(phi)
    A, B = phi.source, phi.target
    om_a = omega_presentation(A)
    om_b = omega_presentation(B)
    cols = [jacobian_row(B.ring(im)).map(B.reduce) for im in phi.images]
    if n == 1:
        return SemilinearMap(phi, source or om_a, target or om_b, cols)
    src = source or exterior_power(om_a, n)
    tgt = target or exterior_power(om_b, n)
    mat = [[col[k] for col in cols] for k in range(om_b.rank)]
    trows = list(itertools.combinations(range(om_b.rank), n))
    scols = list(itertools.combinations(range(om_a.rank), n))
    wcols = []
    for J in scols:
        wcols.append(FreeElem([minor(mat, K, J, B.reduce) for K in trows]))
    return SemilinearMap(phi, src, tgt, wcols)


# ---------------------------------------------------------------------------
# torsion


def annihilator(v: FreeElem, M: FPModule) -> Ideal:
    """``{a : a*v ∈ relations}`` as an ideal of the ambient polynomial ring (contains I)."""
    A = M.algebra
    cols = [v] + list(M.relations)
    syz = syzygies(cols, A.ideal)
    return Ideal(A.ring, list(A.ideal.gens) + [g[0] for g in syz.gens])


def nonzero_witness(J: Ideal, A: FPAlgebra) -> Poly | None:
    """The first element of the reduced basis of ``J`` that is nonzero in ``A``."""
    for g in J.gb().elements:
        r = A.reduce(g)
        if r:
            return r
    return None


def is_torsion(v: FreeElem, M: FPModule) -> Poly | None:
    """A nonzero ``a`` with ``a*v = 0`` in ``M`` if one exists."""
    M.algebra.require_domain()
    if M.is_zero(v):
        return M.algebra.ring.one
    return nonzero_witness(annihilator(v, M), M.algebra)


def relation_matrix(M: FPModule):
    return [list(r.comps) for r in M.relations]


def generic_rank(rows, A: FPAlgebra) -> int:
    """Rank over the fraction field of a domain by fraction-free elimination."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for j in range(ncols):
        piv = next((k for k in range(rank, len(rows)) if A.reduce(rows[k][j])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][j]
        for k in range(rank + 1, len(rows)):
            c = rows[k][j]
            if A.reduce(c):
                rows[k] = [A.reduce(p * a - c * b) for a, b in zip(rows[k], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def fitting_minor(rows, r: int, A: FPAlgebra) -> tuple[Poly, tuple, tuple]:
    """The lexicographically first nonzero ``r``-minor (rows, then columns)."""
    if r == 0:
        return A.ring.one, (), ()
    ncols = len(rows[0])
    for R in itertools.combinations(range(len(rows)), r):
        for C in itertools.combinations(range(ncols), r):
            d = minor(rows, R, C, A.reduce)
            if d:
                return d, R, C
    raise AssertionError("no nonzero minor of the computed rank")


@dataclass
class TorsionGenerator:
    element: FreeElem
    witness: Poly  # nonzero, witness * element ∈ relations
    annihilator: Ideal

    def verify(self, M: FPModule) -> bool:
        return bool(M.algebra.reduce(self.witness)) and M.is_zero(self.element * self.witness)


@dataclass
class TorsionResult:
    module: FPModule
    generators: list
    quotient: FPModule
    rank: int  # generic rank of the module
    fitting_minor: Poly
    torsion: Submodule = field(repr=False, default=None)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, v: FreeElem) -> bool:
        return self.torsion.contains(v)

    def describe(self) -> list[str]:
        return [f"{format_poly(g.witness)} * {_paren(self.module.format(g.element))} = 0" for g in self.generators]


def _paren(s: str) -> str:
    return f"({s})" if " + " in s or " - " in s else s


def torsion_submodule(M: FPModule) -> TorsionResult:
    A = M.algebra
    A.require_domain()
    rows = relation_matrix(M)
    r = generic_rank(rows, A)
    f, _, _ = fitting_minor(rows, r, A)
    N = M.submodule
    sat = saturate(N, f) if not f.is_constant() else N
    gens = []
    span = N
    for g in sat.gb().elements:
        g = g.map(A.reduce)
        if not g or span.contains(g):
            continue
        ann = annihilator(g, M)
        w = nonzero_witness(ann, A)
        if w is None:
            raise AssertionError("saturation produced a generator with zero annihilator")
        gens.append(TorsionGenerator(g, w, ann))
        span = span.with_gens([g])
    quotient = FPModule(A, M.labels, list(M.relations) + [g.element for g in gens])
    return TorsionResult(M, gens, quotient, M.rank - r, f, sat)


def restrict(M: FPModule, J) -> FPModule:
    """``M ⊗_A A/J``."""
    B, _ = quotient_by_ideal(M.algebra, J)
    return FPModule(B, M.labels, [r.map(B.reduce) for r in M.relations])


@dataclass
class HyperplaneEntry:
    generator: str
    image: str
    annihilator_x: list
    annihilator_h: list
    equal: bool


@dataclass
class HyperplaneVerdict:
    passed: bool
    hyperplane: FPAlgebra
    entries: list

    def describe(self) -> list[str]:
        out = []
        for e in self.entries:
            ann = ", ".join(format_poly(a) for a in e.annihilator_h)
            out.append(f"{e.generator} -> {e.image}, annihilator ({ann}) on both sides" if e.equal
                       else f"{e.generator} -> {e.image}, annihilators differ")
        return out


def _minimal_gens(J: Ideal, H: FPAlgebra) -> list:
    """Generators of ``J`` modulo the ideal of ``H``, skipping those the earlier ones already give."""
    kept = []
    for a in J.gb().elements:
        a = H.reduce(a)
        if a and not Ideal(H.ring, list(H.ideal.gens) + kept).contains(a):
            kept.append(a)
    return kept


def hyperplane_criterion(A: FPAlgebra, h, torsion: TorsionResult, h_domain_note: str | None = None,
                         h_domain: FPAlgebra | None = None) -> HyperplaneVerdict:
    """Check that ``(tor Ω^1_A)|_H -> Ω^1_H`` is injective on the torsion generators."""
    h = A.ring(h)
    if not A.reduce(h):
        raise DegenerateHyperplane(f"{h} vanishes on {A}")
    H, _ = quotient_by_ideal(A, [h])
    bad = nilpotent_variable(H)
    if bad is not None:
        raise NotADomain(f"{H} is not reduced: {bad} is nilpotent")
    if h_domain is not None:
        if not h_domain.same_presentation(H) or not h_domain.known_domain:
            raise NotADomain("supplied hyperplane ring does not match or is not a known domain")
        H = h_domain
    elif h_domain_note:
        H = H.with_domain(h_domain_note)
    else:
        proved = domain_by_simplification(H)
        if proved is None:
            raise NotADomain(f"no domain justification for {H}")
        H = proved
    om_h = omega_presentation(H)
    entries = []
    for g in torsion.generators:
        img = om_h.reduce(g.element.map(H.reduce))
        ann_h = annihilator(img, om_h) if img else Ideal(H.ring, [H.ring.one])
        ann_x = Ideal(H.ring, list(g.annihilator.gens) + list(H.ideal.gens))
        same = ann_h.equals(ann_x)
        entries.append(HyperplaneEntry(
            torsion.module.format(g.element), om_h.format(img), _minimal_gens(ann_x, H), _minimal_gens(ann_h, H), same,
        ))
    return HyperplaneVerdict(all(e.equal for e in entries), H, entries)


# ---------------------------------------------------------------------------
# image membership and injectivity


@dataclass
class DivisionProof:
    """Back-substitution forced ``dividend / divisor`` at ``label``; the division is inexact."""

    label: str
    dividend: Poly
    divisor: Poly
    remainder: Poly

    def verify(self) -> bool:
        _, r = self.dividend.divmod(self.divisor)
        return bool(r) and r == self.remainder

    def __str__(self):
        return (f"coefficient of {self.label} must equal ({format_poly(self.dividend)}) / ({format_poly(self.divisor)}),"
                f" which is not a polynomial")


@dataclass
class SubalgebraProof:
    """Back-substitution forced ``value`` at ``label``; it is not in the image of the base map."""

    label: str
    value: Poly
    phi: AlgebraMorphism

    def verify(self) -> bool:
        return subalgebra_membership(self.value, self.phi) is None

    def __str__(self):
        return f"coefficient for {self.label} must be {format_poly(self.value)}, which is not in the image of {self.phi}"


@dataclass
class TriangularProof:
    """Wraps a per-step proof with the structural facts that make it sound."""

    map: SemilinearMap
    perm: tuple
    step: object

    def verify(self) -> bool:
        return _triangular_ok(self.map, self.perm) and self.step.verify()

    def __str__(self):
        return str(self.step)


@dataclass
class ImageVerdict:
    status: str  # member | non_member | unknown
    preimage: FreeElem | None = None
    proof: object = None
    note: str = ""

    def verify(self, m: SemilinearMap, v: FreeElem) -> bool:
        if self.status == "member":
            return m.target.equal(m.apply(self.preimage), v)
        if self.status == "non_member":
            return self.proof is not None and self.proof.verify()
        return True


def _triangular_ok(m: SemilinearMap, perm) -> bool:
    B = m.target.algebra
    if not B.is_polynomial_ring or not m.target.is_free or not m.source.is_free:
        return False
    mat = m.matrix
    n = len(perm)
    for i in range(n):
        if not mat[i][perm[i]]:
            return False
        for k in range(i + 1, n):
            if mat[k][perm[i]]:
                return False
    return True


def _find_triangular(m: SemilinearMap):
    if m.source.rank != m.target.rank:
        return None
    for perm in itertools.permutations(range(m.source.rank)):
        if _triangular_ok(m, perm):
            return perm
    return None


def _solve_triangular(m: SemilinearMap, v: FreeElem) -> ImageVerdict:
    perm = _find_triangular(m)
    if perm is None:
        raise MethodInapplicable("matrix is not triangular up to column permutation over a polynomial ring")
    mat = m.matrix
    A = m.phi.source
    n = len(perm)
    rest = m.target.reduce(v)
    coeffs = [A.ring.zero] * n
    for i in reversed(range(n)):
        j = perm[i]
        q, r = rest[i].divmod(mat[i][j])
        if r:
            step = DivisionProof(m.target.labels[i], rest[i], mat[i][j], r)
            return ImageVerdict("non_member", proof=TriangularProof(m, perm, step))
        pre = subalgebra_membership(q, m.phi)
        if pre is None:
            step = SubalgebraProof(m.source.labels[j], q, m.phi)
            return ImageVerdict("non_member", proof=TriangularProof(m, perm, step))
        coeffs[j] = pre
        col = FreeElem([pre if k == j else A.ring.zero for k in range(n)])
        rest = m.target.reduce(rest - m.apply(col))
    if rest:
        raise AssertionError("triangular solve left a remainder")
    return ImageVerdict("member", preimage=FreeElem(coeffs))


def _monomials(ring, D: int):
    n = ring.nvars
    for d in range(D + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            yield tuple(e)


def _vec_dict(v: FreeElem) -> dict:
    return {(k, e): c for k, comp in enumerate(v.comps) for e, c in comp.terms}


def bounded_ansatz(maps: Sequence[SemilinearMap], targets: Sequence[FreeElem], D: int) -> FreeElem | None:
    """A common preimage with coefficients of degree ``<= D``, found by k-linear algebra."""
    src = maps[0].source
    A = src.algebra
    basis = []
    columns = []
    for j in range(src.rank):
        for e in _monomials(A.ring, D):
            mono = A.reduce(A.ring.monomial(e))
            if not mono:
                continue
            w = FreeElem([mono if k == j else A.ring.zero for k in range(src.rank)])
            vec = {}
            for idx, m in enumerate(maps):
                for key, c in _vec_dict(m.apply(w)).items():
                    vec[(idx,) + key] = c
            basis.append(w)
            columns.append(vec)
    rhs = {}
    for idx, (m, t) in enumerate(zip(maps, targets)):
        for key, c in _vec_dict(m.target.reduce(t)).items():
            rhs[(idx,) + key] = c
    sol = solve(A.field, columns, rhs)
    if sol is None:
        return None
    acc = src.zero()
    for a, w in zip(sol, basis):
        if a:
            acc = acc + w * A.ring.const(a)
    return acc.map(A.reduce)


def semilinear_image_membership(m: SemilinearMap, v: FreeElem, method="triangular", degree: int = 3) -> ImageVerdict:
    """Decide whether ``v`` lies in the image of ``m``.

    ``triangular`` gives definitive answers (or raises MethodInapplicable);
    ``bounded_ansatz`` only ever answers member or unknown.
    """
    if method == "triangular":
        return _solve_triangular(m, v)
    if method == "bounded_ansatz":
        pre = bounded_ansatz([m], [v], degree)
        if pre is None:
            return ImageVerdict("unknown", note=f"no preimage with coefficients of degree <= {degree}")
        return ImageVerdict("member", preimage=pre)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class InjectivityCertificate:
    """``ker φ = 0`` and a nonzero maximal minor; together they give injectivity."""

    map: SemilinearMap
    rows: tuple
    cols: tuple
    minor: Poly

    def verify(self) -> bool:
        m = self.map
        if not (m.source.is_free and m.target.is_free and m.target.algebra.known_domain):
            return False
        if len(self.cols) != m.source.rank:
            return False
        d = minor(m.matrix, self.rows, self.cols, m.target.algebra.reduce)
        return bool(d) and d == self.minor and kernel_is_trivial(m.phi)

    def __str__(self):
        labels = [self.map.target.labels[i] for i in self.rows]
        return f"ker of base map is 0; minor on rows {', '.join(labels)} is {format_poly(self.minor)}"


@dataclass
class InjectivityVerdict:
    status: str  # pass | fail | unknown
    certificate: InjectivityCertificate | None = None
    witness: FreeElem | None = None
    note: str = ""


def semilinear_injectivity(m: SemilinearMap) -> InjectivityVerdict:
    p = m.pruned()
    if not p.source.is_free:
        return InjectivityVerdict("unknown", note="source is not free")
    for j, col in enumerate(p.columns):
        if not col:
            w = p.source.gen(j)
            return InjectivityVerdict("fail", witness=w, note=f"{p.source.labels[j]} maps to 0")
    K = morphism_kernel(p.phi)
    a = nonzero_witness(K, p.phi.source)
    if a is not None and p.source.rank:
        w = p.source.gen(0) * a
        return InjectivityVerdict("fail", witness=w, note=f"{format_poly(a)} lies in the kernel of the base map")
    if not p.target.is_free or not p.target.algebra.known_domain:
        return InjectivityVerdict("unknown", note="target is not a free module over a known domain")
    s = p.source.rank
    mat = p.matrix
    for R in itertools.combinations(range(p.target.rank), s):
        d = minor(mat, R, tuple(range(s)), p.target.algebra.reduce)
        if d:
            return InjectivityVerdict("pass", certificate=InjectivityCertificate(p, R, tuple(range(s)), d))
    return InjectivityVerdict("unknown", note="all maximal minors vanish")
