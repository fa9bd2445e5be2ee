"""Explicit covers, their Čech sequences on Ω^n, and element-level exactness verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AlgebraMorphism, FPAlgebra, verify_morphism
from .errors import DiagramInvalid, IllDefinedMorphism, MethodInapplicable, RankMismatch
from .gb import FreeElem
from .kaehler import (
    FPModule,
    ImageVerdict,
    InjectivityVerdict,
    bounded_ansatz,
    omega_presentation,
    pullback,
    semilinear_image_membership,
    semilinear_injectivity,
)

COVER_KINDS = ("cdp+open", "sdh", "s-alt", "h")


@dataclass
class Piece:
    name: str
    algebra: FPAlgebra
    arrow: AlgebraMorphism  # base -> piece


@dataclass
class ProductNode:
    name: str
    algebra: FPAlgebra
    left: AlgebraMorphism  # piece_i -> product
    right: AlgebraMorphism  # piece_j -> product


@dataclass
class CoverDiagram:
    base: FPAlgebra
    pieces: list
    products: dict  # (i, j) -> ProductNode
    kind: str = "cdp+open"
    name: str = "cover"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.kind not in COVER_KINDS:
            raise DiagramInvalid(f"unknown cover kind {self.kind!r}")
        if not self.pieces:
            raise DiagramInvalid("a cover needs at least one piece")
        for k, piece in enumerate(self.pieces):
            arrow = piece.arrow
            if not arrow.source.same_presentation(self.base):
                raise DiagramInvalid(f"arrow to piece {piece.name} does not start at the base")
            if not arrow.target.same_presentation(piece.algebra):
                raise DiagramInvalid(f"arrow to piece {piece.name} does not land in it")
            try:
                self.pieces[k] = Piece(piece.name, piece.algebra, verify_morphism(arrow))
            except IllDefinedMorphism as e:
                raise DiagramInvalid(f"arrow to piece {piece.name}: {e}") from e
        for (i, j), node in list(self.products.items()):
            if not (0 <= i < len(self.pieces) and 0 <= j < len(self.pieces)):
                raise DiagramInvalid(f"product ({i}, {j}) refers to a missing piece")
            pi, pj = self.pieces[i], self.pieces[j]
            for arrow, piece, side in ((node.left, pi, "left"), (node.right, pj, "right")):
                if not arrow.source.same_presentation(piece.algebra):
                    raise DiagramInvalid(f"{side} arrow of {node.name} does not start at {piece.name}")
                if not arrow.target.same_presentation(node.algebra):
                    raise DiagramInvalid(f"{side} arrow of {node.name} does not land in it")
            try:
                left, right = verify_morphism(node.left), verify_morphism(node.right)
            except IllDefinedMorphism as e:
                raise DiagramInvalid(f"product {node.name}: {e}") from e
            a = pi.arrow.then(left)
            b = pj.arrow.then(right)
            for v, x, y in zip(self.base.names, a.images, b.images):
                if not node.algebra.equal(x, y):
                    raise DiagramInvalid(f"product {node.name}: composites disagree on {v} ({x} vs {y})")
            self.products[(i, j)] = ProductNode(node.name, node.algebra, left, right)

    @property
    def pairs(self) -> list:
        return sorted(self.products)

    def swapped(self) -> CoverDiagram:
        """The same cover with the two pieces of a 2-piece diagram exchanged."""
        if len(self.pieces) != 2:
            raise DiagramInvalid("swapping needs exactly two pieces")
        flip = {0: 1, 1: 0}
        prods = {}
        for (i, j), node in self.products.items():
            prods[(flip[i], flip[j])] = node
        return CoverDiagram(self.base, [self.pieces[1], self.pieces[0]], prods, self.kind, self.name)


@dataclass
class CechPair:
    diagram: CoverDiagram
    degree: int
    base_module: FPModule
    piece_modules: list
    product_modules: dict
    alpha: list  # SemilinearMap per piece
    rho: dict  # (i, j) -> (rho1, rho2)

    @property
    def pairs(self):
        return self.diagram.pairs

    def zero_middle(self) -> tuple:
        return tuple(M.zero() for M in self.piece_modules)

    def middle(self, parts: dict) -> tuple:
        """Build a middle element from ``{piece name: {label: poly}}``."""
        names = [p.name for p in self.diagram.pieces]
        out = []
        for name, M in zip(names, self.piece_modules):
            out.append(M.element(parts.get(name, {})))
        return tuple(out)

    def format_middle(self, elems) -> str:
        return " ⊕ ".join(M.format(e) for M, e in zip(self.piece_modules, elems))

    def format_last(self, elems) -> str:
        return " ⊕ ".join(self.product_modules[ij].format(e) for ij, e in zip(self.pairs, elems))


def _omega(A: FPAlgebra, n: int) -> FPModule:
    return omega_presentation(A, n)


def build_cech(diagram: CoverDiagram, n: int = 1) -> CechPair:
    base_m = _omega(diagram.base, n)
    piece_ms = [_omega(p.algebra, n) for p in diagram.pieces]
    prod_ms = {ij: _omega(node.algebra, n) for ij, node in diagram.products.items()}
    alpha = [pullback(p.arrow, n, base_m, M) for p, M in zip(diagram.pieces, piece_ms)]
    rho = {}
    for (i, j), node in diagram.products.items():
        P = prod_ms[(i, j)]
        rho[(i, j)] = (pullback(node.left, n, piece_ms[i], P), pullback(node.right, n, piece_ms[j], P))
    pair = CechPair(diagram, n, base_m, piece_ms, prod_ms, alpha, rho)
    for k in range(base_m.rank):
        img = evaluate(pair, "beta", evaluate(pair, "alpha", base_m.gen(k)))
        for ij, comp in zip(pair.pairs, img):
            if comp:
                node = diagram.products[ij]
                raise DiagramInvalid(f"cocycle fails at {node.name} on {base_m.labels[k]}")
    return pair


def evaluate(pair: CechPair, stage: str, element):
    """Apply ``alpha`` (base -> pieces) or ``beta`` (pieces -> products)."""
    if stage == "alpha":
        if element.rank != pair.base_module.rank:
            raise RankMismatch("element is not in the base module")
        return tuple(a.apply(element) for a in pair.alpha)
    if stage == "beta":
        element = tuple(element)
        if len(element) != len(pair.piece_modules):
            raise RankMismatch(f"expected {len(pair.piece_modules)} components, got {len(element)}")
        for e, M in zip(element, pair.piece_modules):
            if e.rank != M.rank:
                raise RankMismatch("component has the wrong rank")
        out = []
        for i, j in pair.pairs:
            r1, r2 = pair.rho[(i, j)]
            out.append(pair.product_modules[(i, j)].reduce(r1.apply(element[i]) - r2.apply(element[j])))
        return tuple(out)
    raise ValueError(f"unknown stage {stage!r}")


@dataclass
class InjectivityRuleProof:
    """``alpha_k`` is injective and the candidate vanishes there, yet not everywhere."""

    piece: str
    verdict: InjectivityVerdict
    nonzero_piece: str

    def verify(self) -> bool:
        return self.verdict.status == "pass" and self.verdict.certificate.verify()

    def __str__(self):
        return (f"restriction to {self.piece} is injective ({self.verdict.certificate}); the candidate is 0 there"
                f" but nonzero on {self.nonzero_piece}")


@dataclass
class ComponentProof:
    piece: str
    proof: object

    def verify(self) -> bool:
        return self.proof.verify()

    def __str__(self):
        return f"on {self.piece}: {self.proof}"


@dataclass
class ExactnessVerdict:
    in_kernel: bool
    image: ImageVerdict
    kernel_image: tuple = field(default=())

    @property
    def in_image(self) -> str:
        return self.image.status


def exactness_witness(pair: CechPair, candidate: Sequence[FreeElem], ansatz_degree: int = 3) -> ExactnessVerdict:
    candidate = tuple(M.reduce(c) for M, c in zip(pair.piece_modules, candidate))
    beta = evaluate(pair, "beta", candidate)
    in_kernel = not any(beta)
    names = [p.name for p in pair.diagram.pieces]
    nonzero = [k for k, c in enumerate(candidate) if c]
    if not nonzero:
        return ExactnessVerdict(in_kernel, ImageVerdict("member", preimage=pair.base_module.zero()), beta)

    # an injective component where the candidate vanishes forces the preimage to be 0
    inj = {}
    for k, a in enumerate(pair.alpha):
        v = semilinear_injectivity(a)
        inj[k] = v
        if v.status == "pass" and not candidate[k]:
            proof = InjectivityRuleProof(names[k], v, names[nonzero[0]])
            return ExactnessVerdict(in_kernel, ImageVerdict("non_member", proof=proof), beta)

    # per-component triangular solves: one refusal is enough
    for k, a in enumerate(pair.alpha):
        try:
            verdict = semilinear_image_membership(a, candidate[k], "triangular")
        except MethodInapplicable:
            continue
        if verdict.status == "non_member":
            return ExactnessVerdict(in_kernel, ImageVerdict("non_member", proof=ComponentProof(names[k], verdict.proof)), beta)
        pre = verdict.preimage
        if all(M.equal(x, y) for M, x, y in zip(pair.piece_modules, evaluate(pair, "alpha", pre), candidate)):
            return ExactnessVerdict(in_kernel, ImageVerdict("member", preimage=pre), beta)
        if inj[k].status == "pass":
            note = f"the unique preimage on {names[k]} does not match the other components"
            proof = ComponentProof(names[k], _MismatchProof(pair, k, pre, candidate))
            return ExactnessVerdict(in_kernel, ImageVerdict("non_member", proof=proof, note=note), beta)

    pre = bounded_ansatz(pair.alpha, candidate, ansatz_degree)
    if pre is not None:
        return ExactnessVerdict(in_kernel, ImageVerdict("member", preimage=pre), beta)
    return ExactnessVerdict(in_kernel, ImageVerdict("unknown", note="no sound rule applies"), beta)


@dataclass
class _MismatchProof:
    pair: CechPair
    k: int
    preimage: FreeElem
    candidate: tuple

    def verify(self) -> bool:
        v = semilinear_injectivity(self.pair.alpha[self.k])
        if v.status != "pass" or not v.certificate.verify():
            return False
        img = evaluate(self.pair, "alpha", self.preimage)
        ok_k = self.pair.piece_modules[self.k].equal(img[self.k], self.candidate[self.k])
        rest = any(not M.equal(x, y) for M, x, y in zip(self.pair.piece_modules, img, self.candidate))
        return ok_k and rest

    def __str__(self):
        return "the forced preimage maps elsewhere to a different element"
