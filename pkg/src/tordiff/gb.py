"""Gröbner bases for ideals and for submodules of free modules.

A single Buchberger engine works on sparse vectors ``{(component, exponent): coeff}``
ordered position-over-term; an ideal is the rank-1 case.  Submodules may
carry a *base ideal* ``I``: they then live in ``(k[x]/I)^s`` and the engine adds
``I * e_i`` for every component.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import RankMismatch, ResourceCap, RingMismatch
from .orders import Block, GREVLEX, MonomialOrder, PositionOverTerm
from .poly import Poly, PolyRing


@dataclass(frozen=True)
class Limits:
    degree_cap: int = 64
    pair_cap: int = 200_000
    saturation_cap: int = 64


@dataclass
class EngineStats:
    bases: int = 0
    pairs: int = 0
    reductions: int = 0
    max_basis: int = 0

    def as_dict(self) -> dict:
        return {
            "bases": self.bases,
            "pairs": self.pairs,
            "reductions": self.reductions,
            "max_basis": self.max_basis,
        }


_LIMITS: contextvars.ContextVar[Limits] = contextvars.ContextVar("tordiff_limits", default=Limits())
_STATS: contextvars.ContextVar[EngineStats | None] = contextvars.ContextVar("tordiff_stats", default=None)


def current_limits() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def limits(**kwargs):
    token = _LIMITS.set(replace(_LIMITS.get(), **kwargs))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)


@contextlib.contextmanager
def collect_stats():
    stats = EngineStats()
    token = _STATS.set(stats)
    try:
        yield stats
    finally:
        _STATS.reset(token)


# ---------------------------------------------------------------------------
# free-module elements


class FreeElem:
    """An element of a free module ``R^s`` given by its component polynomials."""

    __slots__ = ("comps",)

    def __init__(self, comps: Sequence[Poly]):
        comps = tuple(comps)
        if not comps:
            raise ValueError("free rank must be at least 1")
        ring = comps[0].ring
        for c in comps:
            if c.ring != ring:
                raise RingMismatch("components live in different rings")
        self.comps = comps

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> FreeElem:
        return cls([ring.zero] * rank)

    @classmethod
    def basis(cls, ring: PolyRing, rank: int, i: int) -> FreeElem:
        return cls([ring.one if j == i else ring.zero for j in range(rank)])

    @property
    def ring(self) -> PolyRing:
        return self.comps[0].ring

    @property
    def rank(self) -> int:
        return len(self.comps)

    def __len__(self):
        return len(self.comps)

    def __iter__(self):
        return iter(self.comps)

    def __getitem__(self, i):
        return self.comps[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return isinstance(other, FreeElem) and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def _check(self, other: FreeElem):
        if not isinstance(other, FreeElem):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FreeElem([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FreeElem([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return FreeElem([-a for a in self.comps])

    def __rmul__(self, scalar):
        return FreeElem([scalar * a for a in self.comps])

    def __mul__(self, scalar):
        return FreeElem([a * scalar for a in self.comps])

    def map(self, fn) -> FreeElem:
        return FreeElem([fn(c) for c in self.comps])

    def degree(self) -> int:
        return max(c.degree() for c in self.comps)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.comps) + ")"


# ---------------------------------------------------------------------------
# the engine


def _poly_to_vec(f: Poly, comp: int = 0) -> dict:
    return {(comp, e): c for e, c in f._d.items()}


def _elem_to_vec(v: FreeElem, shift: int = 0) -> dict:
    out = {}
    for i, c in enumerate(v.comps):
        for e, a in c._d.items():
            out[(i + shift, e)] = a
    return out


def _vec_to_elem(vec: dict, ring: PolyRing, rank: int, shift: int = 0) -> FreeElem:
    parts: list[dict] = [{} for _ in range(rank)]
    for (i, e), c in vec.items():
        parts[i - shift][e] = c
    return FreeElem([Poly(ring, p) for p in parts])


def _vec_to_poly(vec: dict, ring: PolyRing) -> Poly:
    return Poly(ring, {e: c for (_, e), c in vec.items()})


def _vec_degree(vec: dict) -> int:
    return max((sum(e) for _, e in vec), default=-1)


class _Engine:
    """Reduction and Buchberger completion for one ring and one term order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.field = ring.field
        base = order.key
        cache: dict = {}

        def key(t):
            k = cache.get(t)
            if k is None:
                k = cache[t] = (-t[0], base(t[1]))
            return k

        self.key = key
        self.stats = _STATS.get()

    def lead(self, vec):
        return max(vec, key=self.key)

    def monic(self, vec):
        lt = self.lead(vec)
        c = vec[lt]
        if c == 1:
            return vec, lt
        inv = self.field.inv(c)
        norm = self.field.norm
        return {t: norm(a * inv) for t, a in vec.items()}, lt

    def reduce(self, vec, basis):
        """Full reduction of ``vec`` by monic ``basis`` entries ``(vec, lead)``."""
        v = dict(vec)
        rem = {}
        norm = self.field.norm
        key = self.key
        count = 0
        while v:
            t = max(v, key=key)
            c = v[t]
            comp, exp = t
            for g, glt in basis:
                gexp = glt[1]
                if glt[0] == comp and all(a <= b for a, b in zip(gexp, exp)):
                    m = tuple(b - a for a, b in zip(gexp, exp))
                    for (gc, ge), gv in g.items():
                        nt = (gc, tuple(a + b for a, b in zip(ge, m)))
                        val = norm(v.get(nt, 0) - c * gv)
                        if val:
                            v[nt] = val
                        else:
                            v.pop(nt, None)
                    count += 1
                    break
            else:
                rem[t] = c
                del v[t]
        if self.stats is not None:
            self.stats.reductions += count
        return rem

    def spoly(self, f, flt, g, glt):
        lcm = tuple(max(a, b) for a, b in zip(flt[1], glt[1]))
        mf = tuple(a - b for a, b in zip(lcm, flt[1]))
        mg = tuple(a - b for a, b in zip(lcm, glt[1]))
        norm = self.field.norm
        out: dict = {}
        for (c, e), a in f.items():
            out[(c, tuple(x + y for x, y in zip(e, mf)))] = a
        for (c, e), a in g.items():
            t = (c, tuple(x + y for x, y in zip(e, mg)))
            val = norm(out.get(t, 0) - a)
            if val:
                out[t] = val
            else:
                out.pop(t, None)
        return out

    def complete(self, vecs, ideal_case: bool):
        lim = _LIMITS.get()
        G: list = []
        pairs: set = set()

        def lcm_deg(p):
            a, b = G[p[0]][1][1], G[p[1]][1][1]
            return sum(max(x, y) for x, y in zip(a, b))

        def add(h):
            if _vec_degree(h) > lim.degree_cap:
                raise ResourceCap(f"degree cap {lim.degree_cap} exceeded")
            h, lt = self.monic(h)
            G.append((h, lt))
            k = len(G) - 1
            for i in range(k):
                if G[i][1][0] == lt[0]:
                    pairs.add((i, k))

        for v in vecs:
            if v:
                h = self.reduce(v, G)
                if h:
                    add(h)
        processed = 0
        while pairs:
            p = min(pairs, key=lambda q: (lcm_deg(q), q))
            pairs.discard(p)
            i, j = p
            (f, flt), (g, glt) = G[i], G[j]
            if ideal_case and all(a == 0 or b == 0 for a, b in zip(flt[1], glt[1])):
                continue
            lcm = tuple(max(a, b) for a, b in zip(flt[1], glt[1]))
            chain = False
            for k, (_, klt) in enumerate(G):
                if k in (i, j) or klt[0] != flt[0]:
                    continue
                if all(a <= b for a, b in zip(klt[1], lcm)):
                    if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                        chain = True
                        break
            if chain:
                continue
            processed += 1
            if processed > lim.pair_cap:
                raise ResourceCap(f"pair cap {lim.pair_cap} exceeded")
            h = self.reduce(self.spoly(f, flt, g, glt), G)
            if h:
                add(h)
        if self.stats is not None:
            self.stats.bases += 1
            self.stats.pairs += processed
        return self.interreduce(G)

    def interreduce(self, G):
        keep = []
        for idx, (g, lt) in enumerate(G):
            redundant = False
            for jdx, (_, lt2) in enumerate(G):
                if jdx == idx or lt2[0] != lt[0]:
                    continue
                if all(a <= b for a, b in zip(lt2[1], lt[1])) and (lt2 != lt or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                keep.append((g, lt))
        out = []
        for idx, (g, lt) in enumerate(keep):
            others = [keep[j] for j in range(len(keep)) if j != idx]
            r = self.reduce(g, others)
            r, lt = self.monic(r)
            out.append((r, lt))
        out.sort(key=lambda t: self.key(t[1]))
        if self.stats is not None:
            self.stats.max_basis = max(self.stats.max_basis, len(out))
        return out


# ---------------------------------------------------------------------------
# public types


class GroebnerBasis:
    """A reduced Gröbner basis, sorted by ascending leading term."""

    def __init__(self, ring: PolyRing, rank: int, entries, is_module: bool):
        self.ring = ring
        self.rank = rank
        self.is_module = is_module
        self._entries = entries
        if is_module:
            self.elements = tuple(_vec_to_elem(v, ring, rank) for v, _ in entries)
        else:
            self.elements = tuple(_vec_to_poly(v, ring) for v, _ in entries)

    @property
    def order(self):
        return PositionOverTerm(self.ring.order) if self.is_module else self.ring.order

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.ring, self.rank, self.elements))

    def is_unit(self) -> bool:
        return any(lt[1] == self.ring.zero_exp() for _, lt in self._entries)

    def _vec(self, v):
        if isinstance(v, Poly):
            if self.rank != 1:
                raise RankMismatch(f"polynomial against rank-{self.rank} basis")
            if v.ring != self.ring:
                raise RingMismatch(f"{v.ring} vs {self.ring}")
            return _poly_to_vec(v)
        if v.rank != self.rank:
            raise RankMismatch(f"rank {v.rank} vs basis rank {self.rank}")
        if v.ring != self.ring:
            raise RingMismatch(f"{v.ring} vs {self.ring}")
        return _elem_to_vec(v)

    def reduce(self, v):
        eng = _Engine(self.ring, self.ring.order)
        r = eng.reduce(self._vec(v), self._entries)
        if isinstance(v, Poly):
            return _vec_to_poly(r, self.ring)
        return _vec_to_elem(r, self.ring, self.rank)

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def self_test(self) -> bool:
        """Reducedness plus the Buchberger criterion on every S-pair."""
        eng = _Engine(self.ring, self.ring.order)
        entries = self._entries
        for idx, (g, lt) in enumerate(entries):
            if g[lt] != 1:
                return False
            for jdx, (_, lt2) in enumerate(entries):
                if jdx == idx or lt2[0] != lt[0]:
                    continue
                for t in g:
                    if t[0] == lt2[0] and all(a <= b for a, b in zip(lt2[1], t[1])):
                        return False
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                (f, flt), (g, glt) = entries[i], entries[j]
                if flt[0] != glt[0]:
                    continue
                if eng.reduce(eng.spoly(f, flt, g, glt), entries):
                    return False
        return True

    def __repr__(self):
        return f"GroebnerBasis({list(self.elements)})"


def _groebner(ring: PolyRing, vecs, rank: int, is_module: bool) -> GroebnerBasis:
    eng = _Engine(ring, ring.order)
    entries = eng.complete(vecs, ideal_case=not is_module)
    return GroebnerBasis(ring, rank, entries, is_module)


class Ideal:
    """An ideal of a polynomial ring given by generators."""

    def __init__(self, ring: PolyRing, gens: Sequence[Poly] = ()):
        gens = tuple(g if isinstance(g, Poly) else ring(g) for g in gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator in {g.ring}, ideal in {ring}")
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        self._gb: dict = {}

    def gb(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        if order not in self._gb:
            ring = self.ring if order == self.ring.order else self.ring.with_order(order)
            vecs = [_poly_to_vec(g.to_ring(ring) if ring != self.ring else g) for g in self.gens]
            self._gb[order] = _groebner(ring, vecs, 1, False)
        return self._gb[order]

    def reduce(self, f: Poly) -> Poly:
        return self.gb().reduce(f)

    def contains(self, f) -> bool:
        if isinstance(f, Ideal):
            return all(self.contains(g) for g in f.gens)
        return not self.reduce(f)

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def equals(self, other: Ideal) -> bool:
        return self.gb() == other.gb()

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(other))

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


class Submodule:
    """Submodule of ``(ring/base)^rank`` generated by ``gens``."""

    def __init__(self, ring: PolyRing, rank: int, gens: Sequence[FreeElem] = (), base: Ideal | None = None):
        gens = tuple(gens)
        for g in gens:
            if g.rank != rank:
                raise RankMismatch(f"generator of rank {g.rank} in rank-{rank} module")
            if g.ring != ring:
                raise RingMismatch(f"generator in {g.ring}, module over {ring}")
        if base is not None and base.ring != ring:
            raise RingMismatch("base ideal in a different ring")
        self.ring = ring
        self.rank = rank
        self.gens = tuple(g for g in gens if g)
        self.base = base
        self._gb: GroebnerBasis | None = None

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            vecs = [_elem_to_vec(g) for g in self.gens]
            if self.base is not None:
                for b in self.base.gb().elements:
                    for i in range(self.rank):
                        vecs.append(_poly_to_vec(b, i))
            self._gb = _groebner(self.ring, vecs, self.rank, True)
        return self._gb

    def reduce(self, v: FreeElem) -> FreeElem:
        return self.gb().reduce(v)

    def contains(self, v) -> bool:
        if isinstance(v, Submodule):
            return all(self.contains(g) for g in v.gens)
        return not self.reduce(v)

    __contains__ = contains

    def equals(self, other: Submodule) -> bool:
        return self.gb() == other.gb()

    def with_gens(self, extra: Sequence[FreeElem]) -> Submodule:
        return Submodule(self.ring, self.rank, self.gens + tuple(extra), self.base)

    def __repr__(self):
        return "span{" + ", ".join(repr(g) for g in self.gens) + "}"


# ---------------------------------------------------------------------------
# operations


def groebner_basis(target, order=None) -> GroebnerBasis:
    if isinstance(target, Ideal):
        return target.gb(order)
    if order is not None and not isinstance(order, PositionOverTerm):
        raise ValueError("submodules need a position-over-term order")
    if order is not None and order.base != target.ring.order:
        ring = target.ring.with_order(order.base)
        moved = Submodule(
            ring,
            target.rank,
            [g.map(lambda c: c.to_ring(ring)) for g in target.gens],
            Ideal(ring, [b.to_ring(ring) for b in target.base.gens]) if target.base else None,
        )
        return moved.gb()
    return target.gb()


def normal_form(v, gb: GroebnerBasis):
    return gb.reduce(v)


def eliminate(I: Ideal, keep: Sequence[str]) -> Ideal:
    """Generators of ``I ∩ k[keep]`` as an ideal of the polynomial ring on ``keep``."""
    ring = I.ring
    keep_set = set(keep)
    unknown = keep_set - set(ring.names)
    if unknown:
        raise KeyError(f"unknown variables {sorted(unknown)}")
    elim = [n for n in ring.names if n not in keep_set]
    kept = [n for n in ring.names if n in keep_set]
    big = PolyRing(ring.field, elim + kept, Block(len(elim), GREVLEX, GREVLEX))
    G = Ideal(big, [g.to_ring(big) for g in I.gens]).gb()
    small = PolyRing(ring.field, kept, GREVLEX)
    n_elim = len(elim)
    out = [g.to_ring(small) for g in G.elements if all(i >= n_elim for i in g.support())]
    return Ideal(small, out)


def syzygies(columns: Sequence, base: Ideal | None = None) -> Submodule:
    """Generators of ``{a : sum a_i * col_i = 0}`` over ``ring/base``."""
    columns = [FreeElem([c]) if isinstance(c, Poly) else c for c in columns]
    if not columns:
        raise ValueError("no columns")
    ring = columns[0].ring
    s = columns[0].rank
    r = len(columns)
    for c in columns:
        if c.rank != s:
            raise RankMismatch("columns of different rank")
    vecs = []
    one = ring.field.one()
    zero_exp = ring.zero_exp()
    for j, c in enumerate(columns):
        v = _elem_to_vec(c)
        v[(s + j, zero_exp)] = one
        vecs.append(v)
    if base is not None:
        for b in base.gb().elements:
            for i in range(s):
                vecs.append(_poly_to_vec(b, i))
    G = _groebner(ring, vecs, s + r, True)
    gens = []
    for vec, lt in G._entries:
        if lt[0] >= s:
            gens.append(_vec_to_elem(vec, ring, r, shift=s))
    if base is not None:
        gens = [g for g in gens if not all(base.contains(c) for c in g.comps)]
    return Submodule(ring, r, gens, base)


def lift(v, gens: Sequence, base: Ideal | None = None):
    """Cofactors ``q`` with ``v = sum q_i * gens_i`` modulo ``base``, or ``None``."""
    is_poly = isinstance(v, Poly)
    if is_poly:
        v = FreeElem([v])
        gens = [FreeElem([g]) if isinstance(g, Poly) else g for g in gens]
    ring = v.ring
    s = v.rank
    m = len(gens)
    if m == 0:
        return [] if v.is_zero() or (base is not None and Submodule(ring, s, [], base).contains(v)) else None
    zero_exp = ring.zero_exp()
    one = ring.field.one()
    vecs = []
    for j, g in enumerate(gens):
        vec = _elem_to_vec(g)
        vec[(s + j, zero_exp)] = one
        vecs.append(vec)
    if base is not None:
        for b in base.gb().elements:
            for i in range(s):
                vecs.append(_poly_to_vec(b, i))
    G = _groebner(ring, vecs, s + m, True)
    eng = _Engine(ring, ring.order)
    r = eng.reduce(_elem_to_vec(v), G._entries)
    if any(t[0] < s for t in r):
        return None
    w = _vec_to_elem(r, ring, m, shift=s)
    return [-c for c in w.comps]


def quotient(target, f: Poly):
    """``(target : f)``, computed through syzygies."""
    if not f:
        raise ValueError("quotient by zero")
    if isinstance(target, Ideal):
        syz = syzygies([f, *target.gens])
        return Ideal(target.ring, [g[0] for g in syz.gens])
    s = target.rank
    ring = target.ring
    cols = []
    for i in range(s):
        cols.append(FreeElem([f if j == i else ring.zero for j in range(s)]))
    cols.extend(target.gens)
    syz = syzygies(cols, target.base)
    gens = [FreeElem(g.comps[:s]) for g in syz.gens]
    return Submodule(ring, s, gens, target.base)


def saturate(target, f: Poly):
    """``(target : f^∞)``; iterates ``quotient`` until the reduced basis stabilises."""
    lim = _LIMITS.get()
    cur = target
    for _ in range(lim.saturation_cap):
        nxt = quotient(cur, f)
        if nxt.equals(cur):
            return nxt
        cur = nxt
    raise ResourceCap(f"saturation did not stabilise within {lim.saturation_cap} steps")


def fresh_name(names, stem: str = "t") -> str:
    taken = set(names)
    if stem not in taken:
        return stem
    k = 0
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def radical_membership(f: Poly, I: Ideal) -> bool:
    """``f ∈ √I`` via the Rabinowitsch trick."""
    if not f:
        return True
    ring = I.ring
    t = fresh_name(ring.names, "_t")
    big = PolyRing(ring.field, ring.names + (t,), ring.order)
    tv = big.var(t)
    gens = [g.to_ring(big) for g in I.gens] + [big.one - tv * f.to_ring(big)]
    return Ideal(big, gens).is_unit()
