"""Sparse multivariate polynomials over F_p and Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InexactDivision, RingMismatch, ZeroPolynomial
from .field import CoeffField
from .orders import GREVLEX, MonomialOrder


class PolyRing:
    """k[x_1, ..., x_n] with a fixed variable order and a monomial order.

    The monomial order only governs term iteration and leading terms; the
    printed form is always descending grevlex.
    """

    __slots__ = ("field", "names", "order", "_index")

    def __init__(self, field: CoeffField, names: Sequence[str], order: MonomialOrder = GREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self.order = order
        self._index = {v: i for i, v in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in {self}") from None

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.field, self.names, order)

    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def from_dict(self, d) -> Poly:
        coerce = self.field
        out = {}
        for e, c in d.items():
            c = coerce(c)
            if c != 0:
                out[e] = c
        return Poly(self, out)

    def const(self, c) -> Poly:
        c = self.field(c)
        return Poly(self, {self.zero_exp(): c} if c != 0 else {})

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return self.const(1)

    def var(self, name: str | int) -> Poly:
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one()})

    def gens(self) -> tuple[Poly, ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, exp, coeff=1) -> Poly:
        return self.from_dict({tuple(exp): self.field(coeff)})

    def parse(self, text: str) -> Poly:
        from .dsl import parse_expr, eval_expr

        return eval_expr(parse_expr(text), self)

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring != self:
                return value.to_ring(self)
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


class Poly:
    """Immutable polynomial; ``_d`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_d", "_terms", "_hash")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d
        self._terms = None
        self._hash = None

    # -- structure ---------------------------------------------------------
    @property
    def terms(self) -> tuple[tuple[tuple[int, ...], object], ...]:
        """Terms in descending order of the ring's monomial order."""
        if self._terms is None:
            key = self.ring.order.key
            self._terms = tuple(sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True))
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._d)

    def coeff(self, exp) -> object:
        return self._d.get(tuple(exp), self.ring.field.zero())

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and self.ring.zero_exp() in self._d)

    def constant_value(self):
        return self._d.get(self.ring.zero_exp(), self.ring.field.zero())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._d), default=-1)

    def degree_in(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        return max((e[i] for e in self._d), default=-1)

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        return {i for e in self._d for i, k in enumerate(e) if k}

    def leading_term(self, order: MonomialOrder | None = None):
        if not self._d:
            raise ZeroPolynomial("leading term of zero")
        key = (order or self.ring.order).key
        e = max(self._d, key=key)
        return e, self._d[e]

    def monic(self) -> Poly:
        if not self._d:
            return self
        _, c = self.leading_term()
        return self.scale(self.ring.field.inv(c))

    # -- equality ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._d == self.ring.const(other)._d
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        d = dict(self._d)
        for e, c in other._d.items():
            v = norm(d.get(e, 0) + c)
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Poly(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(-c) for e, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> Poly:
        c = self.ring.field(c)
        if c == 0:
            return self.ring.zero
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(v * c) for e, v in self._d.items()})

    def mul_term(self, exp, c) -> Poly:
        norm = self.ring.field.norm
        out = {}
        for e, v in self._d.items():
            w = norm(v * c)
            if w:
                out[tuple(a + b for a, b in zip(e, exp))] = w
        return Poly(self.ring, out)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        d: dict = {}
        for e1, c1 in self._d.items():
            for e2, c2 in other._d.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return self.ring.from_dict({e: norm(c) for e, c in d.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, g: Poly) -> tuple[Poly, Poly]:
        """Division by a single polynomial in the ring's order: ``self = q*g + r``."""
        g = self._coerce(g)
        if not g:
            raise ZeroDivisionError("division by zero polynomial")
        field = self.ring.field
        ge, gc = g.leading_term()
        ginv = field.inv(gc)
        key = self.ring.order.key
        rest = dict(self._d)
        q: dict = {}
        r: dict = {}
        norm = field.norm
        while rest:
            e = max(rest, key=key)
            c = rest[e]
            if all(a >= b for a, b in zip(e, ge)):
                m = tuple(a - b for a, b in zip(e, ge))
                f = norm(c * ginv)
                q[m] = f
                for e2, c2 in g._d.items():
                    t = tuple(a + b for a, b in zip(e2, m))
                    v = norm(rest.get(t, 0) - f * c2)
                    if v:
                        rest[t] = v
                    else:
                        rest.pop(t, None)
            else:
                r[e] = c
                del rest[e]
        return Poly(self.ring, q), Poly(self.ring, r)

    def exact_div(self, g: Poly) -> Poly:
        q, r = self.divmod(g)
        if r:
            raise InexactDivision(self, g, r)
        return q

    def derivative(self, var) -> Poly:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        norm = self.ring.field.norm
        out = {}
        for e, c in self._d.items():
            k = e[i]
            if k:
                v = norm(c * k)
                if v:
                    out[e[:i] + (k - 1,) + e[i + 1 :]] = v
        return Poly(self.ring, out)

    # -- change of ring ----------------------------------------------------
    def subs(self, images: Sequence[Poly], target: PolyRing | None = None) -> Poly:
        """Evaluate with variable ``i`` replaced by ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if target is None:
            target = images[0].ring if images else self.ring
        result = target.zero
        powers: dict = {}
        for e, c in self.terms:
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            result = result + term
        return result

    def to_ring(self, ring: PolyRing) -> Poly:
        """Reinterpret in a ring whose variable names include all used ones."""
        if ring.field != self.ring.field:
            raise RingMismatch(f"field {self.ring.field} vs {ring.field}")
        pos = []
        for i in sorted(self.support()):
            pos.append((i, ring.index(self.ring.names[i])))
        n = ring.nvars
        out = {}
        for e, c in self._d.items():
            ne = [0] * n
            for i, j in pos:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return Poly(ring, out)

    # -- printing ----------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r} in {self.ring})"


def _format_monomial(names, exp) -> str:
    parts = []
    for v, k in zip(names, exp):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Canonical printed form: descending grevlex, explicit ``*``."""
    if not f._d:
        return "0"
    field = f.ring.field
    items = sorted(f._d.items(), key=lambda t: GREVLEX.key(t[0]), reverse=True)
    out = []
    for k, (e, c) in enumerate(items):
        neg = not field.p and c < 0
        mag = -c if neg else c
        mono = _format_monomial(f.ring.names, e)
        if not mono:
            body = field.format(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{field.format(mag)}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def poly_arith(op: str, f: Poly, g: Poly) -> Poly:
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "exact_div":
        return f.exact_div(g)
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(f: Poly, var) -> Poly:
    return f.derivative(var)


def leading_term(f: Poly, order: MonomialOrder | None = None):
    return f.leading_term(order)


def polys(ring: PolyRing, texts: Iterable[str]) -> list[Poly]:
    return [ring.parse(t) for t in texts]
