"""Monomial orders on exponent tuples and position-over-term orders on free-module terms.

Every order exposes ``key(exp)``; a larger key means a larger monomial.
"""

from __future__ import annotations

from dataclasses import dataclass


class MonomialOrder:
    name = "?"

    def key(self, exp: tuple[int, ...]):
        raise NotImplementedError

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class Lex(MonomialOrder):
    name = "lex"

    def key(self, exp):
        return exp


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    name = "grevlex"

    def key(self, exp):
        # ties in degree: the monomial with the smaller exponent in the last variable wins
        return (sum(exp), tuple(-e for e in reversed(exp)))


@dataclass(frozen=True)
class Block(MonomialOrder):
    """Elimination order: the first ``split`` variables dominate the rest."""

    split: int
    first: MonomialOrder = GrevLex()
    second: MonomialOrder = GrevLex()
    name = "block"

    def key(self, exp):
        return (self.first.key(exp[: self.split]), self.second.key(exp[self.split :]))


@dataclass(frozen=True)
class PositionOverTerm:
    """Order on terms ``(component, exponent)`` of a free module.

    Lower component index has priority; within a component the base order decides.
    """

    base: MonomialOrder = GrevLex()
    name = "pot"

    def key(self, term):
        comp, exp = term
        return (-comp, self.base.key(exp))

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


LEX = Lex()
GREVLEX = GrevLex()
