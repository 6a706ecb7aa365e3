"""Monomial and module term orders.

Orders are expressed as sort keys: a larger key means a larger monomial.
Every order here is global (1 is the smallest monomial).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence


class MonomialOrder:
    """A global monomial order on exponent tuples.

    Use the constructors :meth:`degrevlex`, :meth:`lex` and :meth:`block`.
    """

    def __init__(self, kind: str, key: Callable, description: str):
        self.kind = kind
        self.key = lru_cache(maxsize=None)(key)
        self.description = description

    def __repr__(self):
        return f"MonomialOrder({self.description})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.description == other.description

    def __hash__(self):
        return hash(self.description)

    @classmethod
    def degrevlex(cls, weights: Sequence[int] | None = None) -> "MonomialOrder":
        if weights is None:
            def key(e):
                return (sum(e), tuple(-a for a in reversed(e)))
            return cls("degrevlex", key, "degrevlex")
        w = tuple(weights)
        if any(a <= 0 for a in w):
            raise ValueError("weights must be positive for a global order")

        def wkey(e):
            return (sum(a * b for a, b in zip(w, e)), tuple(-a for a in reversed(e)))
        return cls("degrevlex", wkey, f"degrevlex{w}")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex", tuple, "lex")

    @classmethod
    def block(cls, first_size: int, first: "MonomialOrder" = None,
              second: "MonomialOrder" = None) -> "MonomialOrder":
        """Elimination order: compare the first ``first_size`` variables first."""
        first = first or cls.degrevlex()
        second = second or cls.degrevlex()
        k = first_size

        def key(e):
            return (first.key(e[:k]), second.key(e[k:]))
        return cls("block", key, f"block({k},{first.description},{second.description})")


DEFAULT_ORDER = MonomialOrder.degrevlex()


def ideal_term_key(order: MonomialOrder) -> Callable:
    """Term key for ideals: every term sits in component 0."""
    k = order.key

    def key(t):
        return k(t[1])
    return key


def top_term_key(order: MonomialOrder) -> Callable:
    """Term-over-position; lower component index wins ties."""
    k = order.key

    @lru_cache(maxsize=None)
    def key(t):
        return (k(t[1]), -t[0])
    return key


def pot_term_key(order: MonomialOrder) -> Callable:
    """Position-over-term; lower component index is larger."""
    k = order.key

    @lru_cache(maxsize=None)
    def key(t):
        return (-t[0], k(t[1]))
    return key


def schreyer_term_key(prev_key: Callable, leads: Sequence[tuple]) -> Callable:
    """Schreyer order induced by ``leads`` = lead terms (comp, exp) of a basis.

    x^a e_i > x^b e_j iff lt(x^a g_i) > lt(x^b g_j) in the previous order,
    ties broken in favour of the smaller index.
    """
    leads = tuple(leads)

    @lru_cache(maxsize=None)
    def key(t):
        comp, e = leads[t[0]]
        return (prev_key((comp, tuple(a + b for a, b in zip(e, t[1])))), -t[0])
    return key
