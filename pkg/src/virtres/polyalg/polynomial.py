"""Sparse polynomials with exact rational coefficients."""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """A polynomial as a mapping exponent-tuple -> nonzero Fraction.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[tuple, object], nvars: int):
        clean = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if c:
                clean[tuple(e)] = _frac(c)
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Polynomial":
        return cls({tuple(exp): c}, len(exp))

    @classmethod
    def var(cls, i: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)}, nvars)

    @classmethod
    def binomial(cls, plus: Sequence[int], minus: Sequence[int]) -> "Polynomial":
        """x^plus - x^minus."""
        return cls({tuple(plus): 1, tuple(minus): -1}, len(plus))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def support(self) -> list:
        return sorted(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in rings of different size")
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _frac(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw({e: a * c for e, a in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(out, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = _frac(c)
        return Polynomial._raw({e: a / c for e, a in self.terms.items()}, self.nvars)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_monomial(self, exp: Sequence[int], c=1) -> "Polynomial":
        c = _frac(c)
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()},
            self.nvars,
        )

    def leading_term(self, order):
        """(exponent, coefficient) of the largest term under ``order``."""
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order) -> "Polynomial":
        if not self.terms:
            return self
        return self / self.leading_term(order)[1]

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Move variable i to position positions[i] in a ring with ``nvars`` variables."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, a in enumerate(e):
                ne[positions[i]] += a
            out[tuple(ne)] = c
        return Polynomial._raw(out, nvars)

    def to_str(self, names: Sequence[str] | None = None, order=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        if order is None:
            keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        else:
            keys = sorted(self.terms, key=order.key, reverse=True)
        parts = []
        for e, c in ((e, self.terms[e]) for e in keys):
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({self.to_str()})"


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse an arithmetic expression in the given variable names.

    Accepts +, -, *, ** or ^ with nonnegative integer exponents, integer and
    rational constants (``3/2``) and parentheses.
    """
    n = len(names)
    index = {name: i for i, name in enumerate(names)}
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Polynomial.constant(node.value, n)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise ValueError(f"unknown variable {node.id!r}")
            return Polynomial.var(index[node.id], n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponent must be an integer literal")
                return ev(node.left) ** node.right.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or not b:
                    raise ValueError("division only by nonzero constants")
                return a / b.constant_value()
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)


def as_polynomials(items: Iterable, nvars: int) -> list:
    return [p if isinstance(p, Polynomial) else Polynomial.constant(p, nvars) for p in items]
