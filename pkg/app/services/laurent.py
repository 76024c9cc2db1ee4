"""
Exact Laurent polynomials with integer coefficients in one variable.

The Jones polynomial is stored in powers of t^(1/2): exponent ``e`` stands for
t^(e/2). The bracket is stored in powers of A.
"""
from typing import Dict, Iterable, Mapping, Tuple, Union

import sympy


class LaurentPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None):
        collected: Dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for exponent, coefficient in items:
            collected[int(exponent)] = collected.get(int(exponent), 0) + int(coefficient)
        self._terms = tuple(sorted((e, c) for e, c in collected.items() if c != 0))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @property
    def terms(self) -> Tuple[Tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return LaurentPoly(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly((e, c * other) for e, c in self._terms)
        product: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("Only signed monomials have Laurent inverses")
            (e, c), = self._terms
            return LaurentPoly({e * n: c ** -n})
        result = LaurentPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def scale_exponents(self, k: int) -> "LaurentPoly":
        """Substitute x -> x^k."""
        return LaurentPoly((e * k, c) for e, c in self._terms)

    def reflect(self) -> "LaurentPoly":
        """Substitute x -> x^-1."""
        return self.scale_exponents(-1)

    def up_to_unit(self) -> "LaurentPoly":
        """Divide by the unit ±x^k that moves the lowest term to a positive constant."""
        if not self._terms:
            return self
        low, sign = self._terms[0][0], (1 if self._terms[0][1] > 0 else -1)
        return LaurentPoly((e - low, c * sign) for e, c in self._terms)

    def evaluate_at_one(self) -> int:
        return sum(c for _, c in self._terms)

    def to_sympy(self, name: str = "t", half: bool = True) -> sympy.Expr:
        x = sympy.Symbol(name, positive=True)
        base = sympy.sqrt(x) if half else x
        return sympy.Add(*[c * base ** e for e, c in self._terms])

    def format(self, var: str = "t", half: bool = True) -> str:
        """Ascending exponents, e.g. ``-t^-5/2 - t^-1/2``."""
        if not self._terms:
            return "0"
        out = ""
        for i, (e, c) in enumerate(self._terms):
            power = _power(var, e, half)
            magnitude = abs(c)
            body = power if magnitude == 1 and power else f"{magnitude}{power}"
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self._terms)!r})"


def _power(var: str, e: int, half: bool) -> str:
    if half and e % 2:
        return f"{var}^{e}/2"
    exponent = e // 2 if half else e
    if exponent == 0:
        return ""
    if exponent == 1:
        return var
    return f"{var}^{exponent}"


A = LaurentPoly.monomial(1)
LOOP_VALUE = LaurentPoly({2: -1, -2: -1})  # -A^2 - A^-2
UNLINK_FACTOR = LaurentPoly({1: -1, -1: -1})  # -t^1/2 - t^-1/2
