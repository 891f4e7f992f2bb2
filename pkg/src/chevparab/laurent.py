"""Exact coefficient rings: ℤ or 𝔽_p extended by Laurent and polynomial variables.

Elements are sparse dictionaries from monomials to integer coefficients.  A
monomial is a sorted tuple of ``(variable, exponent)`` pairs with nonzero
exponents, so elements from rings with different variable sets can be combined
as long as the characteristic agrees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Union

Monomial = tuple  # tuple[tuple[str, int], ...]

ONE_MONO: Monomial = ()


@lru_cache(maxsize=1 << 16)
def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = dict(m1)
    for v, e in m2:
        s = out.get(v, 0) + e
        if s:
            out[v] = s
        else:
            del out[v]
    return tuple(sorted(out.items()))


@lru_cache(maxsize=1 << 14)
def _mono_pow(m: Monomial, k: int) -> Monomial:
    if k == 0:
        return ONE_MONO
    return tuple((v, e * k) for v, e in m)


class LPoly:
    """An exact sparse Laurent polynomial with coefficients in ℤ or 𝔽_p."""

    __slots__ = ("terms", "p", "_hash")

    def __init__(self, terms: dict | None = None, p: int = 0, _clean: bool = False):
        self.p = p
        self._hash = None
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            t = {}
            for m, c in terms.items():
                if p:
                    c %= p
                if c:
                    t[m] = c
            self.terms = t

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: int, p: int = 0) -> "LPoly":
        if p:
            c %= p
        return cls({ONE_MONO: c} if c else {}, p, _clean=True)

    @classmethod
    def var(cls, name: str, p: int = 0, exp: int = 1) -> "LPoly":
        return cls({((name, exp),) if exp else ONE_MONO: 1}, p, _clean=True)

    def _coerce(self, other) -> "LPoly":
        if isinstance(other, LPoly):
            if other.p != self.p:
                raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return LPoly.const(other, self.p)
        return NotImplemented

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(ONE_MONO) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(ONE_MONO, 0)

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        p = self.p
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if p:
                s %= p
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return LPoly(t, p, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "LPoly":
        p = self.p
        if p:
            return LPoly({m: (-c) % p for m, c in self.terms.items()}, p, _clean=True)
        return LPoly({m: -c for m, c in self.terms.items()}, p, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return LPoly({}, self.p, _clean=True)
        p = self.p
        if len(b) == 1 and ONE_MONO in b:
            k = b[ONE_MONO]
            if k == 1:
                return self
            return LPoly({m: c * k for m, c in a.items()}, p)
        if len(a) == 1 and ONE_MONO in a:
            k = a[ONE_MONO]
            if k == 1:
                return other
            return LPoly({m: c * k for m, c in b.items()}, p)
        t: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return LPoly(t, p)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LPoly":
        if k < 0:
            return self.inverse() ** (-k)
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            c = pow(c, k, self.p) if self.p else c ** k
            return LPoly({_mono_pow(m, k): c}, self.p)
        result = LPoly.const(1, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LPoly":
        """Inverse of a unit monomial; raises ``ValueError`` otherwise."""
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not a monomial unit")
        (m, c), = self.terms.items()
        if self.p:
            if c % self.p == 0:
                raise ValueError(f"{self} is not invertible")
            ci = pow(c, -1, self.p)
        else:
            if c not in (1, -1):
                raise ValueError(f"{self} is not invertible over ℤ")
            ci = c
        return LPoly({_mono_pow(m, -1): ci}, self.p, _clean=True)

    def exact_div_int(self, k: int) -> "LPoly":
        """Divide every coefficient by the integer ``k``; the division must be exact."""
        if self.p:
            return self * pow(k % self.p, -1, self.p)
        t = {}
        for m, c in self.terms.items():
            q, r = divmod(c, k)
            if r:
                raise ValueError(f"{self} is not divisible by {k}")
            t[m] = q
        return LPoly(t, 0, _clean=True)

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LPoly.const(other, self.p)
        if not isinstance(other, LPoly):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self.terms.items())))
        return self._hash

    # printing -----------------------------------------------------------
    def sort_key(self) -> tuple:
        return tuple(sorted((m, c) for m, c in self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: (_degree(mc[0]), mc[0])):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        suffix = f" mod {self.p}" if self.p else ""
        return f"LPoly({self}{suffix})"


def _degree(m: Monomial) -> int:
    return sum(e for _, e in m)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|\^|\*|\+|-|\(|\))")


@dataclass(frozen=True)
class CoefficientRing:
    """ℤ (``p == 0``) or 𝔽_p, with Laurent variables and polynomial variables."""

    p: int = 0
    laurent_vars: tuple[str, ...] = ()
    poly_vars: tuple[str, ...] = ()

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("characteristic must be non-negative")
        if self.p and any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")
        if set(self.laurent_vars) & set(self.poly_vars):
            raise ValueError("a variable cannot be both Laurent and polynomial")

    @property
    def name(self) -> str:
        base = f"F{self.p}" if self.p else "Z"
        parts = [f"{v}^±1" for v in self.laurent_vars] + list(self.poly_vars)
        return base + (f"[{','.join(parts)}]" if parts else "")

    def zero(self) -> LPoly:
        return LPoly({}, self.p, _clean=True)

    def one(self) -> LPoly:
        return LPoly.const(1, self.p)

    def const(self, c: int) -> LPoly:
        return LPoly.const(c, self.p)

    def var(self, name: str) -> LPoly:
        if name not in self.laurent_vars and name not in self.poly_vars:
            raise KeyError(f"{name!r} is not a variable of {self.name}")
        return LPoly.var(name, self.p)

    def extend(self, laurent_vars: Iterable[str] = (), poly_vars: Iterable[str] = ()) -> "CoefficientRing":
        lv = tuple(self.laurent_vars) + tuple(v for v in laurent_vars if v not in self.laurent_vars)
        pv = tuple(self.poly_vars) + tuple(v for v in poly_vars if v not in self.poly_vars)
        return CoefficientRing(self.p, lv, pv)

    def contains(self, x: LPoly) -> bool:
        if x.p != self.p:
            return False
        for m in x.terms:
            for v, e in m:
                if v in self.laurent_vars:
                    continue
                if v in self.poly_vars and e > 0:
                    continue
                return False
        return True

    def is_unit(self, x: LPoly) -> bool:
        if not self.contains(x) or len(x.terms) != 1:
            return False
        (m, c), = x.terms.items()
        if any(v not in self.laurent_vars for v, _ in m):
            return False
        return c % self.p != 0 if self.p else c in (1, -1)

    def coerce(self, x: Union[int, str, LPoly]) -> LPoly:
        if isinstance(x, LPoly):
            if not self.contains(x):
                raise ValueError(f"{x} is not an element of {self.name}")
            return x
        if isinstance(x, int):
            return self.const(x)
        return self.parse(x)

    def parse(self, text: str) -> LPoly:
        """Parse sums of signed monomials such as ``-2*t^-1*s + 3``."""
        tokens = [t for t in _TOKEN.findall(text)]
        if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
            raise ValueError(f"cannot parse ring element {text!r}")
        pos = 0

        def peek():
            return tokens[pos] if pos < len(tokens) else None

        def take():
            nonlocal pos
            pos += 1
            return tokens[pos - 1]

        def integer() -> int:
            sign = 1
            while peek() in ("-", "+"):
                if take() == "-":
                    sign = -sign
            tok = take()
            if tok == "(":
                val = integer()
                if take() != ")":
                    raise ValueError(f"unbalanced parentheses in {text!r}")
                return sign * val
            if tok is None or not tok.isdigit():
                raise ValueError(f"expected integer exponent in {text!r}")
            return sign * int(tok)

        def factor() -> LPoly:
            tok = take()
            if tok == "(":
                val = expr()
                if take() != ")":
                    raise ValueError(f"unbalanced parentheses in {text!r}")
            elif tok is not None and tok.isdigit():
                val = self.const(int(tok))
            elif tok is not None and (tok[0].isalpha() or tok[0] == "_"):
                val = self.var(tok)
            else:
                raise ValueError(f"unexpected token {tok!r} in {text!r}")
            if peek() == "^":
                take()
                val = val ** integer()
            return val

        def term() -> LPoly:
            sign = 1
            while peek() in ("-", "+"):
                if take() == "-":
                    sign = -sign
            val = factor()
            while peek() == "*":
                take()
                val = val * factor()
            return val if sign == 1 else -val

        def expr() -> LPoly:
            val = term()
            while peek() in ("+", "-"):
                val = val + term()
            return val

        result = expr()
        if pos != len(tokens):
            raise ValueError(f"trailing input in {text!r}")
        return result

    def to_json(self) -> dict:
        return {"p": self.p, "laurent_vars": list(self.laurent_vars), "poly_vars": list(self.poly_vars)}

    @classmethod
    def from_json(cls, data: dict) -> "CoefficientRing":
        return cls(int(data.get("p", 0)), tuple(data.get("laurent_vars", ())), tuple(data.get("poly_vars", ())))
