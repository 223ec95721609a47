"""Rational function fields GF(p)(t1..tm).

Elements are fractions of multivariate polynomials over GF(p) kept in the
canonical reduced form: gcd(numerator, denominator) = 1 and the denominator
is monic under the lexicographic term order.
"""

from __future__ import annotations

from . import poly


class RatFunc:
    """A reduced fraction num/den of polynomials over GF(p)."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "FunctionField", num: dict, den: dict, reduce: bool = True):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = field._reduce(num, den)
        self.field = field
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.den

    def is_polynomial(self) -> bool:
        return self.den == self.field._one_poly

    def __add__(self, other):
        f = self.field
        p = f.p
        num = poly.padd(
            poly.pmul(self.num, other.den, p), poly.pmul(other.num, self.den, p), p
        )
        return RatFunc(f, num, poly.pmul(self.den, other.den, p))

    def __sub__(self, other):
        f = self.field
        p = f.p
        num = poly.psub(
            poly.pmul(self.num, other.den, p), poly.pmul(other.num, self.den, p), p
        )
        return RatFunc(f, num, poly.pmul(self.den, other.den, p))

    def __mul__(self, other):
        f = self.field
        return RatFunc(
            f, poly.pmul(self.num, other.num, f.p), poly.pmul(self.den, other.den, f.p)
        )

    def __neg__(self):
        return RatFunc(self.field, poly.pneg(self.num, self.field.p), self.den, reduce=False)

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.field is other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash(
            (id(self.field), tuple(sorted(self.num.items())), tuple(sorted(self.den.items())))
        )

    def __repr__(self):
        s = poly.pstr(self.num, self.field.vars)
        if self.is_polynomial():
            return s
        return f"({s})/({poly.pstr(self.den, self.field.vars)})"


class FunctionField:
    """GF(p)(t1..tm) with RatFunc elements."""

    kind = "function-field"

    def __init__(self, p: int, variables):
        from .finite import _is_prime

        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        variables = tuple(variables)
        if not variables:
            raise ValueError("a function field needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        self.p = p
        self.e = None
        self.q = None
        self.vars = variables
        self.nvars = len(variables)
        self._one_poly = {(0,) * self.nvars: 1}
        self.zero = RatFunc(self, {}, dict(self._one_poly), reduce=False)
        self.one = RatFunc(self, dict(self._one_poly), dict(self._one_poly), reduce=False)

    def _reduce(self, num: dict, den: dict):
        p = self.p
        if not num:
            return {}, dict(self._one_poly)
        if den == self._one_poly:
            return num, den
        g = poly.pgcd(num, den, p, self.nvars)
        if g and g != self._one_poly:
            num = poly.pdiv_exact(num, g, p)
            den = poly.pdiv_exact(den, g, p)
        _, lc = poly.plead(den)
        if lc != 1:
            cinv = pow(lc, -1, p)
            num = poly.pscale(num, cinv, p)
            den = poly.pscale(den, cinv, p)
        return num, den

    # -- element constructors ---------------------------------------------------

    def from_int(self, n: int) -> RatFunc:
        c = n % self.p
        return RatFunc(self, poly.pconst(c, self.nvars, self.p), dict(self._one_poly), reduce=False)

    def from_poly(self, d: dict) -> RatFunc:
        return RatFunc(self, dict(d), dict(self._one_poly), reduce=False)

    def gen(self, i: int) -> RatFunc:
        return self.from_poly(poly.pgen(i, self.nvars))

    def gens(self):
        return tuple(self.gen(i) for i in range(self.nvars))

    # -- scalar operations --------------------------------------------------------

    def add(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a + b

    def sub(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a - b

    def mul(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a * b

    def neg(self, a: RatFunc) -> RatFunc:
        return -a

    def inv(self, a: RatFunc) -> RatFunc:
        return a.inv()

    def div(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a / b

    def pow(self, a: RatFunc, k: int) -> RatFunc:
        if k < 0:
            a, k = a.inv(), -k
        out = self.one
        base = a
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- descriptors ----------------------------------------------------------------

    def specialize_element(self, a: RatFunc, point, target) -> int:
        """Evaluate at codes of a finite field; raises if the denominator vanishes."""
        den = poly.peval(a.den, point, target)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at specialization point")
        num = poly.peval(a.num, point, target)
        return target.mul(num, target.inv(den)) if num else 0

    def cache_key(self):
        return ("function", self.p, self.vars)

    def descriptor(self) -> dict:
        return {"kind": self.kind, "p": self.p, "vars": list(self.vars)}

    def __repr__(self):
        return f"GF({self.p})({','.join(self.vars)})"

    def __eq__(self, other):
        return isinstance(other, FunctionField) and self.cache_key() == other.cache_key()

    def __hash__(self):
        return hash(self.cache_key())
