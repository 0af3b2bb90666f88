"""Exact scalar arithmetic.

Three scalar rings, all immutable and exact:

* ``Rat`` -- arbitrary-precision rationals (``fractions.Fraction``),
  the ground field.  Serialized as ``"p/q"`` (or ``"p"`` when q = 1).
* ``RatFunc`` -- reduced ratios of dense univariate polynomials over
  ``Rat``, kept with monic denominator so that equality is structural.
* ``HSeries`` -- power series in the deformation parameter hbar,
  truncated at a per-value order N; coefficients are ``Rat`` or
  ``RatFunc``.  Arithmetic between series of different orders truncates
  to the minimum order.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

Rat = Fraction


class PoleEncountered(ArithmeticError):
    """A denominator vanished at the requested point."""


class NonNilpotentConstantTerm(ValueError):
    """exp() applied to a series whose hbar^0 term is nonzero."""


def rat(p, q=1) -> Rat:
    return Fraction(p, q)


def rat_to_str(x: Rat) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Rat:
    return Fraction(s.strip())


def _strip(coeffs):
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Dense univariate polynomial over Rat; coeffs[k] is the degree-k
    coefficient, with no trailing zeros stored."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(tuple(Fraction(c) for c in coeffs))

    @staticmethod
    def of(*cs) -> "Poly":
        return Poly(cs)

    @staticmethod
    def x() -> "Poly":
        return Poly((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Rat:
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        other = _as_poly(other)
        return other is not None and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.of(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly"):
        """Exact Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.leading()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem)

    def eval(self, a: Rat) -> Rat:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(z)), by Horner's rule."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.of(c)
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly(tuple(c / lead for c in self.coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(rat_to_str(c))
            else:
                zk = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    parts.append(zk)
                elif c == -1:
                    parts.append(f"-{zk}")
                else:
                    parts.append(f"{rat_to_str(c)}*{zk}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def _as_poly(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly((v,))
    return None


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic() if not a.is_zero() else a


class RatFunc:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=Poly.of(1)):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly.of(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            lead = den.leading()
            if lead != 1:
                num = num * (1 / lead)
                den = den.monic()
        self.num = num
        self.den = den

    @staticmethod
    def x() -> "RatFunc":
        return RatFunc(Poly.x())

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly.of(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def as_rat(self) -> Rat:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.num.eval(Fraction(0))

    def __eq__(self, other):
        other = _as_ratfunc(other)
        return other is not None and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFunc", self.num, self.den))

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc.const(1) / (self ** (-n))
        return RatFunc(self.num**n, self.den**n)

    def reciprocal(self) -> "RatFunc":
        if self.is_zero():
            raise PoleEncountered("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def eval(self, a: Rat) -> Rat:
        d = self.den.eval(a)
        if d == 0:
            raise PoleEncountered(f"pole of {self} at z = {rat_to_str(a)}")
        return self.num.eval(a) / d

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def shift_arg(self, c: Rat) -> "RatFunc":
        """F(z + c) as a rational function of z."""
        inner = Poly.of(c, 1)
        return RatFunc(self.num.compose(inner), self.den.compose(inner))

    def __str__(self):
        if self.den == Poly.of(1):
            return str(self.num)
        num = str(self.num)
        if self.num.degree > 0:
            num = f"({num})"
        return f"{num}/({self.den})"

    __repr__ = __str__


def _as_ratfunc(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, (int, Fraction)):
        return RatFunc.const(v)
    if isinstance(v, Poly):
        return RatFunc(v)
    return None


def _coeff_zero(c):
    return c * 0


def _coeff_is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, RatFunc) else c == 0


class HSeries:
    """Truncated power series in hbar: coeffs[m] multiplies hbar^m for
    m <= order, with an implicit O(hbar^(order+1)) remainder.

    Coefficients are Rat or RatFunc; the two kinds may be mixed, ints and
    Fractions coercing into the coefficient ring of the other operand.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise ValueError("series order must be >= 0")
        coeffs = list(coeffs)
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        if not coeffs:
            coeffs = [Fraction(0)]
        pad = _coeff_zero(coeffs[0])
        while len(coeffs) < order + 1:
            coeffs.append(pad)
        self.coeffs = tuple(coeffs)
        self.order = order

    @staticmethod
    def const(c, order: int) -> "HSeries":
        return HSeries([c], order)

    @staticmethod
    def hbar(order: int) -> "HSeries":
        return HSeries([Fraction(0), Fraction(1)], order)

    def coeff(self, m: int):
        if m > self.order:
            raise IndexError(f"coefficient {m} beyond truncation order {self.order}")
        return self.coeffs[m]

    def constant_term(self):
        return self.coeffs[0]

    def one_like(self) -> "HSeries":
        one = _coeff_zero(self.coeffs[0]) + 1
        return HSeries([one], self.order)

    def zero_like(self) -> "HSeries":
        return HSeries([_coeff_zero(self.coeffs[0])], self.order)

    def is_zero(self) -> bool:
        return all(_coeff_is_zero(c) for c in self.coeffs)

    def truncate(self, order: int) -> "HSeries":
        return HSeries(self.coeffs[: order + 1], order)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.order == other.order and all(
            _coeff_is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(("HSeries", self.order, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, HSeries):
            return other
        if isinstance(other, (int, Fraction, RatFunc, Poly)):
            return HSeries.const(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        return HSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return HSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        zero = _coeff_zero(self.coeffs[0] * other.coeffs[0])
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if _coeff_is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not _coeff_is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return HSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.one_like()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "HSeries":
        """Multiplicative inverse; exists iff the constant term is invertible."""
        c0 = self.coeffs[0]
        if _coeff_is_zero(c0):
            raise PoleEncountered("series with zero constant term is not invertible")
        inv0 = c0.reciprocal() if isinstance(c0, RatFunc) else 1 / c0
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = _coeff_zero(c0)
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-inv0 * acc)
        return HSeries(out, self.order)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __str__(self):
        parts = []
        for m, c in enumerate(self.coeffs):
            if _coeff_is_zero(c):
                continue
            cs = rat_to_str(c) if isinstance(c, Fraction) else str(c)
            if m == 0:
                parts.append(cs)
            else:
                hm = "h" if m == 1 else f"h^{m}"
                parts.append(hm if cs == "1" else f"{cs}*{hm}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(h^{self.order + 1})"

    __repr__ = __str__


def ratfunc_eval(f: RatFunc, a: Rat) -> Rat:
    return f.eval(a)


def ratfunc_derivative(f: RatFunc) -> RatFunc:
    return f.derivative()


def hseries_exp(s: HSeries) -> HSeries:
    """exp of a series with vanishing constant term, truncated at s.order."""
    if not _coeff_is_zero(s.coeffs[0]):
        raise NonNilpotentConstantTerm(
            "exponential of a series with nonzero constant term"
        )
    out = s.one_like()
    term = s.one_like()
    for m in range(1, s.order + 1):
        term = term * s
        out = out + term * Fraction(1, factorial(m))
    return out


def shift_in_hbar(f: RatFunc, a: Rat, b: Rat, order: int) -> HSeries:
    """Taylor expansion of f(a + b*hbar) as a series in hbar over Rat."""
    if f.den.eval(a) == 0:
        raise PoleEncountered(f"pole of {f} at z = {rat_to_str(a)}")
    coeffs = []
    cur = f
    bp = Fraction(1)
    for m in range(order + 1):
        coeffs.append(cur.eval(a) * bp / factorial(m))
        if m < order:
            cur = cur.derivative()
            bp *= b
    return HSeries(coeffs, order)


def hseries_shift_hbar_arg(s: HSeries, c: Rat) -> HSeries:
    """For a series with RatFunc coefficients F_m(z), re-expand after the
    argument substitution z -> z + c*hbar.  Used for expressions like
    F(t - hbar) with t kept symbolic."""
    zero = _coeff_zero(s.coeffs[0])
    out = [zero] * (s.order + 1)
    for m, f in enumerate(s.coeffs):
        f = _as_ratfunc(f)
        cur = f
        for j in range(s.order + 1 - m):
            out[m + j] = out[m + j] + cur * (Fraction(c) ** j / factorial(j))
            if m + j < s.order:
                cur = cur.derivative()
    return HSeries(out, s.order)


def hseries_to_json(s: HSeries) -> dict:
    """Series serialization: coefficient strings plus the truncation order."""
    return {
        "order": s.order,
        "coeffs": [
            rat_to_str(c) if isinstance(c, Fraction) else str(c) for c in s.coeffs
        ],
    }
