"""Exact arithmetic in the rational function field Q(q).

Two layers:

* ``Rational`` is :class:`fractions.Fraction` — arbitrary-precision reduced
  rationals with positive denominator, straight from the stdlib.
* :class:`Scalar` is an element of Q(q): a reduced fraction ``num/den`` of
  polynomials in q, with ``den`` monic, so equality is syntactic equality.

Scalars are immutable and hashable.  The whole engine is generic over the
coefficient type: run it with Scalars for symbolic q, or with plain Fractions
after specializing q to a rational number (see :func:`Scalar.specialize`).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction


class PoleError(ArithmeticError):
    """Raised when a Scalar is specialized at a zero of its denominator."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient tuples, ascending powers of q)
# ---------------------------------------------------------------------------

def _strip(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _int_content(coeffs):
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g or 1


def _int_primitive(coeffs):
    """Strip integer content and make the leading coefficient positive."""
    g = _int_content(coeffs)
    if coeffs and coeffs[-1] < 0:
        g = -g
    return tuple(c // g for c in coeffs)


def _int_pseudo_rem(a, b):
    """Pseudo-remainder of integer coefficient tuples (deg a >= deg b)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        a = _strip(a)
        if not a or len(a) - 1 < db:
            break
        la, da = a[-1], len(a) - 1
        shift = da - db
        a = [c * lb for c in a]
        for k in range(db + 1):
            a[shift + k] -= la * b[k]
        a = list(_strip(a))
    return _strip(a)


def _int_gcd_poly(a, b):
    """Primitive gcd of integer coefficient tuples (leading coeff positive)."""
    a, b = _int_primitive(a), _int_primitive(b)
    while b:
        a, b = b, _int_primitive(_int_pseudo_rem(a, b))
    return a


class Poly:
    """Polynomial in q with rational coefficients.

    Stored as an integer coefficient tuple (ascending powers) over a shared
    positive integer denominator, with gcd(coefficients, denominator) = 1.
    """

    __slots__ = ("coeffs", "den")

    def __init__(self, coeffs, den=1):
        if den == 0:
            raise ZeroDivisionError("polynomial with zero denominator")
        if den < 0:
            coeffs, den = [-c for c in coeffs], -den
        coeffs = _strip(coeffs)
        if not coeffs:
            den = 1
        else:
            g = math.gcd(_int_content(coeffs), den)
            if g > 1:
                coeffs = tuple(c // g for c in coeffs)
                den //= g
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @classmethod
    def from_rational(cls, x) -> "Poly":
        x = Fraction(x)
        return cls((x.numerator,), x.denominator)

    @classmethod
    def q_power(cls, k: int) -> "Poly":
        if k < 0:
            raise ValueError("q_power wants a non-negative exponent")
        return cls((0,) * k + (1,))

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return Fraction(self.coeffs[-1], self.den)

    def is_one(self) -> bool:
        return self.coeffs == (1,) and self.den == 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.den

    def is_monomial(self) -> bool:
        return bool(self.coeffs) and not any(self.coeffs[:-1])

    def valuation(self) -> int:
        """Largest k with q^k dividing the polynomial (0 for the constant 1)."""
        v = 0
        while v < len(self.coeffs) and self.coeffs[v] == 0:
            v += 1
        return v

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return Fraction(self.coeffs[k], self.den)
        return Fraction(0)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        d1, d2 = self.den, other.den
        if d1 == d2:
            n = max(len(self.coeffs), len(other.coeffs))
            c1 = self.coeffs + (0,) * (n - len(self.coeffs))
            c2 = other.coeffs + (0,) * (n - len(other.coeffs))
            return Poly([a + b for a, b in zip(c1, c2)], d1)
        L = d1 * d2 // math.gcd(d1, d2)
        m1, m2 = L // d1, L // d2
        n = max(len(self.coeffs), len(other.coeffs))
        c1 = self.coeffs + (0,) * (n - len(self.coeffs))
        c2 = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly([a * m1 + b * m2 for a, b in zip(c1, c2)], L)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.den)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return _P_ZERO
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out, self.den * other.den)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a Poly")
        r = _P_ONE
        base = self
        while k:
            if k & 1:
                r = r * base
            base = base * base
            k >>= 1
        return r

    def scale(self, x: Fraction) -> "Poly":
        x = Fraction(x)
        return Poly([c * x.numerator for c in self.coeffs], self.den * x.denominator)

    def evaluate(self, q0) -> Fraction:
        q0 = Fraction(q0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc / self.den

    # -- gcd / exact division -------------------------------------------------

    @staticmethod
    def gcd(a: "Poly", b: "Poly") -> "Poly":
        """Monic gcd in Q[q] (gcd(0, 0) = 0)."""
        if a.is_zero() and b.is_zero():
            return _P_ZERO
        if a.is_zero() or b.is_zero():
            g = b if a.is_zero() else a
            return g.monic()
        va, vb = a.valuation(), b.valuation()
        v = min(va, vb)
        ca = a.coeffs[va:]
        cb = b.coeffs[vb:]
        if len(ca) == 1 or len(cb) == 1:
            core = ()
        else:
            core = _int_gcd_poly(ca, cb)
        if len(core) <= 1:
            return Poly((0,) * v + (1,))
        lead = core[-1]
        return Poly((0,) * v + core, lead)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading
        return self.scale(1 / lead)

    def exact_div(self, g: "Poly") -> "Poly":
        """Exact quotient self / g; raises if the division leaves a remainder."""
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c, self.den) for c in self.coeffs]
        gc = [Fraction(c, g.den) for c in g.coeffs]
        dq = len(rem) - len(gc)
        if dq < 0 and any(rem):
            raise ValueError("not an exact polynomial division")
        quo = [Fraction(0)] * (dq + 1 if dq >= 0 else 0)
        lg = gc[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(gc) - 1] / lg
            quo[k] = c
            if c:
                for j, gj in enumerate(gc):
                    rem[k + j] -= c * gj
        if any(rem):
            raise ValueError("not an exact polynomial division")
        den = 1
        for c in quo:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Poly([int(c * den) for c in quo], den)

    # -- plumbing -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.coeffs == other.coeffs
                and self.den == other.den)

    def __hash__(self):
        return hash((self.coeffs, self.den))

    def __repr__(self):
        return f"Poly({self.coeffs!r}, {self.den!r})"

    def __str__(self):
        return _poly_str(self)


_P_ZERO = Poly(())
_P_ONE = Poly((1,))
_P_Q = Poly((0, 1))


def _poly_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            body = str(c)
        else:
            var = "q" if k == 1 else f"q^{k}"
            body = var if c == 1 else f"{c}*{var}"
        parts.append((sign, body))
    sign0, body0 = parts[0]
    text = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class Scalar:
    """An element of the field Q(q), kept in reduced canonical form.

    ``num/den`` with monic ``den`` and gcd(num, den) = 1, so ``==`` is plain
    syntactic equality.  Construct with :meth:`of`, :meth:`q`, or
    :meth:`parse`; arithmetic is by the usual operators, with ints and
    Fractions coerced.

    >>> q = Scalar.q()
    >>> str((q**2 - 1) / (q - 1))
    'q + 1'
    >>> (q * q**-1).is_one()
    True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly = _P_ONE, _reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("scalar with zero denominator")
        if not _reduced:
            num, den = self._reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", hash((num, den)))

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def _reduce(num: Poly, den: Poly):
        if num.is_zero():
            return _P_ZERO, _P_ONE
        if not den.is_monic():
            lead = den.leading
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        if den.is_one():
            return num, den
        if num.is_monomial() or den.is_monomial():
            # the only common factors are powers of q: strip the valuation
            v = min(num.valuation(), den.valuation())
            if v:
                num = Poly(num.coeffs[v:], num.den)
                den = Poly(den.coeffs[v:], den.den)
            return num, den
        g = Poly.gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
            if not den.is_monic():
                lead = den.leading
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        return num, den

    # -- constructors ---------------------------------------------------------

    @classmethod
    def of(cls, x) -> "Scalar":
        """Coerce an int, Fraction, or Scalar to a Scalar."""
        if isinstance(x, Scalar):
            return x
        return cls(Poly.from_rational(x), _P_ONE, _reduced=True)

    @classmethod
    def q(cls) -> "Scalar":
        return _S_Q

    @classmethod
    def q_power(cls, k: int) -> "Scalar":
        if k >= 0:
            return cls(Poly.q_power(k), _P_ONE, _reduced=True)
        return cls(_P_ONE, Poly.q_power(-k), _reduced=True)

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.of(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar(self.num + o.num, self.den)
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return Scalar(self.num * o.num, _P_ONE, _reduced=True)
        return Scalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k == 0:
            return _S_ONE
        base = self
        if k < 0:
            if base.is_zero():
                raise ZeroDivisionError("negative power of zero")
            base, k = Scalar(base.den, base.num), -k
        r = _S_ONE
        while k:
            if k & 1:
                r = r * base
            base = base * base
            k >>= 1
        return r

    # -- specialization & rendering -------------------------------------------

    def specialize(self, q0) -> Fraction:
        """Evaluate at q = q0 (a rational); raises PoleError at a pole."""
        q0 = Fraction(q0)
        d = self.den.evaluate(q0)
        if d == 0:
            raise PoleError(f"pole at q = {q0}")
        return self.num.evaluate(q0) / d

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        num_s = _poly_str(self.num)
        if self.den.is_one():
            return num_s
        den_s = _poly_str(self.den)
        if _needs_parens(self.num):
            num_s = f"({num_s})"
        if _needs_parens(self.den):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse the scalar grammar: q, integers, + - * / ^ and parentheses.

        >>> Scalar.parse("(q^2-1)/(q+1)") == Scalar.q() - 1
        True
        """
        return _ScalarParser(text).parse()


def _needs_parens(p: Poly) -> bool:
    terms = sum(1 for c in p.coeffs if c)
    if terms > 1:
        return True
    return bool(p.coeffs) and p.coeffs[-1] < 0


_S_ONE = Scalar(_P_ONE, _P_ONE, _reduced=True)
_S_ZERO = Scalar(_P_ZERO, _P_ONE, _reduced=True)
_S_Q = Scalar(_P_Q, _P_ONE, _reduced=True)

_TOKEN_RE = re.compile(r"\s*(\d+|q|\*|/|\+|-|\^|\(|\))")


class _ScalarParser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"bad scalar syntax at {text[pos:]!r}")
                break
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Scalar:
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing scalar input at {self.peek()!r}")
        return v

    def expr(self) -> Scalar:
        v = self.term()
        while self.peek() in ("+", "-"):
            if self.next() == "+":
                v = v + self.term()
            else:
                v = v - self.term()
        return v

    def term(self) -> Scalar:
        v = self.unary()
        while self.peek() in ("*", "/"):
            if self.next() == "*":
                v = v * self.unary()
            else:
                v = v / self.unary()
        return v

    def unary(self) -> Scalar:
        if self.peek() == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> Scalar:
        v = self.atom()
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            t = self.next()
            if t is None or not t.isdigit():
                raise ValueError("expected integer exponent after ^")
            v = v ** (sign * int(t))
        return v

    def atom(self) -> Scalar:
        t = self.next()
        if t is None:
            raise ValueError("unexpected end of scalar input")
        if t == "(":
            v = self.expr()
            if self.next() != ")":
                raise ValueError("unbalanced parenthesis in scalar input")
            return v
        if t == "q":
            return _S_Q
        if t.isdigit():
            return Scalar.of(int(t))
        raise ValueError(f"unexpected token {t!r} in scalar input")


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Field arithmetic by name: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def specialize(a: Scalar, q0) -> Fraction:
    """Module-level alias for :meth:`Scalar.specialize`."""
    return a.specialize(q0)
