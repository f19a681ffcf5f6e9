"""The algebra of N x N quantum matrices.

Generators x_ij (1-based row/column), subject to the four q-relation
families; elements are kept in PBW normal form with respect to the row-major
generator order x11 < x12 < ... < xNN.  The four relations, read as rewrite
rules moving smaller generators left, strictly reduce the inversion count,
so rewriting terminates and the ordered monomials form a basis.

A :class:`MatrixAlgebra` is a context object: it fixes the size N and the
coefficient q (a symbolic Scalar by default, or a Fraction to run the whole
engine with q specialized *before* any computation), and memoizes the
straightening tables so repeated products are cheap.
"""

from __future__ import annotations

import re
import sys
from fractions import Fraction
from itertools import combinations, permutations
from typing import NamedTuple

from .scalars import Scalar

# straightening recursion on long words can nest deeply
sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))


class Monomial:
    """An ordered monomial: exponent vector over the row-major generators."""

    __slots__ = ("n", "exps", "deg", "_hash")

    def __init__(self, n: int, exps):
        exps = tuple(exps)
        if len(exps) != n * n:
            raise ValueError("exponent vector has wrong length")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "deg", sum(exps))
        object.__setattr__(self, "_hash", hash((n, exps)))

    def __setattr__(self, *a):
        raise AttributeError("Monomial is immutable")

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls(n, (0,) * (n * n))

    @classmethod
    def generator(cls, n: int, i: int, j: int) -> "Monomial":
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"generator x{i}{j} out of range for size {n}")
        e = [0] * (n * n)
        e[(i - 1) * n + (j - 1)] = 1
        return cls(n, e)

    # -- structure -----------------------------------------------------------

    def rowdeg(self):
        n = self.n
        return tuple(sum(self.exps[r * n:(r + 1) * n]) for r in range(n))

    def coldeg(self):
        n = self.n
        return tuple(sum(self.exps[c::n]) for c in range(n))

    def word(self):
        """Flat letter indices in increasing order, with multiplicity."""
        out = []
        for k, e in enumerate(self.exps):
            out.extend([k] * e)
        return tuple(out)

    def last_letter(self) -> int:
        for k in range(len(self.exps) - 1, -1, -1):
            if self.exps[k]:
                return k
        raise ValueError("the empty monomial has no letters")

    def bumped(self, k: int) -> "Monomial":
        e = list(self.exps)
        e[k] += 1
        return Monomial(self.n, e)

    def stripped(self, k: int) -> "Monomial":
        e = list(self.exps)
        if e[k] <= 0:
            raise ValueError("letter not present")
        e[k] -= 1
        return Monomial(self.n, e)

    def sort_key(self):
        """Sorts by (degree, then word-lexicographically)."""
        return (self.deg, tuple(-e for e in self.exps))

    # -- plumbing -------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Monomial) and self.n == other.n
                and self.exps == other.exps)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Monomial({self})"

    def __str__(self):
        if self.deg == 0:
            return "1"
        n = self.n
        parts = []
        for k, e in enumerate(self.exps):
            if e:
                i, j = divmod(k, n)
                g = f"x{i + 1}{j + 1}"
                parts.append(g if e == 1 else f"{g}^{e}")
        return "*".join(parts)


class MultiDegree(NamedTuple):
    rowdeg: tuple
    coldeg: tuple


class MqElement:
    """A finite linear combination of ordered monomials (normal form)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "MatrixAlgebra", terms):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", {m: c for m, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("MqElement is immutable")

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree (-1 for the zero element)."""
        return max((m.deg for m in self.terms), default=-1)

    def multidegree(self) -> MultiDegree:
        degs = {(m.rowdeg(), m.coldeg()) for m in self.terms}
        if len(degs) != 1:
            raise ValueError("not multihomogeneous")
        rd, cd = degs.pop()
        return MultiDegree(rd, cd)

    def coefficient(self, mono: Monomial):
        return self.terms.get(mono, self.algebra.zero)

    def constant_term(self):
        return self.terms.get(Monomial.one(self.algebra.n), self.algebra.zero)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "MqElement"):
        if self.algebra is not other.algebra:
            raise ValueError("elements from different algebras")

    def __add__(self, other):
        if not isinstance(other, MqElement):
            other = self.algebra.scalar_element(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return MqElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return MqElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MqElement):
            other = self.algebra.scalar_element(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.algebra.scalar_element(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MqElement):
            return self.scale(other)
        self._check(other)
        alg = self.algebra
        out = {}
        for m2, c2 in other.terms.items():
            for m1, c1 in self.terms.items():
                c12 = c1 * c2
                for m, c in alg._mul_monos(m1, m2).items():
                    v = out.get(m)
                    v = c12 * c if v is None else v + c12 * c
                    if v:
                        out[m] = v
                    elif m in out:
                        del out[m]
        return MqElement(alg, out)

    def __rmul__(self, other):
        # coefficients commute with everything, so scaling from the left
        # is the same as from the right
        return self.scale(other)

    def scale(self, c) -> "MqElement":
        c = self.algebra.coerce(c)
        if not c:
            return self.algebra.zero_element()
        return MqElement(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "MqElement":
        if k < 0:
            raise ValueError("negative power in the quantum matrix algebra")
        result = self.algebra.one_element()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- plumbing -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MqElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == self.algebra.scalar_element(other)
        return NotImplemented

    def __repr__(self):
        return f"MqElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        text = ""
        for m in sorted(self.terms, key=Monomial.sort_key):
            c = self.terms[m]
            neg = _is_negative(c)
            body = _term_str(-c if neg else c, m)
            if not text:
                text = f"-{body}" if neg else body
            else:
                text += f" - {body}" if neg else f" + {body}"
        return text


def _is_negative(c) -> bool:
    """True when the leading coefficient is negative (for display only)."""
    if isinstance(c, Scalar):
        return c.num.leading < 0
    return c < 0


def _coeff_str(c) -> str:
    s = str(c)
    body = s[1:] if s.startswith("-") else s
    if any(ch in body for ch in "+-/ "):
        return f"({s})"
    return s


def _term_str(c, mono) -> str:
    if mono.deg == 0:
        return _coeff_str(c)
    s = str(c)
    if s == "1":
        return str(mono)
    if s == "-1":
        return f"-{mono}"
    return f"{_coeff_str(c)}*{mono}"


class MatrixAlgebra:
    """Context for O(M_q) at a fixed size N and coefficient q.

    ``q`` defaults to the symbolic generator of Q(q); pass a Fraction (not 0,
    and not a root of unity for the theorems to apply) to run specialized.

    >>> A = MatrixAlgebra(2)
    >>> x = A.generator
    >>> print(x(2, 2) * x(1, 1))
    x11*x22 - (q - 1/q)*x12*x21
    >>> print(A.quantum_determinant() * x(1, 2) - x(1, 2) * A.quantum_determinant())
    0
    """

    def __init__(self, n: int, q=None):
        if n < 1:
            raise ValueError("size must be at least 1")
        self.n = n
        if q is None:
            q = Scalar.q()
        elif isinstance(q, int):
            q = Fraction(q)
        if isinstance(q, Fraction) and q == 0:
            raise ValueError("q must be invertible")
        self.q = q
        self.one = q ** 0
        self.zero = self.one - self.one
        self.qinv = self.one / q
        self._rule_cache = {}
        self._ml_cache = {}
        self._mm_cache = {}
        self._det = None
        self._det_powers = None

    # -- coefficients -----------------------------------------------------------

    def coerce(self, c):
        """Coerce an int/Fraction/compatible coefficient into the field."""
        if isinstance(c, type(self.one)):
            return c
        if isinstance(c, (int, Fraction)):
            return self.one * c
        raise TypeError(f"cannot use {type(c).__name__} as a coefficient here")

    def q_power(self, k: int):
        return self.q ** k

    # -- element constructors ----------------------------------------------------

    def zero_element(self) -> MqElement:
        return MqElement(self, {})

    def one_element(self) -> MqElement:
        return MqElement(self, {Monomial.one(self.n): self.one})

    def scalar_element(self, c) -> MqElement:
        c = self.coerce(c)
        return MqElement(self, {Monomial.one(self.n): c} if c else {})

    def monomial_element(self, mono: Monomial) -> MqElement:
        return MqElement(self, {mono: self.one})

    def generator(self, i: int, j: int) -> MqElement:
        return self.monomial_element(Monomial.generator(self.n, i, j))

    def generators(self):
        return [self.generator(i, j) for i in range(1, self.n + 1)
                for j in range(1, self.n + 1)]

    # -- straightening ------------------------------------------------------------

    def _letter_rule(self, big: int, small: int):
        """Rewrite x_big * x_small (big > small) as ordered pairs."""
        rule = self._rule_cache.get((big, small))
        if rule is None:
            n = self.n
            i1, j1 = divmod(big, n)
            i2, j2 = divmod(small, n)
            if i1 == i2 or j1 == j2:
                rule = ((self.qinv, (small, big)),)
            elif j1 < j2:
                rule = ((self.one, (small, big)),)
            else:
                mid1 = i2 * n + j1
                mid2 = i1 * n + j2
                rule = ((self.one, (small, big)),
                        (-(self.q - self.qinv), (mid1, mid2)))
            self._rule_cache[(big, small)] = rule
        return rule

    def _mul_mono_letter(self, m: Monomial, k: int):
        """Normal form of (ordered monomial m) * x_k, as {Monomial: coeff}."""
        out = self._ml_cache.get((m, k))
        if out is not None:
            return out
        if m.deg == 0:
            out = {m.bumped(k): self.one}
        else:
            last = m.last_letter()
            if k >= last:
                out = {m.bumped(k): self.one}
            else:
                rest = m.stripped(last)
                out = {}
                for coeff, (a, b) in self._letter_rule(last, k):
                    for m1, c1 in self._mul_mono_letter(rest, a).items():
                        ca = coeff * c1
                        for m2, c2 in self._mul_mono_letter(m1, b).items():
                            v = out.get(m2)
                            v = ca * c2 if v is None else v + ca * c2
                            if v:
                                out[m2] = v
                            elif m2 in out:
                                del out[m2]
        self._ml_cache[(m, k)] = out
        return out

    def _mul_monos(self, m1: Monomial, m2: Monomial):
        """Normal form of m1 * m2, as {Monomial: coeff}."""
        if m2.deg == 0:
            return {m1: self.one}
        if m1.deg == 0:
            return {m2: self.one}
        out = self._mm_cache.get((m1, m2))
        if out is not None:
            return out
        acc = {m1: self.one}
        for k in m2.word():
            nxt = {}
            for m, c in acc.items():
                for mm, cc in self._mul_mono_letter(m, k).items():
                    v = nxt.get(mm)
                    v = c * cc if v is None else v + c * cc
                    if v:
                        nxt[mm] = v
                    elif mm in nxt:
                        del nxt[mm]
            acc = nxt
        self._mm_cache[(m1, m2)] = acc
        return acc

    def normal_form(self, word, prefactor=None) -> MqElement:
        """Expand a word of (i, j) generator indices into the monomial basis.

        ``word`` is any iterable of 1-based (row, column) pairs; the optional
        prefactor scales the result.  The empty word gives 1.
        """
        c = self.one if prefactor is None else self.coerce(prefactor)
        elem = MqElement(self, {Monomial.one(self.n): c})
        for (i, j) in word:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"generator x{i}{j} out of range")
            k = (i - 1) * self.n + (j - 1)
            out = {}
            for m, cm in elem.terms.items():
                for mm, cc in self._mul_mono_letter(m, k).items():
                    v = out.get(mm)
                    v = cm * cc if v is None else v + cm * cc
                    if v:
                        out[mm] = v
                    elif mm in out:
                        del out[mm]
            elem = MqElement(self, out)
        return elem

    # -- quantum minors and coinvariant families -----------------------------------

    def quantum_minor(self, rows, cols) -> MqElement:
        """Sum over permutations with (-q)^inversions coefficients.

        Rows and cols are equal-size subsets of 1..N, taken in increasing
        order.
        """
        rows = tuple(sorted(rows))
        cols = tuple(sorted(cols))
        if len(rows) != len(cols):
            raise ValueError("row and column sets differ in size")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("index sets must not repeat")
        if rows and not (1 <= rows[0] and rows[-1] <= self.n
                         and 1 <= cols[0] and cols[-1] <= self.n):
            raise ValueError("index out of range")
        t = len(rows)
        total = self.zero_element()
        for perm in permutations(range(t)):
            inv = sum(1 for a in range(t) for b in range(a + 1, t)
                      if perm[a] > perm[b])
            word = [(rows[a], cols[perm[a]]) for a in range(t)]
            coeff = (-self.one) ** inv * self.q_power(inv)
            total = total + self.normal_form(word, coeff)
        return total

    def quantum_determinant(self) -> MqElement:
        if self._det is None:
            full = range(1, self.n + 1)
            self._det = self.quantum_minor(full, full)
        return self._det

    def det_power(self, k: int) -> MqElement:
        """det_q^k, cached."""
        if k < 0:
            raise ValueError("negative determinant power")
        if self._det_powers is None:
            self._det_powers = [self.one_element()]
        while len(self._det_powers) <= k:
            self._det_powers.append(self._det_powers[-1] * self.quantum_determinant())
        return self._det_powers[k]

    def sigma(self, i: int) -> MqElement:
        """Sum of the principal i x i quantum minors."""
        if not (1 <= i <= self.n):
            raise ValueError("sigma index out of range")
        total = self.zero_element()
        for I in combinations(range(1, self.n + 1), i):
            total = total + self.quantum_minor(I, I)
        return total

    def tau(self, i: int) -> MqElement:
        """Weighted sum q^(-2w(I)) [I|I] of the principal i x i minors,
        with w(I) the sum of the elements of I."""
        if not (1 <= i <= self.n):
            raise ValueError("tau index out of range")
        total = self.zero_element()
        for I in combinations(range(1, self.n + 1), i):
            total = total + self.quantum_minor(I, I).scale(self.q_power(-2 * sum(I)))
        return total

    # -- bases and gradings ----------------------------------------------------------

    def monomial_basis(self, d: int):
        """All ordered monomials of total degree <= d, sorted by (degree, lex)."""
        if d < 0:
            raise ValueError("negative degree bound")
        slots = self.n * self.n
        out = []
        for deg in range(d + 1):
            for exps in _compositions(deg, slots):
                out.append(Monomial(self.n, exps))
        return out

    # -- parsing ------------------------------------------------------------------

    def parse(self, text: str) -> MqElement:
        """Parse the expression grammar: x{i}{j}, q, integers, + - * / ^, parens."""
        return _ElementParser(self, text).parse()


def _compositions(total, slots):
    if slots == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def multidegree(a: MqElement) -> MultiDegree:
    """Common (rowdeg, coldeg) of all terms; raises if mixed."""
    return a.multidegree()


_ELEM_TOKEN_RE = re.compile(r"\s*(x\d\d|\d+|q|\*|/|\+|-|\^|\(|\))")


class _ElementParser:
    def __init__(self, algebra: MatrixAlgebra, text: str):
        self.algebra = algebra
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _ELEM_TOKEN_RE.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"bad expression syntax at {text[pos:]!r}")
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

    def parse(self) -> MqElement:
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing expression input at {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            if self.next() == "+":
                v = v + self.term()
            else:
                v = v - self.term()
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            if self.next() == "*":
                v = v * self.unary()
            else:
                d = self.unary()
                if set(d.terms) - {Monomial.one(self.algebra.n)}:
                    raise ValueError("division only by scalar expressions")
                c = d.constant_term()
                if not c:
                    raise ZeroDivisionError("division by zero expression")
                v = v.scale(self.algebra.one / c)
        return v

    def unary(self):
        if self.peek() == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self):
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
            k = sign * int(t)
            if k < 0:
                if set(v.terms) - {Monomial.one(self.algebra.n)}:
                    raise ValueError("negative powers only of scalar expressions")
                return self.algebra.scalar_element(v.constant_term() ** k)
            return v ** k
        return v

    def atom(self):
        t = self.next()
        if t is None:
            raise ValueError("unexpected end of expression")
        if t == "(":
            v = self.expr()
            if self.next() != ")":
                raise ValueError("unbalanced parenthesis in expression")
            return v
        if t == "q":
            return self.algebra.scalar_element(self.algebra.q)
        if t.isdigit():
            return self.algebra.scalar_element(int(t))
        if t.startswith("x"):
            return self.algebra.generator(int(t[1]), int(t[2]))
        raise ValueError(f"unexpected token {t!r} in expression")
