"""Hopf structure on quantum GL: localization, coproduct, antipode, coactions.

Everything here lives over a fixed :class:`~qcoorbit.mq.MatrixAlgebra`.  The
localized algebra inverts the (central) quantum determinant; an element is a
pair (numerator, determinant power), compared by cross-multiplication.  The
coproduct is the matrix-coefficient one, Delta(x_ij) = sum_k x_ik (x) x_kj,
and the antipode sends x_ij to its signed quantum cofactor over det.

The two adjoint coactions are
    beta(h) = h_2 (x) S(h_1) h_3      (one-sided "conjugation" from the right)
    alpha(h) = h_2 (x) h_3 S(h_1)
computed per monomial from the two-fold coproduct.  A :class:`HopfContext`
memoizes all the per-monomial tables, so repeated coaction and antipode
computations stay cheap; build one context per algebra and reuse it.
"""

from __future__ import annotations

from fractions import Fraction

from .mq import MatrixAlgebra, Monomial, MqElement, _coeff_str, _is_negative, _term_str
from .scalars import Scalar


class GlqElement:
    """An element of the localization: numerator / det^detpow."""

    __slots__ = ("hopf", "num", "detpow")

    def __init__(self, hopf: "HopfContext", num: MqElement, detpow: int = 0):
        if detpow < 0:
            raise ValueError("determinant power must be >= 0")
        if num.is_zero():
            detpow = 0
        object.__setattr__(self, "hopf", hopf)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "detpow", detpow)

    def __setattr__(self, *a):
        raise AttributeError("GlqElement is immutable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return bool(self.num)

    def numerator_at(self, p: int) -> MqElement:
        """The numerator after raising the denominator to det^p."""
        if p < self.detpow:
            raise ValueError("cannot lower the determinant power")
        if p == self.detpow:
            return self.num
        return self.num * self.hopf.alg.det_power(p - self.detpow)

    def _check(self, other: "GlqElement"):
        if self.hopf is not other.hopf:
            raise ValueError("elements from different contexts")

    def __add__(self, other):
        if not isinstance(other, GlqElement):
            other = self.hopf.scalar_gl(other)
        self._check(other)
        p = max(self.detpow, other.detpow)
        return GlqElement(self.hopf, self.numerator_at(p) + other.numerator_at(p), p)

    __radd__ = __add__

    def __neg__(self):
        return GlqElement(self.hopf, -self.num, self.detpow)

    def __sub__(self, other):
        if not isinstance(other, GlqElement):
            other = self.hopf.scalar_gl(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.hopf.scalar_gl(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, GlqElement):
            return self.scale(other)
        self._check(other)
        return GlqElement(self.hopf, self.num * other.num,
                          self.detpow + other.detpow)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "GlqElement":
        return GlqElement(self.hopf, self.num.scale(c), self.detpow)

    def __pow__(self, k: int) -> "GlqElement":
        if k < 0:
            raise ValueError("negative powers: use det_inverse for 1/det")
        return GlqElement(self.hopf, self.num ** k, self.detpow * k)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.hopf.scalar_gl(other)
        if not isinstance(other, GlqElement):
            return NotImplemented
        if self.hopf is not other.hopf:
            return False
        alg = self.hopf.alg
        return (self.num * alg.det_power(other.detpow)
                == other.num * alg.det_power(self.detpow))

    def __repr__(self):
        return f"GlqElement({self})"

    def __str__(self):
        if self.detpow == 0:
            return str(self.num)
        return f"({self.num})*det^-{self.detpow}"


class SlqAlgebra:
    """Quantum SL_2 with generators a < b < c < d and quantum det = 1.

    The PBW basis is {a^i b^j c^k, b^j c^k d^l}: any product of a and d
    reduces through ad = 1 + q bc.  Coefficients are shared with the parent
    matrix algebra (symbolic or specialized).
    """

    _NAMES = "abcd"

    def __init__(self, parent: MatrixAlgebra):
        if parent.n != 2:
            raise ValueError("the special quantum group layer is for size 2 only")
        self.parent = parent
        self.q = parent.q
        self.one = parent.one
        self.zero = parent.zero
        self.qinv = parent.qinv
        self._reduce_cache = {}
        self._letter_cache = {}
        self._word_cache = {}
        # x_big * x_small -> list of (coeff, replacement letters)
        self._rules = {
            (1, 0): ((self.qinv, (0, 1)),),
            (2, 0): ((self.qinv, (0, 2)),),
            (2, 1): ((self.one, (1, 2)),),
            (3, 0): ((self.one, ()), (self.qinv, (1, 2))),
            (3, 1): ((self.qinv, (1, 3)),),
            (3, 2): ((self.qinv, (2, 3)),),
        }

    # -- elements --------------------------------------------------------------

    def zero_element(self) -> "SlqElement":
        return SlqElement(self, {})

    def one_element(self) -> "SlqElement":
        return SlqElement(self, {(0, 0, 0, 0): self.one})

    def scalar_element(self, c) -> "SlqElement":
        c = self.parent.coerce(c)
        return SlqElement(self, {(0, 0, 0, 0): c} if c else {})

    def generator(self, name: str) -> "SlqElement":
        k = self._NAMES.index(name)
        e = [0, 0, 0, 0]
        e[k] = 1
        return SlqElement(self, {tuple(e): self.one})

    def word_element(self, exps) -> "SlqElement":
        """a^i b^j c^k d^l as an element, reduced into the basis."""
        return SlqElement(self, self._reduce(tuple(exps)))

    # -- straightening -----------------------------------------------------------

    def _reduce(self, exps):
        """Rewrite a^i b^j c^k d^l (i, l possibly both positive) into the basis."""
        out = self._reduce_cache.get(exps)
        if out is not None:
            return out
        i, j, k, l = exps
        if i == 0 or l == 0:
            out = {exps: self.one}
        else:
            out = {}
            low = self._reduce((i - 1, j, k, l - 1))
            high = self._reduce((i - 1, j + 1, k + 1, l - 1))
            cl = self.q ** (j + k)
            ch = self.q ** (j + k + 1)
            for e, c in low.items():
                out[e] = out.get(e, self.zero) + cl * c
            for e, c in high.items():
                out[e] = out.get(e, self.zero) + ch * c
            out = {e: c for e, c in out.items() if c}
        self._reduce_cache[exps] = out
        return out

    def _mul_letter(self, exps, k):
        """(basis word exps) * letter k, as {exps: coeff}."""
        out = self._letter_cache.get((exps, k))
        if out is not None:
            return out
        deg = sum(exps)
        last = -1
        for t in range(3, -1, -1):
            if exps[t]:
                last = t
                break
        if deg == 0 or k >= last:
            e = list(exps)
            e[k] += 1
            e = tuple(e)
            out = self._reduce(e) if (e[0] and e[3]) else {e: self.one}
        else:
            rest = list(exps)
            rest[last] -= 1
            rest = tuple(rest)
            out = {}
            for coeff, letters in self._rules[(last, k)]:
                acc = {rest: coeff}
                for lt in letters:
                    nxt = {}
                    for e, c in acc.items():
                        for ee, cc in self._mul_letter(e, lt).items():
                            v = nxt.get(ee)
                            v = c * cc if v is None else v + c * cc
                            if v:
                                nxt[ee] = v
                            elif ee in nxt:
                                del nxt[ee]
                    acc = nxt
                for e, c in acc.items():
                    v = out.get(e)
                    v = c if v is None else v + c
                    if v:
                        out[e] = v
                    elif e in out:
                        del out[e]
        self._letter_cache[(exps, k)] = out
        return out

    def _mul_words(self, e1, e2):
        out = self._word_cache.get((e1, e2))
        if out is not None:
            return out
        acc = {e1: self.one}
        for k in range(4):
            for _ in range(e2[k]):
                nxt = {}
                for e, c in acc.items():
                    for ee, cc in self._mul_letter(e, k).items():
                        v = nxt.get(ee)
                        v = c * cc if v is None else v + c * cc
                        if v:
                            nxt[ee] = v
                        elif ee in nxt:
                            del nxt[ee]
                acc = nxt
        self._word_cache[(e1, e2)] = acc
        return acc


def _sl_word_str(exps) -> str:
    if not any(exps):
        return "1"
    parts = []
    for name, e in zip(SlqAlgebra._NAMES, exps):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class SlqElement:
    """Linear combination of PBW basis words of the quantum SL_2 algebra."""

    __slots__ = ("sl", "terms")

    def __init__(self, sl: SlqAlgebra, terms):
        object.__setattr__(self, "sl", sl)
        object.__setattr__(self, "terms", {e: c for e, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("SlqElement is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other):
        if self.sl is not other.sl:
            raise ValueError("elements from different contexts")

    def __add__(self, other):
        if not isinstance(other, SlqElement):
            other = self.sl.scalar_element(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return SlqElement(self.sl, out)

    __radd__ = __add__

    def __neg__(self):
        return SlqElement(self.sl, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SlqElement):
            other = self.sl.scalar_element(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.sl.scalar_element(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, SlqElement):
            return self.scale(other)
        self._check(other)
        out = {}
        for e2, c2 in other.terms.items():
            for e1, c1 in self.terms.items():
                c12 = c1 * c2
                for e, c in self.sl._mul_words(e1, e2).items():
                    v = out.get(e)
                    v = c12 * c if v is None else v + c12 * c
                    if v:
                        out[e] = v
                    elif e in out:
                        del out[e]
        return SlqElement(self.sl, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "SlqElement":
        c = self.sl.parent.coerce(c)
        if not c:
            return self.sl.zero_element()
        return SlqElement(self.sl, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "SlqElement":
        if k < 0:
            raise ValueError("negative power")
        out = self.sl.one_element()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.sl.scalar_element(other)
        if not isinstance(other, SlqElement):
            return NotImplemented
        return self.sl is other.sl and self.terms == other.terms

    def __repr__(self):
        return f"SlqElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        text = ""
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            neg = _is_negative(c)
            mag = -c if neg else c
            s = str(mag)
            word = _sl_word_str(e)
            if word == "1":
                body = _coeff_str(mag)
            elif s == "1":
                body = word
            else:
                body = f"{_coeff_str(mag)}*{word}"
            if not text:
                text = f"-{body}" if neg else body
            else:
                text += f" - {body}" if neg else f" + {body}"
        return text


class LaurentElement:
    """A Laurent polynomial in commuting variables (t1..tn, or z when n=1)."""

    __slots__ = ("nvars", "terms", "_one")

    def __init__(self, nvars: int, terms, one=None):
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", {tuple(e): c for e, c in terms.items() if c})
        for c in self.terms.values():
            one = c ** 0
            break
        object.__setattr__(self, "_one", one)

    def __setattr__(self, *a):
        raise AttributeError("LaurentElement is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return LaurentElement(self.nvars, out, self._one)

    def __neg__(self):
        return LaurentElement(self.nvars, {e: -c for e, c in self.terms.items()},
                              self._one)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return LaurentElement(self.nvars, out, self._one)

    def __eq__(self, other):
        return (isinstance(other, LaurentElement) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __repr__(self):
        return f"LaurentElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["z"] if self.nvars == 1 else [f"t{i+1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(f"{names[i]}^{e[i]}" if e[i] != 1 else names[i]
                            for i in range(self.nvars) if e[i])
            parts.append((self.terms[e], mono or "1"))
        text = ""
        for c, mono in parts:
            neg = _is_negative(c)
            mag = -c if neg else c
            if mono == "1":
                body = _coeff_str(mag)
            elif str(mag) == "1":
                body = mono
            else:
                body = f"{_coeff_str(mag)}*{mono}"
            if not text:
                text = f"-{body}" if neg else body
            else:
                text += f" - {body}" if neg else f" + {body}"
        return text


_LEG_TAGS = ("mq", "glq", "slq", "d", "k")


class TensorElement:
    """An element of a tensor product of coefficient spaces.

    ``tags`` names each leg: "mq" and "glq" legs hold monomial keys over the
    matrix algebra ("glq" with a shared determinant power for the whole
    element, kept in ``detpows``), "slq" legs hold SL_2 basis words, "d" legs
    hold torus Laurent exponents, "k" legs hold circle weights.  Terms map a
    key tuple (one key per leg) to a coefficient.
    """

    __slots__ = ("hopf", "tags", "detpows", "terms")

    def __init__(self, hopf: "HopfContext", tags, terms, detpows=None):
        tags = tuple(tags)
        for t in tags:
            if t not in _LEG_TAGS:
                raise ValueError(f"unknown tensor leg tag {t!r}")
        if detpows is None:
            detpows = tuple(0 if t == "glq" else None for t in tags)
        detpows = tuple(detpows)
        object.__setattr__(self, "hopf", hopf)
        object.__setattr__(self, "tags", tags)
        object.__setattr__(self, "detpows", detpows)
        object.__setattr__(self, "terms", {k: c for k, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("TensorElement is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "TensorElement"):
        if self.hopf is not other.hopf or self.tags != other.tags:
            raise ValueError("tensor shapes do not match")

    def _lift_terms(self, detpows):
        """Terms after raising each glq leg to the given determinant power."""
        alg = self.hopf.alg
        det_terms = {}
        for i, t in enumerate(self.tags):
            if t == "glq" and detpows[i] != self.detpows[i]:
                det_terms[i] = alg.det_power(detpows[i] - self.detpows[i]).terms
        if not det_terms:
            return dict(self.terms)
        out = {}
        for key, c in self.terms.items():
            partial = [(key, c)]
            for i, dt in det_terms.items():
                nxt = []
                for k, cc in partial:
                    for dm, dc in dt.items():
                        prod = alg._mul_monos(k[i], dm)
                        for mm, mc in prod.items():
                            kk = k[:i] + (mm,) + k[i + 1:]
                            nxt.append((kk, cc * dc * mc))
                partial = nxt
            for k, cc in partial:
                v = out.get(k)
                v = cc if v is None else v + cc
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        return out

    def _common_detpows(self, other):
        return tuple(max(a, b) if t == "glq" else None
                     for t, a, b in zip(self.tags, self.detpows, other.detpows))

    def __add__(self, other):
        self._check(other)
        dps = self._common_detpows(other)
        out = self._lift_terms(dps)
        for k, c in other._lift_terms(dps).items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        return TensorElement(self.hopf, self.tags, out, dps)

    def __neg__(self):
        return TensorElement(self.hopf, self.tags,
                             {k: -c for k, c in self.terms.items()}, self.detpows)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = self.hopf.alg.coerce(c)
        if not c:
            return TensorElement(self.hopf, self.tags, {}, self.detpows)
        return TensorElement(self.hopf, self.tags,
                             {k: c * v for k, v in self.terms.items()}, self.detpows)

    def __mul__(self, other):
        """Legwise product (the algebra structure of the tensor product)."""
        self._check(other)
        hopf = self.hopf
        alg = hopf.alg
        sl = hopf.sl_algebra if "slq" in self.tags else None
        dps = tuple(a + b if t == "glq" else None
                    for t, a, b in zip(self.tags, self.detpows, other.detpows))
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                partial = [((), c1 * c2)]
                for i, t in enumerate(self.tags):
                    if t in ("mq", "glq"):
                        factors = alg._mul_monos(k1[i], k2[i])
                    elif t == "slq":
                        factors = sl._mul_words(k1[i], k2[i])
                    elif t == "d":
                        factors = {tuple(a + b for a, b in zip(k1[i], k2[i])):
                                   hopf._one}
                    else:  # "k"
                        factors = {k1[i] + k2[i]: hopf._one}
                    partial = [(key + (m,), c * cc)
                               for key, c in partial
                               for m, cc in factors.items()]
                for key, c in partial:
                    v = out.get(key)
                    v = c if v is None else v + c
                    if v:
                        out[key] = v
                    elif key in out:
                        del out[key]
        return TensorElement(hopf, self.tags, out, dps)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.hopf is not other.hopf or self.tags != other.tags:
            return False
        dps = self._common_detpows(other)
        return self._lift_terms(dps) == other._lift_terms(dps)

    def _key_str(self, key):
        parts = []
        for i, t in enumerate(self.tags):
            if t == "mq":
                parts.append(str(key[i]))
            elif t == "glq":
                p = self.detpows[i]
                parts.append(f"{key[i]}*det^-{p}" if p else str(key[i]))
            elif t == "slq":
                parts.append(_sl_word_str(key[i]))
            elif t == "d":
                parts.append(str(LaurentElement(len(key[i]),
                                                {key[i]: self.hopf._one})))
            else:
                parts.append(str(LaurentElement(1, {(key[i],): self.hopf._one})))
        return " (x) ".join(parts)

    def __repr__(self):
        return f"TensorElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        rendered = sorted((self._key_str(k), k) for k in self.terms)
        text = ""
        for ks, k in rendered:
            c = self.terms[k]
            neg = _is_negative(c)
            mag = -c if neg else c
            body = f"[{ks}]" if str(mag) == "1" else f"{_coeff_str(mag)}*[{ks}]"
            if not text:
                text = f"-{body}" if neg else body
            else:
                text += f" - {body}" if neg else f" + {body}"
        return text


class HopfContext:
    """Memoized Hopf operations over one matrix algebra.

    >>> H = HopfContext(MatrixAlgebra(2))
    >>> x = H.alg.generator
    >>> print(H.antipode(x(1, 2)))
    (-(1/q)*x12)*det^-1
    >>> H.counit(H.alg.quantum_determinant())
    Scalar(1)
    """

    def __init__(self, algebra: MatrixAlgebra):
        self.alg = algebra
        self.n = algebra.n
        self._one = algebra.one
        self._delta_cache = {}
        self._delta2_cache = {}
        self._anti_cache = {}
        self._s_letter_cache = {}
        self._beta_cache = {}
        self._alpha_cache = {}
        self._sl = None

    # -- constructors -------------------------------------------------------------

    def embed(self, a: MqElement) -> GlqElement:
        return GlqElement(self, a, 0)

    def gl(self, num: MqElement, detpow: int) -> GlqElement:
        return GlqElement(self, num, detpow)

    def scalar_gl(self, c) -> GlqElement:
        return GlqElement(self, self.alg.scalar_element(c), 0)

    def one_gl(self) -> GlqElement:
        return GlqElement(self, self.alg.one_element(), 0)

    def det_inverse(self, k: int = 1) -> GlqElement:
        return GlqElement(self, self.alg.one_element(), k)

    @property
    def sl_algebra(self) -> SlqAlgebra:
        if self._sl is None:
            self._sl = SlqAlgebra(self.alg)
        return self._sl

    # -- coproduct ------------------------------------------------------------------

    def _delta_mono(self, m: Monomial):
        """Coproduct of an ordered monomial: {(u, v): coeff}."""
        out = self._delta_cache.get(m)
        if out is not None:
            return out
        n = self.n
        alg = self.alg
        unit = Monomial.one(n)
        acc = {(unit, unit): self._one}
        for k in m.word():
            i, j = divmod(k, n)
            nxt = {}
            for (u, v), c in acc.items():
                for s in range(n):
                    left = alg._mul_mono_letter(u, i * n + s)
                    right = alg._mul_mono_letter(v, s * n + j)
                    for um, uc in left.items():
                        for vm, vc in right.items():
                            key = (um, vm)
                            cc = c * uc * vc
                            w = nxt.get(key)
                            w = cc if w is None else w + cc
                            if w:
                                nxt[key] = w
                            elif key in nxt:
                                del nxt[key]
            acc = nxt
        self._delta_cache[m] = acc
        return acc

    def _delta2_mono(self, m: Monomial):
        """Two-fold coproduct: {(u, v, w): coeff}."""
        out = self._delta2_cache.get(m)
        if out is not None:
            return out
        n = self.n
        alg = self.alg
        unit = Monomial.one(n)
        acc = {(unit, unit, unit): self._one}
        for k in m.word():
            i, j = divmod(k, n)
            nxt = {}
            for (u, v, w), c in acc.items():
                for s in range(n):
                    left = alg._mul_mono_letter(u, i * n + s)
                    for t in range(n):
                        mid = alg._mul_mono_letter(v, s * n + t)
                        right = alg._mul_mono_letter(w, t * n + j)
                        for um, uc in left.items():
                            cu = c * uc
                            for vm, vc in mid.items():
                                cuv = cu * vc
                                for wm, wc in right.items():
                                    key = (um, vm, wm)
                                    cc = cuv * wc
                                    x = nxt.get(key)
                                    x = cc if x is None else x + cc
                                    if x:
                                        nxt[key] = x
                                    elif key in nxt:
                                        del nxt[key]
            acc = nxt
        self._delta2_cache[m] = acc
        return acc

    def comultiply(self, a: MqElement) -> TensorElement:
        """Delta(a) in (mq) (x) (mq)."""
        out = {}
        for m, c in a.terms.items():
            for key, cc in self._delta_mono(m).items():
                v = out.get(key)
                v = c * cc if v is None else v + c * cc
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return TensorElement(self, ("mq", "mq"), out)

    def comultiply_gl(self, a: GlqElement) -> TensorElement:
        """Delta on the localization; det^-p splits as det^-p (x) det^-p."""
        out = {}
        for m, c in a.num.terms.items():
            for key, cc in self._delta_mono(m).items():
                v = out.get(key)
                v = c * cc if v is None else v + c * cc
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return TensorElement(self, ("glq", "glq"), out, (a.detpow, a.detpow))

    # -- counit ---------------------------------------------------------------------

    def _counit_mono(self, m: Monomial):
        n = self.n
        for k, e in enumerate(m.exps):
            if e:
                i, j = divmod(k, n)
                if i != j:
                    return self.alg.zero
        return self._one

    def counit(self, a):
        """The counit; sends x_ij to delta_ij and det^-1 to 1."""
        if isinstance(a, GlqElement):
            a = a.num
        total = self.alg.zero
        for m, c in a.terms.items():
            if self._counit_mono(m):
                total = total + c
        return total

    # -- antipode ---------------------------------------------------------------------

    def _s_letter(self, k: int):
        """S(x_ij) = (-q)^(i-j) [complement(j) | complement(i)] det^-1."""
        out = self._s_letter_cache.get(k)
        if out is None:
            n = self.n
            i, j = divmod(k, n)
            rows = tuple(r for r in range(1, n + 1) if r != j + 1)
            cols = tuple(c for c in range(1, n + 1) if c != i + 1)
            minor = self.alg.quantum_minor(rows, cols)
            sign = self._one if (i - j) % 2 == 0 else -self._one
            coeff = sign * self.alg.q_power(i - j)
            out = {m: coeff * c for m, c in minor.terms.items()}
            self._s_letter_cache[k] = out
        return out

    def _antipode_mono(self, m: Monomial):
        """S of an ordered monomial: (numerator terms, det power = degree)."""
        out = self._anti_cache.get(m)
        if out is not None:
            return out
        if m.deg == 0:
            out = {m: self._one}
        else:
            last = m.last_letter()
            rest = self._antipode_mono(m.stripped(last))
            head = self._s_letter(last)
            alg = self.alg
            out = {}
            for hm, hc in head.items():
                for rm, rc in rest.items():
                    c = hc * rc
                    for mm, mc in alg._mul_monos(hm, rm).items():
                        v = out.get(mm)
                        v = c * mc if v is None else v + c * mc
                        if v:
                            out[mm] = v
                        elif mm in out:
                            del out[mm]
        self._anti_cache[m] = out
        return out

    def antipode(self, a) -> GlqElement:
        """The antipode, as an element of the localization.

        Anti-multiplicative; on the localization S(num det^-p) multiplies
        S(num) by det^p.
        """
        if isinstance(a, MqElement):
            a = self.embed(a)
        if not isinstance(a, GlqElement):
            raise TypeError("antipode expects an algebra element")
        if a.is_zero():
            return self.gl(self.alg.zero_element(), 0)
        # term m det^-p maps to S(m) det^p with S(m) = s_num(m) det^-deg(m)
        powers = {m: m.deg - a.detpow for m in a.num.terms}
        cap = max(0, max(powers.values()))
        total = self.alg.zero_element()
        for m, c in a.num.terms.items():
            s_num = MqElement(self.alg, self._antipode_mono(m))
            lift = self.alg.det_power(cap - powers[m])
            total = total + (s_num * lift).scale(c)
        return GlqElement(self, total, cap)

    # -- adjoint coactions -----------------------------------------------------------

    def _coaction_mono(self, m: Monomial, which: str):
        cache = self._beta_cache if which == "beta" else self._alpha_cache
        out = cache.get(m)
        if out is not None:
            return out
        alg = self.alg
        out = {}
        for (u, v, w), c in self._delta2_mono(m).items():
            s_num = self._antipode_mono(u)
            for sm, sc in s_num.items():
                csc = c * sc
                pair = alg._mul_monos(sm, w) if which == "beta" \
                    else alg._mul_monos(w, sm)
                for pm, pc in pair.items():
                    key = (v, pm)
                    cc = csc * pc
                    x = out.get(key)
                    x = cc if x is None else x + cc
                    if x:
                        out[key] = x
                    elif key in out:
                        del out[key]
        cache[m] = out
        return out

    def coaction(self, a: MqElement, which: str) -> TensorElement:
        """The adjoint coaction: h_2 (x) S(h_1) h_3 for beta, h_2 (x) h_3 S(h_1)
        for alpha.  Output legs are (mq) (x) (glq)."""
        if which not in ("beta", "alpha"):
            raise ValueError("coaction kind must be 'beta' or 'alpha'")
        if not isinstance(a, MqElement):
            raise TypeError("coactions here take matrix-algebra elements")
        total = None
        for m, c in a.terms.items():
            part = TensorElement(
                self, ("mq", "glq"),
                {k: c * cc for k, cc in self._coaction_mono(m, which).items()},
                (None, m.deg))
            total = part if total is None else total + part
        if total is None:
            total = TensorElement(self, ("mq", "glq"), {}, (None, 0))
        return total

    def coaction_beta(self, a: MqElement) -> TensorElement:
        return self.coaction(a, "beta")

    def coaction_alpha(self, a: MqElement) -> TensorElement:
        return self.coaction(a, "alpha")

    def is_coinvariant(self, a: MqElement, which: str) -> bool:
        """True when the adjoint coaction fixes a, i.e. equals a (x) 1."""
        expected = TensorElement(self, ("mq", "glq"),
                                 {(m, Monomial.one(self.n)): c
                                  for m, c in a.terms.items()},
                                 (None, 0))
        return self.coaction(a, which) == expected

    # -- torus coaction and projections ------------------------------------------------

    def lambda_diag(self, a: GlqElement) -> TensorElement:
        """Left coaction of the diagonal torus: legs (d) (x) (glq).

        On a basis term m det^-p the torus leg is t^rowdeg(m) (t1..tn)^-p;
        only the diagonal path of the coproduct survives the projection.
        """
        p = a.detpow
        out = {}
        for m, c in a.num.terms.items():
            key = (tuple(r - p for r in m.rowdeg()), m)
            out[key] = out.get(key, self.alg.zero) + c
        return TensorElement(self, ("d", "glq"),
                             {k: c for k, c in out.items() if c}, (None, p))

    def is_diag_coinvariant(self, a: GlqElement) -> bool:
        """True when every numerator monomial has row degree (p, ..., p)."""
        p = a.detpow
        return all(set(m.rowdeg()) <= {p} for m in a.num.terms)

    def project_diag(self, a: GlqElement) -> LaurentElement:
        """Restriction to the diagonal torus: x_ii -> t_i, x_ij -> 0 (i != j),
        det^-1 -> (t1..tn)^-1."""
        p = a.detpow
        out = {}
        for m, c in a.num.terms.items():
            if self._counit_mono(m):
                e = tuple(m.exps[i * self.n + i] - p for i in range(self.n))
                out[e] = out.get(e, self.alg.zero) + c
        return LaurentElement(self.n, out, self._one)

    def project_sl(self, a) -> SlqElement:
        """Quotient to quantum SL_2 (size 2 only): x11, x12, x21, x22 map to
        a, b, c, d and det maps to 1."""
        if isinstance(a, MqElement):
            a = self.embed(a)
        sl = self.sl_algebra
        total = sl.zero_element()
        for m, c in a.num.terms.items():
            total = total + sl.word_element(m.exps).scale(c)
        return total

    def project_k(self, a) -> LaurentElement:
        """Further quotient to the circle: a -> z, d -> z^-1, b, c -> 0."""
        if isinstance(a, (MqElement, GlqElement)):
            a = self.project_sl(a)
        out = {}
        for (ea, eb, ec, ed), c in a.terms.items():
            if eb == 0 and ec == 0:
                key = (ea - ed,)
                out[key] = out.get(key, self.alg.zero) + c
        return LaurentElement(1, out, self._one)
