"""Co-orbit maps at classical points of the quantum matrix space.

A :class:`Point` is a scalar N x N matrix whose entries satisfy the
commutative degenerations of the quantum matrix relations, so that entrywise
evaluation is an algebra map from the quantum matrix algebra to the field.
Evaluating the first leg of an adjoint coaction at such a point gives the
co-orbit map of the point,

    psi(h) = (ev (x) id) beta(h),      phi(h) = (ev (x) id) alpha(h),

a linear (not algebra) map into the localized algebra.  The implementation
never materializes the full coaction: since evaluation is an algebra map,
the evaluated middle leg folds letter by letter with only the nonzero point
entries branching, which keeps sparse points (diagonal, single-entry) cheap.
The definitional composite survives in the tests as an oracle.

Truncations: kernels, ideal spans, and images of the co-orbit map restricted
to monomials of bounded degree, as :class:`TruncatedSubspace` values over
explicit key lists, computed by exact echelon reduction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from . import xla
from .hopf import GlqElement, HopfContext, SlqElement
from .mq import Monomial, MqElement
from .scalars import Scalar


class Point:
    """A classical point: an N x N matrix of coefficients.

    Entries may be ints, Fractions, or field elements; they are coerced by
    the consuming algebra.  Use :func:`validate_point` (or any co-orbit
    constructor, which validates by default) to check the point actually
    satisfies the required vanishing conditions.
    """

    __slots__ = ("n", "entries")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("a point is a square matrix of entries")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, *a):
        raise AttributeError("Point is immutable")

    @classmethod
    def diagonal(cls, values) -> "Point":
        values = tuple(values)
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n))
                         for i in range(n)))

    def entry(self, i: int, j: int):
        """1-based entry access."""
        return self.entries[i - 1][j - 1]

    def is_diagonal(self) -> bool:
        return all(not self.entries[i][j]
                   for i in range(self.n) for j in range(self.n) if i != j)

    def __eq__(self, other):
        return (isinstance(other, Point) and self.n == other.n
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Point({[list(r) for r in self.entries]})"


def validate_point(point: Point, algebra) -> None:
    """Check that evaluation at the point is an algebra map.

    The quantum matrix relations degenerate, on commuting scalars, to the
    vanishing of certain products of entries (scaled by q - 1 or q - 1/q, so
    at q = 1 every matrix qualifies).  Raises ValueError naming the first
    violated pair of positions.
    """
    if point.n != algebra.n:
        raise ValueError("point size does not match the algebra")
    n = point.n
    xi = [[algebra.coerce(point.entries[i][j]) for j in range(n)]
          for i in range(n)]
    qm1 = algebra.q - algebra.one
    qmq = algebra.q - algebra.qinv
    for i in range(n):
        for j in range(n):
            for l in range(j + 1, n):
                if qm1 * xi[i][j] * xi[i][l]:
                    raise ValueError(
                        f"entries ({i+1},{j+1}) and ({i+1},{l+1}) violate "
                        "the same-row vanishing condition")
    for j in range(n):
        for i in range(n):
            for k in range(i + 1, n):
                if qm1 * xi[i][j] * xi[k][j]:
                    raise ValueError(
                        f"entries ({i+1},{j+1}) and ({k+1},{j+1}) violate "
                        "the same-column vanishing condition")
    for i in range(n):
        for k in range(i + 1, n):
            for j in range(n):
                for l in range(j + 1, n):
                    if qmq * xi[i][l] * xi[k][j]:
                        raise ValueError(
                            f"entries ({i+1},{l+1}) and ({k+1},{j+1}) violate "
                            "the antidiagonal vanishing condition")


def evaluate(a: MqElement, point: Point):
    """Entrywise evaluation of an element at a point (an algebra map)."""
    alg = a.algebra
    if point.n != alg.n:
        raise ValueError("point size does not match the algebra")
    n = alg.n
    xi = [[alg.coerce(point.entries[i][j]) for j in range(n)] for i in range(n)]
    total = alg.zero
    for m, c in a.terms.items():
        val = c
        for k, e in enumerate(m.exps):
            if e:
                i, j = divmod(k, n)
                val = val * xi[i][j] ** e
                if not val:
                    break
        total = total + val
    return total


class TruncatedSubspace:
    """A subspace of a finite coefficient space with labeled coordinates.

    Stores the unique reduced echelon basis over the given key list, so two
    subspaces over the same keys are equal iff their bases coincide.
    """

    __slots__ = ("keys", "index", "rows", "pivots", "one")

    def __init__(self, keys, rows, one):
        keys = tuple(keys)
        index = {k: i for i, k in enumerate(keys)}
        if len(index) != len(keys):
            raise ValueError("duplicate keys")
        rref, pivots, _rank = xla.echelon([list(r) for r in rows])
        object.__setattr__(self, "keys", keys)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rref))
        object.__setattr__(self, "pivots", tuple(pivots))
        object.__setattr__(self, "one", one)

    def __setattr__(self, *a):
        raise AttributeError("TruncatedSubspace is immutable")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vector_of(self, terms: dict):
        """Coefficient vector of a {key: coeff} dict over this key list.

        Raises KeyError if the dict touches a key outside the space.
        """
        zero = self.one - self.one
        vec = [zero] * len(self.keys)
        for k, c in terms.items():
            vec[self.index[k]] = c
        return vec

    def contains(self, terms: dict) -> bool:
        try:
            vec = self.vector_of(terms)
        except KeyError:
            return False
        return xla.member(vec, [list(r) for r in self.rows], list(self.pivots))

    def is_subspace_of(self, other: "TruncatedSubspace") -> bool:
        if self.keys != other.keys:
            raise ValueError("subspaces over different key lists")
        orows = [list(r) for r in other.rows]
        opiv = list(other.pivots)
        return all(xla.member(list(r), orows, opiv) for r in self.rows)

    def row_weights(self, weight_fn):
        """One weight per basis row; every row must be weight-pure."""
        out = []
        for r in self.rows:
            ws = {weight_fn(self.keys[i]) for i, c in enumerate(r) if c}
            if len(ws) != 1:
                raise ValueError("basis row mixes weights")
            out.append(ws.pop())
        return out

    def __eq__(self, other):
        return (isinstance(other, TruncatedSubspace)
                and self.keys == other.keys and self.rows == other.rows)

    def __repr__(self):
        return f"TruncatedSubspace(dim={self.dim}, ambient={len(self.keys)})"


class ImageData(NamedTuple):
    space: TruncatedSubspace   # over numerator monomial keys
    detpow: int                # shared determinant power of the image
    weights: list              # torus weight tuple of each basis row


class CoorbitMap:
    """The co-orbit map of one point, one side (beta or alpha), memoized.

    >>> from qcoorbit.mq import MatrixAlgebra
    >>> H = HopfContext(MatrixAlgebra(2))
    >>> cm = CoorbitMap(H, Point.diagonal([2, 3]))
    >>> cm(H.alg.tau(1)) == H.scalar_gl(evaluate(H.alg.tau(1), cm.point))
    True
    """

    def __init__(self, hopf: HopfContext, point: Point, which: str = "beta",
                 validate: bool = True):
        if which not in ("beta", "alpha"):
            raise ValueError("co-orbit side must be 'beta' or 'alpha'")
        if validate:
            validate_point(point, hopf.alg)
        n = hopf.alg.n
        self.hopf = hopf
        self.point = point
        self.which = which
        self.xi = [[hopf.alg.coerce(point.entries[i][j]) for j in range(n)]
                   for i in range(n)]
        self._mono_cache = {}

    def of_monomial(self, m: Monomial):
        """Image of an ordered monomial: (numerator terms, det power = degree)."""
        out = self._mono_cache.get(m)
        if out is not None:
            return out
        hopf = self.hopf
        alg = hopf.alg
        n = alg.n
        unit = Monomial.one(n)
        # fold the evaluated coproduct letter by letter
        acc = {(unit, unit): alg.one}
        for kidx in m.word():
            i, j = divmod(kidx, n)
            nxt = {}
            for (u, w), c in acc.items():
                for k in range(n):
                    left = None
                    for l in range(n):
                        xv = self.xi[k][l]
                        if not xv:
                            continue
                        if left is None:
                            left = alg._mul_mono_letter(u, i * n + k)
                        right = alg._mul_mono_letter(w, l * n + j)
                        cx = c * xv
                        for um, uc in left.items():
                            cu = cx * uc
                            for wm, wc in right.items():
                                key = (um, wm)
                                v = nxt.get(key)
                                v = cu * wc if v is None else v + cu * wc
                                if v:
                                    nxt[key] = v
                                elif key in nxt:
                                    del nxt[key]
            acc = nxt
        # multiply through the antipode leg
        out = {}
        for (u, w), c in acc.items():
            for sm, sc in hopf._antipode_mono(u).items():
                csc = c * sc
                pair = (alg._mul_monos(sm, w) if self.which == "beta"
                        else alg._mul_monos(w, sm))
                for pm, pc in pair.items():
                    v = out.get(pm)
                    v = csc * pc if v is None else v + csc * pc
                    if v:
                        out[pm] = v
                    elif pm in out:
                        del out[pm]
        out = (out, m.deg)
        self._mono_cache[m] = out
        return out

    def __call__(self, a: MqElement) -> GlqElement:
        alg = self.hopf.alg
        if not isinstance(a, MqElement) or a.algebra is not alg:
            raise ValueError("expected an element of the same matrix algebra")
        if a.is_zero():
            return self.hopf.gl(alg.zero_element(), 0)
        cap = max(m.deg for m in a.terms)
        total = {}
        for m, c in a.terms.items():
            num, p = self.of_monomial(m)
            lift = alg.det_power(cap - p).terms
            for nm, nc in num.items():
                cnc = c * nc
                for lm, lc in lift.items():
                    for mm, mc in alg._mul_monos(nm, lm).items():
                        v = total.get(mm)
                        v = cnc * lc * mc if v is None else v + cnc * lc * mc
                        if v:
                            total[mm] = v
                        elif mm in total:
                            del total[mm]
        return self.hopf.gl(MqElement(alg, total), cap)

    # -- truncations ----------------------------------------------------------

    def _lifted_images(self, d: int):
        """Images of all monomials of degree <= d at det power d."""
        alg = self.hopf.alg
        domain = alg.monomial_basis(d)
        lifted = []
        for m in domain:
            num, p = self.of_monomial(m)
            if p < d:
                out = {}
                for nm, nc in num.items():
                    for lm, lc in alg.det_power(d - p).terms.items():
                        for mm, mc in alg._mul_monos(nm, lm).items():
                            v = out.get(mm)
                            v = nc * lc * mc if v is None else v + nc * lc * mc
                            if v:
                                out[mm] = v
                            elif mm in out:
                                del out[mm]
                num = out
            lifted.append(num)
        return domain, lifted

    def kernel_basis(self, d: int) -> TruncatedSubspace:
        """Kernel of the co-orbit map on the span of monomials of degree <= d,
        over those monomials as keys."""
        alg = self.hopf.alg
        domain, lifted = self._lifted_images(d)
        codomain = sorted({m for num in lifted for m in num},
                          key=Monomial.sort_key)
        cindex = {m: r for r, m in enumerate(codomain)}
        zero = alg.zero
        rows = [[zero] * len(domain) for _ in codomain]
        for c, num in enumerate(lifted):
            for m, v in num.items():
                rows[cindex[m]][c] = v
        kernel_vectors = xla.kernel(rows, len(domain), alg.one)
        return TruncatedSubspace(domain, kernel_vectors, alg.one)

    def ideal_truncation(self, d: int) -> TruncatedSubspace:
        """Truncated span of the coinvariant-generated ideal, over the
        monomials of degree <= d.

        For beta this is the span of (tau_i - tau_i(point)) m, for alpha the
        span of m (sigma_i - sigma_i(point)); the co-orbit map kills both.
        """
        alg = self.hopf.alg
        domain = alg.monomial_basis(d)
        dindex = {m: i for i, m in enumerate(domain)}
        zero = alg.zero
        rows = []
        for i in range(1, alg.n + 1):
            if i > d:
                break
            fam = alg.tau(i) if self.which == "beta" else alg.sigma(i)
            g = fam - alg.scalar_element(evaluate(fam, self.point))
            for m in alg.monomial_basis(d - i):
                me = alg.monomial_element(m)
                prod = g * me if self.which == "beta" else me * g
                row = [zero] * len(domain)
                for mm, c in prod.terms.items():
                    row[dindex[mm]] = c
                rows.append(row)
        return TruncatedSubspace(domain, rows, alg.one)

    def image_data(self, d: int) -> ImageData:
        """Image of the degree <= d truncation, with torus weights per row."""
        alg = self.hopf.alg
        _domain, lifted = self._lifted_images(d)
        codomain = sorted({m for num in lifted for m in num},
                          key=Monomial.sort_key)
        cindex = {m: i for i, m in enumerate(codomain)}
        zero = alg.zero
        rows = []
        for num in lifted:
            row = [zero] * len(codomain)
            for m, v in num.items():
                row[cindex[m]] = v
            rows.append(row)
        space = TruncatedSubspace(codomain, rows, alg.one)
        weights = space.row_weights(
            lambda m: tuple(c - d for c in m.coldeg()))
        return ImageData(space, d, weights)

    def image_sl_span(self, d: int) -> TruncatedSubspace:
        """The image truncation pushed into the SL_2 quotient (size 2 only)."""
        hopf = self.hopf
        alg = hopf.alg
        sl = hopf.sl_algebra
        elems = []
        for m in alg.monomial_basis(d):
            num, p = self.of_monomial(m)
            elems.append(hopf.project_sl(hopf.gl(MqElement(alg, num), p)))
        keys = sorted({e for el in elems for e in el.terms},
                      key=lambda e: (sum(e), e))
        kindex = {e: i for i, e in enumerate(keys)}
        zero = alg.zero
        rows = []
        for el in elems:
            row = [zero] * len(keys)
            for e, c in el.terms.items():
                row[kindex[e]] = c
            rows.append(row)
        return TruncatedSubspace(keys, rows, alg.one)

    # -- closed-form checks ------------------------------------------------------

    def power_check(self, power: int, variant: str) -> bool:
        """Compare the image of x21^power against its closed form.

        Variants: "beta-diag" and "alpha-diag" need a diagonal point;
        "beta-nilpotent" needs the single-entry point at position (1, 2).
        All three compare inside the SL_2 quotient.
        """
        hopf = self.hopf
        alg = hopf.alg
        if alg.n != 2:
            raise ValueError("power checks are for size 2")
        if power < 0:
            raise ValueError("negative power")
        sl = hopf.sl_algebra
        q = alg.q
        a, c = sl.generator("a"), sl.generator("c")
        if variant in ("beta-diag", "alpha-diag"):
            side = variant.split("-")[0]
            if self.which != side:
                raise ValueError(f"variant {variant!r} needs a {side} map")
            if not self.point.is_diagonal():
                raise ValueError(f"variant {variant!r} needs a diagonal point")
            x1, x2 = self.xi[0][0], self.xi[1][1]
            coeff = (-q) ** power
            if side == "beta":
                for i in range(power):
                    coeff = coeff * (x1 - q ** (2 * i) * x2)
                rhs = (c ** power * a ** power).scale(coeff)
            else:
                for i in range(1, power + 1):
                    coeff = coeff * (x1 - q ** (-2 * i) * x2)
                rhs = (a ** power * c ** power).scale(coeff)
        elif variant == "beta-nilpotent":
            if self.which != "beta":
                raise ValueError("variant 'beta-nilpotent' needs a beta map")
            ok = all(not self.xi[i][j] for i in range(2) for j in range(2)
                     if (i, j) != (0, 1))
            if not ok:
                raise ValueError("variant 'beta-nilpotent' needs the point "
                                 "with only the (1,2) entry")
            x1 = self.xi[0][1]
            coeff = (-alg.one) ** power * q ** power * x1 ** power
            rhs = (c ** (2 * power)).scale(coeff)
        else:
            raise ValueError(f"unknown power-check variant {variant!r}")
        m = Monomial(2, (0, 0, power, 0))
        num, p = self.of_monomial(m)
        lhs = hopf.project_sl(hopf.gl(MqElement(alg, num), p))
        return lhs == rhs


def psi_power_check(hopf: HopfContext, point: Point, power: int,
                    variant: str) -> bool:
    """Convenience wrapper building the right co-orbit map for the variant."""
    which = "alpha" if variant.startswith("alpha") else "beta"
    return CoorbitMap(hopf, point, which).power_check(power, variant)


def diag_coinv_keys(n: int, d: int):
    """Numerator monomials of the torus-coinvariant truncation at det^-d:
    exponent matrices with every row sum equal to d, sorted."""
    def rows_of(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in rows_of(total - first, slots - 1):
                yield (first,) + rest

    out = []

    def rec(i, acc):
        if i == n:
            out.append(Monomial(n, tuple(acc)))
            return
        for row in rows_of(d, n):
            rec(i + 1, acc + list(row))

    rec(0, [])
    return sorted(out, key=Monomial.sort_key)


def sphere_span(hopf: HopfContext, length: int) -> TruncatedSubspace:
    """Span of all products of length <= length of the three sphere
    generators inside SL_2: ac, 1 + (q + 1/q) bc, and db."""
    sl = hopf.sl_algebra
    q = sl.q
    a, b, c, d = (sl.generator(t) for t in "abcd")
    gens = [a * c, sl.one_element() + (q + q ** -1) * (b * c), d * b]
    level = [sl.one_element()]
    elems = [sl.one_element()]
    for _ in range(length):
        level = [e * g for e in level for g in gens]
        elems.extend(level)
    keys = sorted({e for el in elems for e in el.terms},
                  key=lambda e: (sum(e), e))
    kindex = {e: i for i, e in enumerate(keys)}
    zero = sl.zero
    rows = []
    for el in elems:
        row = [zero] * len(keys)
        for e, cc in el.terms.items():
            row[kindex[e]] = cc
        rows.append(row)
    return TruncatedSubspace(keys, rows, sl.one)
