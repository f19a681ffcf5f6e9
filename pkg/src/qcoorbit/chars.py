"""Characters of truncated comodule spaces and their decompositions.

A :class:`Character` is a Laurent polynomial with integer multiplicities,
either in the circle variable z ("z" picture) or in the torus variables
t1..tn ("t" picture).  Image truncations of co-orbit maps decompose under
the torus weight grading; in the z picture (size 2) they decompose further
into the irreducible sl_2 characters chi(m) = z^m + z^(m-2) + ... + z^-m.

Also here: the combinatorial character of the degree <= r coordinate-space
truncation and its difference identity, and the end-to-end consistency check
that re-runs a whole image computation with q specialized to a rational
number before any linear algebra happens.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import NamedTuple

from .coorbit import CoorbitMap, ImageData, Point, TruncatedSubspace
from .hopf import HopfContext
from .mq import MatrixAlgebra
from .scalars import PoleError, Scalar


class Character:
    """Integer-multiplicity weights, in the "z" or "t" picture."""

    __slots__ = ("picture", "mults")

    def __init__(self, picture: str, mults):
        if picture not in ("z", "t"):
            raise ValueError("picture must be 'z' or 't'")
        clean = {}
        for w, m in mults.items():
            if picture == "z" and not isinstance(w, int):
                raise ValueError("z-picture weights are integers")
            if picture == "t" and not isinstance(w, tuple):
                raise ValueError("t-picture weights are tuples")
            if int(m) != m:
                raise ValueError("multiplicities are integers")
            if m:
                clean[w] = clean.get(w, 0) + int(m)
        object.__setattr__(self, "picture", picture)
        object.__setattr__(self, "mults", {w: m for w, m in clean.items() if m})

    def __setattr__(self, *a):
        raise AttributeError("Character is immutable")

    @classmethod
    def zero(cls, picture: str = "z") -> "Character":
        return cls(picture, {})

    @classmethod
    def from_weights(cls, picture: str, weights) -> "Character":
        mults = {}
        for w in weights:
            mults[w] = mults.get(w, 0) + 1
        return cls(picture, mults)

    def is_zero(self) -> bool:
        return not self.mults

    def dimension(self) -> int:
        """Total multiplicity (the character evaluated at the identity)."""
        return sum(self.mults.values())

    def _check(self, other: "Character"):
        if self.picture != other.picture:
            raise ValueError("characters in different pictures")

    def __add__(self, other):
        self._check(other)
        out = dict(self.mults)
        for w, m in other.mults.items():
            out[w] = out.get(w, 0) + m
        return Character(self.picture, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.mults)
        for w, m in other.mults.items():
            out[w] = out.get(w, 0) - m
        return Character(self.picture, out)

    def __eq__(self, other):
        return (isinstance(other, Character) and self.picture == other.picture
                and self.mults == other.mults)

    def __repr__(self):
        return f"Character({self})"

    def __str__(self):
        if not self.mults:
            return "0"
        if self.picture == "z":
            items = sorted(self.mults.items(), key=lambda wm: -wm[0])
            rendered = [(m, f"z^{w}" if w not in (0, 1) else ("z" if w else ""))
                        for w, m in items]
        else:
            items = sorted(self.mults.items())
            rendered = []
            for w, m in items:
                mono = "*".join(f"t{i+1}^{e}" if e != 1 else f"t{i+1}"
                                for i, e in enumerate(w) if e)
                rendered.append((m, mono))
        text = ""
        for m, mono in rendered:
            mag = abs(m)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not text:
                text = f"-{body}" if m < 0 else body
            else:
                text += f" - {body}" if m < 0 else f" + {body}"
        return text


def chi_irreducible(m: int) -> Character:
    """Character of the (m+1)-dimensional irreducible: z^m + ... + z^-m."""
    if m < 0:
        raise ValueError("highest weight must be nonnegative")
    return Character("z", {w: 1 for w in range(-m, m + 1, 2)})


def character_of(space, picture: str = "z") -> Character:
    """Character of an image truncation or of an SL-basis subspace.

    Accepts :class:`ImageData` (torus weights; the z picture maps a torus
    weight (w1, ..., wn) to w1 - wn) or a :class:`TruncatedSubspace` whose
    keys are SL_2 basis words (z picture only, weight ea - eb + ec - ed).
    """
    if isinstance(space, ImageData):
        if picture == "t":
            return Character.from_weights("t", space.weights)
        return Character.from_weights("z", [w[0] - w[-1] for w in space.weights])
    if isinstance(space, TruncatedSubspace):
        if picture != "z":
            raise ValueError("subspace characters only come in the z picture")
        weights = space.row_weights(lambda e: e[0] - e[1] + e[2] - e[3])
        return Character.from_weights("z", weights)
    raise TypeError("expected ImageData or TruncatedSubspace")


def decompose_sl2(char: Character) -> dict:
    """Write a z-character as a sum of irreducible characters, greedily
    peeling the top weight; raises if the input is not such a sum."""
    if char.picture != "z":
        raise ValueError("decomposition works in the z picture")
    rest = char
    out = {}
    while not rest.is_zero():
        top = max(rest.mults)
        mult = rest.mults[top]
        if top < 0 or mult < 0:
            raise ValueError("not a nonnegative sum of irreducible characters")
        piece = chi_irreducible(top)
        stripped = rest
        for _ in range(mult):
            stripped = stripped - piece
        rest = stripped
        out[top] = out.get(top, 0) + mult
    return dict(sorted(out.items()))


def coordinate_truncation_character(r: int) -> Character:
    """z-character of the degree <= r coordinate truncation: one orbit of
    monomial families indexed by i+j+k <= r-1 and one by l+m+n <= r."""
    if r < 0:
        raise ValueError("negative truncation degree")
    mults = {}
    for i in range(r):
        for j in range(r - i):
            for k in range(r - i - j):
                w = 2 * (k - j)
                mults[w] = mults.get(w, 0) + 1
    for l in range(r + 1):
        for m in range(r + 1 - l):
            for n in range(r + 1 - l - m):
                w = 2 * (m - l)
                mults[w] = mults.get(w, 0) + 1
    return Character("z", mults)


def coordinate_truncation_dimension(r: int) -> int:
    return comb(r + 2, 3) + comb(r + 3, 3)


def difference_identity(r: int) -> bool:
    """The degree-r layer of the coordinate truncation is the sum of the
    even irreducibles up to weight 2r."""
    if r < 1:
        raise ValueError("needs r >= 1")
    lhs = coordinate_truncation_character(r) - coordinate_truncation_character(r - 1)
    rhs = Character.zero()
    for s in range(r + 1):
        rhs = rhs + chi_irreducible(2 * s)
    return lhs == rhs


class SpecializationReport(NamedTuple):
    match: bool
    symbolic: Character
    specialized: Character


def compare_at_q1(hopf: HopfContext, point: Point, d: int,
                  which: str = "beta", q0=Fraction(1)) -> SpecializationReport:
    """Re-run the whole image computation with q specialized to q0 before
    any linear algebra, and compare torus characters with the symbolic run.

    Point entries that are symbolic scalars are specialized too (a pole at
    q0 raises).  The default q0 = 1 lands in the commutative world.
    """
    sym = character_of(CoorbitMap(hopf, point, which).image_data(d), "t")
    alg0 = MatrixAlgebra(hopf.alg.n, q0)
    entries0 = []
    for row in point.entries:
        row0 = []
        for e in row:
            if isinstance(e, Scalar):
                row0.append(e.specialize(q0))
            else:
                row0.append(Fraction(e))
        entries0.append(row0)
    point0 = Point(entries0)
    cm0 = CoorbitMap(HopfContext(alg0), point0, which)
    spec = character_of(cm0.image_data(d), "t")
    return SpecializationReport(sym == spec, sym, spec)
