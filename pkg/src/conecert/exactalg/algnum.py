"""Algebraic numbers as (irreducible minimal polynomial, isolating rectangle).

The representation is fully exact: rectangles have rational corners and every
verdict (equality of moduli, sign separations) is certified by refinement
plus exact zero tests. No float enters any decision path; floats appear only
in the convenience `approx` accessor.

Factoring over the rationals and the initial root isolation are delegated to
sympy's dense-polynomial kernel, which returns exact rational data. Box
refinement is done here by bisection: exact sign evaluation for real roots,
exact rectangle root counting (Collins-Krandick, via sympy) for complex ones.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import ZeroPolynomialError
from .qpoly import QPoly, _frac

from sympy.polys.domains import QQ
from sympy.polys.rootisolation import (
    dup_count_complex_roots,
    dup_isolate_complex_roots_sqf,
    dup_isolate_real_roots_sqf,
)
from sympy import Poly as _SymPoly, Symbol as _SymSymbol

_T = _SymSymbol("t")

# split fractions tried when a bisection line happens to pass through a root
_SPLIT_FRACTIONS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3),
                    Fraction(2, 5), Fraction(3, 5), Fraction(3, 7), Fraction(4, 7))


def _to_dup(p: QPoly) -> list:
    """sympy dense representation: QQ coefficients, highest degree first."""
    return [QQ(c.numerator, c.denominator) for c in reversed(p.coeffs)]


def _from_mpq(x) -> Fraction:
    return Fraction(x.numerator, x.denominator)


def factor_rational(p: QPoly) -> list[tuple[QPoly, int]]:
    """Irreducible factors over Q with multiplicities.

    Factors come back content-normalized (primitive integer coefficients,
    positive leading coefficient) in a deterministic order.
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    monoms = {(i,): QQ(c.numerator, c.denominator) for i, c in enumerate(p.coeffs) if c != 0}
    sp = _SymPoly.from_dict(monoms, _T, domain=QQ)
    _, factors = sp.factor_list()
    out = []
    for fac, mult in factors:
        coeffs = [Fraction(0)] * (fac.degree() + 1)
        for monom, coeff in fac.terms():
            coeffs[monom[0]] = Fraction(coeff.numerator, coeff.denominator)
        out.append((QPoly(coeffs).content_normalized(), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


class AlgebraicNumber:
    """A root of an irreducible rational polynomial, pinned by a rectangle.

    `box` is (re_lo, re_hi, im_lo, im_hi) with rational corners; it contains
    exactly one root of `minpoly`. Values are immutable; refinement returns a
    new number with a strictly smaller box.
    """

    __slots__ = ("minpoly", "box", "is_real")

    def __init__(self, minpoly: QPoly, box, is_real: bool):
        object.__setattr__(self, "minpoly", minpoly)
        object.__setattr__(self, "box", tuple(_frac(b) for b in box))
        object.__setattr__(self, "is_real", bool(is_real))

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraicNumber is immutable")

    @staticmethod
    def from_rational(r) -> "AlgebraicNumber":
        r = _frac(r)
        mp = QPoly((-r, 1)).content_normalized()
        return AlgebraicNumber(mp, (r, r, 0, 0), True)

    # -- queries ----------------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        return -self.minpoly.coeffs[0] / self.minpoly.coeffs[1]

    def conjugate(self) -> "AlgebraicNumber":
        if self.is_real:
            return self
        a, b, c, d = self.box
        return AlgebraicNumber(self.minpoly, (a, b, -d, -c), False)

    def approx(self) -> complex:
        a, b, c, d = self.box
        return complex((a + b) / 2, (c + d) / 2)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraicNumber) and self.minpoly == other.minpoly
                and self.box == other.box and self.is_real == other.is_real)

    def __hash__(self) -> int:
        return hash((self.minpoly, self.box, self.is_real))

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicNumber({self.rational_value})"
        return f"AlgebraicNumber({self.minpoly}, box={self.box})"

    # -- refinement ---------------------------------------------------------------

    def refine(self) -> "AlgebraicNumber":
        """Halve (roughly) the larger side of the box; exact and certified."""
        if self.is_rational:
            return self
        if self.is_real:
            return self._refine_real()
        return self._refine_complex()

    def refine_below(self, width: Fraction) -> "AlgebraicNumber":
        a = self
        while max(a.box[1] - a.box[0], a.box[3] - a.box[2]) > width:
            a = a.refine()
        return a

    def _refine_real(self) -> "AlgebraicNumber":
        lo, hi = self.box[0], self.box[1]
        p = self.minpoly
        # rational endpoints are never roots of an irreducible p of degree >= 2
        mid = (lo + hi) / 2
        if (p(lo) > 0) != (p(mid) > 0):
            return AlgebraicNumber(p, (lo, mid, 0, 0), True)
        return AlgebraicNumber(p, (mid, hi, 0, 0), True)

    def _refine_complex(self) -> "AlgebraicNumber":
        a, b, c, d = self.box
        dup = _to_dup(self.minpoly)
        horizontal = (b - a) >= (d - c)
        for frac in _SPLIT_FRACTIONS:
            if horizontal:
                mid = a + (b - a) * frac
                first = (a, mid, c, d)
                second = (mid, b, c, d)
            else:
                mid = c + (d - c) * frac
                first = (a, b, c, mid)
                second = (a, b, mid, d)
            n1 = _count_in_box(dup, first)
            n2 = _count_in_box(dup, second)
            if n1 + n2 != 1:
                # split line passes through the root; try another fraction
                continue
            return AlgebraicNumber(self.minpoly, first if n1 == 1 else second, False)
        raise AssertionError("no valid split found")  # pragma: no cover

    # -- certified interval data ------------------------------------------------------

    def modulus_squared_interval(self) -> tuple[Fraction, Fraction]:
        """Exact rational bounds for |self|^2 from the current box."""
        def square_range(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
            if lo <= 0 <= hi:
                return Fraction(0), max(lo * lo, hi * hi)
            lo2, hi2 = lo * lo, hi * hi
            return min(lo2, hi2), max(lo2, hi2)

        a, b, c, d = self.box
        rlo, rhi = square_range(a, b)
        ilo, ihi = square_range(c, d)
        return rlo + ilo, rhi + ihi


def _count_in_box(dup: list, box) -> int:
    a, b, c, d = box
    return dup_count_complex_roots(
        dup, QQ,
        (QQ(a.numerator, a.denominator), QQ(c.numerator, c.denominator)),
        (QQ(b.numerator, b.denominator), QQ(d.numerator, d.denominator)))


def _isolate_irreducible(fac: QPoly) -> list[AlgebraicNumber]:
    """All roots of an irreducible primitive polynomial, real ones first."""
    if fac.degree == 1:
        return [AlgebraicNumber.from_rational(-fac.coeffs[0] / fac.coeffs[1])]
    dup = _to_dup(fac)
    eps = QQ(1, 16)
    roots = []
    for lo, hi in dup_isolate_real_roots_sqf(dup, QQ, eps=eps):
        roots.append(AlgebraicNumber(fac, (_from_mpq(lo), _from_mpq(hi), 0, 0), True))
    complexes = []
    for (ax, ay), (bx, by) in dup_isolate_complex_roots_sqf(dup, QQ, eps=eps):
        complexes.append(AlgebraicNumber(
            fac, (_from_mpq(ax), _from_mpq(bx), _from_mpq(ay), _from_mpq(by)), False))
    # conjugate pairs adjacent, negative-imaginary member first
    complexes.sort(key=lambda r: (r.box[0], r.box[1], max(abs(r.box[2]), abs(r.box[3])),
                                  r.box[2]))
    return roots + complexes


def roots_with_multiplicity(p: QPoly) -> list[tuple[AlgebraicNumber, int]]:
    """Complete complex root set of p with multiplicities.

    Each root carries the content-normalized irreducible factor it belongs to
    as its minimal polynomial; multiplicities sum to deg p.
    """
    if p.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no well-defined roots")
    out = []
    for fac, mult in factor_rational(p):
        for root in _isolate_irreducible(fac):
            out.append((root, mult))
    out.sort(key=lambda rm: (0 if rm[0].is_real else 1,
                             rm[0].box[0], rm[0].box[1], rm[0].box[2]))
    return out


# -- modulus decisions --------------------------------------------------------------


def _pair_product_poly(p: QPoly) -> QPoly:
    """Polynomial in z whose roots are all pairwise products of roots of p.

    Res_t(p(t), t^n p(z/t)), computed by evaluation and Lagrange interpolation;
    the degree in z is at most n^2 and the t-degree never degenerates because
    p(0) != 0 for irreducible p of degree >= 2.
    """
    from .qpoly import lagrange_interpolate

    n = p.degree
    samples = []
    z = 0
    while len(samples) < n * n + 1:
        zq = Fraction(z)
        # t^n p(z/t) at z = zq, highest-first construction
        g = QPoly([p.coeffs[i] * zq ** i for i in range(n, -1, -1)])
        samples.append((zq, QPoly.resultant(p, g)))
        z = -z if z > 0 else -z + 1
    return lagrange_interpolate(samples)


def modulus_equals(a: AlgebraicNumber, q) -> bool:
    """Decide exactly whether |a| = q for a rational q >= 0.

    Rational and real-irrational inputs are immediate. For complex a the
    candidate |a|^2 values are the roots of the pairwise-product resultant;
    equality with q^2 is certified by an exact zero test there, followed by
    box refinement until the remaining candidate roots are separated out.
    """
    q = _frac(q)
    if q < 0:
        raise ValueError("modulus comparison requires q >= 0")
    if a.is_rational:
        return abs(a.rational_value) == q
    if a.is_real:
        # an irrational real number never has rational modulus
        return False
    p = a.minpoly
    qsq = q * q
    if p.degree == 2:
        # the two roots are complex conjugates, so |a|^2 is the root product
        return p.coeffs[0] / p.coeffs[2] == qsq
    cand = _pair_product_poly(p)
    if cand(qsq) != 0:
        return False
    reduced = cand.square_free_part()
    others = reduced.exact_div(QPoly.linear_root(qsq))
    while True:
        lo, hi = a.modulus_squared_interval()
        if qsq < lo or qsq > hi:
            return False
        if others(lo) != 0 and others(hi) != 0 and others.count_real_roots(lo, hi) == 0:
            # |a|^2 is a root of `reduced` inside [lo, hi]; the only one left is q^2
            return True
        a = a.refine()


def modulus_compare(a: AlgebraicNumber, q) -> int:
    """Sign of |a| - q for rational q >= 0: -1, 0, or 1. Certified."""
    q = _frac(q)
    if modulus_equals(a, q):
        return 0
    qsq = q * q
    while True:
        lo, hi = a.modulus_squared_interval()
        if qsq < lo:
            return 1
        if qsq > hi:
            return -1
        a = a.refine()
