"""Univariate Laurent polynomials over the integers and exact rational sums.

This is the carrier of the fixed-point pushforward: each fixed point
contributes numerator/denominator in one variable t, the exact sum of the
fractions must collapse to a Laurent polynomial, and its value at t = 1
is the integer the geometry asks for.  gcd reduction uses the primitive
pseudo-remainder sequence, so no fraction arithmetic is needed.
"""
from __future__ import annotations

from math import gcd

from .errors import IntegrityError, NotDivisibleError, PoleAtOneError


class UniPoly:
    """Sparse univariate Laurent polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def one(cls) -> "UniPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "UniPoly":
        return cls({degree: coeff})

    @classmethod
    def one_minus_power(cls, n: int) -> "UniPoly":
        """1 - t^n (for n = 0 this is the zero polynomial)."""
        if n == 0:
            return cls()
        return cls({0: 1, n: -1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*t^{e}" for e, c in sorted(self.terms.items()))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            n = out.get(e, 0) + c
            if n:
                out[e] = n
            else:
                del out[e]
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly({e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                n = out.get(e, 0) + ca * cb
                if n:
                    out[e] = n
                else:
                    del out[e]
        return UniPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "UniPoly":
        """Multiply by t^k."""
        return UniPoly({e + k: c for e, c in self.terms.items()})

    def min_degree(self) -> int:
        return min(self.terms)

    def degree(self) -> int:
        return max(self.terms)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def eval_at_one(self) -> int:
        return sum(self.terms.values())

    def to_dense(self) -> list[int]:
        """Coefficient list, constant term first; requires nonnegative degrees."""
        if not self.terms:
            return []
        if self.min_degree() < 0:
            raise ValueError("negative exponents present")
        out = [0] * (self.degree() + 1)
        for e, c in self.terms.items():
            out[e] = c
        return out

    @classmethod
    def from_dense(cls, coeffs: list[int]) -> "UniPoly":
        return cls({e: c for e, c in enumerate(coeffs) if c != 0})


def _strip(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _content(coeffs: list[int]) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    return g


def _primitive(coeffs: list[int]) -> list[int]:
    g = _content(coeffs)
    if g in (0, 1):
        return coeffs
    return [c // g for c in coeffs]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Primitive pseudo-remainder sequence step (dense, low-first lists)."""
    da, db = len(a) - 1, len(b) - 1
    lc = b[-1]
    r = [c * (lc ** (da - db + 1)) for c in a]
    for k in range(da - db, -1, -1):
        top = r[db + k]
        if top % lc:
            raise AssertionError("pseudo-division invariant broken")
        q = top // lc
        if q:
            for j in range(db + 1):
                r[j + k] -= q * b[j]
    return _strip(r)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """gcd over Z[t] of two genuine polynomials, primitive with positive lead."""
    da = _strip(a.to_dense())
    db = _strip(b.to_dense())
    if not da:
        out = db
    elif not db:
        out = da
    else:
        ca, cb = _content(da), _content(db)
        cg = gcd(ca, cb)
        da = _primitive(da)
        db = _primitive(db)
        if len(da) < len(db):
            da, db = db, da
        while db:
            r = _primitive(_prem(da, db))
            da, db = db, r
        out = [c * cg for c in da]
    if out and out[-1] < 0:
        out = [-c for c in out]
    return UniPoly.from_dense(out)


def poly_divexact(a: UniPoly, b: UniPoly) -> UniPoly:
    """Exact quotient of genuine polynomials; raises if not exact."""
    da = a.to_dense()
    db = _strip(b.to_dense())
    if not db:
        raise ZeroDivisionError("division by zero polynomial")
    if not _strip(list(da)):
        return UniPoly.zero()
    lc = db[-1]
    out = [0] * (len(da) - len(db) + 1)
    r = list(da)
    for k in range(len(out) - 1, -1, -1):
        top = r[len(db) - 1 + k]
        q, residue = divmod(top, lc)
        if residue:
            raise NotDivisibleError("univariate division is not exact")
        out[k] = q
        if q:
            for j in range(len(db)):
                r[j + k] -= q * db[j]
    if any(r):
        raise NotDivisibleError("univariate division is not exact")
    return UniPoly.from_dense(out)


class UniRational:
    """A reduced fraction of univariate Laurent polynomials.

    Normal form: the denominator is a genuine polynomial with nonzero
    constant term, positive leading coefficient and content coprime to the
    numerator's; the numerator may keep negative exponents.  Under this
    normal form the fraction is a Laurent polynomial iff den == 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = UniPoly.zero()
            self.den = UniPoly.one()
            return
        k = den.min_degree()
        if k:
            den = den.shift(-k)
            num = num.shift(-k)
        shift = min(num.min_degree(), 0)
        num_poly = num.shift(-shift)
        g = poly_gcd(num_poly, den)
        if g.degree() > 0 or g.content() != 1:
            num_poly = poly_divexact(num_poly, g)
            den = poly_divexact(den, g)
        lead = den.terms[den.degree()]
        if lead < 0:
            num_poly = -num_poly
            den = -den
        self.num = num_poly.shift(shift)
        self.den = den

    @classmethod
    def zero(cls) -> "UniRational":
        return cls(UniPoly.zero(), UniPoly.one())

    def __add__(self, other: "UniRational") -> "UniRational":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        g = poly_gcd(self.den, other.den)
        d1 = poly_divexact(self.den, g)
        d2 = poly_divexact(other.den, g)
        num = self.num * d2 + other.num * d1
        den = self.den * d2
        return UniRational(num, den)

    def is_laurent_polynomial(self) -> bool:
        return self.den == UniPoly.one()

    def value_at_one(self) -> int:
        if not self.is_laurent_polynomial():
            raise PoleAtOneError("fraction did not reduce to a Laurent polynomial")
        return self.num.eval_at_one()

    def __repr__(self) -> str:
        return f"({self.num!r}) / ({self.den!r})"


def sum_and_evaluate_at_one(terms) -> int:
    """Exact sum of (numerator, denominator) pairs, evaluated at t = 1.

    The reduced sum must be a Laurent polynomial; a reduced denominator
    vanishing at t = 1 raises PoleAtOneError, any other non-unit
    denominator raises IntegrityError.
    """
    acc = UniRational.zero()
    for num, den in terms:
        if num.is_zero():
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            continue
        acc = acc + UniRational(num, den)
    if acc.is_laurent_polynomial():
        return acc.num.eval_at_one()
    if acc.den.eval_at_one() == 0:
        raise PoleAtOneError("localization sum has a pole at t = 1")
    raise IntegrityError("localization sum is not a Laurent polynomial")
