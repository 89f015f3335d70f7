"""Fixed-point localization model of equivariant K-theory of G/B.

A class is a map from Weyl-group fixed points to exact Laurent polynomials
(its restrictions).  Schubert structure-sheaf classes are produced by the
divided-difference recursion from the point class; products, sums and the
duality involution act pointwise; the pushforward to a point is the
fixed-point sum, made computable in one variable by a generic cocharacter.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import (
    ConfigError,
    IntegrityError,
    NonzeroResidualError,
    NotDivisibleError,
    PoleAtOneError,
)
from .laurent import LaurentPoly
from .roots import RootDatum, WeylElement, WeylGroup
from .univariate import UniPoly, UniRational, poly_divexact


class EquivClass:
    """A localized equivariant K-class: fixed point -> Laurent polynomial."""

    __slots__ = ("rank", "restrictions")

    def __init__(self, rank: int, restrictions: dict[WeylElement, LaurentPoly]):
        self.rank = rank
        self.restrictions = {v: p for v, p in restrictions.items() if not p.is_zero()}

    def restriction(self, v: WeylElement) -> LaurentPoly:
        got = self.restrictions.get(v)
        return got if got is not None else LaurentPoly.zero(self.rank)

    @property
    def support(self) -> frozenset[WeylElement]:
        return frozenset(self.restrictions)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EquivClass)
            and self.rank == other.rank
            and self.restrictions == other.restrictions
        )

    def __hash__(self):
        raise TypeError("EquivClass is not hashable")

    def __add__(self, other: "EquivClass") -> "EquivClass":
        out = dict(self.restrictions)
        for v, p in other.restrictions.items():
            q = out.get(v)
            out[v] = p if q is None else q + p
        return EquivClass(self.rank, out)

    def __sub__(self, other: "EquivClass") -> "EquivClass":
        return self + (-other)

    def __neg__(self) -> "EquivClass":
        return EquivClass(self.rank, {v: -p for v, p in self.restrictions.items()})

    def __mul__(self, other: "EquivClass") -> "EquivClass":
        a, b = self.restrictions, other.restrictions
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for v, p in a.items():
            q = b.get(v)
            if q is not None:
                out[v] = p * q
        return EquivClass(self.rank, out)

    def scale(self, poly: LaurentPoly) -> "EquivClass":
        """Multiply every restriction by a fixed global character."""
        return EquivClass(self.rank, {v: p * poly for v, p in self.restrictions.items()})

    def dual(self) -> "EquivClass":
        """Pointwise involution e^lam -> e^(-lam): the duality involution."""
        return EquivClass(self.rank, {v: p.involute() for v, p in self.restrictions.items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{v!r}: {p!r}" for v, p in sorted(
            self.restrictions.items(), key=lambda t: t[0].index))
        return f"EquivClass({{{body}}})"


class ExpansionResult:
    """Expansion over the Schubert basis.

    ``coeffs`` are the equivariant coefficients (Laurent polynomials),
    ``specialized`` their integer values at 1; zero entries are omitted
    from both maps.
    """

    __slots__ = ("coeffs", "specialized")

    def __init__(self, coeffs: dict[WeylElement, LaurentPoly]):
        self.coeffs = coeffs
        self.specialized = {}
        for w, c in coeffs.items():
            n = c.eval_at_one()
            if n:
                self.specialized[w] = n


def kmul(a: EquivClass, b: EquivClass) -> EquivClass:
    return a * b


def kadd(a: EquivClass, b: EquivClass) -> EquivClass:
    return a + b


def kdual(a: EquivClass) -> EquivClass:
    return a.dual()


def weyl_act(group: WeylGroup, w: WeylElement, p: LaurentPoly) -> LaurentPoly:
    """Relabel exponents by w: e^lam -> e^{w(lam)} (a ring automorphism)."""
    return p.map_exponents(lambda e: group.apply(w, e))


class SchubertModel:
    """The localization model for one Weyl group, with all class tables.

    The Schubert restriction table is built once (here or injected from a
    cache) and never mutated afterwards, so a model can be shared freely
    across threads once constructed.
    """

    def __init__(self, group: WeylGroup, table: list[dict] | None = None):
        self.group = group
        self.datum: RootDatum = group.datum
        self.rank = self.datum.rank
        self.dimension = len(self.datum.positive_roots)
        self.cocharacter = _choose_cocharacter(self.datum)
        self._point = self._build_point_class()
        if table is None:
            self._schubert = self._build_schubert_table()
        else:
            self._schubert = [EquivClass(self.rank, dict(entry)) for entry in table]
            if len(self._schubert) != len(group.elements):
                raise IntegrityError("restriction table has wrong size")
        self._opposite: list[EquivClass | None] = [None] * len(group.elements)
        self._opposite_ideal: list[EquivClass | None] = [None] * len(group.elements)
        self._denominator_profiles: list[tuple[int, int, dict[int, int]] | None] = [
            None
        ] * len(group.elements)
        self._common_denominator: dict[int, int] | None = None
        self._cofactors: list[UniPoly | None] = [None] * len(group.elements)

    # -- class constructors -----------------------------------------------

    def point_class(self) -> EquivClass:
        """[O_{X_e}]: restriction prod_{alpha>0}(1 - e^alpha) at e, zero elsewhere."""
        return self._point

    def _build_point_class(self) -> EquivClass:
        p = LaurentPoly.one(self.rank)
        for alpha in self.datum.positive_roots:
            p = p * (LaurentPoly.one(self.rank) - LaurentPoly.monomial(alpha))
        return EquivClass(self.rank, {self.group.identity: p})

    def demazure(self, i: int, f: EquivClass) -> EquivClass:
        """Divided difference D_i in the localization model.

        (D_i f)(v) = (f(v) - e^{v(alpha_i)} f(v s_i)) / (1 - e^{v(alpha_i)}).
        The other self-consistent convention twists the argument by s_i v
        with weight e^{alpha_i}; this one is pinned by the support,
        diagonal, chi = 1 and dual-basis tests.
        """
        group = self.group
        one = LaurentPoly.one(self.rank)
        todo = set(f.restrictions)
        todo.update(group.right_mul(v, i) for v in f.restrictions)
        out = {}
        for v in todo:
            vsi = group.right_mul(v, i)
            weight = LaurentPoly.monomial(group.root_image(v, i))
            num = f.restriction(v) - weight * f.restriction(vsi)
            if num.is_zero():
                continue
            out[v] = num.exact_div(one - weight)
        return EquivClass(self.rank, out)

    def _build_schubert_table(self) -> list[EquivClass]:
        group = self.group
        table: list[EquivClass | None] = [None] * len(group.elements)
        table[0] = self._point
        for w in group.elements[1:]:
            # elements are sorted by length, so the shorter factor is ready
            i = w.word[-1]
            prev = group.right_mul(w, i)
            table[w.index] = self.demazure(i, table[prev.index])
        return table

    def schubert_class(self, w: WeylElement) -> EquivClass:
        """[O_{X_w}], built by the divided-difference recursion (memoized)."""
        return self._schubert[w.index]

    def opposite_schubert_class(self, w: WeylElement) -> EquivClass:
        """[O_{X^w}] = the w_o-translate of [O_{X_{w_o w}}]; support {v >= w}."""
        cached = self._opposite[w.index]
        if cached is not None:
            return cached
        group = self.group
        w_o = group.w_o
        src = self._schubert[group.mul(w_o, w).index]
        out = {}
        for v, p in src.restrictions.items():
            out[group.mul(w_o, v)] = weyl_act(group, w_o, p)
        cls = EquivClass(self.rank, out)
        self._opposite[w.index] = cls
        return cls

    def opposite_ideal_class(self, w: WeylElement) -> EquivClass:
        """[O_{X^w}(-boundary X^w)] = sum_{v >= w} (-1)^{l(v)-l(w)} [O_{X^v}]."""
        cached = self._opposite_ideal[w.index]
        if cached is not None:
            return cached
        group = self.group
        acc = EquivClass(self.rank, {})
        for v in group.elements:
            if v.length < w.length or not group.bruhat_leq(w, v):
                continue
            term = self.opposite_schubert_class(v)
            acc = acc + (term if (v.length - w.length) % 2 == 0 else -term)
        self._opposite_ideal[w.index] = acc
        return acc

    def line_bundle_class(self, lam) -> EquivClass:
        """[L(lam)]: restriction e^{-v(lam)} at the fixed point v.

        The sign is pinned by chi(L(m omega)) = m + 1 on the rank-one flag
        variety, i.e. dominant weights are the globally generated ones.
        """
        lam = tuple(lam)
        if len(lam) != self.rank:
            raise ConfigError("weight has wrong length")
        out = {}
        for v in self.group.elements:
            e = tuple(-x for x in self.group.apply(v, lam))
            out[v] = LaurentPoly.monomial(e)
        return EquivClass(self.rank, out)

    def canonical_class(self) -> EquivClass:
        """[omega_X] = [L(-2 rho)]."""
        return self.line_bundle_class(tuple(-2 * x for x in self.datum.rho))

    def constant_class(self, poly: LaurentPoly | None = None) -> EquivClass:
        """The unit [O_X] (optionally scaled by a global character)."""
        p = poly if poly is not None else LaurentPoly.one(self.rank)
        return EquivClass(self.rank, {v: p for v in self.group.elements})

    # -- pushforward and expansion ------------------------------------------

    def _denominator_profile(self, v: WeylElement) -> tuple[int, int, dict[int, int]]:
        """The fixed-point denominator prod_{alpha>0}(1 - t^<v(alpha), k>)
        normalized to sign * t^(-shift) * prod_h (1 - t^h)^{mult[h]} with h > 0,
        using (1 - t^-h) = -t^-h (1 - t^h)."""
        cached = self._denominator_profiles[v.index]
        if cached is not None:
            return cached
        k = self.cocharacter
        sign, shift = 1, 0
        mult: dict[int, int] = {}
        for alpha in self.datum.positive_roots:
            beta = self.group.apply(v, alpha)
            n = sum(x * ki for x, ki in zip(beta, k))
            if n < 0:
                sign = -sign
                shift += -n
                n = -n
            mult[n] = mult.get(n, 0) + 1
        out = (sign, shift, mult)
        self._denominator_profiles[v.index] = out
        return out

    def denominator(self, v: WeylElement) -> UniPoly:
        """The specialized fixed-point denominator as an expanded polynomial."""
        k = self.cocharacter
        out = UniPoly.one()
        for alpha in self.datum.positive_roots:
            beta = self.group.apply(v, alpha)
            n = sum(x * ki for x, ki in zip(beta, k))
            out = out * UniPoly.one_minus_power(n)
        return out

    def _common_denominator_profile(self) -> dict[int, int]:
        if self._common_denominator is None:
            common: dict[int, int] = {}
            for v in self.group.elements:
                _, _, mult = self._denominator_profile(v)
                for h, m in mult.items():
                    if m > common.get(h, 0):
                        common[h] = m
            self._common_denominator = common
        return self._common_denominator

    def _cofactor(self, v: WeylElement) -> UniPoly:
        """prod_h (1 - t^h)^(common_mult[h] - mult_v[h]), cached per point."""
        cached = self._cofactors[v.index]
        if cached is not None:
            return cached
        common = self._common_denominator_profile()
        _, _, mult = self._denominator_profile(v)
        out = UniPoly.one()
        for h, m in common.items():
            for _ in range(m - mult.get(h, 0)):
                out = out * UniPoly.one_minus_power(h)
        self._cofactors[v.index] = out
        return out

    def euler_characteristic(self, f: EquivClass) -> int:
        """chi via the fixed-point (Lefschetz) sum in the specialized variable.

        The sum is put over the factored common denominator prod (1-t^h)^M and
        the numerator is divided by each binomial factor exactly; the factored
        form avoids generic gcd reduction while staying an exact
        rational-function computation.
        """
        k = self.cocharacter
        num = UniPoly.zero()
        for v, p in f.restrictions.items():
            pv = p.specialize(k)
            if pv.is_zero():
                continue
            sign, shift, _ = self._denominator_profile(v)
            term = pv.shift(shift) * self._cofactor(v)
            num = num + (term if sign > 0 else -term)
        if num.is_zero():
            return 0
        num = num.shift(-num.min_degree())
        common = self._common_denominator_profile()
        factors = [h for h, m in sorted(common.items()) for _ in range(m)]
        for idx, h in enumerate(factors):
            try:
                num = poly_divexact(num, UniPoly.one_minus_power(h))
            except NotDivisibleError:
                self._classify_pole(num, factors[idx:])
        return num.eval_at_one()

    @staticmethod
    def _classify_pole(num: UniPoly, remaining: list[int]):
        den = UniPoly.one()
        for h in remaining:
            den = den * UniPoly.one_minus_power(h)
        frac = UniRational(num, den)
        if frac.den.eval_at_one() == 0:
            raise PoleAtOneError("localization sum has a pole at t = 1")
        raise IntegrityError("localization sum is not a Laurent polynomial")

    def euler_characteristic_via_expansion(self, f: EquivClass) -> int:
        """chi as the sum of specialized Schubert-basis coefficients."""
        return sum(self.expand_in_schubert_basis(f).specialized.values())

    def expand_in_schubert_basis(self, f: EquivClass) -> ExpansionResult:
        """Triangular back-substitution from the top of the Bruhat order.

        Every exact division must succeed and the residual must vanish;
        both failures mean the class is outside the span (or a convention
        bug) and raise.
        """
        residual = dict(f.restrictions)
        coeffs: dict[WeylElement, LaurentPoly] = {}
        for w in reversed(self.group.elements):
            rv = residual.get(w)
            if rv is None or rv.is_zero():
                residual.pop(w, None)
                continue
            psi = self._schubert[w.index]
            c = rv.exact_div(psi.restriction(w))
            coeffs[w] = c
            for v, pv in psi.restrictions.items():
                n = residual.get(v, LaurentPoly.zero(self.rank)) - c * pv
                if n.is_zero():
                    residual.pop(v, None)
                else:
                    residual[v] = n
        if residual:
            raise NonzeroResidualError("expansion left a nonzero residual")
        return ExpansionResult(coeffs)


def _choose_cocharacter(datum: RootDatum) -> tuple[int, ...]:
    """A cocharacter pairing non-trivially with every root.

    The default is the height functional: the integer vector k solving
    A^T k = c * (1, ..., 1) pairs every root beta to c * height(beta) != 0,
    and keeps specialized degrees at root-height scale.  If a pathological
    explicit matrix ever produced a collision, fall back to powers of a
    large base (above twice the maximal root height times the group
    diameter), growing the base until every root pairs to a nonzero
    integer.
    """
    k = _height_cocharacter(datum)
    if _cocharacter_valid(datum, k):
        return k
    max_height = max(sum(c) for c in datum.positive_root_coords)
    base = 2 * max_height * max(2 * len(datum.positive_roots), 1) + 1
    while True:
        k = tuple(base**j for j in range(1, datum.rank + 1))
        if _cocharacter_valid(datum, k):
            return k
        base += 1


def _height_cocharacter(datum: RootDatum) -> tuple[int, ...]:
    """Solve A^T k = c * ones over the rationals and clear denominators."""
    r = datum.rank
    m = [[Fraction(datum.cartan[j][i]) for j in range(r)] for i in range(r)]
    rhs = [Fraction(1)] * r
    for col in range(r):
        pivot = next(row for row in range(col, r) if m[row][col] != 0)
        m[col], m[pivot] = m[pivot], m[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        rhs[col] = rhs[col] * inv
        for row in range(r):
            if row != col and m[row][col] != 0:
                f = m[row][col]
                m[row] = [a - f * b for a, b in zip(m[row], m[col])]
                rhs[row] = rhs[row] - f * rhs[col]
    scale = lcm(*(x.denominator for x in rhs))
    return tuple(int(x * scale) for x in rhs)


def _cocharacter_valid(datum: RootDatum, k: tuple[int, ...]) -> bool:
    return all(
        sum(x * ki for x, ki in zip(beta, k)) != 0 for beta in datum.positive_roots
    )
