"""The Grothendieck ring of G/P in its four natural bases, with verifiers.

Everything here reduces to the localization model: structure constants come
from triangular expansion of pointwise products, coefficient extraction has
an independent pairing route through the fixed-point pushforward, and the
sign/positivity sweeps report violations as data rather than raising.
"""
from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field

from .errors import ConfigError, IntegrityError
from .laurent import LaurentPoly
from .model import EquivClass, SchubertModel
from .roots import ParabolicData, Weight, WeylElement

O_BASIS = "O"
IDEAL_BASIS = "IDEAL"
OMEGA_BASIS = "OMEGA"
OMEGA_BOUNDARY_BASIS = "OMEGA_BOUNDARY"
BASES = (O_BASIS, IDEAL_BASIS, OMEGA_BASIS, OMEGA_BOUNDARY_BASIS)


@dataclass(frozen=True)
class KClass:
    """An integer expansion vector over a chosen basis of K(G/P)."""

    basis: str
    coeffs: dict[WeylElement, int]
    parabolic: ParabolicData | None = None

    def coefficient(self, w: WeylElement) -> int:
        return self.coeffs.get(w, 0)

    def is_zero(self) -> bool:
        return not self.coeffs


@dataclass
class SignReport:
    """Outcome of a sign sweep; empty violations means the theorem holds."""

    group: str
    name: str
    parabolic: tuple[int, ...] | None
    checked: int
    violations: list[tuple]
    elapsed_ms: int

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class LineReport:
    """Outcome of the line-bundle identity suite for one (lambda, mu) pair."""

    group: str
    lam: Weight
    mu: Weight
    checks: list[tuple[str, int]] = field(default_factory=list)
    violations: list[tuple] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


class SchubertRing:
    """Ring operations and theorem verifiers over one localization model."""

    def __init__(self, model: SchubertModel):
        self.model = model
        self.group = model.group
        self.datum = model.datum
        self.dimension = model.dimension
        self._sc_memo: dict[tuple[int, int], dict[WeylElement, int]] = {}
        self._line_memo: dict[Weight, dict[WeylElement, dict[WeylElement, int]]] = {}
        self._basis_matrix_memo: dict[str, dict[WeylElement, dict[WeylElement, int]]] = {}

    # -- grading -----------------------------------------------------------

    def codim(self, w: WeylElement) -> int:
        return self.dimension - w.length

    def n_degree(self, u: WeylElement, v: WeylElement, w: WeylElement) -> int:
        """N(u, v; w) = codim X_w - codim X_u - codim X_v on the full flag variety."""
        return self.codim(w) - self.codim(u) - self.codim(v)

    # -- products and expansions --------------------------------------------

    def structure_constants(self, u: WeylElement, v: WeylElement) -> dict[WeylElement, int]:
        """Integer constants of [O_{X_u}] . [O_{X_v}] over the Schubert basis."""
        key = (u.index, v.index) if u.index <= v.index else (v.index, u.index)
        got = self._sc_memo.get(key)
        if got is not None:
            return got
        prod = self.model.schubert_class(u) * self.model.schubert_class(v)
        out = self.model.expand_in_schubert_basis(prod).specialized
        self._sc_memo[key] = out
        return out

    def o_basis_product(self, a: dict[WeylElement, int], b: dict[WeylElement, int]):
        """Product of two O-basis vectors using only integer structure constants."""
        out: dict[WeylElement, int] = {}
        for u, cu in a.items():
            for v, cv in b.items():
                for w, c in self.structure_constants(u, v).items():
                    n = out.get(w, 0) + cu * cv * c
                    if n:
                        out[w] = n
                    else:
                        del out[w]
        return out

    def to_equiv(self, kclass: KClass) -> EquivClass:
        if kclass.basis != O_BASIS:
            kclass = self.change_basis(kclass, O_BASIS)
        acc = EquivClass(self.model.rank, {})
        for w, c in kclass.coeffs.items():
            if c:
                acc = acc + self.model.schubert_class(w).scale(
                    LaurentPoly.one(self.model.rank) * c
                )
        return acc

    def expand(self, f: EquivClass) -> KClass:
        """O-basis expansion of a model class, specialized to integers."""
        return KClass(O_BASIS, dict(self.model.expand_in_schubert_basis(f).specialized))

    # -- the four bases ------------------------------------------------------

    def ideal_sheaf_class(self, w: WeylElement) -> KClass:
        """[O_{X_w}(-boundary)] = sum_{v <= w} (-1)^{l(w)-l(v)} [O_{X_v}].

        The alternating sum over the Bruhat interval is a design choice,
        not a quoted formula; the dual-basis identity pairing with the
        opposite ideal classes validates it loudly.
        """
        out = {}
        for v in self.group.elements:
            if v.length <= w.length and self.group.bruhat_leq(v, w):
                out[v] = 1 if (w.length - v.length) % 2 == 0 else -1
        return KClass(O_BASIS, out)

    def ideal_equiv(self, w: WeylElement) -> EquivClass:
        acc = EquivClass(self.model.rank, {})
        for v, c in self.ideal_sheaf_class(w).coeffs.items():
            term = self.model.schubert_class(v)
            acc = acc + (term if c == 1 else -term)
        return acc

    def dualizing_twist(self, f: EquivClass, codimension: int) -> EquivClass:
        """(-1)^codim . dual(f) . [omega_X]: the duality route to omega-classes."""
        out = f.dual() * self.model.canonical_class()
        return out if codimension % 2 == 0 else -out

    def omega_class(self, w: WeylElement) -> KClass:
        """[omega_{X_w}] expanded over the O-basis."""
        cls = self.dualizing_twist(self.model.schubert_class(w), self.codim(w))
        return self.expand(cls)

    def omega_boundary_class(self, w: WeylElement) -> KClass:
        """[omega_{X_w}(boundary)] expanded over the O-basis."""
        cls = self.dualizing_twist(self.ideal_equiv(w), self.codim(w))
        return self.expand(cls)

    def basis_matrix(self, basis: str) -> dict[WeylElement, dict[WeylElement, int]]:
        """O-basis expansions of the chosen basis, keyed by the basis label w."""
        if basis not in BASES:
            raise ConfigError(f"unknown basis {basis!r}")
        got = self._basis_matrix_memo.get(basis)
        if got is not None:
            return got
        rows: dict[WeylElement, dict[WeylElement, int]] = {}
        for w in self.group.elements:
            if basis == O_BASIS:
                rows[w] = {w: 1}
            elif basis == IDEAL_BASIS:
                rows[w] = dict(self.ideal_sheaf_class(w).coeffs)
            elif basis == OMEGA_BASIS:
                rows[w] = dict(self.omega_class(w).coeffs)
            else:
                rows[w] = dict(self.omega_boundary_class(w).coeffs)
        for w, row in rows.items():
            if row.get(w, 0) not in (1, -1):
                raise IntegrityError(f"basis {basis} is not unitriangular at {w!r}")
            for u in row:
                if not self.group.bruhat_leq(u, w):
                    raise IntegrityError(f"basis {basis} is not Bruhat-triangular")
        self._basis_matrix_memo[basis] = rows
        return rows

    def coords_in_basis(self, o_vector: dict[WeylElement, int], basis: str):
        """Coordinates of an O-basis vector in another basis (exact back-solve)."""
        rows = self.basis_matrix(basis)
        vec = dict(o_vector)
        out: dict[WeylElement, int] = {}
        for w in reversed(self.group.elements):
            c = vec.get(w, 0)
            if c == 0:
                continue
            d = rows[w][w]
            q = c // d
            if q * d != c:
                raise IntegrityError("basis change produced a non-integer coordinate")
            out[w] = q
            for u, m in rows[w].items():
                n = vec.get(u, 0) - q * m
                if n:
                    vec[u] = n
                else:
                    vec.pop(u, None)
        if vec:
            raise IntegrityError("basis change left a residual")
        return out

    def change_basis(self, kclass: KClass, target: str) -> KClass:
        if kclass.basis == target:
            return kclass
        rows = self.basis_matrix(kclass.basis)
        o_vec: dict[WeylElement, int] = {}
        for w, c in kclass.coeffs.items():
            for u, m in rows[w].items():
                n = o_vec.get(u, 0) + c * m
                if n:
                    o_vec[u] = n
                else:
                    del o_vec[u]
        if target == O_BASIS:
            return KClass(O_BASIS, o_vec, kclass.parabolic)
        return KClass(target, self.coords_in_basis(o_vec, target), kclass.parabolic)

    # -- pairing and extraction ------------------------------------------------

    def pairing(self, a, b) -> int:
        """chi(a . b); accepts model classes or O-basis K-classes."""
        fa = a if isinstance(a, EquivClass) else self.to_equiv(a)
        fb = b if isinstance(b, EquivClass) else self.to_equiv(b)
        return self.model.euler_characteristic(fa * fb)

    def extract_coefficients_via_pairing(self, f: EquivClass) -> dict[WeylElement, int]:
        """Schubert coefficients through chi(f . xi_w); cross-checked against
        the triangular expansion, raising on any mismatch."""
        out = {}
        for w in self.group.elements:
            c = self.model.euler_characteristic(f * self.model.opposite_ideal_class(w))
            if c:
                out[w] = c
        expanded = self.model.expand_in_schubert_basis(f).specialized
        if out != expanded:
            raise IntegrityError("pairing and expansion routes disagree")
        return out

    # -- geometric classes ---------------------------------------------------

    def richardson_class(self, v: WeylElement, w: WeylElement) -> KClass:
        """[O_{X^v intersect X_w}]; the zero class when v is not below w."""
        prod = self.model.opposite_schubert_class(v) * self.model.schubert_class(w)
        return self.expand(prod)

    def line_bundle_coeffs(self, v: WeylElement, lam) -> dict[WeylElement, int]:
        """Coefficients of [L_{X_v}(lam)] over the Schubert basis."""
        table = self._line_table(tuple(lam))
        return dict(table[v])

    def _line_table(self, lam: Weight):
        got = self._line_memo.get(lam)
        if got is not None:
            return got
        lclass = self.model.line_bundle_class(lam)
        table = {}
        for v in self.group.elements:
            prod = lclass * self.model.schubert_class(v)
            table[v] = self.model.expand_in_schubert_basis(prod).specialized
        self._line_memo[lam] = table
        return table

    # -- parabolic calculus -----------------------------------------------------

    def parabolic_dimension(self, pdata: ParabolicData) -> int:
        return self.dimension - pdata.longest_in_parabolic.length

    def parabolic_structure_constants(
        self, pdata: ParabolicData, u: WeylElement, v: WeylElement
    ) -> dict[WeylElement, int]:
        """Constants of K(G/P) through the w_{o,P}-shift embedding into K(G/B).

        [O_{X_{uP}}] pulls back to [O_{X_{u w_{o,P}}}]; the product expansion
        must be supported on the embedded basis, and any stray coefficient is
        an integrity failure of the embedding.
        """
        reps = set(pdata.min_reps)
        if u not in reps or v not in reps:
            raise ConfigError("u and v must be minimal coset representatives")
        wop = pdata.longest_in_parabolic
        shifted = self.structure_constants(
            self.group.mul(u, wop), self.group.mul(v, wop)
        )
        wop_inv = self.group.inverse(wop)
        out = {}
        for x, c in shifted.items():
            w = self.group.mul(x, wop_inv)
            if w not in reps or x.length != w.length + wop.length:
                raise IntegrityError("coefficient outside parabolic image")
        for x, c in shifted.items():
            out[self.group.mul(x, wop_inv)] = c
        return out

    # -- verifiers ----------------------------------------------------------------

    def verify_normalization(self) -> SignReport:
        """chi([O_{X_w}]) = 1 by both the fixed-point and the expansion route."""
        t0 = time.monotonic()
        violations = []
        for w in self.group.elements:
            psi = self.model.schubert_class(w)
            lef = self.model.euler_characteristic(psi)
            exp = self.model.euler_characteristic_via_expansion(psi)
            if lef != 1 or exp != 1:
                violations.append((w.word, lef, exp))
        return SignReport(
            group=self.datum.label,
            name="normalization",
            parabolic=None,
            checked=len(self.group.elements),
            violations=violations,
            elapsed_ms=_ms(t0),
        )

    def verify_dual_bases(self) -> SignReport:
        """pairing([O_{X_u}], xi_w) = delta_{u,w} over all pairs."""
        t0 = time.monotonic()
        violations = []
        for u in self.group.elements:
            psi = self.model.schubert_class(u)
            for w in self.group.elements:
                got = self.model.euler_characteristic(
                    psi * self.model.opposite_ideal_class(w)
                )
                want = 1 if u.index == w.index else 0
                if got != want:
                    violations.append((u.word, w.word, got, want))
        n = len(self.group.elements)
        return SignReport(
            group=self.datum.label,
            name="dual-bases",
            parabolic=None,
            checked=n * n,
            violations=violations,
            elapsed_ms=_ms(t0),
        )

    def verify_alternating_signs(
        self, parabolic: ParabolicData | None = None, jobs: int = 1
    ) -> SignReport:
        """(-1)^N(u,v;w) c_{u,v}^w >= 0 and c = 0 when N < 0, over all triples."""
        t0 = time.monotonic()
        if parabolic is None:
            labels = list(self.group.elements)
            dim = self.dimension
            codim = {w: dim - w.length for w in labels}
            constants = lambda u, v: self.structure_constants(u, v)
        else:
            labels = list(parabolic.min_reps)
            dim = self.parabolic_dimension(parabolic)
            codim = {w: dim - w.length for w in labels}
            constants = lambda u, v: self.parabolic_structure_constants(parabolic, u, v)
        pairs = [
            (u, v)
            for i, u in enumerate(labels)
            for v in labels[i:]
        ]
        if jobs > 1 and parabolic is None:
            tables = _parallel_structure_constants(self, pairs, jobs)
        else:
            tables = [constants(u, v) for u, v in pairs]
        violations = []
        for (u, v), cs in zip(pairs, tables):
            for w in labels:
                c = cs.get(w, 0)
                n = codim[w] - codim[u] - codim[v]
                if n < 0 and c != 0:
                    violations.append((u.word, v.word, w.word, c, n))
                elif c and (c > 0) != (n % 2 == 0):
                    violations.append((u.word, v.word, w.word, c, n))
        size = len(labels)
        return SignReport(
            group=self.datum.label,
            name="signs",
            parabolic=parabolic.subset if parabolic else None,
            checked=size * size * size,
            violations=violations,
            elapsed_ms=_ms(t0),
        )

    def verify_richardson_signs(self) -> SignReport:
        """Sign alternation and omega-basis nonnegativity for X^v intersect X_w."""
        t0 = time.monotonic()
        violations = []
        checked = 0
        group = self.group
        for w in group.elements:
            for v in group.elements:
                if not group.bruhat_leq(v, w):
                    prod = self.model.opposite_schubert_class(v) * self.model.schubert_class(w)
                    if prod.restrictions:
                        violations.append((v.word, w.word, "nonzero-empty-intersection"))
                    continue
                checked += 1
                dim_y = w.length - v.length
                prod = self.model.opposite_schubert_class(v) * self.model.schubert_class(w)
                coeffs = self.model.expand_in_schubert_basis(prod).specialized
                for u, c in coeffs.items():
                    sign_ok = (c > 0) == ((dim_y - u.length) % 2 == 0)
                    if not sign_ok:
                        violations.append((v.word, w.word, u.word, c, dim_y - u.length))
                omega_y = self.dualizing_twist(prod, v.length + self.codim(w))
                coords = self.coords_in_basis(
                    self.model.expand_in_schubert_basis(omega_y).specialized, OMEGA_BASIS
                )
                for u, c in coords.items():
                    if c < 0:
                        violations.append((v.word, w.word, u.word, c, "omega-basis"))
        return SignReport(
            group=self.datum.label,
            name="richardson",
            parabolic=None,
            checked=checked,
            violations=violations,
            elapsed_ms=_ms(t0),
        )

    def verify_line_identities(self, lam, mu) -> LineReport:
        """The line-bundle coefficient identity suite for one (lambda, mu) pair."""
        t0 = time.monotonic()
        lam = tuple(lam)
        mu = tuple(mu)
        group = self.group
        datum = self.datum
        w_o = group.w_o
        report = LineReport(group=datum.label, lam=lam, mu=mu)
        neg = lambda x: tuple(-c for c in x)
        add = lambda x, y: tuple(a + b for a, b in zip(x, y))

        t_lam = self._line_table(lam)
        t_mu = self._line_table(mu)
        t_sum = self._line_table(add(lam, mu))

        count = 0
        for v in group.elements:
            row = t_lam[v]
            if row.get(v, 0) != 1:
                report.violations.append(("diagonal", v.word, lam, row.get(v, 0)))
            for w, c in row.items():
                count += 1
                if c and not group.bruhat_leq(w, v):
                    report.violations.append(("triangular", v.word, w.word, lam, c))
        report.checks.append(("triangularity", count))

        # duality: c_v^w(-lam) = (-1)^{l(v)-l(w)} c_{w_o w}^{w_o v}(lam).
        # Serre duality on the intersection variety forces the sign factor;
        # exhaustive exact computation confirms this signed form and refutes
        # the sign-free w_o-twisted variant.
        t_nl = self._line_table(neg(lam))
        count = 0
        for v in group.elements:
            for w in group.elements:
                count += 1
                lhs = t_nl[v].get(w, 0)
                sign = 1 if (v.length - w.length) % 2 == 0 else -1
                rhs = sign * t_lam[group.mul(w_o, w)].get(group.mul(w_o, v), 0)
                if lhs != rhs:
                    report.violations.append(("duality", v.word, w.word, lhs, rhs))
        report.checks.append(("duality", count))

        count = 0
        for v in group.elements:
            for w in group.elements:
                count += 1
                want = t_sum[v].get(w, 0)
                got = sum(
                    c_x * t_mu[x].get(w, 0) for x, c_x in t_lam[v].items()
                )
                if got != want:
                    report.violations.append(("additivity", v.word, w.word, got, want))
        report.checks.append(("additivity", count))

        # c_v^w(-omega_i) = -c_{w_o s_i, v}^w for v != w, and its dual form
        # c_v^w(omega_i) = (-1)^{l(v)-l(w)-1} c_{w_o s_i, w_o w}^{w_o v},
        # obtained by composing the minus form with the signed duality above.
        count = 0
        for i in range(1, datum.rank + 1):
            omega_i = datum.fundamental_weight(i)
            t_nw = self._line_table(neg(omega_i))
            t_pw = self._line_table(omega_i)
            wosi = group.right_mul(w_o, i)
            for v in group.elements:
                sc_neg = self.structure_constants(wosi, v)
                for w in group.elements:
                    if w.index == v.index:
                        continue
                    count += 2
                    if t_nw[v].get(w, 0) != -sc_neg.get(w, 0):
                        report.violations.append(
                            ("lemma-minus", i, v.word, w.word,
                             t_nw[v].get(w, 0), sc_neg.get(w, 0))
                        )
                    sign = -1 if (v.length - w.length) % 2 == 0 else 1
                    rhs = sign * self.structure_constants(
                        wosi, group.mul(w_o, w)
                    ).get(group.mul(w_o, v), 0)
                    if t_pw[v].get(w, 0) != rhs:
                        report.violations.append(
                            ("lemma-plus", i, v.word, w.word, t_pw[v].get(w, 0), rhs)
                        )
        report.checks.append(("fundamental-weight-lemma", count))

        count = 0
        for weight, table in ((lam, t_lam), (mu, t_mu), (add(lam, mu), t_sum)):
            if not datum.is_dominant(weight):
                continue
            for v in group.elements:
                for w, c in table[v].items():
                    count += 1
                    if c < 0:
                        report.violations.append(("dominant", weight, v.word, w.word, c))
        report.checks.append(("dominant-nonnegativity", count))

        count = 0
        for i in range(1, datum.rank + 1):
            omega_i = datum.fundamental_weight(i)
            got = self.model.expand_in_schubert_basis(
                self.model.line_bundle_class(neg(omega_i))
            ).specialized
            want = {w_o: 1, group.right_mul(w_o, i): -1}
            count += 1
            if got != want:
                report.violations.append(
                    ("chevalley", i, sorted((w.word, c) for w, c in got.items()))
                )
        report.checks.append(("chevalley", count))

        report.elapsed_ms = _ms(t0)
        return report


def _ms(t0: float) -> int:
    return int((time.monotonic() - t0) * 1000)


# Shared state for fork-based parallel sweeps; set only around Pool usage.
_PARALLEL_RING: SchubertRing | None = None


def _constants_worker(chunk):
    ring = _PARALLEL_RING
    out = []
    for u_idx, v_idx in chunk:
        u = ring.group.elements[u_idx]
        v = ring.group.elements[v_idx]
        cs = ring.structure_constants(u, v)
        out.append({w.index: c for w, c in cs.items()})
    return out


def _parallel_structure_constants(ring: SchubertRing, pairs, jobs: int):
    global _PARALLEL_RING
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        # no fork on this platform; the sweep stays correct, just serial
        return [ring.structure_constants(u, v) for u, v in pairs]
    idx_pairs = [(u.index, v.index) for u, v in pairs]
    chunks = [idx_pairs[i::jobs] for i in range(jobs)]
    _PARALLEL_RING = ring
    try:
        with ctx.Pool(jobs) as pool:
            results = pool.map(_constants_worker, chunks)
    finally:
        _PARALLEL_RING = None
    merged: dict[tuple[int, int], dict] = {}
    for chunk, tables in zip(chunks, results):
        for (u_idx, v_idx), table in zip(chunk, tables):
            merged[(u_idx, v_idx)] = {
                ring.group.elements[w_idx]: c for w_idx, c in table.items()
            }
    out = []
    for u, v in pairs:
        table = merged[(u.index, v.index)]
        key = (u.index, v.index)
        ring._sc_memo[key] = table
        out.append(table)
    return out
