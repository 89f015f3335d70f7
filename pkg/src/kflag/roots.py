"""Root data, Weyl groups, Bruhat order, and parabolic coset combinatorics.

Weights are integer vectors in the fundamental-weight basis, so the simple
root alpha_j is column j of the Cartan matrix and every reflection is an
integer-linear map; no irrational arithmetic occurs anywhere.

Simple reflections are indexed 1..rank throughout the public surface
(words, parabolic subsets), matching the usual s_1, ..., s_r labelling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import BoundExceededError, ConfigError, IntegrityError

Weight = tuple[int, ...]

#: hard cap on the positive-root closure; generous for every finite type
_ROOT_CLOSURE_CAP = 2048


def _chain_cartan(rank: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    return a


def cartan_matrix(type_letter: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Standard Cartan matrix for a simple type, A[i][j] = <alpha_j, alpha_i^vee>."""
    t = type_letter.upper()
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if t not in valid or not valid[t]:
        raise ConfigError(f"invalid type/rank pair ({type_letter!r}, {rank})")
    if t in ("A", "B", "C", "F"):
        a = _chain_cartan(rank)
        if t == "B":
            a[rank - 1][rank - 2] = -2
        elif t == "C":
            a[rank - 2][rank - 1] = -2
        elif t == "F":
            a[2][1] = -2
    elif t == "D":
        a = _chain_cartan(rank - 1)
        for row in a:
            row.append(0)
        a.append([0] * rank)
        a[rank - 1][rank - 1] = 2
        a[rank - 3][rank - 1] = -1
        a[rank - 1][rank - 3] = -1
    elif t == "E":
        # chain 1-3-4-5-...-rank with node 2 attached to node 4
        a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        chain = [1, 3, 4, 5, 6, 7, 8][: rank - 1]
        for x, y in zip(chain, chain[1:]):
            a[x - 1][y - 1] = a[y - 1][x - 1] = -1
        a[1][3] = a[3][1] = -1
    else:  # G
        a = [[2, -1], [-3, 2]]
    return tuple(tuple(row) for row in a)


def _validate_cartan(a: tuple[tuple[int, ...], ...]) -> None:
    r = len(a)
    if r == 0 or any(len(row) != r for row in a):
        raise ConfigError("Cartan matrix must be square and nonempty")
    for i in range(r):
        for j in range(r):
            if not isinstance(a[i][j], int):
                raise ConfigError("Cartan entries must be integers")
            if i == j and a[i][j] != 2:
                raise ConfigError("Cartan diagonal entries must equal 2")
            if i != j and a[i][j] > 0:
                raise ConfigError("off-diagonal Cartan entries must be <= 0")
            if i != j and (a[i][j] == 0) != (a[j][i] == 0):
                raise ConfigError("Cartan zero pattern must be symmetric")
    # finite type <=> all leading principal minors positive
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for k in range(r):
        pivot = m[k][k]
        if pivot == 0:
            # full expansion fallback for a zero pivot: permute a nonzero row up
            swap = next((t for t in range(k + 1, r) if m[t][k] != 0), None)
            if swap is None:
                raise ConfigError("Cartan matrix is not of finite type")
            m[k], m[swap] = m[swap], m[k]
            det = -det
            pivot = m[k][k]
        det *= pivot
        if det <= 0:
            raise ConfigError("Cartan matrix is not of finite type")
        for t in range(k + 1, r):
            f = m[t][k] / pivot
            for j in range(k, r):
                m[t][j] -= f * m[k][j]


def _symmetrizer(a: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Smallest positive integers d with d_i * A[i][j] symmetric."""
    r = len(a)
    d: list[Fraction | None] = [None] * r
    for start in range(r):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if i == j or a[i][j] == 0:
                    continue
                dj = d[i] * Fraction(a[i][j], a[j][i])
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    raise ConfigError("Cartan matrix is not symmetrizable")
    scale = lcm(*(x.denominator for x in d))
    out = tuple(int(x * scale) for x in d)
    g = 0
    for x in out:
        g = _gcd(g, x)
    return tuple(x // g for x in out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _close_positive_roots(a: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    """All positive roots in simple-root coordinates, by reflection closure."""
    r = len(a)
    simples = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        fresh = []
        for c in frontier:
            for i in range(r):
                pairing = sum(a[i][j] * c[j] for j in range(r))
                c2 = list(c)
                c2[i] -= pairing
                c2t = tuple(c2)
                if min(c2t) >= 0 and c2t not in seen:
                    seen.add(c2t)
                    fresh.append(c2t)
        if len(seen) > _ROOT_CLOSURE_CAP:
            raise BoundExceededError("positive-root closure exceeded cap; not finite type?")
        frontier = fresh
    return sorted(seen, key=lambda c: (sum(c), c))


@dataclass(frozen=True)
class RootDatum:
    """A finite root system with its weight-lattice combinatorics.

    ``positive_roots`` holds fundamental-weight coordinates while
    ``positive_root_coords`` holds the same roots in simple-root
    coordinates (used for heights and coroot pairings); both are sorted
    by increasing height.
    """

    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Weight, ...]
    positive_root_coords: tuple[tuple[int, ...], ...]
    rho: Weight
    symmetrizer: tuple[int, ...]
    label: str

    def simple_root(self, i: int) -> Weight:
        """Simple root alpha_i in fundamental-weight coordinates (i is 1-based)."""
        return tuple(self.cartan[k][i - 1] for k in range(self.rank))

    def reflect(self, i: int, lam: Weight) -> Weight:
        """s_i(lam) = lam - lam_i * alpha_i."""
        c = lam[i - 1]
        if c == 0:
            return lam
        col = i - 1
        return tuple(lam[k] - c * self.cartan[k][col] for k in range(self.rank))

    def act(self, word: tuple[int, ...], lam: Weight) -> Weight:
        """Apply s_{i1} s_{i2} ... s_{ik} to lam (rightmost letter acts first)."""
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def is_dominant(self, lam: Weight) -> bool:
        return all(c >= 0 for c in lam)

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def zero_weight(self) -> Weight:
        return (0,) * self.rank

    def height_pairing(self, lam: Weight) -> int:
        """Pairing of lam with the sum of all simple coroots (= height on roots)."""
        return sum(lam)


def build_root_datum(type_letter: str, rank: int) -> RootDatum:
    """Root datum of a simple group from its (type, rank) pair."""
    a = cartan_matrix(type_letter, rank)
    return root_datum_from_cartan(a, label=f"{type_letter.upper()}{rank}")


def root_datum_from_cartan(a, label: str = "custom") -> RootDatum:
    """Root datum from an explicit Cartan matrix (finite type required)."""
    a = tuple(tuple(int(x) for x in row) for row in a)
    _validate_cartan(a)
    r = len(a)
    coords = _close_positive_roots(a)
    fund = tuple(
        tuple(sum(a[k][j] * c[j] for j in range(r)) for k in range(r)) for c in coords
    )
    return RootDatum(
        rank=r,
        cartan=a,
        positive_roots=fund,
        positive_root_coords=tuple(coords),
        rho=(1,) * r,
        symmetrizer=_symmetrizer(a),
        label=label,
    )


def weyl_dimension(datum: RootDatum, lam: Weight) -> int:
    """Irreducible-representation dimension for dominant lam.

    prod over positive roots alpha of <lam+rho, alpha^vee> / <rho, alpha^vee>,
    written with the symmetrizer so that only integer data enters:
    <mu, alpha^vee> is proportional to sum_j m_j d_j mu_j for
    alpha = sum_j m_j alpha_j.
    """
    if len(lam) != datum.rank:
        raise ConfigError("weight has wrong length")
    d = datum.symmetrizer
    total = Fraction(1)
    for m in datum.positive_root_coords:
        num = sum(mj * dj * (lj + 1) for mj, dj, lj in zip(m, d, lam))
        den = sum(mj * dj for mj, dj in zip(m, d))
        total *= Fraction(num, den)
    if total.denominator != 1:
        raise IntegrityError(f"Weyl dimension is not integral for {lam}")
    return int(total)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, identified by its action on rho.

    ``word`` is the lexicographically-minimal reduced word (letters are
    1-based simple-reflection indices); ``key`` = w(rho) identifies the
    element uniquely because rho is regular.
    """

    index: int
    word: tuple[int, ...]
    length: int
    key: Weight

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        name = "*".join(f"s{i}" for i in self.word) if self.word else "e"
        return f"<{name}>"


class WeylGroup:
    """A finite Weyl group, fully enumerated with multiplication tables.

    Elements are sorted by (length, key); ``elements[0]`` is the identity
    and ``elements[-1]`` is the longest element.  All tables are built in
    the constructor; afterwards every query is read-only and safe to use
    concurrently (the Bruhat memo only ever inserts idempotent values).
    """

    def __init__(self, datum: RootDatum, max_size: int = 10000):
        self.datum = datum
        self._positive_set = frozenset(datum.positive_roots)
        records = self._enumerate(max_size)
        records.sort(key=lambda rec: (rec[1], rec[0]))
        by_key = {rec[0]: idx for idx, rec in enumerate(records)}
        r = datum.rank
        self._w_alpha = [rec[2] for rec in records]
        # left[i-1][w]: index of s_i * w, via key(s_i w) = s_i(key(w))
        self._left = [
            [by_key[datum.reflect(i, rec[0])] for rec in records] for i in range(1, r + 1)
        ]
        # right[i-1][w]: index of w * s_i, via key(w s_i) = key(w) - w(alpha_i)
        self._right = [
            [
                by_key[tuple(k - a for k, a in zip(rec[0], rec[2][i - 1]))]
                for rec in records
            ]
            for i in range(1, r + 1)
        ]
        lengths = [rec[1] for rec in records]
        words = self._canonical_words(records, lengths)
        self.elements: tuple[WeylElement, ...] = tuple(
            WeylElement(index=idx, word=words[idx], length=rec[1], key=rec[0])
            for idx, rec in enumerate(records)
        )
        self._by_key = {w.key: w for w in self.elements}
        self.identity = self.elements[0]
        self.w_o = self.elements[-1]
        if self.w_o.length != len(datum.positive_roots):
            raise IntegrityError("longest element length != number of positive roots")
        if self.w_o.key != tuple(-x for x in datum.rho):
            raise IntegrityError("w_o(rho) != -rho")
        self._bruhat_memo: dict[tuple[int, int], bool] = {}

    def _enumerate(self, max_size: int):
        datum = self.datum
        r = datum.rank
        rho = datum.rho
        simples = tuple(datum.simple_root(i) for i in range(1, r + 1))
        start = (rho, 0, simples)
        seen = {rho: start}
        frontier = [start]
        while frontier:
            fresh = []
            for key, length, w_alpha in frontier:
                for i in range(1, r + 1):
                    key2 = datum.reflect(i, key)
                    if key2 in seen:
                        continue
                    alpha2 = tuple(datum.reflect(i, a) for a in w_alpha)
                    rec = (key2, length + 1, alpha2)
                    seen[key2] = rec
                    fresh.append(rec)
                    if len(seen) > max_size:
                        raise BoundExceededError(
                            f"Weyl group exceeds the configured bound ({max_size})"
                        )
            frontier = fresh
        return list(seen.values())

    def _canonical_words(self, records, lengths):
        """Lexicographically-minimal reduced words via greedy left descents."""
        words: list[tuple[int, ...] | None] = [None] * len(records)
        words[0] = ()
        r = self.datum.rank
        for idx in range(1, len(records)):
            length = lengths[idx]
            for i in range(1, r + 1):
                down = self._left[i - 1][idx]
                if lengths[down] < length:
                    words[idx] = (i,) + words[down]
                    break
        return words

    # -- element access ------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def simple(self, i: int) -> WeylElement:
        if not 1 <= i <= self.datum.rank:
            raise ConfigError(f"simple reflection index {i} out of range")
        return self.elements[self._right[i - 1][0]]

    def from_word(self, word) -> WeylElement:
        """Element with the given (not necessarily reduced) word."""
        idx = 0
        for i in word:
            if not 1 <= i <= self.datum.rank:
                raise ConfigError(f"letter {i} out of range in word {list(word)}")
            idx = self._right[i - 1][idx]
        return self.elements[idx]

    def from_key(self, key: Weight) -> WeylElement:
        return self._by_key[key]

    # -- group operations ----------------------------------------------

    def mul(self, u: WeylElement, v: WeylElement) -> WeylElement:
        idx = u.index
        for i in v.word:
            idx = self._right[i - 1][idx]
        return self.elements[idx]

    def inverse(self, w: WeylElement) -> WeylElement:
        idx = 0
        for i in reversed(w.word):
            idx = self._right[i - 1][idx]
        return self.elements[idx]

    def right_mul(self, w: WeylElement, i: int) -> WeylElement:
        return self.elements[self._right[i - 1][w.index]]

    def left_mul(self, i: int, w: WeylElement) -> WeylElement:
        return self.elements[self._left[i - 1][w.index]]

    def root_image(self, w: WeylElement, i: int) -> Weight:
        """w(alpha_i) in fundamental-weight coordinates."""
        return self._w_alpha[w.index][i - 1]

    def has_right_descent(self, w: WeylElement, i: int) -> bool:
        """l(w s_i) < l(w), i.e. w(alpha_i) is a negative root."""
        return self._w_alpha[w.index][i - 1] not in self._positive_set

    def has_left_descent(self, w: WeylElement, i: int) -> bool:
        return self.elements[self._left[i - 1][w.index]].length < w.length

    def apply(self, w: WeylElement, lam: Weight) -> Weight:
        return self.datum.act(w.word, lam)

    def inversion_count(self, w: WeylElement) -> int:
        """Number of positive roots sent to negative roots (equals length)."""
        pos = self._positive_set
        return sum(
            1
            for beta in self.datum.positive_roots
            if self.apply(w, beta) not in pos
        )

    # -- Bruhat order ----------------------------------------------------

    def bruhat_leq(self, u: WeylElement, w: WeylElement) -> bool:
        """u <= w in Bruhat order, by the left-descent recursion."""
        return self._bruhat(u.index, w.index)

    def _bruhat(self, u_idx: int, w_idx: int) -> bool:
        if u_idx == w_idx or u_idx == 0:
            return True
        u = self.elements[u_idx]
        w = self.elements[w_idx]
        if u.length >= w.length:
            return False
        memo = self._bruhat_memo
        got = memo.get((u_idx, w_idx))
        if got is not None:
            return got
        i = next(
            i for i in range(1, self.datum.rank + 1) if self.has_left_descent(w, i)
        )
        sw = self._left[i - 1][w_idx]
        su = self._left[i - 1][u_idx]
        if self.elements[su].length < u.length:
            out = self._bruhat(su, sw)
        else:
            out = self._bruhat(u_idx, sw)
        memo[(u_idx, w_idx)] = out
        return out

    def bruhat_interval_below(self, w: WeylElement) -> tuple[WeylElement, ...]:
        return tuple(u for u in self.elements if self.bruhat_leq(u, w))

    # -- parabolic combinatorics ------------------------------------------

    def parabolic(self, subset) -> "ParabolicData":
        """Minimal coset representatives and data for the parabolic W_I."""
        idxs = sorted(set(int(i) for i in subset))
        for i in idxs:
            if not 1 <= i <= self.datum.rank:
                raise ConfigError(f"parabolic index {i} out of range")
        sub_idx = {0}
        frontier = [0]
        while frontier:
            fresh = []
            for idx in frontier:
                for i in idxs:
                    nxt = self._right[i - 1][idx]
                    if nxt not in sub_idx:
                        sub_idx.add(nxt)
                        fresh.append(nxt)
            frontier = fresh
        subgroup = tuple(self.elements[i] for i in sorted(sub_idx))
        longest = max(subgroup, key=lambda w: w.length)
        if sum(1 for w in subgroup if w.length == longest.length) != 1:
            raise IntegrityError("parabolic subgroup has no unique longest element")
        reps = tuple(
            w
            for w in self.elements
            if all(not self.has_right_descent(w, i) for i in idxs)
        )
        if len(reps) * len(subgroup) != len(self.elements):
            raise IntegrityError("coset representative count mismatch")
        return ParabolicData(
            subset=tuple(idxs),
            min_reps=reps,
            longest_in_parabolic=longest,
            subgroup=subgroup,
        )

    def coset_decompose(self, w: WeylElement, pdata: "ParabolicData"):
        """Unique factorization w = u * x with u in W^P, x in W_P, lengths adding."""
        x = self.identity
        cur = w
        changed = True
        while changed:
            changed = False
            for i in pdata.subset:
                if self.has_right_descent(cur, i):
                    cur = self.right_mul(cur, i)
                    x = self.mul(self.simple(i), x)
                    changed = True
                    break
        if cur.length + x.length != w.length:
            raise IntegrityError("coset factorization lengths do not add")
        return cur, x


@dataclass(frozen=True)
class ParabolicData:
    """Combinatorics of a standard parabolic subgroup W_I."""

    subset: tuple[int, ...]
    min_reps: tuple[WeylElement, ...]
    longest_in_parabolic: WeylElement
    subgroup: tuple[WeylElement, ...]
