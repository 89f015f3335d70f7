"""Root data, Weyl group enumeration, Bruhat order, parabolic combinatorics."""
from __future__ import annotations

import random

import pytest

from kflag import (
    BoundExceededError,
    ConfigError,
    WeylGroup,
    build_root_datum,
    root_datum_from_cartan,
    weyl_dimension,
)

POSITIVE_ROOT_COUNTS = {
    ("A", 1): 1,
    ("A", 2): 3,
    ("A", 3): 6,
    ("A", 4): 10,
    ("B", 2): 4,
    ("B", 3): 9,
    ("C", 3): 9,
    ("D", 4): 12,
    ("F", 4): 24,
    ("G", 2): 6,
}

WEYL_ORDERS = {
    ("A", 1): 2,
    ("A", 2): 6,
    ("A", 3): 24,
    ("B", 2): 8,
    ("B", 3): 48,
    ("C", 3): 48,
    ("D", 4): 192,
    ("G", 2): 12,
}


def test_rank_one_forced():
    d = build_root_datum("A", 1)
    assert d.cartan == ((2,),)
    assert d.positive_roots == ((2,),)


def test_a2_positive_root_closure():
    d = build_root_datum("A", 2)
    # alpha1, alpha2, alpha1+alpha2 in simple-root coordinates
    assert set(d.positive_root_coords) == {(1, 0), (0, 1), (1, 1)}


@pytest.mark.parametrize("letter,rank", sorted(POSITIVE_ROOT_COUNTS))
def test_positive_root_counts(letter, rank):
    d = build_root_datum(letter, rank)
    assert len(d.positive_roots) == POSITIVE_ROOT_COUNTS[(letter, rank)]


def test_invalid_type_rank_pairs():
    for letter, rank in [("A", 0), ("B", 1), ("E", 5), ("F", 3), ("G", 3), ("X", 2)]:
        with pytest.raises(ConfigError):
            build_root_datum(letter, rank)


def test_explicit_cartan_matrix_accepted():
    d = root_datum_from_cartan([[2, -1], [-1, 2]])
    assert len(d.positive_roots) == 3


def test_affine_cartan_rejected():
    # affine A1: determinant zero
    with pytest.raises(ConfigError):
        root_datum_from_cartan([[2, -2], [-2, 2]])


def test_cartan_axioms_enforced():
    with pytest.raises(ConfigError):
        root_datum_from_cartan([[2, 1], [1, 2]])
    with pytest.raises(ConfigError):
        root_datum_from_cartan([[2, -1], [0, 2]])
    with pytest.raises(ConfigError):
        root_datum_from_cartan([[1, 0], [0, 1]])


def test_simple_reflection_is_involution():
    d = build_root_datum("B", 2)
    lam = (3, -2)
    for i in (1, 2):
        assert d.reflect(i, d.reflect(i, lam)) == lam


@pytest.mark.parametrize("letter,rank", sorted(WEYL_ORDERS))
def test_weyl_enumeration(letter, rank, engines):
    g = engines.group(f"{letter}{rank}") if rank < 4 and letter != "D" else WeylGroup(
        build_root_datum(letter, rank)
    )
    assert len(g) == WEYL_ORDERS[(letter, rank)]
    assert g.w_o.length == len(g.datum.positive_roots)
    # sorted by (length, key)
    keys = [(w.length, w.key) for w in g.elements]
    assert keys == sorted(keys)


def test_a1_enumeration(engines):
    g = engines.group("A1")
    assert [w.length for w in g.elements] == [0, 1]


def test_a2_lengths(engines):
    g = engines.group("A2")
    assert [w.length for w in g.elements] == [0, 1, 1, 2, 2, 3]


def test_b2_longest_element(engines):
    g = engines.group("B2")
    assert len(g) == 8
    assert g.w_o.length == 4


def test_weyl_bound_enforced():
    d = build_root_datum("A", 3)
    with pytest.raises(BoundExceededError):
        WeylGroup(d, max_size=5)


def test_length_equals_inversion_count(engines):
    for label in ("A2", "B2", "G2"):
        g = engines.group(label)
        for w in g.elements:
            assert w.length == g.inversion_count(w)


def test_words_are_reduced_and_canonical(engines):
    for label in ("A2", "B2"):
        g = engines.group(label)
        for w in g.elements:
            assert len(w.word) == w.length
            assert g.from_word(w.word) is w
            # lexicographically minimal among all reduced words
            assert w.word == min(_all_reduced_words(g, w))


def _all_reduced_words(g, w):
    if w.length == 0:
        return [()]
    out = []
    for i in range(1, g.datum.rank + 1):
        if g.has_left_descent(w, i):
            for rest in _all_reduced_words(g, g.left_mul(i, w)):
                out.append((i,) + rest)
    return out


def test_apply_identity_and_reflection(engines):
    d = engines.datum("A2")
    g = engines.group("A2")
    lam = (2, 5)
    assert g.apply(g.identity, lam) == lam
    omega1 = d.fundamental_weight(1)
    alpha1 = d.simple_root(1)
    assert g.apply(g.simple(1), omega1) == tuple(
        a - b for a, b in zip(omega1, alpha1)
    )


def test_w_o_sends_rho_to_minus_rho(engines):
    for label in ("A1", "A2", "A3", "B2", "G2"):
        g = engines.group(label)
        assert g.apply(g.w_o, g.datum.rho) == tuple(-x for x in g.datum.rho)


def test_word_independence_of_action(engines):
    for label in ("A2", "B2"):
        g = engines.group(label)
        lam = (1, -3)
        for w in g.elements:
            images = {
                g.datum.act(word, lam) for word in _all_reduced_words(g, w)
            }
            assert len(images) == 1


def test_length_subadditive_and_w_o_complement(engines):
    g = engines.group("B2")
    for u in g.elements:
        for v in g.elements:
            assert g.mul(u, v).length <= u.length + v.length
        assert g.mul(g.w_o, u).length == g.w_o.length - u.length


def test_poincare_symmetry(engines):
    for label in ("A2", "A3", "B2", "G2"):
        g = engines.group(label)
        by_len = {}
        for w in g.elements:
            by_len[w.length] = by_len.get(w.length, 0) + 1
        top = g.w_o.length
        for k, n in by_len.items():
            assert by_len[top - k] == n


def test_group_axioms(engines):
    g = engines.group("B2")
    rng = random.Random(7)
    for _ in range(50):
        u, v, w = (rng.choice(g.elements) for _ in range(3))
        assert g.mul(g.mul(u, v), w) is g.mul(u, g.mul(v, w))
        assert g.mul(u, g.inverse(u)) is g.identity
        assert g.mul(g.inverse(u), u) is g.identity


# -- Bruhat order --------------------------------------------------------------


def test_bruhat_basics(engines):
    g = engines.group("A2")
    for w in g.elements:
        assert g.bruhat_leq(g.identity, w)
        assert g.bruhat_leq(w, w)
    s1, s2 = g.simple(1), g.simple(2)
    assert not g.bruhat_leq(s1, s2)
    assert not g.bruhat_leq(s2, s1)


def _bruhat_by_reflections(g):
    """Independent construction: covers are length-one reflection steps."""
    reflections = {
        g.mul(g.mul(w, g.simple(i)), g.inverse(w))
        for w in g.elements
        for i in range(1, g.datum.rank + 1)
    }
    leq = {(w.index, w.index) for w in g.elements}
    covers = {}
    for w in g.elements:
        for t in reflections:
            z = g.mul(t, w)
            if z.length == w.length + 1:
                covers.setdefault(w.index, []).append(z.index)
    # transitive closure upward from each element
    for w in g.elements:
        stack = [w.index]
        seen = {w.index}
        while stack:
            cur = stack.pop()
            for nxt in covers.get(cur, []):
                leq.add((w.index, nxt))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return leq


@pytest.mark.parametrize("label", ["A2", "B2", "A3"])
def test_bruhat_matches_reflection_closure(label, engines):
    g = engines.group(label)
    oracle = _bruhat_by_reflections(g)
    for u in g.elements:
        for w in g.elements:
            assert g.bruhat_leq(u, w) == ((u.index, w.index) in oracle)


def test_bruhat_is_partial_order(engines):
    g = engines.group("B2")
    for u in g.elements:
        for v in g.elements:
            if g.bruhat_leq(u, v) and g.bruhat_leq(v, u):
                assert u is v
            for w in g.elements:
                if g.bruhat_leq(u, v) and g.bruhat_leq(v, w):
                    assert g.bruhat_leq(u, w)


# -- parabolic data ---------------------------------------------------------------


def test_empty_parabolic_gives_whole_group(engines):
    g = engines.group("A2")
    p = g.parabolic([])
    assert len(p.min_reps) == len(g)
    assert p.longest_in_parabolic is g.identity


def test_projective_plane_coset_count(engines):
    g = engines.group("A2")
    p = g.parabolic([2])
    assert len(p.min_reps) == 3


def test_grassmannian_coset_count(engines):
    g = engines.group("A3")
    p = g.parabolic([1, 3])
    assert len(p.min_reps) == 6


def test_coset_factorization(engines):
    g = engines.group("A3")
    p = g.parabolic([1, 3])
    reps = set(p.min_reps)
    for w in g.elements:
        u, x = g.coset_decompose(w, p)
        assert u in reps
        assert x in set(p.subgroup)
        assert g.mul(u, x) is w
        assert u.length + x.length == w.length


def test_parabolic_order_reversing_involution(engines):
    g = engines.group("A3")
    p = g.parabolic([1, 3])
    reps = set(p.min_reps)
    phi = {
        w: g.mul(g.mul(g.w_o, w), p.longest_in_parabolic) for w in p.min_reps
    }
    for w, fw in phi.items():
        assert fw in reps
        assert phi[fw] is w
    for u in p.min_reps:
        for w in p.min_reps:
            if g.bruhat_leq(u, w):
                assert g.bruhat_leq(phi[w], phi[u])


# -- Weyl dimension oracle ---------------------------------------------------------


def test_weyl_dimension_small_cases():
    a2 = build_root_datum("A", 2)
    assert weyl_dimension(a2, (1, 0)) == 3
    assert weyl_dimension(a2, (0, 1)) == 3
    assert weyl_dimension(a2, (1, 1)) == 8
    assert weyl_dimension(a2, (2, 2)) == 27
    b2 = build_root_datum("B", 2)
    assert {weyl_dimension(b2, (1, 0)), weyl_dimension(b2, (0, 1))} == {4, 5}
    g2 = build_root_datum("G", 2)
    assert {weyl_dimension(g2, (1, 0)), weyl_dimension(g2, (0, 1))} == {7, 14}


def test_weyl_dimension_rho_power_of_two():
    for letter, rank in (("A", 2), ("B", 2), ("G", 2), ("A", 3)):
        d = build_root_datum(letter, rank)
        assert weyl_dimension(d, d.rho) == 2 ** len(d.positive_roots)
