from fractions import Fraction

import pytest

from formalitykit.configurations import ConfigGraph
from formalitykit.errors import InputValidationError, TruncationError
from formalitykit.fields import RATIONALS
from formalitykit.graded import mindeg
from formalitykit.hochschild import bar_chain_slice
from formalitykit.graded import build_configuration_algebra, truncated_poly
from formalitykit.linalg import rank_rows
from formalitykit.presentations import (
    Generator,
    TensorPresentation,
    algebra_dims,
    augmentation_ideal,
    certified_maxdeg,
    configuration_presentation,
    ideal_from_relations,
    ideal_meet,
    ideal_product,
    ideal_sum,
    is_closed_under_generators,
    mindeg_bound,
    presentation_from_json_dict,
    presentation_to_json_dict,
    single_generator_presentation,
    tor_mindeg_affine,
    tor_mindeg_branches,
    tor_term,
    word_basis,
)

ONE = Fraction(1)


def a2_pres(n=2, k=2, h=2, preset="orthogonal", truncation=12):
    g = ConfigGraph.make([1, 2], [(1, 2)])
    return configuration_presentation(g, n, k, h, preset, truncation)


# -- word bases ---------------------------------------------------------------


def test_word_basis_single_generator():
    pres = single_generator_presentation(2, 3, truncation=18)
    assert word_basis(pres, 9) == [("t", "t", "t")]
    assert word_basis(pres, 3) == [("t",)]
    assert word_basis(pres, 4) == []


def test_word_basis_degree_zero_is_base():
    pres = a2_pres()
    assert word_basis(pres, 0) == ["e1", "e2"]


def test_word_basis_a2_degree_four():
    # four degree 2 generators; exactly the 8 head-to-tail pairs compose
    pres = a2_pres()
    words = word_basis(pres, 4)
    assert len(words) == 8
    assert ("t1", "t1") in words and ("a12", "a21") in words and ("t2", "a12") in words
    assert ("t1", "t2") not in words


def test_word_basis_beyond_truncation_errors():
    pres = single_generator_presentation(1, 2, truncation=6)
    with pytest.raises(TruncationError):
        word_basis(pres, 8)


def test_relation_validation():
    with pytest.raises(InputValidationError):
        # non composable relation word: a12 after a12
        TensorPresentation(
            2,
            (Generator("a12", 1, 2, 2),),
            (((("a12", "a12"), ONE),),),
            8,
        )
    with pytest.raises(InputValidationError):
        # relation degree below twice the minimal generator degree
        TensorPresentation(
            1,
            (Generator("t", 1, 1, 2),),
            (((("t",), ONE),),),
            10,
        )


# -- ideal arithmetic ---------------------------------------------------------


def test_augmentation_square_single_generator():
    pres = single_generator_presentation(3, 2, truncation=10)
    J = augmentation_ideal(pres)
    JJ = ideal_product(J, J)
    assert JJ.dims_by_degree() == {4: 1, 6: 1, 8: 1, 10: 1}
    assert mindeg(JJ.dims_by_degree()) == 4


def test_monomial_ideal_square():
    n, k = 2, 1
    pres = single_generator_presentation(n, k, truncation=10)
    I = ideal_from_relations(pres)
    II = ideal_product(I, I)
    assert min(II.dims_by_degree()) == 2 * (n + 1)


def test_monomial_meet():
    # inside k<t> with deg t = 1: (t^3) meet (t^2) = (t^3)
    pres3 = TensorPresentation(1, (Generator("t", 1, 1, 1),), (((("t",) * 3, ONE),),), 8)
    pres2 = TensorPresentation(1, (Generator("t", 1, 1, 1),), (((("t",) * 2, ONE),),), 8)
    I3 = ideal_from_relations(pres3)
    I2 = ideal_from_relations(pres2)
    # rebase onto a shared presentation; word spaces depend only on the
    # generators and the truncation
    I2 = type(I2).from_block_dict(pres3, I2.block_dict())
    met = ideal_meet(I3, I2)
    assert met.dims_by_degree() == I3.dims_by_degree()


def test_ideal_is_two_sided_closed():
    pres = a2_pres()
    I = ideal_from_relations(pres)
    assert is_closed_under_generators(pres, I)
    J = augmentation_ideal(pres)
    assert is_closed_under_generators(pres, J)
    assert is_closed_under_generators(pres, ideal_meet(I, ideal_product(J, J)))


def _random_monomial_presentation(rng):
    m = rng.choice([1, 2])
    if m == 1:
        gens = [Generator("x", 1, 1, 1), Generator("y", 1, 1, 2)]
    else:
        gens = [
            Generator("x", 1, 1, 1),
            Generator("a", 1, 2, 1),
            Generator("b", 2, 1, 1),
        ]
    D = 7
    pres0 = TensorPresentation(m, tuple(gens), ((((gens[0].label,) * 2, ONE),),), D)
    words = []
    for d in range(2, 5):
        words.extend(word_basis(pres0, d))
    rng.shuffle(words)
    chosen = tuple(words[: rng.randint(1, 3)])
    rels = tuple(((w, ONE),) for w in chosen)
    return TensorPresentation(m, tuple(gens), rels, D), chosen


def _brute_force_monomial_ideal(pres, generators_words):
    """Degreewise monomial membership: a word is in the ideal iff it has
    one of the generating words as a contiguous subword."""
    dims = {}
    for d in range(1, pres.truncation + 1):
        count = 0
        for w in word_basis(pres, d):
            hit = False
            for g in generators_words:
                for i in range(len(w) - len(g) + 1):
                    if w[i : i + len(g)] == g:
                        hit = True
                        break
                if hit:
                    break
            if hit:
                count += 1
        if count:
            dims[d] = count
    return dims


def test_monomial_ideals_against_brute_force(rng):
    for _ in range(12):
        pres, words = _random_monomial_presentation(rng)
        I = ideal_from_relations(pres)
        assert I.dims_by_degree() == _brute_force_monomial_ideal(pres, words)


def test_mindeg_calculus_on_random_monomial_ideals(rng):
    for _ in range(10):
        pres, words1 = _random_monomial_presentation(rng)
        # second ideal over the same presentation data
        all_words = []
        for d in range(2, 5):
            all_words.extend(word_basis(pres, d))
        rng.shuffle(all_words)
        words2 = tuple(all_words[: rng.randint(1, 3)])
        I1 = ideal_from_relations(pres)
        rels2 = tuple(((w, ONE),) for w in words2)
        pres2 = TensorPresentation(
            pres.num_vertices, pres.generators, rels2, pres.truncation
        )
        I2 = ideal_from_relations(pres2)
        I2 = type(I1).from_block_dict(pres, I2.block_dict())
        if I1.is_zero() or I2.is_zero():
            continue
        m1, m2 = mindeg(I1.dims_by_degree()), mindeg(I2.dims_by_degree())
        s = ideal_sum(I1, I2)
        assert mindeg(s.dims_by_degree()) == min(m1, m2)
        prod = ideal_product(I1, I2)
        if not prod.is_zero():
            assert mindeg(prod.dims_by_degree()) >= m1 + m2
        met = ideal_meet(I1, I2)
        if not met.is_zero():
            assert mindeg(met.dims_by_degree()) >= max(m1, m2)


# -- Tor terms ----------------------------------------------------------------


def test_tor_zero_is_base():
    pres = a2_pres()
    assert tor_term(pres, 0).dims() == {0: 2}


def test_tor_one_is_generator_space():
    pres = a2_pres()
    assert tor_term(pres, 1).dims() == {2: 4}


def test_tor_single_generator_gradings():
    for n in (1, 2):
        for k in (1, 2):
            pres = single_generator_presentation(n, k, truncation=6 * n * k + k)
            for q in range(0, 7):
                dims = tor_term(pres, q).dims()
                p = q // 2
                if q == 0:
                    assert dims == {0: 1}
                elif q % 2 == 0:
                    assert dims == {p * (n + 1) * k: 1}
                else:
                    assert dims == {(p * (n + 1) + 1) * k: 1}


def test_tor_orthogonal_a2_mindeg_bound():
    pres = a2_pres(n=2, k=2, h=2, truncation=10)
    t2 = tor_term(pres, 2)
    assert mindeg(t2) >= mindeg_bound(2 + 2, 2, 2)
    assert mindeg(t2) == 4


def test_tor_agrees_with_reduced_chain_homology():
    """Independent route: homology of the reduced tensor word complex."""

    def chain_h(A, p, q):
        words_p, _, d_p = bar_chain_slice(A, p, q)
        _, _, d_p1 = bar_chain_slice(A, p + 1, q)
        rank_dp = rank_rows(d_p, RATIONALS) if d_p else 0
        rank_dp1 = rank_rows(d_p1, RATIONALS) if d_p1 else 0
        return (len(words_p) - rank_dp) - rank_dp1

    A = truncated_poly(2, 2)
    pres = single_generator_presentation(2, 2, truncation=26)
    for q in (2, 3, 4):
        dims = tor_term(pres, q).dims()
        for d in range(1, 17):
            assert chain_h(A, q, d) == dims.get(d, 0)

    g = ConfigGraph.make([1, 2], [(1, 2)])
    A = build_configuration_algebra(g, 2, 2, 2, "orthogonal")
    pres = a2_pres(truncation=12)
    for q in (2, 3):
        dims = tor_term(pres, q).dims()
        for d in range(1, 13):
            assert chain_h(A, q, d) == dims.get(d, 0)


def test_tor_zigzag_a2_matches_chain_homology():
    def chain_h(A, p, q):
        words_p, _, d_p = bar_chain_slice(A, p, q)
        _, _, d_p1 = bar_chain_slice(A, p + 1, q)
        rank_dp = rank_rows(d_p, RATIONALS) if d_p else 0
        rank_dp1 = rank_rows(d_p1, RATIONALS) if d_p1 else 0
        return (len(words_p) - rank_dp) - rank_dp1

    g = ConfigGraph.make([1, 2], [(1, 2)])
    A = build_configuration_algebra(g, 2, 2, 2, "zigzag")
    pres = a2_pres(preset="zigzag", truncation=12)
    for q in (2, 3):
        dims = tor_term(pres, q).dims()
        for d in range(1, 13):
            assert chain_h(A, q, d) == dims.get(d, 0)


def test_tor_truncation_independence():
    base = 2 * 3 * 2 + 2  # enough for q = 2 with n = 2, k = 2
    for extra in (0, 2):
        pres = a2_pres(truncation=12 + extra)
        assert tor_term(pres, 2).dims() == {4: 6, 6: 2}
    p1 = single_generator_presentation(2, 2, truncation=24)
    p2 = single_generator_presentation(2, 2, truncation=26)
    assert tor_term(p1, 4).dims() == tor_term(p2, 4).dims()


def test_tor_refuses_insufficient_truncation():
    pres = single_generator_presentation(2, 2, truncation=10)
    with pytest.raises(TruncationError):
        tor_term(pres, 4)  # needs degrees up to 4 * maxdeg = 16


def test_certified_maxdeg():
    pres = single_generator_presentation(2, 3, truncation=24)
    assert certified_maxdeg(pres) == 6
    # k<x, y>/(x^2) is infinite dimensional: no zero window can ever appear
    free_ish = TensorPresentation(
        1,
        (Generator("x", 1, 1, 1), Generator("y", 1, 1, 1)),
        (((("x", "x"), ONE),),),
        8,
    )
    with pytest.raises(TruncationError):
        certified_maxdeg(free_ish)
    with pytest.raises(TruncationError):
        tor_term(free_ish, 2)


def test_algebra_dims_match_quotient():
    pres = a2_pres(n=2, k=2, h=2, truncation=10)
    dims = algebra_dims(pres)
    A = build_configuration_algebra(ConfigGraph.make([1, 2], [(1, 2)]), 2, 2, 2, "orthogonal")
    assert {d: n for d, n in dims.items() if n} == A.poincare()


# -- symbolic mindeg bounds ---------------------------------------------------


def test_mindeg_bound_values():
    # even bound p * mu, with mu = h + k
    h, k = 2, 2
    assert mindeg_bound(h + k, k, 4) == 2 * (h + k)
    # spherelike shape mu = 2h, nu = h
    assert mindeg_bound(4, 2, 4) == 8
    assert mindeg_bound(2, 1, 3) == 3


def test_mindeg_affine_branches():
    branches = tor_mindeg_branches(4, 2, "even")
    assert [(b.slope, b.intercept) for b in branches] == [(4, 0), (4, 0)]
    aff = tor_mindeg_affine(6, 2, "odd")
    assert (aff.slope, aff.intercept) == (6, 2)


def test_mindeg_bound_precondition():
    with pytest.raises(InputValidationError):
        mindeg_bound(3, 2, 4)  # mu < 2 nu


def test_mindeg_bound_respected_by_concrete_tor():
    pres = a2_pres(n=2, k=2, h=2, truncation=12)
    I = ideal_from_relations(pres)
    J = augmentation_ideal(pres)
    mu = mindeg(I.dims_by_degree())
    nu = mindeg(J.dims_by_degree())
    for q in (2, 3):
        space = tor_term(pres, q)
        if not space.is_zero():
            assert mindeg(space) >= mindeg_bound(mu, nu, q)


# -- JSON ---------------------------------------------------------------------


def test_presentation_json_round_trip():
    pres = a2_pres(preset="zigzag")
    data = presentation_to_json_dict(pres)
    back = presentation_from_json_dict(data)
    assert back == pres


def test_presentation_json_missing_key():
    with pytest.raises(InputValidationError):
        presentation_from_json_dict({"vertices": 1})
