from fractions import Fraction

import pytest
from hypothesis import given, assume
import hypothesis.strategies as st

from formalitykit.errors import InputValidationError
from formalitykit.fields import FieldSpec, PrimeField, RATIONALS
from formalitykit.linalg import (
    ExactMatrix,
    kernel_basis,
    kernel_rows,
    matvec,
    quotient_dim,
    rank,
    rank_rows,
    row_space_basis,
    rref_rows,
    subspace_meet,
    subspace_sum,
)

QQ = FieldSpec()


def M(rows):
    return ExactMatrix.from_int_rows(rows, QQ)


def test_rank_identity():
    assert rank(M([[1, 0], [0, 1]])) == 2


def test_rank_zero_matrix():
    assert rank(M([[0, 0, 0, 0]] * 3)) == 0


def test_rank_dependent_rows():
    # second row is twice the first
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_kernel_identity_empty():
    assert kernel_basis(M([[1, 0], [0, 1]])) == []


def test_kernel_zero_matrix():
    basis = kernel_basis(M([[0, 0], [0, 0]]))
    assert len(basis) == 2


def test_kernel_single_equation():
    # x + y = 0
    basis = kernel_basis(M([[1, 1]]))
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and v != [0, 0]


def e(i, n=3):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def test_meet_idempotent():
    out = subspace_meet([e(0)], [e(0)], RATIONALS)
    assert len(out) == 1 and out[0][0] != 0


def test_meet_transverse_lines():
    assert subspace_meet([e(0, 2)], [e(1, 2)], RATIONALS) == []


def test_meet_planes_in_three_space():
    # dims 2 + 2 - 3 = 1, spanned by the shared axis
    out = subspace_meet([e(0), e(1)], [e(1), e(2)], RATIONALS)
    assert len(out) == 1
    assert out[0][0] == 0 and out[0][2] == 0 and out[0][1] != 0


def test_meet_ambient_mismatch():
    with pytest.raises(InputValidationError):
        subspace_meet([[1, 0]], [[1, 0, 0]], RATIONALS)


def test_quotient_dim_equal_spaces():
    assert quotient_dim([e(0), e(1)], [e(1), e(0)], RATIONALS) == 0


def test_quotient_dim_full_by_zero():
    assert quotient_dim([e(0), e(1), e(2)], [], RATIONALS) == 3


def test_quotient_dim_plane_by_line():
    diag = [Fraction(1), Fraction(1), Fraction(0)]
    assert quotient_dim([e(0), e(1)], [diag], RATIONALS) == 1


def test_quotient_dim_rejects_non_subspace():
    with pytest.raises(InputValidationError):
        quotient_dim([e(0)], [e(1)], RATIONALS)


small_entries = st.integers(min_value=-4, max_value=4)


@st.composite
def int_matrix(draw, max_dim=5):
    nrows = draw(st.integers(1, max_dim))
    ncols = draw(st.integers(1, max_dim))
    return [
        [Fraction(draw(small_entries)) for _ in range(ncols)] for _ in range(nrows)
    ]


@given(int_matrix())
def test_rank_nullity(rows):
    ncols = len(rows[0])
    rk = rank_rows(rows, RATIONALS)
    ker = kernel_rows(rows, RATIONALS, ncols)
    assert rk + len(ker) == ncols
    for v in ker:
        assert all(x == 0 for x in matvec(rows, v, RATIONALS))


@st.composite
def two_subspaces(draw):
    n = draw(st.integers(1, 5))
    nu = draw(st.integers(0, 3))
    nw = draw(st.integers(0, 3))
    mk = lambda rows: [[Fraction(draw(small_entries)) for _ in range(n)] for _ in range(rows)]
    return mk(nu), mk(nw), n


@given(two_subspaces())
def test_modular_dimension_law(data):
    U, W, n = data
    dim_u = len(row_space_basis(U, RATIONALS))
    dim_w = len(row_space_basis(W, RATIONALS))
    dim_sum = len(row_space_basis(U + W, RATIONALS))
    meet = subspace_meet(U, W, RATIONALS) if U and W else []
    assert dim_u + dim_w == dim_sum + len(meet)
    # every meet vector lies in both spans
    for v in meet:
        assert len(row_space_basis(U + [v], RATIONALS)) == dim_u
        assert len(row_space_basis(W + [v], RATIONALS)) == dim_w


@given(int_matrix(max_dim=4), st.sampled_from([5, 7]))
def test_prime_field_rank_agrees_on_clean_pivots(rows, p):
    """Rationals and F_p agree whenever no pivot that elimination divides
    by carries a factor of p."""
    log = []
    pivots, _ = rref_rows(rows, RATIONALS, pivot_log=log)
    for pv in log:
        assume(pv.numerator % p != 0 and pv.denominator % p != 0)
    fp = PrimeField(p)
    rows_p = [[fp.from_int(x.numerator) for x in row] for row in rows]
    assume(all(x.denominator == 1 for row in rows for x in row))
    assert rank_rows(rows_p, fp) == len(pivots)


def test_prime_field_rank_can_drop():
    fp = PrimeField(5)
    rows = [[fp.from_int(5)]]
    assert rank_rows(rows, fp) == 0
    assert rank_rows([[Fraction(5)]], RATIONALS) == 1


def test_subspace_sum_spans_both():
    U = [e(0)]
    W = [e(1)]
    assert len(subspace_sum(U, W, RATIONALS)) == 2


def test_exact_matrix_shape_validation():
    with pytest.raises(InputValidationError):
        ExactMatrix(QQ, 2, 2, ((Fraction(1),),))
