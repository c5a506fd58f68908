from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tests.common import int_matrices, sympy_rank
from thetakit.exceptions import ArgumentError, FormatError
from thetakit.linalg import (
    GF,
    QQ,
    CoeffVector,
    ExactMatrix,
    Field,
    binomial,
    binomial_basis_coeffs,
    binomial_sum,
    fermat_basis_coeffs,
    finite_differences,
    is_prime,
    parse_field,
    parse_matrix_text,
    rank,
    rank_gf2_masks,
    rank_integer,
    rank_mod_p,
)


def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_field_tags_and_normalize():
    assert QQ.is_rational
    assert QQ.tag == "qq"
    assert str(GF(5)) == "GF(5)"
    assert GF(5).tag == "gf:5"
    assert GF(5).normalize(-1) == 4
    assert GF(5).normalize(Fraction(1, 2)) == 3
    assert QQ.normalize(Fraction(4, 2)) == 2
    assert parse_field("gf:7") == GF(7)
    assert parse_field("qq") is QQ
    with pytest.raises(ArgumentError):
        Field(4)
    with pytest.raises(ArgumentError):
        GF(5).normalize(Fraction(1, 5))
    with pytest.raises(FormatError):
        parse_field("gf")


def test_rank_gf2_masks():
    assert rank_gf2_masks([0b011, 0b110, 0b101]) == 2
    assert rank_gf2_masks([0b1, 0b10, 0b100]) == 3
    assert rank_gf2_masks([0, 0]) == 0
    assert rank_gf2_masks([]) == 0


def test_rank_depends_on_field():
    rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert rank_mod_p(rows, 2) == 2
    assert rank_mod_p(rows, 3) == 3
    assert rank_integer(rows) == 3
    assert ExactMatrix(rows, GF(2)).rank == 2
    assert rank(ExactMatrix(rows)) == 3


@given(int_matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_matches_sympy(rows, p):
    assert rank_mod_p(rows, p) == sympy_rank(rows, p)


@given(int_matrices(max_rows=5, max_cols=5))
def test_rank_integer_matches_sympy(rows):
    assert rank_integer(rows) == sympy_rank(rows)


@given(int_matrices())
def test_rank_bounded_by_shape_and_transpose(rows):
    matrix = ExactMatrix(rows)
    assert matrix.rank <= min(matrix.shape)
    assert matrix.transpose().rank == matrix.rank


def test_rational_entries_clear_denominators():
    matrix = ExactMatrix([[Fraction(1, 2), 1], [1, 2]])
    assert matrix.rank == 1
    assert ExactMatrix([[Fraction(1, 3), 1], [1, 2]]).rank == 2


def test_matrix_construction_and_shape():
    matrix = ExactMatrix.from_function(2, 3, lambda i, j: i + j, GF(3))
    assert matrix.shape == (2, 3)
    assert matrix.rows == ((0, 1, 2), (1, 2, 0))
    assert matrix[1, 2] == 0
    assert ExactMatrix.zeros(2, 2).rank == 0
    assert ExactMatrix.identity(3, GF(2)).rank == 3
    with pytest.raises(ArgumentError):
        ExactMatrix([[1, 2], [3]])


def test_matrix_arithmetic():
    a = ExactMatrix([[1, 2], [3, 4]])
    b = ExactMatrix.identity(2)
    assert a @ b == a
    assert a + a == a.scale(2)
    assert (a @ a).rows == ((7, 10), (15, 22))
    assert a.transpose().rows == ((1, 3), (2, 4))
    with pytest.raises(ArgumentError, match="field mismatch"):
        a.add(a.to_field(GF(5)))
    with pytest.raises(ArgumentError):
        a.matmul(ExactMatrix([[1, 2, 3]]))


def test_matrix_symmetry_and_pattern():
    m = ExactMatrix([[0, 2, 0], [2, 1, 3], [0, 3, 0]])
    assert m.is_symmetric
    assert m.nonzero_pattern() == (0b010, 0b111, 0b010)
    assert not ExactMatrix([[0, 1], [0, 0]]).is_symmetric


def test_matrix_text_round_trip():
    m = ExactMatrix([[1, 0, 4], [2, 3, 1]], GF(5))
    assert m.to_text() == "gf:5 2 3\n1 0 4\n2 3 1"
    assert parse_matrix_text(m.to_text()) == m
    rational = ExactMatrix([[Fraction(1, 2), -1]])
    assert parse_matrix_text(rational.to_text()) == rational


@pytest.mark.parametrize(
    "text",
    ["", "qq 2", "qq 1 2\n1 2\n3 4", "qq 1 2\n1 x", "qq 1 2\n1 2 3", "zz 1 1\n1"],
)
def test_parse_matrix_text_errors(text):
    with pytest.raises(FormatError):
        parse_matrix_text(text)


def test_binomial_helpers():
    assert binomial(5, 2) == 10
    assert binomial(2, 5) == 0
    assert binomial_sum(4, 0, 2) == 1 + 4 + 6
    assert binomial_sum(4, -3, 0) == 1
    with pytest.raises(ArgumentError):
        binomial(-1, 0)


@pytest.mark.parametrize(
    ("residues", "p", "expected"),
    [
        ({1}, 2, (1, 1)),
        ({0}, 2, (0, 1)),
        ({1, 2}, 3, (2, 1, 2)),
    ],
)
def test_binomial_basis_coeffs(residues, p, expected):
    assert binomial_basis_coeffs(residues, p).coeffs == expected


@pytest.mark.parametrize(("r", "p", "expected"), [(1, 2, (0, 1)), (0, 2, (1, 1))])
def test_fermat_basis_coeffs(r, p, expected):
    assert fermat_basis_coeffs(r, p).coeffs == expected


@given(
    st.sampled_from([2, 3, 5, 7]).flatmap(
        lambda p: st.tuples(
            st.just(p),
            st.sets(st.integers(0, p - 1), min_size=1),
            st.integers(0, 40),
        )
    )
)
def test_coefficients_reproduce_the_polynomial(case):
    p, residues, x = case
    product = 1
    for r in residues:
        product *= x - r
    assert binomial_basis_coeffs(residues, p).evaluate(x) == product % p
    for r in residues:
        assert fermat_basis_coeffs(r, p).evaluate(x) == (1 - (x - r) ** (p - 1)) % p


def test_coefficient_argument_errors():
    with pytest.raises(ArgumentError):
        binomial_basis_coeffs(set(), 3)
    with pytest.raises(ArgumentError):
        binomial_basis_coeffs({3}, 3)
    with pytest.raises(ArgumentError):
        binomial_basis_coeffs({1}, 4)
    with pytest.raises(ArgumentError):
        fermat_basis_coeffs(-1, 5)


def test_coeff_vector_str_and_degree():
    vector = CoeffVector(3, (2, 0, 2))
    assert str(vector) == "2 0 2"
    assert vector.degree == 2
    assert finite_differences(lambda x: x * x, 2, 7) == (0, 1, 2)
