import pytest
from conftest import alg, data_path

from adakit.algebra import (AlgebraError, algebra_from_text, check_associative, full_subcategory,
                            is_triangular, opposite_algebra)
from adakit.quiver import AlgebraFileError

SQUARE = """field Q
vertex 1 2 3 4
arrow a 1 2
arrow b 2 4
arrow c 1 3
arrow d 3 4
rel a.b - c.d
"""


@pytest.mark.parametrize("name,dim,loewy", [("point", 1, 1), ("loop", 2, 2), ("kronecker", 4, 2),
                                             ("a5_rad2", 9, 2), ("double_a4_rad2", 10, 2), ("mixed6_rad2", 12, 2)])
def test_fixture_dimensions(name, dim, loewy):
    A = alg(name)
    assert A.dim == dim
    assert A.loewy == loewy
    assert check_associative(A)


def test_commutative_square():
    A = algebra_from_text(SQUARE)
    # the two length-2 paths 1 -> 4 are identified
    assert A.dim == 4 + 4 + 1
    assert len(A.block(0, 3)) == 1
    assert check_associative(A)
    assert is_triangular(A)


def test_cartan_blocks_kronecker():
    A = alg("kronecker")
    assert len(A.block(0, 1)) == 2 and len(A.block(1, 0)) == 0


def test_opposite_reverses_blocks():
    A = alg("mixed6_rad2")
    B = opposite_algebra(A)
    for x in range(A.n):
        for y in range(A.n):
            assert len(A.block(x, y)) == len(B.block(y, x))


def test_full_subcategory_blocks():
    A = alg("a5_rad2")
    B = full_subcategory(A, ["3", "4", "5"])
    assert list(B.labels) == ["3", "4", "5"]
    assert B.dim == 5
    with pytest.raises(AlgebraError):
        full_subcategory(A, [])


def test_fingerprint_stable():
    with open(data_path("a5_rad2")) as fh:
        assert alg("a5_rad2").fingerprint() == algebra_from_text(fh.read()).fingerprint()
    assert alg("a5_rad2").fingerprint() != alg("a6_rad2").fingerprint()


@pytest.mark.parametrize("text,line,msg", [
    ("field Q\nvertex 1\narrow a 1 2\n", 3, "unknown vertex"),
    ("field Q\nfield Q\n", 2, "declared twice"),
    ("field F 8\nvertex 1\n", 1, "not prime"),
    ("field Q\nvertex 1 1\n", 2, "duplicate vertex"),
    ("field Q\nvertex 1 2\narrow a 1 2\narrow a 1 2\n", 4, "duplicate arrow"),
    ("field Q\nvertex 1 2\narrow a 1 2\nrel a.q\n", 4, "unknown arrow"),
    ("field Q\nvertex 1 2\nfrobnicate\n", 3, "unknown directive"),
])
def test_parse_errors_carry_lines(text, line, msg):
    with pytest.raises(AlgebraFileError) as ei:
        algebra_from_text(text)
    assert ei.value.line == line
    assert msg in str(ei.value)


def test_non_admissible_rejected():
    # a loop without relations is infinite dimensional
    with pytest.raises(AlgebraError):
        algebra_from_text("field Q\nvertex 1\narrow x 1 1\n")


def test_relation_with_arrow_in_ideal_rejected():
    with pytest.raises((AlgebraError, AlgebraFileError)):
        algebra_from_text("field Q\nvertex 1 2\narrow a 1 2\nrel a\n")


def test_prime_field():
    A = algebra_from_text("field F 3\nvertex 1 2\narrow a 1 2\narrow b 1 2\n")
    assert A.field.name == "F3" and A.dim == 4
