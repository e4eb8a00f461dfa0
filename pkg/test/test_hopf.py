import random
import pytest

from taftgreen.hopf import *
from taftgreen.auxiliary import SparseMatrix
from taftgreen.taftgreen_types import ParseError, ShapeMismatch


@pytest.fixture(scope="module")
def algebra(n):
    return hopf_algebra(n)


def _power(algebra, name, k):
    result = algebra.unit()
    for _ in range(k):
        result = algebra.pbw_mul(result, algebra.generator(name))
    return result


def test_commutation_relations(algebra):
    a, b, c, d = (algebra.generator(g) for g in "abcd")
    q = algebra.field.q
    mul = algebra.pbw_mul
    for name, lhs, rhs in (
        ("ba = q ab", mul(b, a), mul(a, b).scale(q)),
        ("db = q bd", mul(d, b), mul(b, d).scale(q)),
        ("ca = q ac", mul(c, a), mul(a, c).scale(q)),
        ("dc = q cd", mul(d, c), mul(c, d).scale(q)),
        ("bc = cb", mul(b, c), mul(c, b)),
        ("da - q ad = 1 - bc", mul(d, a) - mul(a, d).scale(q), algebra.unit() - mul(b, c)),
    ):
        assert lhs == rhs, f"{name}: {lhs} != {rhs}"


def test_nilpotent_and_grouplike_powers(algebra):
    n = algebra.n
    for name in "ad":
        assert not _power(algebra, name, n), f"{name}^{n} should vanish"
        assert _power(algebra, name, n - 1), f"{name}^{n - 1} should not vanish"
    for name in "bc":
        assert _power(algebra, name, n) == algebra.unit(), f"{name}^{n} should be 1"


def test_multiplication_is_associative(algebra):
    rng = random.Random(7)
    for _ in range(5):
        u, v, w = (algebra.random_element(rng) for _ in range(3))
        left = algebra.pbw_mul(algebra.pbw_mul(u, v), w)
        right = algebra.pbw_mul(u, algebra.pbw_mul(v, w))
        assert left == right, f"({u} {v}) {w} != {u} ({v} {w})"


def test_regular_representation_satisfies_relations():
    rep = hopf_algebra(3).regular_rep()
    assert rep.dim == 81, f"Expected the 81-dimensional regular representation, got {rep.dim}"
    result = rep_validate(rep)
    assert result.ok, f"Regular representation violates {result.failed_relation}"


def test_rep_validate_reports_first_failure():
    field = hopf_algebra(3).field
    zero = SparseMatrix.zeros(1, 1, field)
    one = SparseMatrix.identity(1, field)
    c = SparseMatrix.diagonal([field.q], field)
    result = rep_validate(MatrixRep(zero, one, c, zero))
    assert not result.ok, "A non-representation was accepted"
    assert result.failed_relation == "da - q ad = 1 - bc", f"Unexpected failure {result.failed_relation}"


def test_rep_validate_shape_mismatch():
    field = hopf_algebra(3).field
    with pytest.raises(ShapeMismatch):
        rep_validate(
            MatrixRep(
                SparseMatrix.zeros(2, 2, field),
                SparseMatrix.identity(3, field),
                SparseMatrix.identity(2, field),
                SparseMatrix.zeros(2, 2, field),
            )
        )


def test_counit_and_coassociativity(algebra):
    for name, expected in (("a", 0), ("b", 1), ("c", 1), ("d", 0)):
        got = algebra.counit(algebra.generator(name))
        assert got == expected, f"epsilon({name}) = {got}, expected {expected}"
    assert algebra.check_coassociativity(), "The coproduct is not coassociative"


def test_central_element_commutes(algebra):
    central = algebra.central_element()
    for name in "abcd":
        g = algebra.generator(name)
        assert algebra.pbw_mul(central, g) == algebra.pbw_mul(g, central), f"C does not commute with {name}"


def test_radical_dimension():
    algebra = hopf_algebra(3)
    radical = algebra.radical_basis()
    expected = 81 - 3 * sum(l * l for l in range(1, 4))
    assert len(radical) == expected, f"dim J = {len(radical)}, expected {expected}"
    assert algebra.in_radical(radical[0]), "A radical basis vector is not in the radical"
    assert not algebra.in_radical(algebra.generator("a")), "a acts nonzero on V(2,0) and cannot be radical"
    assert not algebra.in_radical(algebra.unit()), "1 lies in the radical"


def test_loewy_length_three():
    dims = hopf_algebra(3).radical_power_dims()
    assert dims[1] > 0, f"J^2 vanished: {dims}"
    assert dims[2] == 0, f"J^3 should vanish: {dims}"


def test_structure_constants_match_products():
    algebra = hopf_algebra(3)
    table = algebra.structure_constants()
    assert len(table) == 3**8, f"Expected 3^8 monomial products, got {len(table)}"
    a, d = algebra.generator("a"), algebra.generator("d")
    assert algebra.pbw_mul(d, a).terms == table[((0, 0, 0, 1), (1, 0, 0, 0))], "da disagrees with the table"


def test_element_json(algebra):
    rng = random.Random(3)
    u = algebra.random_element(rng)
    assert AlgebraElement.from_json(u.to_json(), algebra.field) == u, "JSON round trip changed the element"
    with pytest.raises(ParseError):
        AlgebraElement.from_json({"terms": [{"e": [algebra.n, 0, 0, 0], "c": algebra.field.one.to_json()}]}, algebra.field)
