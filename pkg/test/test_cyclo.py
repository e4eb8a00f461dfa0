from fractions import Fraction
import pytest

from taftgreen.cyclo import *
from taftgreen.taftgreen_types import DivisionByZero, ParseError, RangeError


@pytest.mark.parametrize(
    "n, expected",
    [(1, (-1, 1)), (2, (1, 1)), (3, (1, 1, 1)), (4, (1, 0, 1)), (5, (1, 1, 1, 1, 1)), (6, (1, -1, 1))],
)
def test_cyclotomic_coefficients(n, expected):
    got = cyclotomic_coefficients(n)
    assert got == expected, f"Phi_{n}: expected {expected}, got {got}"


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_q_has_exact_order(n):
    field = cyclotomic_field(n)
    assert field.validate(), f"q does not have order {n}"
    assert field.q_power(n) == field.one, f"q^{n} = {field.q_power(n)}"
    for k in range(1, n):
        assert field.q_power(k) != field.one, f"q^{k} = 1 for n={n}"


def test_reduction_modulo_phi():
    field = cyclotomic_field(3)
    q = field.q
    assert q * q == -1 - q, f"q^2 should be -1 - q, got {q * q}"
    assert q * q * q == 1, f"q^3 should be 1, got {q * q * q}"
    assert str(q * q) == "-1 - q", f"Unexpected rendering {q * q}"
    assert q + q * q == -1, f"q + q^2 = {q + q * q}"


@pytest.mark.parametrize("n", [3, 4, 5])
def test_inverse(n):
    field = cyclotomic_field(n)
    for value in (field.one - field.q, field.q + 2, q_int(field, 2), field.from_rational(Fraction(-3, 7))):
        product = value * value.inverse()
        assert product == field.one, f"{value} * {value.inverse()} = {product}"
        assert value / value == 1, f"{value} / {value} != 1"


def test_division_by_zero():
    field = cyclotomic_field(4)
    with pytest.raises(DivisionByZero):
        field.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        field.one / field.zero


def test_fields_do_not_mix():
    with pytest.raises(RangeError):
        cyclotomic_field(3).q + cyclotomic_field(4).q


@pytest.mark.parametrize("n", [3, 4, 5])
def test_q_integers(n):
    field = cyclotomic_field(n)
    assert q_int(field, 0) == 0, "(0)_q must vanish"
    assert q_int(field, 1) == 1, "(1)_q must be 1"
    assert q_int(field, n) == 0, f"(n)_q must vanish at a primitive {n}-th root"
    for i in range(1, n):
        assert q_int(field, i), f"(i)_q vanished at i={i}"
    with pytest.raises(RangeError):
        q_int(field, -1)


@pytest.mark.parametrize("n", [3, 4])
def test_alpha_vanishes_at_the_ends(n):
    field = cyclotomic_field(n)
    for l in range(1, n + 1):
        assert alpha(field, 0, l) == 0, f"alpha_0({l}) != 0"
        assert alpha(field, l, l) == 0, f"alpha_{l}({l}) != 0"
        for i in range(1, l):
            assert alpha(field, i, l), f"alpha_{i}({l}) vanished"


def test_alpha_value():
    field = cyclotomic_field(3)
    # alpha_1(3) = 1 - q^{-2} = 1 - q
    assert alpha(field, 1, 3) == field.one - field.q, f"Got {alpha(field, 1, 3)}"


def test_json_round_trip_and_errors():
    field = cyclotomic_field(5)
    value = field.q * 3 - Fraction(1, 2)
    assert CycNum.from_json(value.to_json(), field) == value, "JSON round trip changed the value"
    with pytest.raises(ParseError):
        CycNum.from_json({"coeffs": ["1/1"]}, field)
    with pytest.raises(ParseError):
        CycNum.from_json({"values": []}, field)


def test_eta_infinity_absorbs_scaling():
    field = cyclotomic_field(3)
    inf = EtaParam.infinity()
    assert inf.scaled(field.q) == inf, "infinity times q is infinity"
    assert inf.scaled(-field.q) != EtaParam.finite(field.zero), "infinity equals 0"
    with pytest.raises(DivisionByZero):
        inf.scaled(field.zero)


@pytest.mark.parametrize("text", ["inf", "0", "1", "-3/2"])
def test_eta_shorthand_round_trip(text):
    field = cyclotomic_field(4)
    eta = EtaParam.parse(text, field)
    assert eta.shorthand() == text, f"{text!r} came back as {eta.shorthand()!r}"


def test_eta_shorthand_for_irrational_values():
    field = cyclotomic_field(3)
    eta = EtaParam.finite(field.q * 2)
    parsed = EtaParam.parse(eta.shorthand(), field)
    assert parsed == eta, f"{eta.shorthand()} parsed to {parsed}"
    with pytest.raises(ParseError):
        EtaParam.parse("banana", field)
