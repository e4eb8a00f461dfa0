"""
Exact arithmetic in the cyclotomic field Q(q) = Q[T]/(Phi_n(T)) and the q-integers used by
the module actions.
"""

from fractions import Fraction
from functools import cache
from colorama import Fore
from sympy import Poly, QQ, ZZ, Rational, divisors, symbols
from typing import Union
import json

from .taftgreen_types import DivisionByZero, ParseError, RangeError

_T = symbols("T")

Scalar = Union[int, Fraction]


@cache
def cyclotomic_coefficients(n: int) -> tuple:
    """
    Integer coefficients of the cyclotomic polynomial Phi_n, lowest degree first.

    Phi_n is obtained from T^n - 1 by exact division by Phi_d for every proper divisor d of n,
    so the result is deterministic and never relies on factorization.
    """
    if n < 1:
        raise RangeError(f"Cyclotomic order must be positive, got {n}")
    poly = Poly(_T**n - 1, _T, domain=ZZ)
    for d in divisors(n)[:-1]:
        divisor = Poly(list(reversed(cyclotomic_coefficients(d))), _T, domain=ZZ)
        poly = poly.exquo(divisor)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def _normalize(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class CycField:
    """
    The field Q(q) for q a primitive n-th root of unity, stored as Q[T]/(Phi_n).

    Instances are shared per n through `cyclotomic_field(n)`; compare fields by `n`.

    Attributes:
        n (int): Order of q.
        phi (tuple[int]): Coefficients of Phi_n, lowest degree first (monic).
        degree (int): phi(n), the dimension of the field over Q.
        zero, one, q (CycNum): Distinguished elements.
    """

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic_coefficients(n)
        self.degree = len(self.phi) - 1
        self.phi_poly = Poly(list(reversed(self.phi)), _T, domain=QQ)
        self.zero = CycNum(self, (0,) * self.degree)
        self.one = self.from_rational(1)
        self.q = CycNum.from_values(self, [0, 1])
        powers = [self.one]
        for _ in range(1, n):
            powers.append(powers[-1] * self.q)
        self._q_powers = tuple(powers)
        self._number_field = None

    def __reduce__(self):
        return (cyclotomic_field, (self.n,))

    def __repr__(self):
        return f"[{Fore.CYAN}Q(q){Fore.RESET}] n={self.n}, Phi_n={self.phi}"

    def from_rational(self, value: Scalar) -> "CycNum":
        return CycNum.from_values(self, [Fraction(value)])

    def q_power(self, k: int) -> "CycNum":
        """q^k for any integer k, read from the cached table of powers."""
        return self._q_powers[k % self.n]

    def number_field(self):
        """
        The same field as a sympy AlgebraicField generated by exp(2 pi i / n), whose
        elements are polynomials in that generator modulo Phi_n. Used for polynomial
        factorization over Q(q).
        """
        if self._number_field is None:
            if self.degree == 1:
                self._number_field = QQ
            else:
                self._number_field = QQ.alg_field_from_poly(self.phi_poly)
        return self._number_field

    def to_algebraic(self, value: "CycNum"):
        K = self.number_field()
        coeffs = [QQ(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(value.coeffs)]
        if K == QQ:
            return coeffs[0]
        return K(coeffs)

    def from_algebraic(self, element) -> "CycNum":
        entries = [element] if self.number_field() == QQ else element.to_list()
        values = [Fraction(int(c.numerator), int(c.denominator)) for c in entries]
        return CycNum.from_values(self, list(reversed(values)))

    def validate(self) -> bool:
        """Phi_n divides T^n - 1 and no T^d - 1 with 0 < d < n, so q has exact order n."""
        for d in range(1, self.n + 1):
            remainder = Poly(_T**d - 1, _T, domain=QQ).rem(self.phi_poly)
            if (d == self.n) != remainder.is_zero:
                return False
        return True


@cache
def cyclotomic_field(n: int) -> CycField:
    return CycField(n)


class CycNum:
    """
    An element of Q(q) in canonical form: a coefficient vector of length phi(n) over Q,
    representing a residue modulo Phi_n. Values are immutable.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def from_values(cls, field: CycField, values: list) -> "CycNum":
        """Reduce an arbitrary-length coefficient list modulo Phi_n."""
        degree = field.degree
        phi = field.phi
        values = list(values)
        for k in range(len(values) - 1, degree - 1, -1):
            c = values[k]
            if c:
                values[k] = 0
                base = k - degree
                for t in range(degree):
                    if phi[t]:
                        values[base + t] -= c * phi[t]
        values = values[:degree] + [0] * (degree - len(values))
        return cls(field, tuple(_normalize(v) for v in values))

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.field.n != self.field.n:
                raise RangeError(
                    f"Cannot mix elements of Q(q) for n={self.field.n} and n={other.field.n}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum(
            self.field, tuple(_normalize(a + b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum(
            self.field, tuple(_normalize(a - b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.field, tuple(_normalize(a * other) for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product = [0] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    product[i + j] += a * b
        return CycNum.from_values(self.field, product)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def inverse(self) -> "CycNum":
        if not self:
            raise DivisionByZero("Division by zero in Q(q)")
        if self.is_rational():
            return self.field.from_rational(1 / Fraction(self.coeffs[0]))
        poly = Poly(
            [Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(self.coeffs)],
            _T,
            domain=QQ,
        )
        inverse = poly.invert(self.field.phi_poly)
        values = [Fraction(int(c.p), int(c.q)) for c in reversed(inverse.all_coeffs())]
        return CycNum.from_values(self.field, values)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        result = self.field.one
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNum):
            return False
        return self.field.n == other.field.n and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.n, self.coeffs))

    def sort_key(self) -> tuple:
        return tuple((Fraction(c).numerator, Fraction(c).denominator) for c in self.coeffs)

    def to_json(self) -> dict:
        return {
            "coeffs": [
                f"{Fraction(c).numerator}/{Fraction(c).denominator}" for c in self.coeffs
            ]
        }

    @classmethod
    def from_json(cls, data: dict, field: CycField) -> "CycNum":
        try:
            coeffs = [Fraction(c) for c in data["coeffs"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
            raise ParseError(f"Malformed cyclotomic number {data!r}: {err}")
        if len(coeffs) != field.degree:
            raise ParseError(
                f"Expected {field.degree} coefficients for n={field.n}, got {len(coeffs)}"
            )
        return CycNum(field, tuple(_normalize(c) for c in coeffs))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            power = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            magnitude = abs(c)
            if power and magnitude == 1:
                body = power
            elif power:
                body = f"{magnitude}*{power}"
            else:
                body = f"{magnitude}"
            if not terms:
                terms.append(f"-{body}" if c < 0 else body)
            else:
                terms.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(terms) if terms else "0"

    def __repr__(self):
        return f"{Fore.MAGENTA}{self}{Fore.RESET}"


def q_int(field: CycField, i: int) -> CycNum:
    """(i)_q = 1 + q + ... + q^{i-1}, with (0)_q = 0."""
    if i < 0:
        raise RangeError(f"q-integers are defined for i >= 0, got {i}")
    return _q_int(field, i)


@cache
def _q_int(field: CycField, i: int) -> CycNum:
    total = field.zero
    for k in range(i):
        total = total + field.q_power(k)
    return total


def alpha(field: CycField, i: int, l: int) -> CycNum:
    """The d-action coefficient alpha_i(l) = (i)_q (1 - q^{i-l})."""
    return q_int(field, i) * (field.one - field.q_power(i - l))


class EtaParam:
    """
    A band parameter: either infinity or a value of Q(q).

    Any nonzero scalar times infinity is infinity. Two parameters are equal only when both
    are infinity or both are finite with equal values.
    """

    __slots__ = ("value",)

    def __init__(self, value: CycNum = None):
        self.value = value

    @classmethod
    def infinity(cls) -> "EtaParam":
        return cls(None)

    @classmethod
    def finite(cls, value: CycNum) -> "EtaParam":
        return cls(value)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def scaled(self, factor: CycNum) -> "EtaParam":
        if not factor:
            raise DivisionByZero("Band parameters are only scaled by nonzero factors")
        if self.is_infinite:
            return self
        return EtaParam(self.value * factor)

    def __eq__(self, other):
        if not isinstance(other, EtaParam):
            return False
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        return self.value == other.value

    def __hash__(self):
        return hash(("inf",)) if self.is_infinite else hash(self.value)

    def sort_key(self) -> tuple:
        return (1,) if self.is_infinite else (0,) + self.value.sort_key()

    def to_json(self) -> dict:
        return {"inf": True} if self.is_infinite else self.value.to_json()

    @classmethod
    def from_json(cls, data: dict, field: CycField) -> "EtaParam":
        if isinstance(data, dict) and data.get("inf"):
            return cls.infinity()
        return cls(CycNum.from_json(data, field))

    @classmethod
    def parse(cls, text: str, field: CycField) -> "EtaParam":
        """Inverse of `shorthand`: `inf`, a rational such as `-3/2`, or coefficient JSON."""
        text = text.strip()
        if text == "inf":
            return cls.infinity()
        if text.startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as err:
                raise ParseError(f"Malformed eta JSON {text!r}: {err}")
            return cls.from_json(data, field)
        try:
            return cls(field.from_rational(Fraction(text)))
        except (ValueError, ZeroDivisionError) as err:
            raise ParseError(f"Malformed eta {text!r}: {err}")

    def shorthand(self) -> str:
        """The form accepted after `eta=` in label shorthand."""
        if self.is_infinite:
            return "inf"
        if self.value.is_rational():
            return str(Fraction(self.value.coeffs[0]))
        return json.dumps(self.value.to_json(), separators=(",", ":"))

    def __str__(self):
        return "inf" if self.is_infinite else str(self.value)

    def __repr__(self):
        return f"{Fore.MAGENTA}eta={self}{Fore.RESET}"
