"""
The Green ring of H_n(1,q) as a rewriting system.

Elements are integer combinations of monomials in x, y, z+, z- and w_{m,eta}. The relations of
the ring presentation are oriented into rewrite rules whose irreducible monomials are exactly the
Z-basis

    x^i y^j                 0 <= i <= n-1, 0 <= j <= 2n-2
    x^i y^j z+^e, z-^e      0 <= i <= n-1, 0 <= j <= n-2, e >= 1
    x^i y^j w_{m,eta}       0 <= i <= n-1, 0 <= j <= n-2

and module classes are mapped into the ring by `Presentation.class_of`.
"""

from collections import Counter
from colorama import Fore
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import cache
from rich.progress import Progress
from typing import Callable, Dict, Iterable, List, Tuple, Union
import json, random, re

from .taftgreen_types import *
from .cyclo import CycField, EtaParam, cyclotomic_field, q_int
from .auxiliary import binomial, c_half, info

WFactor = Tuple[int, EtaParam]


def _w_sort_key(item) -> tuple:
    (m, eta), _ = item
    return (m, eta.sort_key())


class Monomial:
    """
    x^xe y^ye z+^zplus z-^zminus prod w_{m,eta}^e, with the w-factors kept sorted.

    Attributes:
        xe, ye, zplus, zminus (int): Exponents.
        w (tuple): ((m, eta), exponent) pairs with exponent >= 1.
    """

    __slots__ = ("xe", "ye", "zplus", "zminus", "w", "_key")

    def __init__(self, xe: int = 0, ye: int = 0, zplus: int = 0, zminus: int = 0, w=()):
        self.xe = xe
        self.ye = ye
        self.zplus = zplus
        self.zminus = zminus
        merged: Dict[WFactor, int] = {}
        for factor, e in w:
            merged[factor] = merged.get(factor, 0) + e
        self.w = tuple(sorted(((f, e) for f, e in merged.items() if e), key=_w_sort_key))
        self._key = None

    def replace(self, **changes) -> "Monomial":
        values = dict(xe=self.xe, ye=self.ye, zplus=self.zplus, zminus=self.zminus, w=self.w)
        values.update(changes)
        return Monomial(**values)

    def without_w(self, factor: WFactor) -> "Monomial":
        return self.replace(w=[(f, e - 1 if f == factor else e) for f, e in self.w])

    def w_factors(self) -> List[WFactor]:
        """The w-factors with repetition, in sorted order."""
        return [f for f, e in self.w for _ in range(e)]

    @property
    def w_degree(self) -> int:
        return sum(e for _, e in self.w)

    @property
    def has_z(self) -> bool:
        return bool(self.zplus or self.zminus)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(
            self.xe + other.xe,
            self.ye + other.ye,
            self.zplus + other.zplus,
            self.zminus + other.zminus,
            self.w + other.w,
        )

    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                self.xe,
                self.ye,
                self.zplus,
                self.zminus,
                tuple((m, eta.sort_key(), e) for (m, eta), e in self.w),
            )
        return self._key

    def sort_key(self) -> tuple:
        """Constants first, then by w- and z-content, then total x, y degree."""
        k = self.key()
        return (k[4], k[2], k[3], self.xe + self.ye, self.ye)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self) -> dict:
        zs = [{"sign": s, "e": e} for s, e in ((Sign.Plus, self.zplus), (Sign.Minus, self.zminus)) if e]
        return {
            "x": self.xe,
            "y": self.ye,
            "z": zs[0] if len(zs) == 1 else (zs or None),
            "w": [{"m": m, "eta": eta.to_json(), "e": e} for (m, eta), e in self.w],
        }

    @classmethod
    def from_json(cls, data: dict, field: CycField) -> "Monomial":
        try:
            z = data.get("z")
            zs = [] if z is None else (z if isinstance(z, list) else [z])
            zplus = sum(int(item["e"]) for item in zs if item["sign"] == Sign.Plus)
            zminus = sum(int(item["e"]) for item in zs if item["sign"] == Sign.Minus)
            w = [
                ((int(item["m"]), EtaParam.from_json(item["eta"], field)), int(item.get("e", 1)))
                for item in data.get("w") or []
            ]
            return cls(int(data.get("x", 0)), int(data.get("y", 0)), zplus, zminus, w)
        except (KeyError, TypeError, ValueError) as err:
            raise ParseError(f"Malformed monomial {data!r}: {err}")

    def __str__(self):
        parts = []
        for name, e in (("x", self.xe), ("y", self.ye), ("z+", self.zplus), ("z-", self.zminus)):
            if e:
                parts.append(name if e == 1 else f"{name}^{e}")
        for (m, eta), e in self.w:
            factor = f"w_{{{m},eta={eta.shorthand()}}}"
            parts.append(factor if e == 1 else f"{factor}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"{Fore.GREEN}{self}{Fore.RESET}"


ONE = Monomial()


class RingElement:
    """An integer combination of monomials. Products are raw; reduce with a `Presentation`."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, int] = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> "RingElement":
        return cls({mono: coeff})

    @classmethod
    def constant(cls, value: int) -> "RingElement":
        return cls({ONE: value})

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            return other
        if isinstance(other, int):
            return RingElement.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return RingElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, 0) + c1 * c2
        return RingElement(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = RingElement.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingElement.constant(other)
        return isinstance(other, RingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def to_json(self) -> dict:
        return {
            "terms": [
                dict(mono.to_json(), coeff=str(coeff)) for mono, coeff in self.sorted_terms()
            ]
        }

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for mono, coeff in self.sorted_terms():
            magnitude = abs(coeff)
            if mono == ONE:
                body = str(magnitude)
            elif magnitude == 1:
                body = str(mono)
            else:
                body = f"{magnitude}*{mono}"
            if not out:
                out.append(f"-{body}" if coeff < 0 else body)
            else:
                out.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"[{Fore.CYAN}RingElement{Fore.RESET}] {self}"


def element_from_json(data: dict, n: int) -> RingElement:
    """Parse the RingElement JSON schema ({"terms": [{"x", "y", "z", "w", "coeff"}]})."""
    field = cyclotomic_field(n)
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
        raise ParseError(f"Ring element JSON needs a 'terms' list, got {data!r}")
    terms: Dict[Monomial, int] = {}
    for item in data["terms"]:
        mono = Monomial.from_json(item, field)
        try:
            coeff = int(item.get("coeff", 1))
        except (TypeError, ValueError) as err:
            raise ParseError(f"Malformed coefficient in {item!r}: {err}")
        terms[mono] = terms.get(mono, 0) + coeff
    return RingElement(terms)


_FACTOR = re.compile(
    r"\s*(?:"
    r"(?P<int>\d+)"
    r"|w_\{\s*(?P<wm>\d+)\s*,\s*(?:eta=)?(?P<eta>inf|-?\d+(?:/\d+)?|\{[^{}]*\})\s*\}"
    r"|(?P<var>x|y|z\+|z-)"
    r")(?:\^(?P<exp>\d+))?"
)


def parse_element(text: str, n: int) -> RingElement:
    """
    Parse monomial shorthand: sums of products of `x`, `y`, `z+`, `z-`, `w_{m,eta}` and
    integers, with `^k` exponents, e.g. `2*x*y^2 - z+^2 + w_{1,eta=inf}`.

    Raises:
        ParseError: The text does not follow the grammar.
    """
    field = cyclotomic_field(n)
    total = RingElement()
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("Empty ring element")
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        sign = 1
        if pos < len(text) and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        term = RingElement.constant(sign)
        while True:
            match = _FACTOR.match(text, pos)
            if not match or match.end() == pos:
                raise ParseError(f"Unexpected input at position {pos} of {text!r}")
            exp = int(match.group("exp") or 1)
            if match.group("int") is not None:
                factor = RingElement.constant(int(match.group("int")))
            elif match.group("wm") is not None:
                eta = EtaParam.parse(match.group("eta"), field)
                factor = RingElement.monomial(Monomial(w=[((int(match.group("wm")), eta), 1)]))
            else:
                var = match.group("var")
                factor = RingElement.monomial(
                    Monomial(
                        xe=int(var == "x"),
                        ye=int(var == "y"),
                        zplus=int(var == "z+"),
                        zminus=int(var == "z-"),
                    )
                )
            term = term * factor**exp
            pos = match.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos < len(text) and text[pos] == "*":
                pos += 1
                continue
            break
        total = total + term
        if pos < len(text) and text[pos] not in "+-":
            raise ParseError(f"Expected '+', '-' or '*' at position {pos} of {text!r}")
    return total


@dataclass
class DerivedTables:
    """
    Per-n dictionary entries that have no closed form, computed by the module oracle.

    Attributes:
        n (int): Order of q.
        max_m (int): Largest syzygy degree covered.
        max_s (int): Largest band height covered.
        proj_poly (dict[int, RingElement]): [P(l, 0)] by l.
        syz_corr (dict[tuple, RingElement]): (sign, m, l) -> [V(l,0)] z_sign^m - [Omega^{sign m} V(l,0)].
        band_corr (dict[tuple, RingElement]): (m, l) -> projective part of [V(l,0)] w_{m,eta};
            independent of eta.

    Entries for weight r are the r = 0 entries times x^r.
    """

    n: int
    max_m: int = 0
    max_s: int = 0
    proj_poly: Dict[int, RingElement] = dataclass_field(default_factory=dict)
    syz_corr: Dict[Tuple[str, int, int], RingElement] = dataclass_field(default_factory=dict)
    band_corr: Dict[Tuple[int, int], RingElement] = dataclass_field(default_factory=dict)

    def proj(self, l: int) -> RingElement:
        if l not in self.proj_poly:
            raise MissingTableEntry(f"[P({l},0)] is not in the tables for n={self.n}")
        return self.proj_poly[l]

    def syz(self, sign: str, m: int, l: int) -> RingElement:
        if (sign, m, l) not in self.syz_corr:
            raise MissingTableEntry(
                f"Syzygy correction ({sign}, m={m}, l={l}) is not in the tables for n={self.n} (max_m={self.max_m})"
            )
        return self.syz_corr[(sign, m, l)]

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "max_m": self.max_m,
            "max_s": self.max_s,
            "proj_poly": {str(l): e.to_json() for l, e in sorted(self.proj_poly.items())},
            "syz_corr": {
                f"{sign}:{m}:{l}": e.to_json() for (sign, m, l), e in sorted(self.syz_corr.items())
            },
            "band_corr": {f"{m}:{l}": e.to_json() for (m, l), e in sorted(self.band_corr.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "DerivedTables":
        try:
            if data["schema_version"] != SCHEMA_VERSION:
                raise ParseError(f"Unsupported table schema {data['schema_version']}")
            n = int(data["n"])
            tables = cls(n, int(data["max_m"]), int(data["max_s"]))
            for key, value in data["proj_poly"].items():
                tables.proj_poly[int(key)] = element_from_json(value, n)
            for key, value in data["syz_corr"].items():
                sign, m, l = key.split(":")
                tables.syz_corr[(sign, int(m), int(l))] = element_from_json(value, n)
            for key, value in data["band_corr"].items():
                m, l = key.split(":")
                tables.band_corr[(int(m), int(l))] = element_from_json(value, n)
        except (KeyError, TypeError, ValueError, AttributeError) as err:
            raise ParseError(f"Malformed table JSON: {err}")
        return tables


class Presentation:
    def __init__(self, n: int):
        """
        Generators, relations and dictionary of the Green ring for a fixed n.

        Attributes:
            n (int): Order of q.
            field (CycField): Q(q), for band parameters.
            x, y (RingElement): Classes of V(1,1) and V(2,0).
            f1, f2, f3, f4 (RingElement): The structure polynomials in x, y.

        Methods:
            - normal_form, multiply, stable_normal_form, dimension
            - simple_class, projective_closed_form, band_correction, class_of
            - relations, stable_relations
        """
        if n < 3:
            raise RangeError(f"The Green ring presentation needs n >= 3, got {n}")
        self.n = n
        self.field = cyclotomic_field(n)
        self.x = RingElement.monomial(Monomial(xe=1))
        self.y = RingElement.monomial(Monomial(ye=1))
        self.f1 = self._f1()
        self.f2 = self._f2()
        self.f3 = self._f3()
        self.f4 = self._f4()
        # right-hand sides of the rewrite rules
        self._tail = self.f1 - self.y_power(n - 1)
        self._zz = 1 + self.f1 * (2 * self.y + 4 * self.f3)
        self._z_f1 = self.f1 * (1 + 2 * self.f4)
        self._x_f1_sq = self.x * self.f1 * self.f1
        self._f1_y_f3 = self.f1 * (self.y + self.f3)
        self._f1_one_f4 = self.f1 * (1 + self.f4)
        self._top_y = self.y_power(2 * n - 1) - self.f1 * self.f2
        self._cache: Dict[Monomial, RingElement] = {}

    def __repr__(self):
        return f"[{Fore.CYAN}Presentation{Fore.RESET}] n={self.n}"

    # generators

    def x_power(self, k: int) -> RingElement:
        return RingElement.monomial(Monomial(xe=k % self.n))

    def y_power(self, k: int) -> RingElement:
        return RingElement.monomial(Monomial(ye=k))

    def xy(self, i: int, j: int, coeff: int = 1) -> RingElement:
        return RingElement.monomial(Monomial(xe=i, ye=j), coeff)

    def z(self, sign: str, e: int = 1) -> RingElement:
        if sign == Sign.Plus:
            return RingElement.monomial(Monomial(zplus=e))
        return RingElement.monomial(Monomial(zminus=e))

    def w(self, m: int, eta: EtaParam) -> RingElement:
        return RingElement.monomial(Monomial(w=[((m, eta), 1)]))

    def _f1(self) -> RingElement:
        n = self.n
        return sum(
            (self.xy(i, n - 1 - 2 * i, (-1) ** i * binomial(n - 1 - i, i)) for i in range(c_half(n - 2) + 1)),
            RingElement(),
        )

    def _f2(self) -> RingElement:
        n = self.n
        total = RingElement.constant(-2)
        for i in range(c_half(n - 1) + 1):
            coeff = Fraction(n, n - i) * binomial(n - i, i) * (-1) ** i
            if coeff.denominator != 1:
                raise ConstructionFailed(f"f2 coefficient {coeff} at i={i} is not an integer")
            total = total + self.xy(i, n - 2 * i, int(coeff))
        return total

    def _f3(self) -> RingElement:
        n = self.n
        return sum(
            (
                self.xy(i + 1, n - 1 - 2 * i, (-1) ** (i - 1) * binomial(n - i - 2, i - 1))
                for i in range(1, c_half(n - 2) + 1)
            ),
            RingElement(),
        )

    def _f4(self) -> RingElement:
        n = self.n
        return sum(
            (
                self.xy(i, n - 2 * i, (-1) ** (i - 1) * binomial(n - i - 1, i - 1))
                for i in range(1, c_half(n - 1) + 1)
            ),
            RingElement(),
        )

    def f_poly(self, k: int) -> RingElement:
        if k not in (1, 2, 3, 4):
            raise RangeError(f"There are four structure polynomials, got f{k}")
        return (self.f1, self.f2, self.f3, self.f4)[k - 1]

    # rewriting

    def _rules(self, mono: Monomial) -> List[Callable[[], RingElement]]:
        """Applicable rewrites of `mono`, most urgent first; each returns the replacement."""
        n = self.n
        rules: List[Callable[[], RingElement]] = []
        as_element = RingElement.monomial
        if mono.xe >= n:
            rules.append(lambda: as_element(mono.replace(xe=mono.xe - n)))
        factors = mono.w_factors()
        if len(factors) >= 2:
            pairs = []
            for i in range(len(factors)):
                for j in range(i + 1, len(factors)):
                    if (factors[i], factors[j]) not in pairs:
                        pairs.append((factors[i], factors[j]))
            pairs.sort(key=lambda p: (p[0][1] != p[1][1], p[0][0] + p[1][0]))
            for first, second in pairs:
                rules.append(lambda first=first, second=second: self._w_pair(mono, first, second))
        if mono.zplus and mono.zminus:
            rest = mono.replace(zplus=mono.zplus - 1, zminus=mono.zminus - 1)
            rules.append(lambda rest=rest: as_element(rest) * self._zz)
        if mono.w:
            for factor, _ in mono.w:
                for sign, e in ((Sign.Plus, mono.zplus), (Sign.Minus, mono.zminus)):
                    if e:
                        rules.append(lambda factor=factor, sign=sign: self._z_w(mono, sign, factor))
                if mono.ye >= n - 1:
                    rules.append(lambda factor=factor: self._y_w(mono, factor))
        if mono.ye >= n - 1:
            for sign, e in ((Sign.Plus, mono.zplus), (Sign.Minus, mono.zminus)):
                if e:
                    rules.append(lambda sign=sign: self._y_z(mono, sign))
        if not mono.w and not mono.has_z and mono.ye >= 2 * n - 1:
            rest = mono.replace(ye=mono.ye - (2 * n - 1))
            rules.append(lambda rest=rest: as_element(rest) * self._top_y)
        return rules

    def _w_pair(self, mono: Monomial, first: WFactor, second: WFactor) -> RingElement:
        rest = RingElement.monomial(mono.without_w(first).without_w(second))
        (m, eta), (t, alpha) = first, second
        if eta != alpha:
            return rest * (m * t) * self._x_f1_sq
        m, t = min(m, t), max(m, t)
        return rest * (self.w(m, eta) * (1 + self.f4) + (t - 1) * m * self._x_f1_sq)

    def _z_w(self, mono: Monomial, sign: str, factor: WFactor) -> RingElement:
        m, eta = factor
        if sign == Sign.Plus:
            rest, extra = mono.replace(zplus=mono.zplus - 1), self._x_f1_sq
        else:
            rest, extra = mono.replace(zminus=mono.zminus - 1), self._f1_y_f3
        rest = rest.without_w(factor)
        return RingElement.monomial(rest) * (self.f4 * self.w(m, eta) + m * extra)

    def _y_w(self, mono: Monomial, factor: WFactor) -> RingElement:
        m, eta = factor
        rest = mono.replace(ye=mono.ye - (self.n - 1)).without_w(factor)
        return RingElement.monomial(rest) * (m * self._f1_one_f4 - self._tail * self.w(m, eta))

    def _y_z(self, mono: Monomial, sign: str) -> RingElement:
        if sign == Sign.Plus:
            rest = mono.replace(ye=mono.ye - (self.n - 1), zplus=mono.zplus - 1)
        else:
            rest = mono.replace(ye=mono.ye - (self.n - 1), zminus=mono.zminus - 1)
        return RingElement.monomial(rest) * (self._z_f1 - self._tail * self.z(sign))

    def is_normal(self, mono: Monomial) -> bool:
        return not self._rules(mono)

    def _reduce(self, terms: Dict[Monomial, int], rng: random.Random = None) -> RingElement:
        work = dict(terms)
        done: Dict[Monomial, int] = {}
        while work:
            if rng is None:
                mono, coeff = work.popitem()
            else:
                mono = list(work)[rng.randrange(len(work))]
                coeff = work.pop(mono)
            rules = self._rules(mono)
            if not rules:
                done[mono] = done.get(mono, 0) + coeff
                continue
            rule = rules[0] if rng is None else rng.choice(rules)
            for m2, c2 in rule().terms.items():
                value = work.get(m2, 0) + coeff * c2
                if value:
                    work[m2] = value
                else:
                    work.pop(m2, None)
        return RingElement(done)

    def _normal_monomial(self, mono: Monomial) -> RingElement:
        if mono not in self._cache:
            self._cache[mono] = self._reduce({mono: 1})
        return self._cache[mono]

    def normal_form(self, element: RingElement, rng: random.Random = None) -> RingElement:
        """
        Reduce to the monomial basis. With `rng`, monomials and rules are picked at random,
        which must not change the result.
        """
        if rng is not None:
            return self._reduce(element.terms, rng)
        terms: Dict[Monomial, int] = {}
        for mono, coeff in element.terms.items():
            for m2, c2 in self._normal_monomial(mono).terms.items():
                terms[m2] = terms.get(m2, 0) + coeff * c2
        return RingElement(terms)

    def multiply(self, left: RingElement, right: RingElement) -> RingElement:
        return self.normal_form(left * right)

    def stable_normal_form(self, element: RingElement) -> RingElement:
        """Normal form in the stable Green ring: the normal form reduced modulo f1 = [V(n,0)]."""
        n = self.n
        reduced = dict(self.normal_form(element).terms)
        while True:
            high = [m for m in reduced if not m.w and not m.has_z and m.ye >= n - 1]
            if not high:
                break
            mono = max(high, key=lambda m: (m.ye, m.xe))
            coeff = reduced[mono]
            shift = RingElement.monomial(Monomial(xe=mono.xe, ye=mono.ye - (n - 1)))
            for m2, c2 in self.normal_form(shift * self.f1).terms.items():
                value = reduced.get(m2, 0) - coeff * c2
                if value:
                    reduced[m2] = value
                else:
                    reduced.pop(m2, None)
        return RingElement(reduced)

    def dimension(self, element: RingElement) -> int:
        """The dimension homomorphism: x -> 1, y -> 2, z+- -> 2n-1, w_{m,eta} -> mn."""
        n = self.n
        total = 0
        for mono, coeff in element.terms.items():
            value = coeff * 2**mono.ye * (2 * n - 1) ** (mono.zplus + mono.zminus)
            for (m, _), e in mono.w:
                value *= (m * n) ** e
            total += value
        return total

    # dictionary

    def simple_class(self, l: int, r: int = 0) -> RingElement:
        """[V(l, r)] = x^r sum_i (-1)^i C(l-1-i, i) x^i y^{l-1-2i}."""
        if not 1 <= l <= self.n:
            raise RangeError(f"V({l},{r}) needs 1 <= l <= {self.n}")
        poly = sum(
            (self.xy(i, l - 1 - 2 * i, (-1) ** i * binomial(l - 1 - i, i)) for i in range((l - 1) // 2 + 1)),
            RingElement(),
        )
        return self.normal_form(self.x_power(r) * poly)

    def has_projective_closed_form(self, l: int) -> bool:
        return l == 1 or l == self.n - 1 or l % 2 == 0

    def projective_closed_form(self, l: int) -> Union[RingElement, None]:
        """
        [P(l, 0)] = x^l sum_j (-1)^j (n-l)/(n-l-j) C(n-l-j, j) x^j y^{n-l-2j} f1 for
        l = 1, l even and l = n-1; None for the other l.
        """
        n = self.n
        if not 1 <= l <= n - 1:
            raise RangeError(f"P({l},0) needs 1 <= l <= {n - 1}")
        if not self.has_projective_closed_form(l):
            return None
        k = n - l
        poly = RingElement()
        for j in range(k // 2 + 1):
            if k - j <= 0:
                continue
            coeff = Fraction(k, k - j) * binomial(k - j, j) * (-1) ** j
            if coeff.denominator != 1:
                raise ConstructionFailed(f"Projective coefficient {coeff} at l={l}, j={j} is not an integer")
            poly = poly + self.xy(j, k - 2 * j, int(coeff))
        return self.normal_form(self.x_power(l) * poly * self.f1)

    def projective_class(self, l: int, r: int, tables: DerivedTables = None) -> RingElement:
        """[P(l, r)], with [P(n, r)] = [V(n, r)] = x^r f1."""
        if l == self.n:
            return self.simple_class(self.n, r)
        base = self.projective_closed_form(l)
        if base is None:
            if tables is None:
                raise MissingTableEntry(f"[P({l},0)] has no closed form and no tables were given")
            base = tables.proj(l)
        return self.normal_form(self.x_power(r) * base)

    def band_correction(self, m: int, l: int, r: int = 0, tables: DerivedTables = None) -> RingElement:
        """Projective part of V(l, r) (x) M_m(1, 0, eta): sum_{i=c(l)}^{l-1} m [P(n+l-2i, r+i)]."""
        total = RingElement()
        for i in range(c_half(l), l):
            total = total + m * self.projective_class(self.n + l - 2 * i, r + i, tables)
        return self.normal_form(total)

    def class_of(self, label: IndecLabel, tables: DerivedTables = None) -> RingElement:
        """
        Green ring class of a catalog module.

        Raises:
            MissingTableEntry: The class needs a table entry that `tables` lacks.
        """
        if label.n != self.n:
            raise RangeError(f"Label for n={label.n} used with the presentation for n={self.n}")
        if label.kind == LabelKind.Simple:
            return self.simple_class(label.l, label.r)
        if label.kind == LabelKind.Proj:
            return self.projective_class(label.l, label.r, tables)
        if label.kind == LabelKind.Syz:
            if tables is None:
                raise MissingTableEntry(f"{label} needs syzygy tables")
            raw = self.simple_class(label.l, 0) * self.z(label.sign, label.m) - tables.syz(
                label.sign, label.m, label.l
            )
            return self.normal_form(self.x_power(label.r) * raw)
        base = label.eta.scaled(
            self.field.q_power(label.l - 1) * q_int(self.field, label.l).inverse()
        )
        raw = self.simple_class(label.l, label.r) * self.w(label.s, base)
        return self.normal_form(raw - self.band_correction(label.s, label.l, label.r, tables))

    # relation families

    def relations(self, m_values: Iterable[int], etas: Iterable[EtaParam]) -> List[Tuple[str, RingElement]]:
        """Generators of the defining ideal, instantiated for the given m and eta samples."""
        m_values = sorted(set(m_values))
        etas = sorted(set(etas), key=EtaParam.sort_key)
        f1, f3, f4, x, y = self.f1, self.f3, self.f4, self.x, self.y
        zp, zm = self.z(Sign.Plus), self.z(Sign.Minus)
        out = [
            ("x^n - 1", RingElement.monomial(Monomial(xe=self.n)) - 1),
            ("f1 f2", f1 * self.f2),
            ("z+ z- - 1 - f1(2y + 4f3)", zp * zm - 1 - f1 * (2 * y + 4 * f3)),
            ("f1(z+ - 1 - 2f4)", f1 * (zp - 1 - 2 * f4)),
            ("f1(z+ - z-)", f1 * (zp - zm)),
        ]
        for eta in etas:
            for m in m_values:
                w = self.w(m, eta)
                tag = f"m={m}, eta={eta.shorthand()}"
                out.append((f"f1(w - m - m f4) [{tag}]", f1 * (w - m - m * f4)))
                out.append((f"(z+ - f4)w - m x f1^2 [{tag}]", (zp - f4) * w - m * x * f1 * f1))
                out.append((f"(z- - f4)w - m f1(y + f3) [{tag}]", (zm - f4) * w - m * f1 * (y + f3)))
                for t in m_values:
                    if t >= m:
                        out.append(
                            (
                                f"w_m(w_t - 1 - f4) - (t-1) m x f1^2 [{tag}, t={t}]",
                                w * (self.w(t, eta) - 1 - f4) - (t - 1) * m * x * f1 * f1,
                            )
                        )
                for alpha in etas:
                    if alpha != eta:
                        for s in m_values:
                            out.append(
                                (
                                    f"w w' - m s x f1^2 [{tag}, s={s}, alpha={alpha.shorthand()}]",
                                    w * self.w(s, alpha) - m * s * x * f1 * f1,
                                )
                            )
        return out

    def stable_relations(
        self, m_values: Iterable[int], etas: Iterable[EtaParam]
    ) -> List[Tuple[str, RingElement]]:
        """Generators of the stable ideal, with z = z+ and z^{-1} = z-."""
        m_values = sorted(set(m_values))
        etas = sorted(set(etas), key=EtaParam.sort_key)
        f4 = self.f4
        zp, zm = self.z(Sign.Plus), self.z(Sign.Minus)
        out = [
            ("x^n - 1", RingElement.monomial(Monomial(xe=self.n)) - 1),
            ("f1", self.f1),
            ("z z^-1 - 1", zp * zm - 1),
        ]
        for eta in etas:
            for m in m_values:
                w = self.w(m, eta)
                tag = f"m={m}, eta={eta.shorthand()}"
                out.append((f"(z - f4)w [{tag}]", (zp - f4) * w))
                out.append((f"(z - z^-1)w [{tag}]", (zp - zm) * w))
                for t in m_values:
                    if t >= m:
                        out.append((f"w_m(w_t - 1 - f4) [{tag}, t={t}]", w * (self.w(t, eta) - 1 - f4)))
                for alpha in etas:
                    if alpha != eta:
                        for s in m_values:
                            out.append((f"w w' [{tag}, s={s}, alpha={alpha.shorthand()}]", w * self.w(s, alpha)))
        return out


@cache
def presentation_for(n: int) -> Presentation:
    return Presentation(n)


def alternating_binomial_check(m: int, l: int, s: int) -> bool:
    """
    sum_{i=0}^{s} (-1)^i (m-2l+2i)/(m-2l+i) C(m-2l+i, i) == (-1)^s C(m-2l+s, s), exactly.

    Raises:
        RangeError: Outside 1 <= l <= (m-1)/2, s >= 0.
    """
    if not (1 <= l and 2 * l <= m - 1 and s >= 0):
        raise RangeError(f"Need 1 <= l <= (m-1)/2 and s >= 0, got m={m}, l={l}, s={s}")
    k = m - 2 * l
    lhs = sum(
        (Fraction((-1) ** i * (k + 2 * i), k + i) * binomial(k + i, i) for i in range(s + 1)),
        Fraction(0),
    )
    return lhs == (-1) ** s * binomial(k + s, s)


def derive_tables(n: int, max_m: int = 2, max_s: int = 2, catalog=None, verbose: bool = False) -> DerivedTables:
    """
    Fill the dictionary entries that have no closed form by decomposing tensor products with
    the module oracle:

        [P(l,0)]          from V(n-l+1, 0) (x) V(n, 0), largest l first;
        syz_corr[s,m,l]   from Omega^{s(m-1)} V(l,0) (x) Omega^{s} V(1,0), recursively in m;
        band_corr[m,l]    from V(l,0) (x) M_m(1,0,1), checked against the closed form.

    Raises:
        ConstructionFailed: An oracle decomposition does not have the expected shape or
            contradicts a closed form.
    """
    from .modcat import band_parameter, module_catalog

    catalog = catalog or module_catalog(n)
    pres = presentation_for(n)
    tables = DerivedTables(n, max_m, max_s)
    total_steps = (n - 1) * (1 + 2 * max_m + max_s)
    with Progress(disable=not verbose) as progress:
        task = progress.add_task("[cyan]Deriving tables...", total=total_steps)

        for l in range(n - 1, 0, -1):
            k = n - l + 1
            summands = catalog.decompose_tensor(IndecLabel.simple(n, k, 0), IndecLabel.simple(n, n, 0))
            unknown = [lab for lab in summands if lab.kind == LabelKind.Proj and lab.l == l]
            if len(unknown) != 1 or summands[unknown[0]] != 1:
                raise ConstructionFailed(f"V({k},0) (x) V({n},0) = {dict(summands)} has no single P({l},.)")
            known = RingElement()
            for lab, mult in summands.items():
                if lab != unknown[0]:
                    known = known + mult * pres.class_of(lab, tables)
            target = pres.simple_class(k, 0) * pres.simple_class(n, 0) - known
            entry = pres.normal_form(pres.x_power(-unknown[0].r) * target)
            closed = pres.projective_closed_form(l)
            if closed is not None and closed != entry:
                raise ConstructionFailed(f"Oracle [P({l},0)] = {entry} contradicts the closed form {closed}")
            tables.proj_poly[l] = entry
            progress.update(task, advance=1)

        for sign in (Sign.Plus, Sign.Minus):
            for l in range(1, n):
                previous = RingElement()
                for m in range(1, max_m + 1):
                    left = IndecLabel.syzygy(n, sign, m - 1, l, 0)
                    right = IndecLabel.syz(n, sign, 1, 1, 0)
                    summands = catalog.decompose_tensor(left, right)
                    expected = IndecLabel.syz(n, sign, m, l, 0)
                    rest = Counter({lab: k for lab, k in summands.items() if not lab.is_projective})
                    if rest != Counter({expected: 1}):
                        raise ConstructionFailed(f"{left} (x) {right} has non-projective part {dict(rest)}")
                    projective = sum(
                        (k * pres.class_of(lab, tables) for lab, k in summands.items() if lab.is_projective),
                        RingElement(),
                    )
                    previous = pres.normal_form(previous * pres.z(sign) + projective)
                    tables.syz_corr[(sign, m, l)] = previous
                    progress.update(task, advance=1)

        eta = EtaParam.finite(catalog.field.one)
        for m in range(1, max_s + 1):
            for l in range(1, n):
                summands = catalog.decompose_tensor(
                    IndecLabel.simple(n, l, 0), IndecLabel.band(n, m, 1, 0, eta)
                )
                expected = IndecLabel.band(n, m, l, 0, band_parameter(eta, l, catalog.field))
                rest = Counter({lab: k for lab, k in summands.items() if not lab.is_projective})
                if rest != Counter({expected: 1}):
                    raise ConstructionFailed(f"V({l},0) (x) M_{m}(1,0;eta=1) has non-projective part {dict(rest)}")
                corr = pres.normal_form(
                    sum(
                        (k * pres.class_of(lab, tables) for lab, k in summands.items() if lab.is_projective),
                        RingElement(),
                    )
                )
                if corr != pres.band_correction(m, l, 0, tables):
                    raise ConstructionFailed(f"Band correction for m={m}, l={l} contradicts the closed form")
                tables.band_corr[(m, l)] = corr
                progress.update(task, advance=1)
    if verbose:
        info(f"Derived tables for n={n}: {len(tables.proj_poly)} projective, "
             f"{len(tables.syz_corr)} syzygy, {len(tables.band_corr)} band entries")
    return tables


def table_audit(tables: DerivedTables) -> List[str]:
    """Table keys whose entry fails the dimension check."""
    n = tables.n
    pres = presentation_for(n)
    bad = []
    for l, entry in tables.proj_poly.items():
        if pres.dimension(entry) != 2 * n:
            bad.append(f"proj:{l}")
    for (sign, m, l), entry in tables.syz_corr.items():
        syz_dim = IndecLabel.syz(n, sign, m, l, 0).dim
        if pres.dimension(entry) != l * (2 * n - 1) ** m - syz_dim:
            bad.append(f"syz:{sign}:{m}:{l}")
    for (m, l), entry in tables.band_corr.items():
        if pres.dimension(entry) != (l - 1) * m * n:
            bad.append(f"band:{m}:{l}")
    return bad
