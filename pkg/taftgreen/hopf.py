from functools import cache
from colorama import Fore
from itertools import product
from rich.progress import Progress
from typing import Dict, List, Tuple
import random

from .taftgreen_types import ShapeMismatch, ParseError, RangeError, ValidationResult
from .cyclo import CycField, CycNum, cyclotomic_field, q_int
from .auxiliary import SparseMatrix, kernel, rank_of, rref, info

Exponents = Tuple[int, int, int, int]

ONE: Exponents = (0, 0, 0, 0)
GENERATORS: Dict[str, Exponents] = {
    "a": (1, 0, 0, 0),
    "b": (0, 1, 0, 0),
    "c": (0, 0, 1, 0),
    "d": (0, 0, 0, 1),
}


class AlgebraElement:
    """
    An element of H_n(1,q) in PBW form: a map from exponent quadruples (i, j, l, k), meaning
    a^i b^j c^l d^k with all exponents in 0..n-1, to nonzero CycNum coefficients.
    """

    __slots__ = ("terms", "field")

    def __init__(self, terms: Dict[Exponents, CycNum], field: CycField):
        self.terms = {e: c for e, c in terms.items() if c}
        self.field = field

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return AlgebraElement(terms, self.field)

    def __neg__(self):
        return AlgebraElement({e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, factor) -> "AlgebraElement":
        return AlgebraElement({e: c * factor for e, c in self.terms.items()}, self.field)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def to_json(self) -> dict:
        return {
            "terms": [
                {"e": list(e), "c": self.terms[e].to_json()} for e in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, data: dict, field: CycField) -> "AlgebraElement":
        try:
            terms = {
                tuple(t["e"]): CycNum.from_json(t["c"], field) for t in data["terms"]
            }
        except (KeyError, TypeError) as err:
            raise ParseError(f"Malformed algebra element {data!r}: {err}")
        for e in terms:
            if len(e) != 4 or not all(0 <= x < field.n for x in e):
                raise ParseError(f"Exponents {e} are outside 0..{field.n - 1}")
        return cls(terms, field)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j, l, k) in sorted(self.terms):
            word = "".join(
                f"{g}^{x}" if x > 1 else g
                for g, x in (("a", i), ("b", j), ("c", l), ("d", k))
                if x
            )
            parts.append(f"({self.terms[(i, j, l, k)]}){word or '1'}")
        return f"{Fore.GREEN}{' + '.join(parts)}{Fore.RESET}"


class MatrixRep:
    """
    A representation given by four arbitrary generator matrices.

    The module catalog keeps its own weight-diagonal representation; this general form is
    used for the regular representation, whose b and c are not diagonal in the PBW basis.
    """

    def __init__(self, a, b, c, d, basis_tag: str = ""):
        self.a, self.b, self.c, self.d = a, b, c, d
        self.dim = a.nrows
        self.field = a.field
        self.basis_tag = basis_tag

    def matrices(self) -> Tuple[SparseMatrix, SparseMatrix, SparseMatrix, SparseMatrix]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"[{Fore.CYAN}MatrixRep{Fore.RESET}] dim={self.dim} {self.basis_tag}"


def relation_residues(rep) -> List[Tuple[str, SparseMatrix]]:
    """Each defining relation of H_n(1,q) as `lhs - rhs`, evaluated on the matrices of `rep`."""
    a, b, c, d = rep.matrices()
    size = a.nrows
    for m in (a, b, c, d):
        if m.shape != (size, size):
            raise ShapeMismatch(
                f"Generator matrices must be square of one size, got {[x.shape for x in (a, b, c, d)]}"
            )
    field = a.field
    q = field.q
    n = field.n
    one = SparseMatrix.identity(size, field)
    zero = SparseMatrix.zeros(size, size, field)
    return [
        ("ba = q ab", b @ a - (a @ b).scale(q)),
        ("db = q bd", d @ b - (b @ d).scale(q)),
        ("ca = q ac", c @ a - (a @ c).scale(q)),
        ("dc = q cd", d @ c - (c @ d).scale(q)),
        ("bc = cb", b @ c - c @ b),
        ("a^n = 0", a.power(n) - zero),
        ("b^n = 1", b.power(n) - one),
        ("c^n = 1", c.power(n) - one),
        ("d^n = 0", d.power(n) - zero),
        ("da - q ad = 1 - bc", d @ a - (a @ d).scale(q) - (one - b @ c)),
    ]


def rep_validate(rep) -> ValidationResult:
    """
    Check the defining relations of H_n(1,q) as exact matrix identities.

    Args:
        rep: Anything exposing `matrices()` -> (a, b, c, d).

    Returns:
        ValidationResult: ok, or the name of the first violated relation.

    Raises:
        ShapeMismatch: The four matrices are not square of one common size.
    """
    for name, residue in relation_residues(rep):
        if not residue.is_zero():
            return ValidationResult(False, name)
    return ValidationResult(True)


class HopfAlgebra:
    def __init__(self, n: int, verbose: bool = False):
        """
        The Hopf algebra H_n(1,q): generators a, b, c, d with

            ba = qab, db = qbd, ca = qac, dc = qcd, bc = cb,
            a^n = 0, b^n = 1, c^n = 1, d^n = 0, da - qad = 1 - bc,

        and coproduct a -> a(x)b + 1(x)a, b -> b(x)b, c -> c(x)c, d -> d(x)c + 1(x)d.

        Products are computed by straightening onto the PBW basis a^i b^j c^l d^k. Every
        expensive object (monomial products, the regular representation, the radical) is
        computed once and cached on the instance.

        Attributes:
            n (int): Order of q.
            field (CycField): Q(q).
            verbose (bool): Prints progress while building the radical.

        Methods:
            - pbw_mul(u, v): Product of two algebra elements.
            - regular_rep(): Left-multiplication matrices on the PBW basis.
            - radical_basis(): Basis of the Jacobson radical via the trace form.
            - counit(u), coproduct_generator(g), check_coassociativity().
            - central_element(): The central element a d b^-1 + (b^-1 + q^-1 c)/(q - 1).
        """
        if n < 2:
            raise RangeError(f"H_n(1,q) needs n >= 2, got {n}")
        self.n = n
        self.field = cyclotomic_field(n)
        self.verbose = verbose
        self.basis: List[Exponents] = list(product(range(n), repeat=4))
        self.index: Dict[Exponents, int] = {e: k for k, e in enumerate(self.basis)}
        self._products: Dict[Tuple[Exponents, Exponents], Dict[Exponents, CycNum]] = {}

    def element(self, terms: Dict[Exponents, object]) -> AlgebraElement:
        """Build an element from exponent keys and int, Fraction or CycNum coefficients."""
        converted = {}
        for e, c in terms.items():
            converted[e] = c if isinstance(c, CycNum) else self.field.from_rational(c)
        return AlgebraElement(converted, self.field)

    def generator(self, name: str) -> AlgebraElement:
        return AlgebraElement({GENERATORS[name]: self.field.one}, self.field)

    def unit(self) -> AlgebraElement:
        return AlgebraElement({ONE: self.field.one}, self.field)

    def _left_generator(self, g: str, mono: Exponents) -> Dict[Exponents, CycNum]:
        """Left multiplication of the PBW monomial `mono` by one generator, in PBW form."""
        n, f = self.n, self.field
        i, j, l, k = mono
        if g == "a":
            return {} if i + 1 >= n else {(i + 1, j, l, k): f.one}
        if g == "b":
            return {(i, (j + 1) % n, l, k): f.q_power(i)}
        if g == "c":
            return {(i, j, (l + 1) % n, k): f.q_power(i)}
        # d a^i = q^i a^i d + (i)_q a^{i-1} (1 - q^{i-1} bc)
        out: Dict[Exponents, CycNum] = {}
        if k + 1 < n:
            out[(i, j, l, k + 1)] = f.q_power(i + j + l)
        if i >= 1:
            qi = q_int(f, i)
            lowered = (i - 1, j, l, k)
            shifted = (i - 1, (j + 1) % n, (l + 1) % n, k)
            out[lowered] = out[lowered] + qi if lowered in out else qi
            term = -(qi * f.q_power(i - 1))
            out[shifted] = out[shifted] + term if shifted in out else term
        return {e: c for e, c in out.items() if c}

    def mul_monomials(self, left: Exponents, right: Exponents) -> Dict[Exponents, CycNum]:
        """PBW form of a^i b^j c^l d^k * right, peeling generators off the left factor."""
        key = (left, right)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        if left == ONE:
            result = {right: self.field.one}
        else:
            i, j, l, k = left
            if i:
                g, rest = "a", (i - 1, j, l, k)
            elif j:
                g, rest = "b", (0, j - 1, l, k)
            elif l:
                g, rest = "c", (0, 0, l - 1, k)
            else:
                g, rest = "d", (0, 0, 0, k - 1)
            result = {}
            for mono, coeff in self.mul_monomials(rest, right).items():
                for target, c in self._left_generator(g, mono).items():
                    value = coeff * c
                    result[target] = result[target] + value if target in result else value
            result = {e: c for e, c in result.items() if c}
        self._products[key] = result
        return result

    def structure_constants(self) -> Dict[Tuple[Exponents, Exponents], Dict[Exponents, CycNum]]:
        """The full table of PBW monomial products; n^8 entries."""
        for left in self.basis:
            for right in self.basis:
                self.mul_monomials(left, right)
        return self._products

    def pbw_mul(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        terms: Dict[Exponents, CycNum] = {}
        for e1, c1 in u.terms.items():
            for e2, c2 in v.terms.items():
                for e, c in self.mul_monomials(e1, e2).items():
                    value = c1 * c2 * c
                    terms[e] = terms[e] + value if e in terms else value
        return AlgebraElement(terms, self.field)

    def random_element(self, rng: random.Random, size: int = 3, bound: int = 3) -> AlgebraElement:
        terms = {}
        for _ in range(size):
            e = tuple(rng.randrange(self.n) for _ in range(4))
            terms[e] = self.field.from_rational(rng.randint(-bound, bound)) + self.field.q_power(
                rng.randrange(self.n)
            )
        return AlgebraElement(terms, self.field)

    def counit(self, u: AlgebraElement) -> CycNum:
        """epsilon(a) = epsilon(d) = 0, epsilon(b) = epsilon(c) = 1."""
        total = self.field.zero
        for (i, j, l, k), c in u.terms.items():
            if i == 0 and k == 0:
                total = total + c
        return total

    def coproduct_generator(self, g: str) -> List[Tuple[CycNum, Exponents, Exponents]]:
        one = self.field.one
        A, B, C, D = (GENERATORS[x] for x in "abcd")
        table = {
            "a": [(one, A, B), (one, ONE, A)],
            "b": [(one, B, B)],
            "c": [(one, C, C)],
            "d": [(one, D, C), (one, ONE, D)],
        }
        return table[g]

    def _coproduct_monomial(self, mono: Exponents) -> List[Tuple[CycNum, Exponents, Exponents]]:
        if mono == ONE:
            return [(self.field.one, ONE, ONE)]
        for name, e in GENERATORS.items():
            if e == mono:
                return self.coproduct_generator(name)
        raise RangeError(f"Coproduct is only tabulated on generators, not {mono}")

    def check_coassociativity(self) -> bool:
        """(Delta (x) id) Delta(g) == (id (x) Delta) Delta(g) for each generator g."""
        for g in GENERATORS:
            left: Dict[tuple, CycNum] = {}
            right: Dict[tuple, CycNum] = {}
            for coeff, x, y in self.coproduct_generator(g):
                for c2, x1, x2 in self._coproduct_monomial(x):
                    key = (x1, x2, y)
                    left[key] = left.get(key, self.field.zero) + coeff * c2
                for c2, y1, y2 in self._coproduct_monomial(y):
                    key = (x, y1, y2)
                    right[key] = right.get(key, self.field.zero) + coeff * c2
            left = {k: v for k, v in left.items() if v}
            right = {k: v for k, v in right.items() if v}
            if left != right:
                return False
        return True

    def central_element(self) -> AlgebraElement:
        """C = a d b^{-1} + (b^{-1} + q^{-1} c) / (q - 1); it commutes with every generator."""
        f = self.field
        b_inv = AlgebraElement({(0, self.n - 1, 0, 0): f.one}, f)
        ad = self.pbw_mul(self.generator("a"), self.generator("d"))
        first = self.pbw_mul(ad, b_inv)
        inv = (f.q - f.one).inverse()
        tail = b_inv.scale(inv) + self.generator("c").scale(inv * f.q_power(-1))
        return first + tail

    @cache
    def regular_rep(self) -> MatrixRep:
        """Left multiplication by a, b, c, d on the PBW basis, as an n^4-dimensional MatrixRep."""
        size = len(self.basis)
        mats = []
        for g in "abcd":
            rows: Dict[int, Dict[int, CycNum]] = {}
            for col, mono in enumerate(self.basis):
                for target, coeff in self._left_generator(g, mono).items():
                    rows.setdefault(self.index[target], {})[col] = coeff
            mats.append(SparseMatrix(rows, size, size, self.field))
        return MatrixRep(*mats, basis_tag=f"regular(n={self.n})")

    @cache
    def trace_vector(self) -> Dict[Exponents, CycNum]:
        """tr(L_e) for each PBW monomial e; only degree-zero monomials (i == k) can contribute."""
        traces = {}
        for mono in self.basis:
            if mono[0] != mono[3]:
                continue
            total = self.field.zero
            for other in self.basis:
                coeff = self.mul_monomials(mono, other).get(other)
                if coeff is not None:
                    total = total + coeff
            if total:
                traces[mono] = total
        return traces

    @cache
    def radical_basis(self) -> List[AlgebraElement]:
        """
        Basis of the Jacobson radical J of H_n(1,q).

        J is the kernel of the trace form t(u, v) = tr(L_u L_v) = tr(L_{uv}) of the regular
        representation, which is exact in characteristic 0. The Gram matrix is graded by
        (a-degree - d-degree), so only pairs of opposite degree are evaluated.

        Returns:
            List[AlgebraElement]: A basis of J; its size is n^4 - n * sum(l^2 for l in 1..n).
        """
        traces = self.trace_vector()
        size = len(self.basis)
        by_degree: Dict[int, List[Exponents]] = {}
        for mono in self.basis:
            by_degree.setdefault(mono[0] - mono[3], []).append(mono)
        gram: Dict[int, Dict[int, CycNum]] = {}
        with Progress(disable=not self.verbose) as progress:
            task = progress.add_task("[cyan]Trace form Gram matrix...", total=size)
            for left in self.basis:
                row = {}
                for right in by_degree.get(-(left[0] - left[3]), []):
                    total = None
                    for mono, coeff in self.mul_monomials(left, right).items():
                        t = traces.get(mono)
                        if t is not None:
                            term = coeff * t
                            total = term if total is None else total + term
                    if total:
                        row[self.index[right]] = total
                if row:
                    gram[self.index[left]] = row
                progress.update(task, advance=1)
        vectors = kernel(gram, size, self.field.one)
        if self.verbose:
            info(f"dim rad H_{self.n}(1,q) = {len(vectors)}")
        return [
            AlgebraElement({self.basis[k]: v for k, v in vec.items()}, self.field)
            for vec in vectors
        ]

    def _span_dim(self, elements: List[AlgebraElement]) -> Tuple[int, List[AlgebraElement]]:
        vectors = [{self.index[e]: c for e, c in x.terms.items()} for x in elements]
        reduced, pivots, _ = rref(vectors)
        basis = [
            AlgebraElement({self.basis[k]: v for k, v in reduced[i].items()}, self.field)
            for i in range(len(pivots))
        ]
        return len(pivots), basis

    def in_radical(self, u: AlgebraElement) -> bool:
        radical = self.radical_basis()
        vectors = [{self.index[e]: c for e, c in x.terms.items()} for x in radical]
        extended = vectors + [{self.index[e]: c for e, c in u.terms.items()}]
        return rank_of(extended) == rank_of(vectors)

    @cache
    def radical_power_dims(self) -> Tuple[int, int, int]:
        """(dim J, dim J^2, dim J^3); the Loewy length is 3, so J^3 = 0 and J^2 != 0."""
        radical = self.radical_basis()
        square = [self.pbw_mul(u, v) for u in radical for v in radical]
        dim2, basis2 = self._span_dim([x for x in square if x])
        cube = [self.pbw_mul(u, v) for u in basis2 for v in radical]
        dim3, _ = self._span_dim([x for x in cube if x])
        return (len(radical), dim2, dim3)


@cache
def hopf_algebra(n: int) -> HopfAlgebra:
    return HopfAlgebra(n)
