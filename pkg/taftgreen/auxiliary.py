from colorama import Fore
from sympy import Poly, binomial as _sympy_binomial, symbols
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import sdm_irref, sdm_nullspace_from_rref
from typing import Dict, List, Sequence, Tuple
import json

from .taftgreen_types import ShapeMismatch, ConstructionFailed
from .cyclo import CycField, CycNum

Vector = Dict[int, CycNum]

_X = symbols("X")


def info(message: str) -> None:
    print(f"[{Fore.CYAN}INFO{Fore.RESET}] {message}")


def warn(message: str) -> None:
    print(f"[{Fore.YELLOW}WARN{Fore.RESET}] {message}")


def ok(message: str) -> None:
    print(f"[{Fore.GREEN}OK{Fore.RESET}] {message}")


def c_half(t: int) -> int:
    """c(t) = floor((t+1)/2), the largest integer with c(t) <= (t+1)/2; c(t) + c(t-1) = t."""
    return (t + 1) // 2


def binomial(top: int, bottom: int) -> int:
    """Integer binomial coefficient, zero outside 0 <= bottom <= top."""
    if bottom < 0 or top < 0 or bottom > top:
        return 0
    return int(_sympy_binomial(top, bottom))


def rref(rows: Sequence[Vector]) -> Tuple[dict, list, dict]:
    """
    Reduced row echelon form of a list of sparse rows.

    Empty rows are dropped before elimination.

    Returns:
        tuple[dict, list, dict]: The RREF rows keyed by position, the pivot columns, and the
        map from non-pivot column to the RREF rows that touch it.
    """
    matrix = {i: dict(row) for i, row in enumerate(r for r in rows if r)}
    if not matrix:
        return {}, [], {}
    return sdm_irref(matrix)


def rank_of(vectors: Sequence[Vector]) -> int:
    return len(rref(vectors)[1])


def kernel(rows: Dict[int, Vector], ncols: int, one: CycNum) -> List[Vector]:
    """Basis of {x : A x = 0} for the sparse matrix whose nonzero rows are `rows`."""
    reduced, pivots, nonzero_cols = rref(list(rows.values()))
    basis, _ = sdm_nullspace_from_rref(reduced, one, ncols, pivots, nonzero_cols)
    return basis


def solve_in_basis(basis: Sequence[Vector], targets: Sequence[Vector]) -> List[Vector]:
    """
    Coordinates of each target in a linearly independent family of vectors.

    Raises:
        ConstructionFailed: A target is outside the span, or the family is dependent.
    """
    width = len(basis)
    rows: Dict[int, Vector] = {}
    for j, vector in enumerate(basis):
        for p, value in vector.items():
            rows.setdefault(p, {})[j] = value
    for t, vector in enumerate(targets):
        for p, value in vector.items():
            rows.setdefault(p, {})[width + t] = value
    reduced, pivots, _ = rref(list(rows.values()))
    if pivots[:width] != list(range(width)) or any(p >= width for p in pivots):
        raise ConstructionFailed("Vector lies outside the span of the given basis")
    solutions: List[Vector] = [dict() for _ in targets]
    for row_index, pivot in enumerate(pivots):
        row = reduced[row_index]
        for col, value in row.items():
            if col >= width:
                solutions[col - width][pivot] = value
    return solutions


def pivot_complement(vectors: Sequence[Vector], coordinates: Sequence[int]) -> List[int]:
    """Coordinates whose standard vectors complete `vectors` to a basis of span(coordinates)."""
    _, pivots, _ = rref(vectors)
    taken = set(pivots)
    return [p for p in coordinates if p not in taken]


def scale_vector(vector: Vector, factor) -> Vector:
    return {k: v * factor for k, v in vector.items()}


def add_vectors(left: Vector, right: Vector) -> Vector:
    total = dict(left)
    for k, v in right.items():
        s = total[k] + v if k in total else v
        if s:
            total[k] = s
        else:
            total.pop(k, None)
    return total


class SparseMatrix:
    """
    Exact sparse matrix over Q(q) stored as a dict of nonempty row dicts.

    Matrices act on column vectors: `(A v)[i] = sum_j A[i][j] v[j]`. Zero entries and empty
    rows are never stored.

    Attributes:
        rows (dict[int, dict[int, CycNum]]): Nonzero entries by row.
        nrows (int): Row count.
        ncols (int): Column count.
        field (CycField): Field of the entries.
    """

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Dict[int, Vector], nrows: int, ncols: int, field: CycField):
        self.rows = rows
        self.nrows = nrows
        self.ncols = ncols
        self.field = field

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: CycField) -> "SparseMatrix":
        return cls({}, nrows, ncols, field)

    @classmethod
    def identity(cls, size: int, field: CycField) -> "SparseMatrix":
        return cls({i: {i: field.one} for i in range(size)}, size, size, field)

    @classmethod
    def diagonal(cls, entries: Sequence[CycNum], field: CycField) -> "SparseMatrix":
        return cls({i: {i: e} for i, e in enumerate(entries) if e}, len(entries), len(entries), field)

    @classmethod
    def from_entries(
        cls, entries: Dict[Tuple[int, int], CycNum], nrows: int, ncols: int, field: CycField
    ) -> "SparseMatrix":
        rows: Dict[int, Vector] = {}
        for (i, j), value in entries.items():
            if value:
                rows.setdefault(i, {})[j] = value
        return cls(rows, nrows, ncols, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int, field: CycField) -> "SparseMatrix":
        rows: Dict[int, Vector] = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                rows.setdefault(i, {})[j] = value
        return cls(rows, nrows, len(columns), field)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["SparseMatrix"], field: CycField) -> "SparseMatrix":
        rows: Dict[int, Vector] = {}
        r0 = c0 = 0
        for block in blocks:
            for i, row in block.rows.items():
                rows[r0 + i] = {c0 + j: v for j, v in row.items()}
            r0 += block.nrows
            c0 += block.ncols
        return cls(rows, r0, c0, field)

    @classmethod
    def hstack(cls, blocks: Sequence["SparseMatrix"], field: CycField) -> "SparseMatrix":
        if len({b.nrows for b in blocks}) > 1:
            raise ShapeMismatch("hstack needs blocks with equal row counts")
        rows: Dict[int, Vector] = {}
        c0 = 0
        for block in blocks:
            for i, row in block.rows.items():
                target = rows.setdefault(i, {})
                for j, v in row.items():
                    target[c0 + j] = v
            c0 += block.ncols
        nrows = blocks[0].nrows if blocks else 0
        return cls(rows, nrows, c0, field)

    @classmethod
    def vstack(cls, blocks: Sequence["SparseMatrix"], field: CycField) -> "SparseMatrix":
        return cls.hstack([b.transpose() for b in blocks], field).transpose()

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def get(self, i: int, j: int) -> CycNum:
        return self.rows.get(i, {}).get(j, self.field.zero)

    def _check_same_shape(self, other: "SparseMatrix"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"Shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same_shape(other)
        rows = {i: dict(row) for i, row in self.rows.items()}
        for i, row in other.rows.items():
            merged = add_vectors(rows.get(i, {}), row)
            if merged:
                rows[i] = merged
            else:
                rows.pop(i, None)
        return SparseMatrix(rows, self.nrows, self.ncols, self.field)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, factor) -> "SparseMatrix":
        if not factor:
            return SparseMatrix.zeros(self.nrows, self.ncols, self.field)
        rows = {i: {j: v * factor for j, v in row.items()} for i, row in self.rows.items()}
        return SparseMatrix(rows, self.nrows, self.ncols, self.field)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        result: Dict[int, Vector] = {}
        other_rows = other.rows
        for i, row in self.rows.items():
            acc: Vector = {}
            for j, a in row.items():
                brow = other_rows.get(j)
                if not brow:
                    continue
                for k, b in brow.items():
                    if k in acc:
                        acc[k] = acc[k] + a * b
                    else:
                        acc[k] = a * b
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                result[i] = acc
        return SparseMatrix(result, self.nrows, other.ncols, self.field)

    def power(self, k: int) -> "SparseMatrix":
        result = SparseMatrix.identity(self.nrows, self.field)
        for _ in range(k):
            result = result @ self
        return result

    def apply(self, vector: Vector) -> Vector:
        out: Vector = {}
        for i, row in self.rows.items():
            acc = None
            for j, a in row.items():
                v = vector.get(j)
                if v is not None:
                    acc = a * v if acc is None else acc + a * v
            if acc:
                out[i] = acc
        return out

    def transpose(self) -> "SparseMatrix":
        rows: Dict[int, Vector] = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return SparseMatrix(rows, self.ncols, self.nrows, self.field)

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.ncols)]
        for i, row in self.rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        rows: Dict[int, Vector] = {}
        for i1, row1 in self.rows.items():
            for i2, row2 in other.rows.items():
                target = rows.setdefault(i1 * other.nrows + i2, {})
                for j1, a in row1.items():
                    for j2, b in row2.items():
                        target[j1 * other.ncols + j2] = a * b
        return SparseMatrix(
            rows, self.nrows * other.nrows, self.ncols * other.ncols, self.field
        )

    def restrict(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "SparseMatrix":
        """Submatrix on the given rows and columns, renumbered in the given order."""
        col_pos = {c: k for k, c in enumerate(col_indices)}
        rows: Dict[int, Vector] = {}
        for k, i in enumerate(row_indices):
            row = self.rows.get(i)
            if not row:
                continue
            picked = {col_pos[j]: v for j, v in row.items() if j in col_pos}
            if picked:
                rows[k] = picked
        return SparseMatrix(rows, len(row_indices), len(col_indices), self.field)

    def trace(self) -> CycNum:
        total = self.field.zero
        for i, row in self.rows.items():
            if i in row:
                total = total + row[i]
        return total

    def is_zero(self) -> bool:
        return not self.rows

    def rank(self) -> int:
        return rank_of(list(self.rows.values()))

    def nullspace(self) -> List[Vector]:
        return kernel(self.rows, self.ncols, self.field.one)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def charpoly(self) -> Poly:
        """Characteristic polynomial of a square matrix, over `field.number_field()`."""
        K = self.field.number_field()
        to_k = self.field.to_algebraic
        rows = {i: {j: to_k(v) for j, v in row.items()} for i, row in self.rows.items()}
        return Poly(DomainMatrix(rows, self.shape, K).charpoly(), _X, domain=K)

    def evaluate(self, poly: Poly) -> "SparseMatrix":
        """p(A) by Horner's rule for p over `field.number_field()`."""
        unit = SparseMatrix.identity(self.nrows, self.field)
        result = SparseMatrix.zeros(self.nrows, self.ncols, self.field)
        for coeff in poly.rep.to_list():
            result = result @ self + unit.scale(self.field.from_algebraic(coeff))
        return result

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return False
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, len(self.rows)))

    def to_json(self) -> dict:
        entries = [
            [i, j, self.rows[i][j].to_json()["coeffs"]]
            for i in sorted(self.rows)
            for j in sorted(self.rows[i])
        ]
        return {"shape": [self.nrows, self.ncols], "entries": entries}

    def fingerprint_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        return f"[{Fore.CYAN}{self.nrows}x{self.ncols}{Fore.RESET}] nnz={sum(len(r) for r in self.rows.values())}"
