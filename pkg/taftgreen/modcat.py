from collections import Counter
from colorama import Fore
from functools import cache
from rich.progress import Progress
from typing import Callable, Dict, Iterable, Iterator, List, Sequence, Tuple, Union
import hashlib, json, random

from .taftgreen_types import *
from .cyclo import CycField, CycNum, EtaParam, cyclotomic_field, q_int, alpha
from .auxiliary import (
    SparseMatrix,
    Vector,
    add_vectors,
    info,
    kernel,
    pivot_complement,
    rank_of,
    rref,
    scale_vector,
    solve_in_basis,
)
from .hopf import AlgebraElement, hopf_algebra

Weight = Tuple[int, int]


def _shift_weight(w: Weight, delta: int, n: int) -> Weight:
    return ((w[0] + delta) % n, (w[1] + delta) % n)


class ModuleRep:
    """
    A finite-dimensional H_n(1,q)-module in a weight basis.

    b and c are diagonal: basis vector p has weight `weights[p] = (beta, gamma)` meaning
    b e_p = q^beta e_p and c e_p = q^gamma e_p. a raises both weight components by one and
    d lowers both by one, so only `a` and `d` are stored as matrices.

    Attributes:
        a (SparseMatrix): Action of a.
        d (SparseMatrix): Action of d.
        weights (tuple[Weight]): Weight of each basis vector, reduced mod n.
        basis_tag (str): Where the basis came from.
    """

    def __init__(self, a: SparseMatrix, d: SparseMatrix, weights: Sequence[Weight], basis_tag: str = ""):
        self.a = a
        self.d = d
        self.field: CycField = a.field
        self.n = self.field.n
        self.weights = tuple((b % self.n, c % self.n) for b, c in weights)
        self.dim = len(self.weights)
        self.basis_tag = basis_tag
        if a.shape != (self.dim, self.dim) or d.shape != (self.dim, self.dim):
            raise ShapeMismatch(
                f"Action matrices {a.shape}, {d.shape} do not match {self.dim} weights"
            )
        self._blocks = None

    @property
    def act_a(self) -> SparseMatrix:
        return self.a

    @property
    def act_d(self) -> SparseMatrix:
        return self.d

    @property
    def act_b(self) -> SparseMatrix:
        return SparseMatrix.diagonal([self.field.q_power(b) for b, _ in self.weights], self.field)

    @property
    def act_c(self) -> SparseMatrix:
        return SparseMatrix.diagonal([self.field.q_power(c) for _, c in self.weights], self.field)

    def matrices(self) -> Tuple[SparseMatrix, SparseMatrix, SparseMatrix, SparseMatrix]:
        return (self.a, self.act_b, self.act_c, self.d)

    def blocks(self) -> Dict[Weight, List[int]]:
        """Basis indices grouped by weight."""
        if self._blocks is None:
            blocks: Dict[Weight, List[int]] = {}
            for p, w in enumerate(self.weights):
                blocks.setdefault(w, []).append(p)
            self._blocks = blocks
        return self._blocks

    def weight_of(self, vector: Vector) -> Weight:
        if not vector:
            raise ConstructionFailed("The zero vector has no weight")
        found = {self.weights[p] for p in vector}
        if len(found) != 1:
            raise ConstructionFailed(f"Vector mixes weights {sorted(found)}")
        return found.pop()

    def weight_components(self, vector: Vector) -> List[Vector]:
        parts: Dict[Weight, Vector] = {}
        for p, v in vector.items():
            parts.setdefault(self.weights[p], {})[p] = v
        return list(parts.values())

    def retagged(self, basis_tag: str) -> "ModuleRep":
        """The same matrices under another tag; the original object is left alone."""
        return ModuleRep(self.a, self.d, self.weights, basis_tag)

    def fingerprint(self) -> str:
        payload = {
            "a": self.a.to_json(),
            "d": self.d.to_json(),
            "weights": [list(w) for w in self.weights],
        }
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.md5(text.encode("utf-8")).hexdigest()

    def __repr__(self):
        return f"[{Fore.CYAN}{self.basis_tag or 'module'}{Fore.RESET}] dim={self.dim}"


def tensor(M: ModuleRep, N: ModuleRep) -> ModuleRep:
    """
    M (x) N through the coproduct: a -> a(x)b + 1(x)a, d -> d(x)c + 1(x)d, b, c grouplike.

    The basis vector m_i (x) n_j sits at index i * dim N + j.
    """
    field = M.field
    n = M.n
    identity = SparseMatrix.identity(M.dim, field)
    a = M.a.kron(N.act_b) + identity.kron(N.a)
    d = M.d.kron(N.act_c) + identity.kron(N.d)
    weights = [
        ((bm + bn) % n, (gm + gn) % n) for bm, gm in M.weights for bn, gn in N.weights
    ]
    return ModuleRep(a, d, weights, f"{M.basis_tag} (x) {N.basis_tag}")


def direct_sum(modules: Sequence[ModuleRep], field: CycField = None) -> ModuleRep:
    field = field or modules[0].field
    a = SparseMatrix.block_diagonal([M.a for M in modules], field)
    d = SparseMatrix.block_diagonal([M.d for M in modules], field)
    weights = [w for M in modules for w in M.weights]
    return ModuleRep(a, d, weights, " + ".join(M.basis_tag for M in modules))


def hom_space(X: ModuleRep, M: ModuleRep) -> List[SparseMatrix]:
    """
    Basis of Hom_H(X, M) as (dim M x dim X) matrices.

    A weight-preserving T commutes with b and c automatically, so the unknowns are the
    entries T[p][s] with weight(p) == weight(s) and the equations come from a and d only.
    """
    field = X.field
    n = X.n
    m_blocks = M.blocks()
    var: Dict[Tuple[int, int], int] = {}
    for s, w in enumerate(X.weights):
        for p in m_blocks.get(w, ()):
            var[(p, s)] = len(var)
    if not var:
        return []
    equations: Dict[int, Vector] = {}
    for g_x, g_m, delta in ((X.a, M.a, 1), (X.d, M.d, -1)):
        x_cols = g_x.transpose().rows
        for s, w in enumerate(X.weights):
            target = _shift_weight(w, delta, n)
            col = x_cols.get(s, {})
            for p in m_blocks.get(target, ()):
                row: Vector = {}
                for s2, value in col.items():
                    k = var[(p, s2)]
                    row[k] = row[k] + value if k in row else value
                for p2, value in g_m.rows.get(p, {}).items():
                    k = var[(p2, s)]
                    row[k] = row[k] - value if k in row else -value
                row = {k: v for k, v in row.items() if v}
                if row:
                    equations[len(equations)] = row
    positions = list(var)
    maps = []
    for vector in kernel(equations, len(var), field.one):
        rows: Dict[int, Vector] = {}
        for k, value in vector.items():
            p, s = positions[k]
            rows.setdefault(p, {})[s] = value
        maps.append(SparseMatrix(rows, M.dim, X.dim, field))
    return maps


def submodule(M: ModuleRep, vectors: Sequence[Vector], tag: str = "") -> ModuleRep:
    """
    The submodule spanned by linearly independent weight vectors, in that basis.

    Raises:
        ConstructionFailed: The span is not stable under a and d.
    """
    groups: Dict[Weight, List[int]] = {}
    weights = []
    for j, vector in enumerate(vectors):
        w = M.weight_of(vector)
        groups.setdefault(w, []).append(j)
        weights.append(w)
    dim = len(vectors)
    mats = []
    for g, delta in ((M.a, 1), (M.d, -1)):
        rows: Dict[int, Vector] = {}
        for w, members in groups.items():
            images = [g.apply(vectors[j]) for j in members]
            if not any(images):
                continue
            target = groups.get(_shift_weight(w, delta, M.n), [])
            coords = solve_in_basis([vectors[j] for j in target], images)
            for j, coord in zip(members, coords):
                for pos, value in coord.items():
                    rows.setdefault(target[pos], {})[j] = value
        mats.append(SparseMatrix(rows, dim, dim, M.field))
    return ModuleRep(mats[0], mats[1], weights, tag or f"sub({M.basis_tag})")


def _independent_by_weight(M: ModuleRep, vectors: Sequence[Vector]) -> Dict[Weight, List[Vector]]:
    grouped: Dict[Weight, List[Vector]] = {}
    for vector in vectors:
        for part in M.weight_components(vector):
            grouped.setdefault(M.weight_of(part), []).append(part)
    reduced = {}
    for w, members in grouped.items():
        rows, pivots, _ = rref(members)
        reduced[w] = [rows[i] for i in range(len(pivots))]
    return reduced


def quotient(M: ModuleRep, vectors: Sequence[Vector], tag: str = "") -> ModuleRep:
    """
    M / U for the submodule U spanned by `vectors`.

    The quotient basis is the standard vectors at the non-pivot coordinates of each weight
    block of U.
    """
    spans = _independent_by_weight(M, vectors)
    complement = {
        w: pivot_complement(spans.get(w, []), coords) for w, coords in M.blocks().items()
    }
    order = [(w, c) for w in sorted(complement) for c in complement[w]]
    new_index = {c: k for k, (_, c) in enumerate(order)}
    dim = len(order)
    one = M.field.one
    mats = []
    for g, delta in ((M.a, 1), (M.d, -1)):
        columns = g.columns()
        rows: Dict[int, Vector] = {}
        for w, comp in complement.items():
            images = [columns[c] for c in comp]
            if not any(images):
                continue
            target_w = _shift_weight(w, delta, M.n)
            span = spans.get(target_w, [])
            target_comp = complement.get(target_w, [])
            basis = list(span) + [{c2: one} for c2 in target_comp]
            coords = solve_in_basis(basis, images)
            offset = len(span)
            for c, coord in zip(comp, coords):
                for pos, value in coord.items():
                    if pos >= offset:
                        rows.setdefault(new_index[target_comp[pos - offset]], {})[new_index[c]] = value
        mats.append(SparseMatrix(rows, dim, dim, M.field))
    return ModuleRep(mats[0], mats[1], [w for w, _ in order], tag or f"quot({M.basis_tag})")


def restricted_kernel(f: SparseMatrix, source: ModuleRep, target: ModuleRep) -> List[Vector]:
    """Kernel of a module map f: source -> target, one weight block at a time."""
    vectors = []
    t_blocks = target.blocks()
    for w, cols in source.blocks().items():
        sub = f.restrict(t_blocks.get(w, []), cols)
        for vector in sub.nullspace():
            vectors.append({cols[k]: v for k, v in vector.items()})
    return vectors


def _sweep(
    basis: Sequence[SparseMatrix], accept: Callable[[SparseMatrix], bool], seed: int = 0
) -> Union[SparseMatrix, None]:
    """
    Look for an element of span(basis) satisfying `accept`: basis elements first, then their
    sum, then seeded small-integer combinations with an escalating coefficient bound.
    """
    if not basis:
        return None
    for candidate in basis:
        if accept(candidate):
            return candidate
    total = basis[0]
    for other in basis[1:]:
        total = total + other
    if accept(total):
        return total
    rng = random.Random(seed)
    for bound in (1, 2, 4, 8):
        for _ in range(12):
            coeffs = [rng.randint(-bound, bound) for _ in basis]
            if not any(coeffs):
                continue
            combo = None
            for c, h in zip(coeffs, basis):
                if c:
                    combo = h.scale(c) if combo is None else combo + h.scale(c)
            if accept(combo):
                return combo
    return None


def is_isomorphic(M: ModuleRep, N: ModuleRep, seed: int = 0) -> Union[SparseMatrix, None]:
    """
    An invertible intertwiner M -> N, or None when M and N are provably not isomorphic.

    Non-isomorphism is only concluded from a difference in dimension, weights or hom
    dimensions.

    Raises:
        Inconclusive: The hom-dimension profiles agree but the sweep found no invertible element.
    """
    if M.dim != N.dim or Counter(M.weights) != Counter(N.weights):
        return None
    forward = hom_space(M, N)
    if not forward:
        return None
    if len(hom_space(N, M)) != len(forward):
        return None
    if len(hom_space(M, M)) != len(forward) or len(hom_space(N, N)) != len(forward):
        return None
    witness = _sweep(forward, SparseMatrix.is_invertible, seed)
    if witness is None:
        raise Inconclusive(
            f"Equal hom profiles for {M.basis_tag} and {N.basis_tag} but no invertible intertwiner found"
        )
    return witness


def trace_pairing(left: Sequence[SparseMatrix], right: Sequence[SparseMatrix]) -> Dict[int, Vector]:
    """Rows i, columns j: tr(left_i @ right_j), skipping zero entries."""
    rows: Dict[int, Vector] = {}
    for i, g in enumerate(left):
        row = {}
        for j, f in enumerate(right):
            total = None
            for s, grow in g.rows.items():
                for p, value in grow.items():
                    other = f.rows.get(p, {}).get(s)
                    if other is not None:
                        term = value * other
                        total = term if total is None else total + term
            if total:
                row[j] = total
        if row:
            rows[i] = row
    return rows


def is_local(M: ModuleRep) -> bool:
    """End(M) is local: the trace form on End(M) has rank dim End - dim rad End = 1."""
    endo = hom_space(M, M)
    gram = trace_pairing(endo, endo)
    return rank_of(list(gram.values())) == 1


def _endomorphism_candidates(basis: Sequence[SparseMatrix], seed: int) -> Iterator[SparseMatrix]:
    """Basis elements, pairwise sums, then seeded small-integer combinations."""
    yield from basis
    for i, f in enumerate(basis):
        for g in basis[i + 1 :]:
            yield f + g
    rng = random.Random(seed)
    for bound in (1, 2, 4, 8):
        for _ in range(12):
            coeffs = [rng.randint(-bound, bound) for _ in basis]
            if not any(coeffs):
                continue
            combo = None
            for c, h in zip(coeffs, basis):
                if c:
                    combo = h.scale(c) if combo is None else combo + h.scale(c)
            yield combo


def _coprime_factors(M: ModuleRep, f: SparseMatrix) -> list:
    """
    Distinct monic irreducible factors over Q(q) of the characteristic polynomial of the
    endomorphism f, computed block by block on the weight spaces of M.
    """
    total = None
    for indices in M.blocks().values():
        block = f.restrict(indices, indices).charpoly()
        total = block if total is None else total.lcm(block)
    _, factors = total.sqf_part().factor_list()
    return [factor.monic() for factor, _ in factors]


def _lift_idempotent(f: SparseMatrix, factors: list) -> SparseMatrix:
    """
    A nontrivial idempotent in Q(q)[f] separating the generalized eigenspaces of the first
    factor from the rest: the Bezout element t * rest, then e -> 3e^2 - 2e^3 until e^2 = e.

    Raises:
        Inconclusive: The lift does not settle.
    """
    first = factors[0]
    rest = factors[1]
    for factor in factors[2:]:
        rest = rest * factor
    _, t, _ = first.gcdex(rest)
    e = f.evaluate(t * rest)
    for _ in range(max(2, f.nrows.bit_length() + 1)):
        square = e @ e
        if square == e:
            return e
        e = square.scale(3) - (square @ e).scale(2)
    raise Inconclusive("Idempotent lift did not converge")


def _commutative_mod_radical(endo: Sequence[SparseMatrix]) -> bool:
    """Every commutator fg - gf of basis endomorphisms pairs to zero under the trace form."""
    commutators = []
    for i, f in enumerate(endo):
        for g in endo[i + 1 :]:
            bracket = f @ g - g @ f
            if not bracket.is_zero():
                commutators.append(bracket)
    return not trace_pairing(commutators, endo)


def splitting_idempotent(M: ModuleRep, seed: int = 0) -> Union[SparseMatrix, None]:
    """
    A nontrivial idempotent endomorphism of M, or None when M is indecomposable.

    rad End(M) is the kernel of the trace form tr(fg), so the form has rank one exactly when
    End(M) is local with residue field Q(q).

    Raises:
        NonSplitSemisimpleQuotient: End(M)/rad is a field extension of Q(q) of degree > 1.
        Inconclusive: End(M)/rad is not commutative but no sampled endomorphism separates it.
    """
    endo = hom_space(M, M)
    rank = rank_of(list(trace_pairing(endo, endo).values()))
    if rank <= 1:
        return None
    for f in _endomorphism_candidates(endo, seed):
        factors = _coprime_factors(M, f)
        if len(factors) >= 2:
            return _lift_idempotent(f, factors)
    if _commutative_mod_radical(endo):
        raise NonSplitSemisimpleQuotient(
            f"End({M.basis_tag}) modulo its radical is a field of degree {rank} over Q(q)"
        )
    raise Inconclusive(f"No endomorphism of {M.basis_tag} separates its summands")


def local_summands(M: ModuleRep, seed: int = 0) -> List[Tuple[ModuleRep, List[Vector]]]:
    """
    Split M into indecomposables by repeated idempotent splitting M = eM + (1 - e)M.

    Returns:
        list[tuple[ModuleRep, list[Vector]]]: Each summand with its basis written in the
        coordinates of M.
    """
    pending = [(M, [{i: M.field.one} for i in range(M.dim)])]
    pieces = []
    while pending:
        X, coords = pending.pop()
        e = splitting_idempotent(X, seed)
        if e is None:
            pieces.append((X, coords))
            continue
        unit = SparseMatrix.identity(X.dim, X.field)
        for projector in (e, unit - e):
            basis = [v for group in _independent_by_weight(X, projector.columns()).values() for v in group]
            part = submodule(X, basis, tag=f"summand({M.basis_tag})")
            lifted = []
            for vector in basis:
                total: Vector = {}
                for j, value in vector.items():
                    total = add_vectors(total, scale_vector(coords[j], value))
                lifted.append(total)
            pending.append((part, lifted))
    return pieces



def band_parameter(eta: EtaParam, l: int, field: CycField) -> EtaParam:
    """eta -> eta q^{1-l} (l)_q, the parameter of the band summand of V(l, r) (x) M_m(1, 0, eta)."""
    return eta.scaled(field.q_power(1 - l) * q_int(field, l))


def band_base_parameter(eta: EtaParam, l: int, field: CycField) -> EtaParam:
    """Inverse of `band_parameter`: eta q^{l-1} / (l)_q."""
    return eta.scaled(field.q_power(l - 1) * q_int(field, l).inverse())


def eta_closure(seeds: Iterable[EtaParam], n: int) -> set:
    """
    Finite set of band parameters reachable from `seeds` by the base/band parameter maps
    and the syzygy twist eta -> -eta q^l.
    """
    field = cyclotomic_field(n)
    out = set()
    for eta in seeds:
        if eta.is_infinite:
            out.add(eta)
            continue
        bases = {eta} | {band_base_parameter(eta, l, field) for l in range(1, n)}
        images = set(bases) | {band_parameter(b, l, field) for b in bases for l in range(1, n)}
        twisted = {e.scaled(-field.q_power(l)) for e in images for l in range(1, n)}
        out |= images | twisted
    return out


class ModuleCatalog:
    def __init__(self, n: int, verbose: bool = False, seed: int = 0):
        """
        The module catalog and decomposition oracle for H_n(1,q).

        Every indecomposable family is built as explicit matrices in a weight basis:
        simples V(l, r), projectives P(l, r), syzygies Omega^{+-m} V(l, r) and bands
        M_s(l, r, eta). Modules are split into indecomposables with idempotents of End(M)
        lifted from coprime factors of characteristic polynomials, and each piece is named
        by an isomorphism witness against the catalog.

        Attributes:
            n (int): Order of q.
            field (CycField): Q(q).
            verbose (bool): Prints progress lines.
            seed (int): Seed for intertwiner sweeps.

        Methods:
            - build_simple, build_band1, build_band, projective, syzygy_power, build(label)
            - tensor, hom_space, is_isomorphic (module functions, re-exposed as methods)
            - top_and_socle, projective_cover, injective_envelope, syzygy, cosyzygy
            - split, identify, decompose_tensor, validate_band_tower
            - central_action, central_character, block_label, loewy_length, resolution_profile
        """
        if n < 3:
            raise RangeError(f"The catalog needs n >= 3, got {n}")
        self.n = n
        self.field = cyclotomic_field(n)
        self.verbose = verbose
        self.seed = seed
        self._modules: Dict[IndecLabel, ModuleRep] = {}
        self._proj_base: Dict[int, Tuple[ModuleRep, int]] = {}
        self._syz_chain: Dict[Tuple[str, int], List[ModuleRep]] = {}
        self._profiles: Dict[IndecLabel, Tuple[Counter, Counter, Counter]] = {}

    # construction

    @cache
    def build_simple(self, l: int, r: int) -> ModuleRep:
        """
        V(l, r) on v_1..v_l: a v_i = v_{i+1}, d v_i = alpha_{i-1}(l) v_{i-1},
        b v_i = q^{r+i-1} v_i, c v_i = q^{i-r-l} v_i.
        """
        n, f = self.n, self.field
        if not 1 <= l <= n:
            raise RangeError(f"V({l},{r}) needs 1 <= l <= {n}")
        r %= n
        a = {(p + 1, p): f.one for p in range(l - 1)}
        d = {(p - 1, p): alpha(f, p, l) for p in range(1, l)}
        weights = [(r + p, p + 1 - r - l) for p in range(l)]
        return ModuleRep(
            SparseMatrix.from_entries(a, l, l, f),
            SparseMatrix.from_entries(d, l, l, f),
            weights,
            f"V({l},{r})",
        )

    def _band_matrices(self, s: int, l: int, r: int, eta: EtaParam) -> ModuleRep:
        """
        M_s(l, r, eta) as M_1 with the wrap scalar replaced by an s x s Jordan block: finite
        eta puts q^l J_s(eta) on d v_1 -> v_n; eta = inf puts J_s(0) on a v_{n-l} -> v_{n-l+1}
        and the identity on d v_1 -> v_n. Index p * s + t is v_{p+1} (x) e_t.
        """
        n, f = self.n, self.field
        size = n * s
        a: Dict[Tuple[int, int], CycNum] = {}
        d: Dict[Tuple[int, int], CycNum] = {}
        stop = n - l - 1
        for p in range(n - 1):
            if eta.is_infinite and p == stop:
                for t in range(1, s):
                    a[((p + 1) * s + t - 1, p * s + t)] = f.one
                continue
            for t in range(s):
                a[((p + 1) * s + t, p * s + t)] = f.one
        for p in range(1, n):
            coeff = alpha(f, p, n - l)
            if coeff:
                for t in range(s):
                    d[((p - 1) * s + t, p * s + t)] = coeff
        wrap_row = (n - 1) * s
        if eta.is_infinite:
            for t in range(s):
                d[(wrap_row + t, t)] = f.one
        else:
            ql = f.q_power(l)
            for t in range(s):
                d[(wrap_row + t, t)] = eta.value * ql
                if t >= 1:
                    d[(wrap_row + t - 1, t)] = ql
        weights = [(r + l + p, p + 1 - r) for p in range(n) for _ in range(s)]
        label = IndecLabel.band(n, s, l, r, eta)
        return ModuleRep(
            SparseMatrix.from_entries(a, size, size, f),
            SparseMatrix.from_entries(d, size, size, f),
            weights,
            str(label),
        )

    def build_band1(self, l: int, r: int, eta: EtaParam) -> ModuleRep:
        """M_1(l, r, eta) for eta in Q(q) or eta = inf."""
        if not 1 <= l <= self.n - 1:
            raise RangeError(f"M_1({l},{r}) needs 1 <= l <= {self.n - 1}")
        return self._band_matrices(1, l, r % self.n, eta)

    def build_band(self, s: int, l: int, r: int, eta: EtaParam) -> ModuleRep:
        """
        M_s(l, r, eta). For s >= 2 the Jordan-block model is accepted only if it passes
        `validate_band_tower`; otherwise M_s is rebuilt as a non-split extension of M_{s-1}
        by M_1.

        Raises:
            ConstructionFailed: Neither construction passes the gates.
            Inconclusive: A gate could not be decided, so neither model is accepted.
        """
        label = IndecLabel.band(self.n, s, l, r, eta)
        if label in self._modules:
            return self._modules[label]
        if s == 1:
            module = self.build_band1(l, r, eta)
        else:
            module = self._band_matrices(s, l, r % self.n, eta)
            report = self.validate_band_tower(s, l, r, eta, module=module)
            if not report.ok:
                if self.verbose:
                    info(f"{label}: Jordan model failed gate '{report.failed_relation}', extending")
                module = self._band_by_extension(s, l, r, eta)
        self._modules[label] = module
        return module

    def _band_by_extension(self, s: int, l: int, r: int, eta: EtaParam) -> ModuleRep:
        """Non-split extension 0 -> M_{s-1} -> E -> M_1 -> 0 built as a pushout along Omega M_1."""
        lower = self.build_band(s - 1, l, r, eta)
        top = self.build_band1(l, r, eta)
        cover, surjection = self.projective_cover(top)
        syz_vectors = restricted_kernel(surjection, cover, top)
        omega = submodule(cover, syz_vectors)
        inclusion = SparseMatrix.from_columns(syz_vectors, cover.dim, self.field)
        factoring = [
            self._flatten(psi @ inclusion) for psi in hom_space(cover, lower)
        ]
        base_rank = rank_of(factoring)
        candidates = hom_space(omega, lower)
        expected_syzygy = self.build_band(s, self.n - l, r + l, self._twist(eta, l))
        for phi in candidates:
            if rank_of(factoring + [self._flatten(phi)]) == base_rank:
                continue
            total = direct_sum([lower, cover])
            relations = []
            for t in range(omega.dim):
                vector = {p: row[t] for p, row in phi.rows.items() if t in row}
                for c, row in inclusion.rows.items():
                    if t in row:
                        vector[lower.dim + c] = -row[t]
                relations.append(vector)
            extension = quotient(total, relations, tag=str(IndecLabel.band(self.n, s, l, r, eta)))
            if is_local(extension) and self._isomorphic(self.syzygy(extension), expected_syzygy):
                return extension
        raise ConstructionFailed(f"No non-split extension realizes M_{s}({l},{r};{eta})")

    @staticmethod
    def _flatten(matrix: SparseMatrix) -> Vector:
        return {
            p * matrix.ncols + s: value
            for p, row in matrix.rows.items()
            for s, value in row.items()
        }

    def _twist(self, eta: EtaParam, l: int) -> EtaParam:
        """eta -> -eta q^l, the parameter change under the syzygy functor."""
        return eta.scaled(-self.field.q_power(l))

    def shift(self, M: ModuleRep, k: int) -> ModuleRep:
        """M (x) V(1, k): weights move by (k, -k), a scales by q^k and d by q^-k."""
        if k % self.n == 0:
            return M.retagged(M.basis_tag)
        shifted = tensor(M, self.build_simple(1, k % self.n))
        shifted.basis_tag = f"{M.basis_tag}<{k % self.n}>"
        return shifted

    def central_action(self, M: ModuleRep) -> SparseMatrix:
        """The central element a d b^{-1} + (b^{-1} + q^{-1} c)/(q - 1) acting on M."""
        f = self.field
        b_inv = SparseMatrix.diagonal([f.q_power(-b) for b, _ in M.weights], f)
        inv = (f.q - f.one).inverse()
        return M.a @ M.d @ b_inv + (b_inv + M.act_c.scale(f.q_power(-1))).scale(inv)

    def central_character(self, l: int, r: int) -> CycNum:
        """Scalar of the central element on V(l, r): q^{-r}(1 + q^{-l})/(q - 1)."""
        f = self.field
        return f.q_power(-r) * (f.one + f.q_power(-l)) * (f.q - f.one).inverse()

    def block_label(self, l: int, r: int) -> CycNum:
        """Scalar of the central grouplike b c^{-1} on V(l, r)."""
        return self.field.q_power(2 * r + l - 1)

    def _extract_projective(self, host: ModuleRep, l: int) -> Union[Tuple[ModuleRep, int], None]:
        """
        P(l, rho) inside a projective host, as the generalized eigenspace of the central
        element for the character of its top V(l, rho).
        """
        n = self.n
        rhos = [
            rho for rho in range(n) if hom_space(host, self.build_simple(l, rho))
        ]
        if len(rhos) != 1:
            return None
        rho = rhos[0]
        lam = self.central_character(l, rho)
        central = self.central_action(host)
        vectors = []
        for w, idx in host.blocks().items():
            block = central.restrict(idx, idx) - SparseMatrix.identity(len(idx), self.field).scale(lam)
            for vector in block.power(len(idx)).nullspace():
                vectors.append({idx[k]: v for k, v in vector.items()})
        if len(vectors) != 2 * n:
            return None
        module = submodule(host, vectors, tag=f"P({l},{rho})")
        if self.top_multiplicities(module) != Counter({(l, rho): 1}):
            return None
        return module, rho

    def projective(self, l: int, r: int) -> ModuleRep:
        """
        P(l, r) (the simple V(n, r) when l == n).

        P(l, rho) is cut out of V(n-l+1, 0) (x) V(n, 0) by the central element, then moved to
        weight r with `shift`. Other hosts V(k, 0) (x) V(n, 0) are tried if the first one
        does not yield a 2n-dimensional block with top V(l, rho).

        Raises:
            ConstructionFailed: No host yields P(l, .).
        """
        n = self.n
        if l == n:
            return self.build_simple(n, r)
        label = IndecLabel.proj(n, l, r)
        if label in self._modules:
            return self._modules[label]
        if l not in self._proj_base:
            hosts = [n - l + 1] + [k for k in range(1, n + 1) if k != n - l + 1]
            found = None
            for k in hosts:
                host = tensor(self.build_simple(k, 0), self.build_simple(n, 0))
                found = self._extract_projective(host, l)
                if found is not None:
                    break
            if found is None:
                raise ConstructionFailed(f"No projective host produced P({l},.)")
            self._proj_base[l] = found
        module, rho = self._proj_base[l]
        shifted = self.shift(module, r - rho)
        shifted.basis_tag = str(label)
        self._modules[label] = shifted
        return shifted

    def syzygy_power(self, sign: str, m: int, l: int, r: int) -> ModuleRep:
        """Omega^m V(l, r) (sign '+') or Omega^{-m} V(l, r) (sign '-')."""
        key = (sign, l)
        chain = self._syz_chain.setdefault(key, [self.build_simple(l, 0)])
        while len(chain) <= m:
            step = self.syzygy if sign == Sign.Plus else self.cosyzygy
            nxt = step(chain[-1])
            exponent = len(chain) if sign == Sign.Plus else -len(chain)
            nxt.basis_tag = f"Omega^{exponent} V({l},0)"
            chain.append(nxt)
        module = self.shift(chain[m], r)
        if m:
            module.basis_tag = str(IndecLabel.syz(self.n, sign, m, l, r))
        return module

    def build(self, label: IndecLabel) -> ModuleRep:
        """Module of a catalog label."""
        if label.n != self.n:
            raise RangeError(f"Label for n={label.n} used with a catalog for n={self.n}")
        if label in self._modules:
            return self._modules[label]
        if label.kind == LabelKind.Simple:
            module = self.build_simple(label.l, label.r)
        elif label.kind == LabelKind.Proj:
            module = self.projective(label.l, label.r)
        elif label.kind == LabelKind.Syz:
            module = self.syzygy_power(label.sign, label.m, label.l, label.r)
        else:
            module = self.build_band(label.s, label.l, label.r, label.eta)
        self._modules[label] = module
        return module

    # structure

    def simple_params(self) -> List[Tuple[int, int]]:
        return [(l, r) for l in range(1, self.n + 1) for r in range(self.n)]

    def _simples_fitting(self, M: ModuleRep) -> Iterator[Tuple[int, int, ModuleRep]]:
        present = set(M.weights)
        for l, r in self.simple_params():
            S = self.build_simple(l, r)
            if set(S.weights) <= present:
                yield l, r, S

    def top_multiplicities(self, M: ModuleRep) -> Counter:
        """Multiplicity of each V(l, r) in M / rad M, as dim Hom(M, V(l, r))."""
        top = Counter()
        for l, r, S in self._simples_fitting(M):
            k = len(hom_space(M, S))
            if k:
                top[(l, r)] = k
        return top

    def socle_multiplicities(self, M: ModuleRep) -> Counter:
        """Multiplicity of each V(l, r) in soc M, as dim Hom(V(l, r), M)."""
        soc = Counter()
        for l, r, S in self._simples_fitting(M):
            k = len(hom_space(S, M))
            if k:
                soc[(l, r)] = k
        return soc

    def radical_vectors(self, M: ModuleRep) -> List[Vector]:
        """rad M as the common kernel of all maps to simples."""
        rows: Dict[int, Vector] = {}
        for _, _, S in self._simples_fitting(M):
            for phi in hom_space(M, S):
                for row in phi.rows.values():
                    rows[len(rows)] = dict(row)
        return kernel(rows, M.dim, self.field.one)

    def socle_vectors(self, M: ModuleRep) -> List[Vector]:
        """soc M as the sum of images of all maps from simples."""
        columns = []
        for _, _, S in self._simples_fitting(M):
            for phi in hom_space(S, M):
                columns.extend(c for c in phi.columns() if c)
        reduced, pivots, _ = rref(columns)
        return [reduced[i] for i in range(len(pivots))]

    def action_matrix(self, M: ModuleRep, u: AlgebraElement) -> SparseMatrix:
        """rho_M(u) for an algebra element in PBW form."""
        f = self.field
        a, b, c, d = M.matrices()
        powers = {}
        for name, mat in (("a", a), ("b", b), ("c", c), ("d", d)):
            seq = [SparseMatrix.identity(M.dim, f)]
            for _ in range(1, self.n):
                seq.append(seq[-1] @ mat)
            powers[name] = seq
        total = SparseMatrix.zeros(M.dim, M.dim, f)
        for (i, j, l, k), coeff in u.terms.items():
            term = powers["a"][i] @ powers["b"][j] @ powers["c"][l] @ powers["d"][k]
            total = total + term.scale(coeff)
        return total

    def _constituents(self, M: ModuleRep) -> List[IndecLabel]:
        labels = []
        for (l, r), k in sorted(self.top_multiplicities(M).items()):
            labels.extend([IndecLabel.simple(self.n, l, r)] * k)
        return labels

    def top_and_socle(self, M: ModuleRep) -> Tuple[List[IndecLabel], List[IndecLabel]]:
        """
        Top M / JM and socle ann_M(J) for the Jacobson radical J of H_n(1,q), each listed
        as simple constituents.
        """
        radical = hopf_algebra(self.n).radical_basis()
        actions = [self.action_matrix(M, u) for u in radical]
        image = [col for mat in actions for col in mat.columns() if col]
        top_module = quotient(M, image, tag=f"top({M.basis_tag})")
        rows: Dict[int, Vector] = {}
        for mat in actions:
            for row in mat.rows.values():
                rows[len(rows)] = dict(row)
        annihilated = kernel(rows, M.dim, self.field.one)
        spans = _independent_by_weight(M, annihilated)
        soc_module = submodule(M, [v for vs in spans.values() for v in vs], tag=f"soc({M.basis_tag})")
        return self._constituents(top_module), self._constituents(soc_module)

    def radical_series(self, M: ModuleRep) -> List[Counter]:
        """Layers M/rad M, rad M/rad^2 M, ... as multiplicities of V(l, r)."""
        layers = []
        current = M
        while current.dim:
            layers.append(self.top_multiplicities(current))
            current = submodule(current, self.radical_vectors(current))
        return layers

    def socle_series(self, M: ModuleRep) -> List[Counter]:
        """Layers soc M, soc^2 M / soc M, ... as multiplicities of V(l, r)."""
        layers = []
        current = M
        while current.dim:
            layers.append(self.socle_multiplicities(current))
            current = quotient(current, self.socle_vectors(current))
        return layers

    def loewy_length(self, M: ModuleRep) -> int:
        return len(self.radical_series(M))

    def projective_cover(self, M: ModuleRep) -> Tuple[ModuleRep, SparseMatrix]:
        """
        Projective cover of M: one P(l, r) per top constituent, with maps chosen greedily so
        that their images raise the rank of rad M + image.

        Returns:
            tuple[ModuleRep, SparseMatrix]: The cover and the surjection (dim M x dim cover).

        Raises:
            CoverLiftFailed: No surjection was found.
        """
        span = self.radical_vectors(M)
        current = rank_of(span)
        chosen: List[Tuple[ModuleRep, SparseMatrix]] = []
        for (l, r), mult in sorted(self.top_multiplicities(M).items()):
            P = self.projective(l, r)
            picked = 0
            for f in hom_space(P, M):
                columns = [c for c in f.columns() if c]
                trial = span + columns
                rank = rank_of(trial)
                if rank > current:
                    span, current = trial, rank
                    chosen.append((P, f))
                    picked += 1
                    if picked == mult:
                        break
            if picked < mult:
                raise CoverLiftFailed(f"Only {picked} of {mult} maps P({l},{r}) -> {M.basis_tag}")
        if not chosen:
            raise CoverLiftFailed(f"{M.basis_tag} has an empty top")
        cover = direct_sum([P for P, _ in chosen])
        surjection = SparseMatrix.hstack([f for _, f in chosen], self.field)
        if surjection.rank() != M.dim:
            raise CoverLiftFailed(f"Cover of {M.basis_tag} is not surjective")
        return cover, surjection

    def injective_envelope(self, M: ModuleRep) -> Tuple[ModuleRep, SparseMatrix, List[IndecLabel]]:
        """
        Injective envelope of M: one P(l, r) per socle constituent (P(l, r) has socle V(l, r)),
        with maps chosen greedily until the stacked map is injective on soc M.

        Returns:
            tuple: The envelope, the embedding (dim envelope x dim M), and the summand labels.

        Raises:
            EnvelopeEmbedFailed: The stacked map is not injective.
        """
        socle = self.socle_vectors(M)
        chosen: List[Tuple[ModuleRep, SparseMatrix, IndecLabel]] = []
        current = 0
        for (l, r), mult in sorted(self.socle_multiplicities(M).items()):
            P = self.projective(l, r)
            picked = 0
            for g in hom_space(M, P):
                stacked = SparseMatrix.vstack([h for _, h, _ in chosen] + [g], self.field)
                rank = rank_of([stacked.apply(v) for v in socle])
                if rank > current:
                    current = rank
                    chosen.append((P, g, IndecLabel.projective(self.n, l, r)))
                    picked += 1
                    if picked == mult:
                        break
            if picked < mult:
                raise EnvelopeEmbedFailed(f"Only {picked} of {mult} maps {M.basis_tag} -> P({l},{r})")
        if not chosen:
            raise EnvelopeEmbedFailed(f"{M.basis_tag} has an empty socle")
        envelope = direct_sum([P for P, _, _ in chosen])
        embedding = SparseMatrix.vstack([g for _, g, _ in chosen], self.field)
        if embedding.rank() != M.dim:
            raise EnvelopeEmbedFailed(f"Envelope map of {M.basis_tag} is not injective")
        return envelope, embedding, [label for _, _, label in chosen]

    def syzygy(self, M: ModuleRep) -> ModuleRep:
        """Omega M = kernel of the projective cover."""
        cover, surjection = self.projective_cover(M)
        return submodule(cover, restricted_kernel(surjection, cover, M), tag=f"Omega({M.basis_tag})")

    def cosyzygy(self, M: ModuleRep) -> ModuleRep:
        """Omega^{-1} M = cokernel of the injective envelope."""
        envelope, embedding, _ = self.injective_envelope(M)
        image = [c for c in embedding.columns() if c]
        return quotient(envelope, image, tag=f"Omega^-1({M.basis_tag})")

    def resolution_profile(self, l: int, r: int, depth: int) -> List[Counter]:
        """Top multiplicities of Omega^k V(l, r) for k < depth, i.e. the terms of the minimal projective resolution."""
        return [
            self.top_multiplicities(self.syzygy_power(Sign.Plus, k, l, r)) for k in range(depth)
        ]

    # band towers

    def _isomorphic(self, M: ModuleRep, N: ModuleRep) -> bool:
        """Raises Inconclusive, like `is_isomorphic`, when the sweep cannot decide."""
        return is_isomorphic(M, N, self.seed) is not None

    def validate_band_tower(
        self, s: int, l: int, r: int, eta: EtaParam, module: ModuleRep = None
    ) -> ValidationResult:
        """
        Gates for M_s(l, r, eta), s >= 2:

            indecomposable: End(M_s) is local;
            tower: for 1 <= i < s some injection M_i -> M_s has cokernel M_{s-i};
            syzygy: Omega M_s is M_s(n-l, r+l, -eta q^l);
            socle: soc M_s is s V(l, r) and M_s embeds in s P(l, r).

        Args:
            module (ModuleRep, optional): Check this module instead of the Jordan model.

        Returns:
            ValidationResult: ok, or the first failed gate.

        Raises:
            Inconclusive: An isomorphism gate could not be decided.
        """
        n = self.n
        if module is None:
            module = self._band_matrices(s, l, r % n, eta)
        if not is_local(module):
            return ValidationResult(False, "indecomposable")
        for i in range(1, s):
            lower = self.build_band(i, l, r, eta)
            upper_quotient = self.build_band(s - i, l, r, eta)
            injection = _sweep(
                hom_space(lower, module), lambda f: f.rank() == lower.dim, self.seed
            )
            if injection is None:
                return ValidationResult(False, "tower")
            cokernel = quotient(module, [c for c in injection.columns() if c])
            if not self._isomorphic(cokernel, upper_quotient):
                return ValidationResult(False, "tower")
        twisted = self._band_matrices(s, n - l, (r + l) % n, self._twist(eta, l))
        if not self._isomorphic(self.syzygy(module), twisted):
            return ValidationResult(False, "syzygy")
        if self.socle_multiplicities(module) != Counter({(l, r % n): s}):
            return ValidationResult(False, "socle")
        try:
            _, _, labels = self.injective_envelope(module)
        except EnvelopeEmbedFailed:
            return ValidationResult(False, "socle")
        if Counter(labels) != Counter({IndecLabel.proj(n, l, r): s}):
            return ValidationResult(False, "socle")
        return ValidationResult(True)

    # decomposition

    def _profile(self, label: IndecLabel) -> Tuple[Counter, Counter, Counter]:
        """(top, socle, weights) of a catalog label, from theory where it is known."""
        if label in self._profiles:
            return self._profiles[label]
        n = self.n
        if label.kind in (LabelKind.Simple, LabelKind.Proj):
            layer = Counter({(label.l, label.r): 1})
            profile = (layer, layer, Counter(self.build(label).weights))
        elif label.kind == LabelKind.Band:
            module = self.build_band(label.s, label.l, label.r, label.eta)
            profile = (
                Counter({(n - label.l, (label.r + label.l) % n): label.s}),
                Counter({(label.l, label.r): label.s}),
                Counter(module.weights),
            )
        else:
            module = self.build(label)
            profile = (
                self.top_multiplicities(module),
                self.socle_multiplicities(module),
                Counter(module.weights),
            )
        self._profiles[label] = profile
        return profile

    def _candidate_labels(
        self, dim: int, top_count: int, soc_count: int, etas_for: Callable[[int], Iterable[EtaParam]]
    ) -> Iterator[IndecLabel]:
        n = self.n
        for l in range(n, 0, -1):
            if (2 * n if l < n else n) <= dim:
                for r in range(n):
                    yield IndecLabel.projective(n, l, r)
        for l in range(1, n):
            for r in range(n):
                yield IndecLabel.simple(n, l, r)
        for sign, count in ((Sign.Plus, top_count), (Sign.Minus, soc_count)):
            for l in range(1, n):
                m = 1
                while m + 1 <= count and IndecLabel.syz(n, sign, m, l, 0).dim <= dim:
                    for r in range(n):
                        yield IndecLabel.syz(n, sign, m, l, r)
                    m += 1
        for l in range(1, n):
            etas = sorted(etas_for(l), key=EtaParam.sort_key)
            s = 1
            while s * n <= dim and s <= top_count:
                for r in range(n):
                    for eta in etas:
                        yield IndecLabel.band(n, s, l, r, eta)
                s += 1

    def split(self, M: ModuleRep, eta_candidates: Iterable[EtaParam] = ()) -> DecompResult:
        """
        Krull-Schmidt decomposition of M: idempotent splitting into indecomposables, each
        piece then named by `identify`.

        Args:
            M (ModuleRep): Module to split.
            eta_candidates (Iterable[EtaParam]): Extra band parameters for `identify`.

        Returns:
            DecompResult: Summands, witness (columns = split embeddings, block by block).

        Raises:
            NonSplitSemisimpleQuotient: A piece has End/rad a proper field extension of Q(q).
            Unidentified: A piece matches no catalog module.
            Inconclusive: The idempotent search or an isomorphism check could not decide.
        """
        candidates = list(eta_candidates)
        named = []
        for piece, coords in local_summands(M, self.seed):
            label = self.identify(piece, candidates)
            if self.verbose:
                info(f"{M.basis_tag}: {label}")
            named.append((label, coords))
        named.sort(key=lambda item: item[0].sort_key())
        summands = Counter(label for label, _ in named)
        blocks = [label for label, _ in named]
        columns = [vector for _, coords in named for vector in coords]
        witness = SparseMatrix.from_columns(columns, M.dim, self.field)
        if not witness.is_invertible():
            raise Inconclusive(f"Summands of {M.basis_tag} do not span it")
        return DecompResult(summands, witness, blocks, M.dim)

    def band_label(self, M: ModuleRep) -> Union[IndecLabel, None]:
        """
        The band label M_s(l, r, eta) that M would have, read off M itself, or None when M
        does not have the top, socle and dimension of a band.

        On the weight space W of v_1, both a^{n-1} and d map W onto the weight space of v_n.
        eta is tr((a^{n-1})^{-1} d) / s q^{-l} when a^{n-1} is invertible there, and inf when
        only d is. Both conditions are basis independent.
        """
        n, f = self.n, self.field
        if M.dim % n:
            return None
        s = M.dim // n
        soc = self.socle_multiplicities(M)
        if len(soc) != 1:
            return None
        (l, r), count = next(iter(soc.items()))
        if count != s or not 1 <= l <= n - 1:
            return None
        if self.top_multiplicities(M) != Counter({(n - l, (r + l) % n): s}):
            return None
        blocks = M.blocks()
        source = blocks.get(((r + l) % n, (1 - r) % n), [])
        target = blocks.get(((r + l - 1) % n, (-r) % n), [])
        if len(source) != s or len(target) != s:
            return None
        rise = M.a.power(n - 1).restrict(target, source)
        fall = M.d.restrict(target, source)
        if rise.is_invertible():
            coords = solve_in_basis(rise.columns(), fall.columns())
            trace = f.zero
            for j, column in enumerate(coords):
                if j in column:
                    trace = trace + column[j]
            eta = EtaParam.finite(trace * f.q_power(-l) * f.from_rational(s).inverse())
        elif fall.is_invertible():
            eta = EtaParam.infinity()
        else:
            return None
        return IndecLabel.band(n, s, l, r, eta)

    def identify(self, M: ModuleRep, eta_candidates: Iterable[EtaParam] = ()) -> IndecLabel:
        """
        Catalog label of an indecomposable M. Bands are named from their own parameter
        (`band_label`); otherwise candidates with the same dimension, weights and Loewy length
        are tried. Either way the label is confirmed by an isomorphism witness.

        Raises:
            Unidentified: No candidate matches.
            Inconclusive: An isomorphism check could not decide.
        """
        n = self.n
        band = self.band_label(M)
        if band is not None and self._isomorphic(self.build(band), M):
            return band
        closure = eta_closure(eta_candidates, n) if eta_candidates else set()
        weights = Counter(M.weights)
        top = self.top_multiplicities(M)
        soc = self.socle_multiplicities(M)
        loewy = None
        for label in self._candidate_labels(M.dim, sum(top.values()), sum(soc.values()), lambda l: closure):
            if label.dim != M.dim or label == band:
                continue
            x_top, x_soc, x_weights = self._profile(label)
            if x_top != top or x_soc != soc or x_weights != weights:
                continue
            X = self.build(label)
            if loewy is None:
                loewy = self.loewy_length(M)
            if self.loewy_length(X) != loewy:
                continue
            if self._isomorphic(X, M):
                return label
        raise Unidentified(f"{M.basis_tag} (dim {M.dim}) matches no catalog module")

    def tensor_decomposition(self, A: IndecLabel, B: IndecLabel) -> DecompResult:
        """Split build(A) (x) build(B)."""
        product = tensor(self.build(A), self.build(B)).retagged(f"{A} (x) {B}")
        return self.split(product)

    def decompose_tensor(self, A: IndecLabel, B: IndecLabel) -> Counter:
        """Multiset of indecomposable summands of A (x) B."""
        return self.tensor_decomposition(A, B).summands

    def fingerprints(self, max_m: int) -> Dict[str, str]:
        """md5 fingerprints of the simple, projective and low syzygy modules."""
        n = self.n
        labels = [IndecLabel.simple(n, l, r) for l, r in self.simple_params()]
        labels += [IndecLabel.proj(n, l, r) for l in range(1, n) for r in range(n)]
        labels += [
            IndecLabel.syz(n, sign, m, l, 0)
            for sign in (Sign.Plus, Sign.Minus)
            for m in range(1, max_m + 1)
            for l in range(1, n)
        ]
        out = {}
        with Progress(disable=not self.verbose) as progress:
            task = progress.add_task("[cyan]Building catalog...", total=len(labels))
            for label in labels:
                out[str(label)] = self.build(label).fingerprint()
                progress.update(task, advance=1)
        return out

    # module functions as methods

    def tensor(self, M: ModuleRep, N: ModuleRep) -> ModuleRep:
        return tensor(M, N)

    def hom_space(self, M: ModuleRep, N: ModuleRep) -> List[SparseMatrix]:
        return hom_space(M, N)

    def is_isomorphic(self, M: ModuleRep, N: ModuleRep) -> Union[SparseMatrix, None]:
        return is_isomorphic(M, N, self.seed)


@cache
def module_catalog(n: int) -> ModuleCatalog:
    return ModuleCatalog(n)
