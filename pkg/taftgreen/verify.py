"""
Cross-validation of the symbolic Green ring against the module oracle.

Every check returns a CheckReport. Oracle failures (Inconclusive, Unidentified, a cover or
envelope that could not be built) turn into inconclusive reports; they are never read as a
disproof.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import cache
from rich.progress import Progress
from sympy import Matrix
from typing import Dict, Iterable, List, Sequence, Tuple
import itertools, random

from .taftgreen_types import *
from .cyclo import EtaParam, cyclotomic_field
from .greenring import (
    DerivedTables,
    Monomial,
    RingElement,
    alternating_binomial_check,
    derive_tables,
    presentation_for,
)
from .modcat import ModuleCatalog, band_parameter, module_catalog
from .relation_registry import get_relation_model, relation_names

DEFAULT_M_VALUES = (1, 2)
TABLE_MAX_M = 4
TABLE_MAX_S = 2

OracleErrors = (
    Inconclusive,
    Unidentified,
    NonSplitSemisimpleQuotient,
    CoverLiftFailed,
    EnvelopeEmbedFailed,
)


def sample_etas(n: int) -> List[EtaParam]:
    """The default band parameter sample {0, 1, 2, inf}."""
    field = cyclotomic_field(n)
    return [EtaParam.finite(field.from_rational(v)) for v in (0, 1, 2)] + [EtaParam.infinity()]


@cache
def catalog_for(n: int, seed: int = 0) -> ModuleCatalog:
    if seed == 0:
        return module_catalog(n)
    return ModuleCatalog(n, seed=seed)


def _as_element(value) -> RingElement:
    return RingElement.constant(value) if isinstance(value, int) else value


def _class_sum(pres, summands: Counter, tables: DerivedTables) -> RingElement:
    total = RingElement()
    for label, mult in summands.items():
        total = total + mult * pres.class_of(label, tables)
    return pres.normal_form(total)


def _summands_json(summands: Counter) -> list:
    return [{"label": label.to_json(), "mult": summands[label]} for label in sorted(summands)]


def _summands_text(summands: Counter) -> str:
    return " + ".join(
        f"{summands[label]}x{label}" if summands[label] > 1 else str(label) for label in sorted(summands)
    )


def _generator_labels(n: int, mono: Monomial) -> List[IndecLabel]:
    """Tensor factors of a monomial: V(1,1), V(2,0), Omega^{+-1} V(1,0) and M_m(1,0,eta)."""
    factors = [IndecLabel.simple(n, 1, 1)] * mono.xe + [IndecLabel.simple(n, 2, 0)] * mono.ye
    factors += [IndecLabel.syz(n, Sign.Plus, 1, 1, 0)] * mono.zplus
    factors += [IndecLabel.syz(n, Sign.Minus, 1, 1, 0)] * mono.zminus
    factors += [IndecLabel.band(n, m, 1, 0, eta) for m, eta in mono.w_factors()]
    return factors


def module_image(element: RingElement, catalog: ModuleCatalog, memo: Dict = None) -> Counter:
    """
    A raw ring element read among modules: each monomial becomes the tensor product of its
    generator modules, split summand by summand with the oracle. Coefficients may be
    negative; classes with coefficient zero are dropped.

    Raises:
        Inconclusive, Unidentified, NonSplitSemisimpleQuotient: The oracle could not split
            a product.
    """
    n = catalog.n
    memo = {} if memo is None else memo
    total = Counter()
    for mono, coeff in element.terms.items():
        current = Counter({IndecLabel.simple(n, 1, 0): 1})
        for factor in _generator_labels(n, mono):
            step = Counter()
            for label, mult in current.items():
                if (label, factor) not in memo:
                    memo[(label, factor)] = catalog.decompose_tensor(label, factor)
                for piece, k in memo[(label, factor)].items():
                    step[piece] += mult * k
            current = step
        for label, mult in current.items():
            total[label] += coeff * mult
    return Counter({label: c for label, c in total.items() if c})


def _signed_text(classes: Counter) -> str:
    return " + ".join(f"{classes[label]}x{label}" for label in sorted(classes))



# cache


def cached_tables(config: Config, derive: bool = True) -> DerivedTables:
    """
    DerivedTables for `config.n` from the table cache, derived on the spot when the cache is
    missing or too shallow and `derive` is set.

    Raises:
        CacheCorrupted: The cache file exists but fails its checks.
        MissingTableEntry: No usable cache and `derive` is False.
    """
    payload = TableCache(config.cache_dir).load(config.n)
    if payload is not None:
        try:
            tables = DerivedTables.from_json(payload["tables"])
        except (KeyError, ParseError) as err:
            raise CacheCorrupted(f"Table payload for n={config.n} is unreadable: {err}")
        if tables.max_m >= TABLE_MAX_M and tables.max_s >= TABLE_MAX_S:
            return tables
    if not derive:
        raise MissingTableEntry(f"No tables cached for n={config.n}; run `gr build --n {config.n}`")
    return derive_tables(
        config.n, TABLE_MAX_M, TABLE_MAX_S, catalog_for(config.n, config.seed), config.verbose
    )


def build_cache(config: Config) -> Tuple[str, bool]:
    """
    Write catalog fingerprints and DerivedTables for `config.n`.

    Returns:
        tuple[str, bool]: The cache path and whether it was already up to date (then nothing
        is rewritten).

    Raises:
        CacheCorrupted: An existing cache file fails its checksum or schema check.
    """
    cache_store = TableCache(config.cache_dir)
    existing = cache_store.load(config.n)
    path = cache_store.path_for(config.n)
    if existing is not None and existing.get("max_m", 0) >= TABLE_MAX_M:
        return path, True
    catalog = catalog_for(config.n, config.seed)
    catalog.verbose = config.verbose
    fingerprints = catalog.fingerprints(TABLE_MAX_M)
    tables = derive_tables(config.n, TABLE_MAX_M, TABLE_MAX_S, catalog, config.verbose)
    payload = {"max_m": TABLE_MAX_M, "catalog": fingerprints, "tables": tables.to_json()}
    return cache_store.save(config.n, payload), False


# checks


def crosscheck_product(
    A: IndecLabel, B: IndecLabel, n: int, tables: DerivedTables = None, seed: int = 0
) -> CheckReport:
    """
    [A][B] against the classes of the summands of A (x) B: pass iff the normal forms agree.
    """
    pres = presentation_for(n)
    catalog = catalog_for(n, seed)
    inputs = {"A": A.to_json(), "B": B.to_json(), "seed": seed}
    check_id = f"crosscheck:{A}*{B}"
    with Timer() as timer:
        lhs = pres.multiply(pres.class_of(A, tables), pres.class_of(B, tables))
        try:
            decomposition = catalog.tensor_decomposition(A, B)
        except OracleErrors as err:
            report = CheckReport(check_id, n, inputs, CheckStatus.Inconclusive, lhs.to_json(), None, err.detail)
        else:
            rhs = _class_sum(pres, decomposition.summands, tables)
            status = CheckStatus.Pass if lhs == rhs else CheckStatus.Fail
            detail = f"{decomposition}; {decomposition.dims_line()}"
            report = CheckReport(check_id, n, inputs, status, lhs.to_json(), rhs.to_json(), detail)
    report.elapsed = timer.elapsed
    return report


def verify_named_relation(
    name: str,
    n: int,
    tables: DerivedTables = None,
    m_values: Sequence[int] = DEFAULT_M_VALUES,
    etas: Sequence[EtaParam] = None,
    oracle: bool = True,
    seed: int = 0,
) -> CheckReport:
    """
    Check a named relation symbolically (both sides to normal form) and, when it has a module
    side, through the oracle: each tensor product must split into the expected summands and
    the dictionary must send both to the same ring element, and each element with a module
    image must split to zero (to projectives in the stable ring).

    Raises:
        ParseError: `name` is not a known relation.
    """
    model = get_relation_model(name)
    if model is None:
        raise ParseError(f"Unknown relation {name!r}; known: {', '.join(relation_names)}")
    etas = list(etas) if etas is not None else sample_etas(n)
    pres = presentation_for(n)
    inputs = {
        "relation": model.name,
        "m_values": sorted(set(m_values)) if model.uses_bands else [],
        "etas": [eta.shorthand() for eta in sorted(set(etas), key=EtaParam.sort_key)] if model.uses_bands else [],
        "oracle": oracle and (model.oracle is not None or model.images is not None),
        "seed": seed,
    }
    check_id = f"relation:{model.name}"
    status, lhs_out, rhs_out, detail = CheckStatus.Pass, None, None, ""
    with Timer() as timer:
        items = model.symbolic(pres, tables, m_values, etas)
        for tag, lhs, rhs, stable in items:
            reduce = pres.stable_normal_form if stable else pres.normal_form
            left, right = reduce(_as_element(lhs)), reduce(_as_element(rhs))
            if lhs_out is None:
                lhs_out, rhs_out = left.to_json(), right.to_json()
            if left != right:
                status = CheckStatus.Fail
                lhs_out, rhs_out = left.to_json(), right.to_json()
                detail = f"symbolic [{tag}]: {left} != {right}"
                break
        oracle_items = []
        if status == CheckStatus.Pass and oracle and model.oracle is not None:
            catalog = catalog_for(n, seed)
            oracle_items = model.oracle(n, m_values, etas)
            for tag, (A, B), expected in oracle_items:
                try:
                    found = catalog.decompose_tensor(A, B)
                except OracleErrors as err:
                    status = CheckStatus.Inconclusive
                    detail = f"oracle [{tag}] {A} (x) {B}: {err.detail}"
                    break
                if found != expected:
                    status = CheckStatus.Fail
                    lhs_out, rhs_out = _summands_json(found), _summands_json(expected)
                    detail = f"oracle [{tag}] {A} (x) {B} = {_summands_text(found)}, expected {_summands_text(expected)}"
                    break
                product = pres.multiply(pres.class_of(A, tables), pres.class_of(B, tables))
                image = _class_sum(pres, expected, tables)
                if product != image:
                    status = CheckStatus.Fail
                    lhs_out, rhs_out = product.to_json(), image.to_json()
                    detail = f"dictionary [{tag}] [{A}][{B}] = {product} != {image}"
                    break
        image_items = []
        if status == CheckStatus.Pass and oracle and model.images is not None:
            catalog = catalog_for(n, seed)
            memo = {}
            image_items = model.images(pres, m_values, etas)
            for tag, element, stable in image_items:
                try:
                    image = module_image(element, catalog, memo)
                except OracleErrors as err:
                    status = CheckStatus.Inconclusive
                    detail = f"module image [{tag}]: {err.detail}"
                    break
                if stable:
                    image = Counter({label: c for label, c in image.items() if not label.is_projective})
                if image:
                    status = CheckStatus.Fail
                    lhs_out, rhs_out = _summands_json(image), []
                    detail = f"module image [{tag}] = {_signed_text(image)}, expected 0"
                    break
        if status == CheckStatus.Pass:
            detail = f"{model.statement}: {len(items)} symbolic, {len(oracle_items) + len(image_items)} oracle items"
    return CheckReport(check_id, n, inputs, status, lhs_out, rhs_out, detail, timer.elapsed)


def _basis_block(pres, monomials: List[Monomial], classes: List[RingElement]) -> int:
    index = {mono: i for i, mono in enumerate(monomials)}
    rows = []
    for element in classes:
        row = [0] * len(monomials)
        for mono, coeff in element.terms.items():
            if mono in index:
                row[index[mono]] = coeff
        rows.append(row)
    return int(Matrix(rows).det())


def basis_blocks(
    n: int, tables: DerivedTables, max_m: int = 3, m_values: Sequence[int] = (1,), etas: Sequence[EtaParam] = None
) -> Dict[str, int]:
    """
    Determinants of the graded change-of-basis blocks between module classes and normal-form
    monomials:

        free:        x^i y^j (j <= 2n-2)      vs  V(l, r), P(l, r)
        z{sign}^m:   x^i y^j z_sign^m (j <= n-2)  vs  Omega^{sign m} V(l, r), z^m part only
        w[m, beta]:  x^i y^j w_{m,beta}       vs  M_m(l, r, beta q^{1-l} (l)_q)
    """
    pres = presentation_for(n)
    etas = list(etas) if etas is not None else sample_etas(n)
    out = {}

    free = [Monomial(i, j) for i in range(n) for j in range(2 * n - 1)]
    classes = [pres.simple_class(l, r) for l in range(1, n + 1) for r in range(n)]
    classes += [pres.projective_class(l, r, tables) for l in range(1, n) for r in range(n)]
    out["free"] = _basis_block(pres, free, classes)

    for sign in (Sign.Plus, Sign.Minus):
        for m in range(1, max_m + 1):
            key = "zplus" if sign == Sign.Plus else "zminus"
            monomials = [Monomial(i, j, **{key: m}) for i in range(n) for j in range(n - 1)]
            classes = [
                pres.class_of(IndecLabel.syz(n, sign, m, l, r), tables) for l in range(1, n) for r in range(n)
            ]
            out[f"z{sign}^{m}"] = _basis_block(pres, monomials, classes)

    for m in sorted(set(m_values)):
        for beta in sorted(set(etas), key=EtaParam.sort_key):
            monomials = [Monomial(i, j, w=[((m, beta), 1)]) for i in range(n) for j in range(n - 1)]
            classes = [
                pres.class_of(IndecLabel.band(n, m, l, r, band_parameter(beta, l, pres.field)), tables)
                for l in range(1, n)
                for r in range(n)
            ]
            out[f"w[{m},{beta.shorthand()}]"] = _basis_block(pres, monomials, classes)
    return out


def verify_basis(
    n: int, tables: DerivedTables, max_m: int = 3, m_values: Sequence[int] = (1,), etas: Sequence[EtaParam] = None
) -> CheckReport:
    """Pass iff every block of `basis_blocks` has determinant +1 or -1."""
    inputs = {"max_m": max_m, "m_values": sorted(set(m_values))}
    with Timer() as timer:
        dets = basis_blocks(n, tables, max_m, m_values, etas)
    bad = sorted(block for block, det in dets.items() if det not in (1, -1))
    status = CheckStatus.Fail if bad else CheckStatus.Pass
    detail = f"non-unimodular blocks: {', '.join(bad)}" if bad else f"{len(dets)} blocks unimodular"
    return CheckReport("basis", n, inputs, status, dets, "+-1", detail, timer.elapsed)


def verify_omega_band(
    n: int, s_max: int = 2, etas: Sequence[EtaParam] = None, seed: int = 0
) -> CheckReport:
    """
    Omega M_s(l, r, eta) = M_s(n-l, r+l, -eta q^l), Omega^{-1} gives the same module, and
    Omega^2 M_s(l, r, eta) = M_s(l, r, eta), for all l, r, s <= s_max and sampled eta.
    """
    catalog = catalog_for(n, seed)
    field = catalog.field
    etas = list(etas) if etas is not None else sample_etas(n)
    inputs = {"s_max": s_max, "etas": [eta.shorthand() for eta in etas], "seed": seed}
    status, detail, checked = CheckStatus.Pass, "", 0
    with Timer() as timer:
        for s, l, r, eta in itertools.product(range(1, s_max + 1), range(1, n), range(n), etas):
            label = IndecLabel.band(n, s, l, r, eta)
            target_label = IndecLabel.band(n, s, n - l, r + l, eta.scaled(-field.q_power(l)))
            try:
                M = catalog.build(label)
                target = catalog.build(target_label)
                omega = catalog.syzygy(M)
                steps = (
                    ("Omega", omega, target),
                    ("Omega^-1", catalog.cosyzygy(M), target),
                    ("Omega^2", catalog.syzygy(omega), M),
                )
                for name, got, want in steps:
                    if catalog.is_isomorphic(got, want) is None:
                        status = CheckStatus.Fail
                        expected = target_label if want is target else label
                        detail = f"{name} {label} is not {expected}"
                        break
            except OracleErrors as err:
                status = CheckStatus.Inconclusive
                detail = f"{label}: {err.detail}"
            if status != CheckStatus.Pass:
                break
            checked += 1
    if status == CheckStatus.Pass:
        detail = f"{checked} band modules"
    return CheckReport("omega-band", n, inputs, status, None, None, detail, timer.elapsed)


def verify_identities(max_m: int = 60) -> CheckReport:
    """The alternating binomial identity for all m <= max_m, 1 <= l <= (m-1)/2, 0 <= s <= 2l."""
    failures = []
    count = 0
    with Timer() as timer:
        for m in range(3, max_m + 1):
            for l in range(1, (m - 1) // 2 + 1):
                for s in range(2 * l + 1):
                    count += 1
                    if not alternating_binomial_check(m, l, s):
                        failures.append((m, l, s))
    status = CheckStatus.Fail if failures else CheckStatus.Pass
    detail = f"first failure (m, l, s) = {failures[0]}" if failures else f"{count} cases"
    return CheckReport(
        "identities:alternating-binomial", 0, {"max_m": max_m}, status, len(failures), 0, detail, timer.elapsed
    )


def random_element(pres, rng: random.Random, etas: Sequence[EtaParam]) -> RingElement:
    """A raw element with a handful of terms in every kind of generator."""
    n = pres.n
    terms: Dict[Monomial, int] = {}
    for _ in range(rng.randint(1, 4)):
        w = []
        for _ in range(rng.choice((0, 0, 0, 1, 1, 2))):
            w.append(((rng.randint(1, 2), rng.choice(etas)), 1))
        zplus = rng.choice((0, 0, 1, 2))
        zminus = rng.choice((0, 0, 0, 1))
        mono = Monomial(rng.randint(0, n + 1), rng.randint(0, 2 * n), zplus, zminus, w)
        terms[mono] = terms.get(mono, 0) + rng.choice((-3, -2, -1, 1, 2, 3))
    return RingElement(terms)


def verify_rewriting(n: int, samples: int = 1000, seed: int = 0) -> CheckReport:
    """
    On seeded random raw elements: the normal form is normal, idempotent, independent of the
    order rules are applied in, and preserves dimension; dimension is multiplicative.
    """
    pres = presentation_for(n)
    rng = random.Random(seed)
    etas = sample_etas(n)[:3]
    inputs = {"samples": samples, "seed": seed}
    status, detail, lhs, rhs = CheckStatus.Pass, f"{samples} samples", None, None
    with Timer() as timer:
        previous = None
        for i in range(samples):
            element = random_element(pres, rng, etas)
            nf = pres.normal_form(element)
            shuffled = pres.normal_form(element, rng=random.Random(seed * 100003 + i))
            problem = None
            if not all(pres.is_normal(mono) for mono in nf.terms):
                problem = "not normal"
            elif pres.normal_form(nf) != nf:
                problem = "not idempotent"
            elif shuffled != nf:
                problem, lhs, rhs = "depends on rule order", nf.to_json(), shuffled.to_json()
            elif pres.dimension(nf) != pres.dimension(element):
                problem = "changes dimension"
            elif previous is not None and pres.dimension(pres.multiply(previous, element)) != pres.dimension(
                previous
            ) * pres.dimension(element):
                problem = "dimension not multiplicative"
            if problem:
                status = CheckStatus.Fail
                detail = f"sample {i} ({element}): normal form {problem}"
                lhs = lhs or element.to_json()
                rhs = rhs or nf.to_json()
                break
            previous = element
    return CheckReport("identities:rewriting", n, inputs, status, lhs, rhs, detail, timer.elapsed)


def verify_stable(n: int, tables: DerivedTables = None) -> CheckReport:
    """Every projective class vanishes in the stable Green ring and z z^-1 = 1 there."""
    pres = presentation_for(n)
    status, detail, lhs = CheckStatus.Pass, "", None
    with Timer() as timer:
        labels = [IndecLabel.projective(n, l, r) for l in range(1, n + 1) for r in range(n)]
        for label in labels:
            value = pres.stable_normal_form(pres.class_of(label, tables))
            if value:
                status, detail, lhs = CheckStatus.Fail, f"[{label}] = {value} in the stable ring", value.to_json()
                break
        if status == CheckStatus.Pass:
            product = pres.stable_normal_form(pres.z(Sign.Plus) * pres.z(Sign.Minus))
            if product != 1:
                status, detail, lhs = CheckStatus.Fail, f"z z^-1 = {product}", product.to_json()
            else:
                detail = f"{len(labels)} projective classes vanish"
    return CheckReport("stable-projectives", n, {}, status, lhs, None if lhs is None else 0, detail, timer.elapsed)


# suites


def crosscheck_labels(n: int, max_m: int = 2, max_s: int = 2, etas: Sequence[EtaParam] = None) -> List[IndecLabel]:
    """The bounded catalog: all simples and projectives, syzygies up to max_m, bands up to max_s."""
    etas = list(etas) if etas is not None else sample_etas(n)
    labels = [IndecLabel.simple(n, l, r) for l in range(1, n + 1) for r in range(n)]
    labels += [IndecLabel.proj(n, l, r) for l in range(1, n) for r in range(n)]
    labels += [
        IndecLabel.syz(n, sign, m, l, r)
        for sign in (Sign.Plus, Sign.Minus)
        for m in range(1, max_m + 1)
        for l in range(1, n)
        for r in range(n)
    ]
    labels += [
        IndecLabel.band(n, s, l, r, eta)
        for s in range(1, max_s + 1)
        for l in range(1, n)
        for r in range(n)
        for eta in etas
    ]
    return labels


_CHECKS = {
    "crosscheck": crosscheck_product,
    "relation": verify_named_relation,
    "basis": verify_basis,
    "omega": verify_omega_band,
    "identities": verify_identities,
    "rewriting": verify_rewriting,
    "stable": verify_stable,
}


def _execute(task: Tuple[str, dict]) -> CheckReport:
    check, kwargs = task
    return _CHECKS[check](**kwargs)


def suite_tasks(name: str, config: Config, tables: DerivedTables) -> List[Tuple[str, dict]]:
    """
    Independent check invocations making up a suite.

    Raises:
        RangeError: Unknown suite name.
    """
    if name not in SuiteName.choices:
        raise RangeError(f"Unknown suite {name!r}; choose from {', '.join(SuiteName.choices)}")
    n, seed = config.n, config.seed
    tasks: List[Tuple[str, dict]] = []
    if name in (SuiteName.Identities, SuiteName.All):
        tasks.append(("identities", {"max_m": 60}))
        tasks.append(("rewriting", {"n": n, "samples": 1000, "seed": seed}))
    if name in (SuiteName.Relations, SuiteName.All):
        for relation in relation_names:
            tasks.append(("relation", {"name": relation, "n": n, "tables": tables, "seed": seed}))
        tasks.append(("stable", {"n": n, "tables": tables}))
    if name in (SuiteName.Crosscheck, SuiteName.All):
        for A, B in itertools.combinations_with_replacement(crosscheck_labels(n), 2):
            tasks.append(("crosscheck", {"A": A, "B": B, "n": n, "tables": tables, "seed": seed}))
    if name in (SuiteName.Basis, SuiteName.All):
        tasks.append(("basis", {"n": n, "tables": tables, "max_m": 3}))
    if name in (SuiteName.Omega, SuiteName.All):
        tasks.append(("omega", {"n": n, "s_max": 2, "seed": seed}))
    return tasks


def run_suite(name: str, config: Config, tables: DerivedTables = None) -> List[CheckReport]:
    """
    Run a suite, fanning out over `config.jobs` worker processes when jobs > 1.

    Returns:
        List[CheckReport]: Reports sorted by check id.
    """
    config.validate()
    if tables is None:
        tables = cached_tables(config)
    tasks = suite_tasks(name, config, tables)
    reports: List[CheckReport] = []
    with Progress(disable=not config.verbose) as progress:
        bar = progress.add_task(f"[cyan]Running {name} checks...", total=len(tasks))
        if config.jobs > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                for report in pool.map(_execute, tasks, chunksize=max(1, len(tasks) // (4 * config.jobs))):
                    reports.append(report)
                    progress.update(bar, advance=1)
        else:
            for task in tasks:
                reports.append(_execute(task))
                progress.update(bar, advance=1)
    return sorted(reports, key=lambda report: report.check_id)


def summary_exit_code(reports: Iterable[CheckReport]) -> int:
    """0 when everything passed, 1 on any failure, else 2 when something was inconclusive."""
    statuses = {report.status for report in reports}
    if CheckStatus.Fail in statuses:
        return 1
    if CheckStatus.Inconclusive in statuses:
        return 2
    return 0
