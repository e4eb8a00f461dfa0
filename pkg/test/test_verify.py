from collections import Counter
import json
import pytest

from taftgreen.cyclo import EtaParam, cyclotomic_field
from taftgreen.relation_registry import get_relation_model, normalize_relation_name, relation_names, simple_power_coefficients
from taftgreen.taftgreen_types import *
from taftgreen.verify import *


def _report(status):
    return CheckReport("dummy", 3, {}, status)


@pytest.mark.parametrize("name", relation_names)
def test_named_relation(name, n, tables):
    report = verify_named_relation(name, n, tables, m_values=(1,), etas=sample_etas(n)[:2])
    assert report.status == CheckStatus.Pass, f"{report.check_id}: {report.detail}"
    assert report.check_id == f"relation:{name}", f"Unexpected id {report.check_id}"


def test_symbolic_only_relation(n, tables):
    report = verify_named_relation("band-same", n, tables, m_values=(1, 2), oracle=False)
    assert report.passed, report.detail
    assert report.inputs["oracle"] is False, "oracle flag should be recorded as off"


def test_relation_names():
    assert len(relation_names) == 13, f"Expected 13 named relations, got {len(relation_names)}"
    assert normalize_relation_name("Band_Same") == "band-same", "Names should normalize to kebab case"
    assert get_relation_model("syzygy product").name == "syzygy-product", "Spaces should map to dashes"
    assert get_relation_model("banana") is None, "Unknown relations resolve to None"
    with pytest.raises(ParseError):
        verify_named_relation("banana", 3)


def test_simple_power_coefficients():
    # y^3 = [V(4,0)] + 2 [V(2,1)]
    assert simple_power_coefficients(3) == [(0, 1), (1, 2)], f"Got {simple_power_coefficients(3)}"


@pytest.mark.parametrize(
    "left, right",
    [
        ("V(2,0)", "V(2,0)"),
        ("V(2,1)", "P(1,2)"),
        ("Omega^1 V(1,0)", "Omega^-1 V(1,0)"),
        ("V(2,0)", "M_1(1,0;eta=1)"),
        ("M_1(1,0;eta=1)", "M_1(1,0;eta=inf)"),
    ],
)
def test_crosscheck(left, right, n, tables):
    A, B = IndecLabel.parse(left, n), IndecLabel.parse(right, n)
    report = crosscheck_product(A, B, n, tables)
    assert report.status == CheckStatus.Pass, f"{report.check_id}: {report.detail}"
    assert report.check_id == f"crosscheck:{A}*{B}", f"Unexpected id {report.check_id}"


def test_basis_blocks_unimodular(n, tables):
    dets = basis_blocks(n, tables, max_m=2, etas=sample_etas(n)[:2])
    assert "free" in dets and f"z{Sign.Plus}^2" in dets, f"Missing blocks in {sorted(dets)}"
    bad = {block: det for block, det in dets.items() if det not in (1, -1)}
    assert not bad, f"Non-unimodular blocks {bad}"
    assert verify_basis(n, tables, max_m=1).passed, "verify_basis should pass"


def test_omega_band(n):
    field = cyclotomic_field(n)
    report = verify_omega_band(n, s_max=1, etas=[EtaParam.finite(field.one), EtaParam.infinity()])
    assert report.passed, report.detail


def test_identities():
    report = verify_identities(max_m=20)
    assert report.passed, report.detail
    assert report.n == 0, "The binomial identity does not depend on n"


def test_rewriting(n):
    report = verify_rewriting(n, samples=40, seed=5)
    assert report.passed, report.detail


def test_stable_projectives(n, tables):
    report = verify_stable(n, tables)
    assert report.passed, report.detail


def test_summary_exit_code():
    assert summary_exit_code([]) == 0, "No reports means nothing failed"
    assert summary_exit_code([_report(CheckStatus.Pass)]) == 0
    assert summary_exit_code([_report(CheckStatus.Pass), _report(CheckStatus.Inconclusive)]) == 2
    assert summary_exit_code([_report(CheckStatus.Inconclusive), _report(CheckStatus.Fail)]) == 1


def test_report_json_leaves_out_time():
    report = CheckReport("x", 3, {"a": 1}, CheckStatus.Pass, elapsed=1.5)
    assert "elapsed" not in report.to_json(), "Wall time must be opt-in"
    assert json.loads(report.to_line(timing=True))["elapsed"] == 1.5, "Wall time missing with timing"


def test_suite_tasks(n, tables):
    config = Config(n=n)
    tasks = suite_tasks(SuiteName.Relations, config, tables)
    assert len(tasks) == len(relation_names) + 1, f"Relations suite has {len(tasks)} tasks"
    labels = crosscheck_labels(n)
    crosscheck = suite_tasks(SuiteName.Crosscheck, config, tables)
    assert len(crosscheck) == len(labels) * (len(labels) + 1) // 2, "Crosscheck should cover unordered pairs"
    with pytest.raises(RangeError):
        suite_tasks("banana", config, tables)


def test_config_validation():
    assert Config(n=4).validate().n == 4
    for bad in (Config(n=2), Config(n=6), Config(jobs=0), Config(fmt="xml")):
        with pytest.raises(RangeError):
            bad.validate()
    with pytest.raises(LargeOrderRefused):
        Config(n=5).validate()
    assert Config(n=5, allow_large=True).validate().n == 5


def test_table_cache(tmp_path, tables):
    cache_store = TableCache(str(tmp_path))
    assert cache_store.load(tables.n) is None, "Empty directory should have no cache"
    path = cache_store.save(tables.n, {"max_m": tables.max_m, "tables": tables.to_json()})
    payload = cache_store.load(tables.n)
    assert payload["max_m"] == tables.max_m, f"Cache at {path} lost max_m"
    config = Config(n=tables.n, cache_dir=str(tmp_path))
    assert cached_tables(config, derive=False) == tables, "Cached tables differ from the derived ones"
    with open(path, "r+", encoding="utf-8") as f:
        data = json.load(f)
        data["max_m"] = 99
        f.seek(0)
        f.truncate()
        json.dump(data, f)
    with pytest.raises(CacheCorrupted):
        cache_store.load(tables.n)


def test_missing_tables(tmp_path):
    with pytest.raises(MissingTableEntry):
        cached_tables(Config(n=3, cache_dir=str(tmp_path)), derive=False)


def test_relations_suite(n, tables):
    reports = run_suite(SuiteName.Relations, Config(n=n), tables)
    failed = [f"{r.check_id}: {r.detail}" for r in reports if not r.passed]
    assert not failed, f"Failing relations: {failed}"
    assert [r.check_id for r in reports] == sorted(r.check_id for r in reports), "Reports should be sorted"


@pytest.mark.slow
def test_full_suite(n, tables):
    reports = run_suite(SuiteName.All, Config(n=n, jobs=2), tables)
    failed = [f"{r.check_id}: {r.detail}" for r in reports if not r.passed]
    assert summary_exit_code(reports) == 0, f"Failing checks: {failed}"


@pytest.mark.slow
@pytest.mark.parametrize("name", ["syzygy-product", "band-syzygy-plus", "simple-tensor-power"])
def test_named_relation_n4(name):
    tables = derive_tables(4, max_m=2, max_s=1)
    report = verify_named_relation(name, 4, tables, m_values=(1,), etas=sample_etas(4)[:2])
    assert report.passed, f"{report.check_id} at n=4: {report.detail}"


def test_module_image(n):
    pres = presentation_for(n)
    image = module_image(pres.y * pres.y - 1, catalog_for(n))
    expected = Counter(
        {IndecLabel.simple(n, 3, 0): 1, IndecLabel.simple(n, 1, 1): 1, IndecLabel.simple(n, 1, 0): -1}
    )
    assert image == expected, f"y^2 - 1 maps to {image}"
    x_n = RingElement.monomial(Monomial(xe=n)) - 1
    assert module_image(x_n, catalog_for(n)) == Counter(), "x^n - 1 must map to zero"


def test_stable_residue_module_images(n, tables):
    report = verify_named_relation("stable-residue", n, tables, m_values=(1,), etas=[EtaParam.infinity()])
    assert report.passed, report.detail
    assert report.inputs["oracle"] is True, "Residue relations have a module side"


def test_nonzero_module_image_fails(n, tables, monkeypatch):
    model = RelationModel(
        "square",
        "y^2 = 1",
        lambda pres, tables, m_values, etas: [],
        images=lambda pres, m_values, etas: [("y^2 - 1", pres.y * pres.y - 1, False), ("f1", pres.f1, True)],
    )
    monkeypatch.setattr("taftgreen.verify.get_relation_model", lambda name: model)
    report = verify_named_relation("square", n, tables)
    assert report.status == CheckStatus.Fail, report.detail
    assert report.detail.startswith("module image [y^2 - 1]"), f"Unexpected detail {report.detail}"


@pytest.mark.parametrize("error", [Inconclusive, Unidentified, NonSplitSemisimpleQuotient])
def test_undecided_oracle_is_inconclusive(error, n, tables, monkeypatch):
    def undecided(self, A, B):
        raise error(f"no witness for {A} (x) {B}")

    monkeypatch.setattr(ModuleCatalog, "tensor_decomposition", undecided)
    A = IndecLabel.simple(n, 2, 0)
    reports = [
        crosscheck_product(A, A, n, tables),
        verify_named_relation("syzygy-product", n, tables),
        verify_named_relation("stable-residue", n, tables, m_values=(1,), etas=[EtaParam.infinity()]),
    ]
    for report in reports:
        assert report.status == CheckStatus.Inconclusive, f"{report.check_id}: {report.status}"
        assert "no witness" in report.detail, f"{report.check_id}: {report.detail}"
    assert reports[1].detail.startswith("oracle ["), reports[1].detail
    assert reports[2].detail.startswith("module image ["), reports[2].detail
    assert summary_exit_code(reports) == 2, "Inconclusive checks alone exit with 2"
