from collections import Counter
import pytest

from taftgreen.cyclo import EtaParam
from taftgreen.hopf import rep_validate
from taftgreen.modcat import *
from taftgreen.auxiliary import SparseMatrix
from taftgreen.taftgreen_types import (
    Inconclusive,
    IndecLabel,
    LabelKind,
    NonSplitSemisimpleQuotient,
    RangeError,
    ShapeMismatch,
    Sign,
)


def _etas(field):
    return [EtaParam.finite(field.zero), EtaParam.finite(field.one), EtaParam.infinity()]


def test_simples_are_representations(catalog, n):
    for l, r in catalog.simple_params():
        module = catalog.build_simple(l, r)
        assert module.dim == l, f"V({l},{r}) has dimension {module.dim}"
        result = rep_validate(module)
        assert result.ok, f"V({l},{r}) violates {result.failed_relation}"


def test_simple_range(catalog, n):
    with pytest.raises(RangeError):
        catalog.build_simple(n + 1, 0)
    with pytest.raises(RangeError):
        ModuleCatalog(2)


def test_bands_are_representations(catalog, n):
    for l in range(1, n):
        for eta in _etas(catalog.field):
            module = catalog.build_band1(l, 0, eta)
            assert module.dim == n, f"M_1({l},0;{eta}) has dimension {module.dim}"
            result = rep_validate(module)
            assert result.ok, f"M_1({l},0;eta={eta.shorthand()}) violates {result.failed_relation}"
            assert is_local(module), f"M_1({l},0;eta={eta.shorthand()}) decomposes"


def test_mismatched_weights_rejected(catalog):
    field = catalog.field
    with pytest.raises(ShapeMismatch):
        ModuleRep(SparseMatrix.zeros(2, 2, field), SparseMatrix.zeros(2, 2, field), [(0, 0)])


def test_projectives(catalog, n):
    for l in range(1, n):
        P = catalog.projective(l, 1)
        assert P.dim == 2 * n, f"P({l},1) has dimension {P.dim}"
        assert rep_validate(P).ok, f"P({l},1) is not a representation"
        top, socle = catalog.top_and_socle(P)
        expected = [IndecLabel.simple(n, l, 1)]
        assert top == expected, f"top P({l},1) = {top}"
        assert socle == expected, f"soc P({l},1) = {socle}"
        assert catalog.loewy_length(P) == 3, f"P({l},1) has Loewy length {catalog.loewy_length(P)}"
    assert catalog.projective(n, 2) is catalog.build_simple(n, 2), "P(n,r) must be the simple V(n,r)"


def test_hom_into_projective_hits_socle(catalog):
    P = catalog.projective(1, 0)
    S = catalog.build_simple(1, 0)
    assert len(hom_space(S, P)) == 1, "V(1,0) should embed once in P(1,0)"
    assert len(hom_space(P, S)) == 1, "P(1,0) should map once onto V(1,0)"
    assert not hom_space(catalog.build_simple(1, 1), P), "V(1,1) does not lie in soc P(1,0)"


def test_direct_sum_and_shift(catalog):
    V20 = catalog.build_simple(2, 0)
    total = direct_sum([V20, catalog.build_simple(1, 0)])
    assert total.dim == 3, f"V(2,0) + V(1,0) has dimension {total.dim}"
    assert not is_local(total), "A direct sum has a local endomorphism ring"
    shifted = catalog.shift(V20, 1)
    assert catalog.is_isomorphic(shifted, catalog.build_simple(2, 1)) is not None, "V(2,0) (x) V(1,1) != V(2,1)"


def test_central_character(catalog, n):
    for l, r in catalog.simple_params():
        module = catalog.build_simple(l, r)
        scalar = catalog.central_character(l, r)
        expected = SparseMatrix.identity(l, catalog.field).scale(scalar)
        assert catalog.central_action(module) == expected, f"Central element is not scalar on V({l},{r})"
    for l in range(1, n):
        # V(l, r) and V(n-l, r+l) are linked
        assert catalog.central_character(l, 0) == catalog.central_character(n - l, l), f"V({l},0) not linked"


def test_resolution_profile(catalog, n):
    profile = catalog.resolution_profile(1, 0, 3)
    assert profile[0] == Counter({(1, 0): 1}), f"Top of V(1,0) is {profile[0]}"
    for k, layer in enumerate(profile):
        assert sum(layer.values()) == k + 1, f"Omega^{k} V(1,0) has top {layer}"
        length = n - 1 if k % 2 else 1
        assert all(l == length for l, _ in layer), f"Omega^{k} V(1,0) has top {layer}"


@pytest.mark.parametrize("m", [1, 2])
def test_syzygy_dimensions(catalog, n, m):
    for sign in (Sign.Plus, Sign.Minus):
        label = IndecLabel.syz(n, sign, m, 1, 0)
        module = catalog.build(label)
        assert module.dim == label.dim, f"{label} has dimension {module.dim}, expected {label.dim}"
        assert is_local(module), f"{label} decomposes"


def test_identify_syzygy(catalog, n):
    omega = catalog.syzygy(catalog.build_simple(1, 0))
    label = catalog.identify(omega)
    assert label == IndecLabel.syz(n, Sign.Plus, 1, 1, 0), f"Omega V(1,0) identified as {label}"


def test_cosyzygy_inverts_syzygy(catalog):
    V = catalog.build_simple(2, 1)
    back = catalog.cosyzygy(catalog.syzygy(V))
    assert catalog.is_isomorphic(back, V) is not None, "Omega^-1 Omega V(2,1) != V(2,1)"


def test_band_tower(catalog):
    eta = EtaParam.finite(catalog.field.one)
    result = catalog.validate_band_tower(2, 1, 0, eta)
    assert result.ok, f"M_2(1,0;eta=1) failed gate {result.failed_relation}"
    module = catalog.build_band(2, 1, 0, eta)
    assert rep_validate(module).ok, "M_2(1,0;eta=1) is not a representation"


def test_band_syzygy_twist(catalog, n):
    eta = EtaParam.finite(catalog.field.one)
    omega = catalog.syzygy(catalog.build_band1(1, 0, eta))
    twisted = catalog.build_band1(n - 1, 1, eta.scaled(-catalog.field.q))
    assert catalog.is_isomorphic(omega, twisted) is not None, "Omega M_1(1,0;1) is not M_1(n-1,1;-q)"


def test_fingerprints_are_stable(catalog, n):
    other = ModuleCatalog(n)
    for l, r in [(1, 0), (2, 1)]:
        assert catalog.build_simple(l, r).fingerprint() == other.build_simple(l, r).fingerprint(), (
            f"V({l},{r}) fingerprint differs between catalogs"
        )


@pytest.mark.parametrize("l", [1, 2])
def test_simple_tensor_simple(catalog, n, l):
    A, B = IndecLabel.simple(n, 2, 0), IndecLabel.simple(n, l, 0)
    got = catalog.decompose_tensor(A, B)
    expected = Counter({IndecLabel.simple(n, l + 1, 0): 1})
    if l > 1:
        expected[IndecLabel.simple(n, l - 1, 1)] += 1
    assert got == expected, f"V(2,0) (x) V({l},0) = {got}, expected {expected}"


def test_trivial_module_is_unit(catalog, n):
    P = IndecLabel.proj(n, 1, 0)
    result = catalog.tensor_decomposition(IndecLabel.simple(n, 1, 0), P)
    assert result.summands == Counter({P: 1}), f"V(1,0) (x) P(1,0) = {result}"
    assert result.witness.is_invertible(), "The witness must be invertible"


def test_projective_summand(catalog):
    if catalog.n != 3:
        pytest.skip("worked example for n = 3")
    result = catalog.tensor_decomposition(IndecLabel.simple(3, 3, 1), IndecLabel.simple(3, 3, 0))
    expected = Counter({IndecLabel.proj(3, 1, 0): 1, IndecLabel.simple(3, 3, 2): 1})
    assert result.summands == expected, f"V(3,1) (x) V(3,0) = {result}"
    assert result.dims_check, f"Dimensions do not add up: {result.dims_line()}"
    assert result.dims_line() == "9 = 3 + 6", f"Unexpected dims line {result.dims_line()}"


def test_simple_tensor_band(catalog, n):
    eta = EtaParam.finite(catalog.field.one)
    band = IndecLabel.band(n, 1, 1, 0, eta)
    result = catalog.tensor_decomposition(IndecLabel.simple(n, 2, 0), band)
    assert result.dims_check, f"Dimensions do not add up: {result.dims_line()}"
    bands = [label for label in result.labels() if label.kind == LabelKind.Band]
    assert len(bands) == 1, f"Expected one band summand in {result}"
    expected_eta = band_parameter(band_base_parameter(eta, 1, catalog.field), 2, catalog.field)
    assert bands[0].l == 2, f"Band summand {bands[0]} should have length 2"
    assert bands[0].eta == expected_eta, f"Band summand {bands[0]} has the wrong parameter"
    others = [label for label in result.labels() if label.kind != LabelKind.Band]
    assert all(label.is_projective for label in others), f"Non-projective remainder in {result}"


def test_syzygy_product_is_stably_trivial(catalog, n):
    A = IndecLabel.syz(n, Sign.Plus, 1, 1, 0)
    B = IndecLabel.syz(n, Sign.Minus, 1, 1, 0)
    result = catalog.tensor_decomposition(A, B)
    assert result.dim == A.dim * B.dim, f"Product has dimension {result.dim}"
    assert result.summands[IndecLabel.simple(n, 1, 0)] == 1, f"V(1,0) missing from {result}"
    rest = [label for label in result.labels() if label != IndecLabel.simple(n, 1, 0)]
    assert all(label.is_projective for label in rest), f"Non-projective remainder in {result}"


def test_zeroed_d_fails_validation(catalog):
    V = catalog.build_simple(2, 0)
    broken = ModuleRep(V.a, SparseMatrix.zeros(2, 2, catalog.field), V.weights, "V(2,0) without d")
    result = rep_validate(broken)
    assert result.failed_relation == "da - q ad = 1 - bc", f"Unexpected failure {result.failed_relation}"


def test_syzygy_product_at_three(catalog):
    if catalog.n != 3:
        pytest.skip("worked example for n = 3")
    A = IndecLabel.syz(3, Sign.Plus, 1, 1, 0)
    B = IndecLabel.syz(3, Sign.Minus, 1, 1, 0)
    expected = Counter(
        {IndecLabel.simple(3, 1, 0): 1, IndecLabel.proj(3, 2, 1): 2, IndecLabel.simple(3, 3, 2): 4}
    )
    result = catalog.tensor_decomposition(A, B)
    assert result.summands == expected, f"{A} (x) {B} = {result}"
    assert result.dims_line() == "25 = 1 + 12 + 12", f"Unexpected dims line {result.dims_line()}"


def _sqrt2_band(catalog):
    """M_2(1,0) with the wrap block q [[0, 1], [2, 0]]: End is Q(q)(sqrt 2) modulo its radical."""
    field, n = catalog.field, catalog.n
    model = catalog._band_matrices(2, 1, 0, EtaParam.finite(field.zero))
    wrap = 2 * (n - 1)
    entries = {(i, j): v for i, row in model.d.rows.items() for j, v in row.items() if i < wrap}
    entries[(wrap, 1)] = field.q
    entries[(wrap + 1, 0)] = field.q * 2
    d = SparseMatrix.from_entries(entries, model.dim, model.dim, field)
    return ModuleRep(model.a, d, model.weights, "M_2(1,0;sqrt 2)")


def test_split_names_bands_without_hints(catalog, n):
    eta = EtaParam.finite(catalog.field.from_rational(5))
    label = IndecLabel.band(n, 1, 1, 0, eta)
    band = catalog.build_band1(1, 0, eta)
    assert catalog.split(band).summands == Counter({label: 1}), "M_1(1,0;eta=5) should split to itself"
    result = catalog.split(direct_sum([band, catalog.build_simple(2, 0)]))
    expected = Counter({label: 1, IndecLabel.simple(n, 2, 0): 1})
    assert result.summands == expected, f"M_1(1,0;eta=5) + V(2,0) = {result}"
    assert result.witness.is_invertible(), "The witness must be invertible"


def test_split_repeated_summand(catalog, n):
    band = catalog.build_band1(2, 1, EtaParam.infinity())
    result = catalog.split(direct_sum([band, band]))
    expected = Counter({IndecLabel.band(n, 1, 2, 1, EtaParam.infinity()): 2})
    assert result.summands == expected, f"Two copies of M_1(2,1;eta=inf) split as {result}"
    assert result.blocks == [IndecLabel.band(n, 1, 2, 1, EtaParam.infinity())] * 2


def test_local_summands_cover_the_module(catalog):
    total = direct_sum([catalog.build_simple(1, 0), catalog.build_simple(2, 1), catalog.projective(1, 0)])
    pieces = local_summands(total)
    assert sorted(piece.dim for piece, _ in pieces) == [1, 2, 2 * catalog.n], "Unexpected piece dimensions"
    columns = [vector for _, coords in pieces for vector in coords]
    assert SparseMatrix.from_columns(columns, total.dim, catalog.field).is_invertible()
    assert all(is_local(piece) for piece, _ in pieces), "Every piece must be indecomposable"


def test_identify_band_parameter(catalog, n):
    eta = EtaParam.finite(catalog.field.one)
    module = catalog.build_band(2, 1, 0, eta)
    assert catalog.band_label(module) == IndecLabel.band(n, 2, 1, 0, eta)
    assert catalog.identify(module) == IndecLabel.band(n, 2, 1, 0, eta)
    assert catalog.band_label(catalog.build_simple(2, 0)) is None, "V(2,0) is not a band"


def test_irrational_endomorphisms_do_not_split(catalog):
    module = _sqrt2_band(catalog)
    assert rep_validate(module).ok, "The sqrt 2 band should still be a representation"
    assert not is_local(module), "End modulo its radical has dimension two"
    with pytest.raises(NonSplitSemisimpleQuotient):
        local_summands(module)
    with pytest.raises(NonSplitSemisimpleQuotient):
        catalog.split(module)


def test_undecided_isomorphism_propagates(n, monkeypatch):
    import taftgreen.modcat as modcat

    def undecided(M, N, seed=0):
        raise Inconclusive("sweep exhausted")

    monkeypatch.setattr(modcat, "is_isomorphic", undecided)
    fresh = ModuleCatalog(n)
    eta = EtaParam.finite(fresh.field.one)
    with pytest.raises(Inconclusive):
        fresh.validate_band_tower(2, 1, 0, eta)
    with pytest.raises(Inconclusive):
        fresh.build_band(2, 1, 0, eta)


def test_shift_by_zero_returns_a_copy(n):
    fresh = ModuleCatalog(n)
    V = fresh.build_simple(2, 1)
    same = fresh.shift(V, n)
    assert same is not V, "shift by a multiple of n must not alias its input"
    assert same.basis_tag == V.basis_tag and same.fingerprint() == V.fingerprint()
    omega = fresh.syzygy_power(Sign.Plus, 1, 1, 0)
    base = fresh._syz_chain[(Sign.Plus, 1)][1]
    assert omega is not base, "Omega^1 V(1,0) should not be the cached chain entry"
    assert base.basis_tag == "Omega^1 V(1,0)", f"Chain entry was retagged to {base.basis_tag}"
    first = fresh.projective(1, 0)
    module, rho = fresh._proj_base[1]
    assert fresh.projective(1, rho) is not module, "P(1,rho) should not alias the cached base"
    assert module.basis_tag == f"P(1,{rho})", f"Cached base was retagged to {module.basis_tag}"
    assert first.dim == 2 * n
