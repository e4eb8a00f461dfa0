"""
TaftGreen Integration Test Suite
================================

End-to-end checks that the symbolic Green ring and the module oracle agree.

It covers:
- Every product of two simple modules against its decomposition
- Syzygy products built out of the derived tables
- Band products, including the parameter change under tensoring with simples
- The dimension homomorphism on decomposed products

The tables are derived once per module by `conftest.py` (max_m = 4, max_s = 2). Pass
`--n 4` to run the same checks for n = 4, and `--slow` for the larger sweeps.
"""

from collections import Counter
import itertools
import pytest

from taftgreen.cyclo import EtaParam
from taftgreen.modcat import band_parameter
from taftgreen.taftgreen_types import *
from taftgreen.verify import crosscheck_labels, crosscheck_product


def _ring_sum(presentation, summands: Counter, tables):
    total = 0
    for label, mult in summands.items():
        total = presentation.class_of(label, tables) * mult + total
    return presentation.normal_form(total)


def test_simple_products(catalog, presentation, n, tables):
    simples = [IndecLabel.simple(n, l, 0) for l in range(1, n + 1)]
    for A, B in itertools.combinations_with_replacement(simples, 2):
        result = catalog.tensor_decomposition(A, B)
        assert result.dims_check, f"{A} (x) {B}: {result.dims_line()}"
        lhs = presentation.multiply(presentation.class_of(A), presentation.class_of(B))
        rhs = _ring_sum(presentation, result.summands, tables)
        assert lhs == rhs, f"[{A}][{B}] = {lhs} but the summands give {rhs}"


def test_syzygy_chain(catalog, presentation, n, tables):
    omega = IndecLabel.syz(n, Sign.Plus, 1, 1, 0)
    for m in range(1, 3):
        left = IndecLabel.syz(n, Sign.Plus, m, 1, 0)
        summands = catalog.decompose_tensor(left, omega)
        stable = [label for label in summands if not label.is_projective]
        assert stable == [IndecLabel.syz(n, Sign.Plus, m + 1, 1, 0)], f"{left} (x) {omega} = {dict(summands)}"
        lhs = presentation.multiply(presentation.class_of(left, tables), presentation.class_of(omega, tables))
        assert lhs == _ring_sum(presentation, summands, tables), f"Dictionary disagrees on {left} (x) {omega}"


def test_band_parameter_change(catalog, presentation, n, tables):
    eta = EtaParam.finite(catalog.field.from_rational(2))
    band = IndecLabel.band(n, 1, 1, 0, eta)
    for l in range(2, n):
        summands = catalog.decompose_tensor(IndecLabel.simple(n, l, 0), band)
        expected = IndecLabel.band(n, 1, l, 0, band_parameter(eta, l, catalog.field))
        assert summands[expected] == 1, f"V({l},0) (x) {band} = {dict(summands)}, expected {expected}"
        lhs = presentation.multiply(presentation.simple_class(l, 0), presentation.class_of(band, tables))
        assert lhs == _ring_sum(presentation, summands, tables), f"Dictionary disagrees on V({l},0) (x) {band}"


def test_dimension_is_multiplicative(catalog, presentation, n, tables):
    labels = [IndecLabel.simple(n, 2, 1), IndecLabel.proj(n, 1, 0), IndecLabel.syz(n, Sign.Minus, 1, 2, 0)]
    for A, B in itertools.combinations_with_replacement(labels, 2):
        product = presentation.multiply(presentation.class_of(A, tables), presentation.class_of(B, tables))
        assert presentation.dimension(product) == A.dim * B.dim, f"dim [{A}][{B}] != {A.dim * B.dim}"


@pytest.mark.slow
def test_crosscheck_sweep(n, tables):
    labels = crosscheck_labels(n, max_m=1, max_s=1, etas=[EtaParam.infinity()])
    failures = []
    for A, B in itertools.combinations_with_replacement(labels, 2):
        report = crosscheck_product(A, B, n, tables)
        if not report.passed:
            failures.append(f"{report.check_id}: {report.detail}")
    assert not failures, f"{len(failures)} products disagree: {failures[:5]}"
