from collections import Counter
from typing import List, Tuple, Union
import itertools

from .taftgreen_types import IndecLabel, RelationModel, Sign
from .cyclo import EtaParam, cyclotomic_field
from .auxiliary import binomial, c_half

# symbolic builders: (pres, tables, m_values, etas) -> [(tag, lhs, rhs, stable)]
# oracle builders:   (n, m_values, etas) -> [(tag, (A, B), expected Counter)]
# image builders:    (pres, m_values, etas) -> [(tag, element, stable)]


def _band_items(m_values, etas) -> List[Tuple[int, EtaParam]]:
    return [
        (m, eta)
        for eta in sorted(set(etas), key=EtaParam.sort_key)
        for m in sorted(set(m_values))
    ]


def _tag(m: int, eta: EtaParam) -> str:
    return f"m={m}, eta={eta.shorthand()}"


def _projective_sum(pres, tables, pairs) -> "RingElement":
    total = 0
    for l, r in pairs:
        total = pres.class_of(IndecLabel.projective(pres.n, l, r), tables) + total
    return total


def _odd_pairs(n: int, start: int) -> List[Tuple[int, int]]:
    return [(2 * i + 1, -i) for i in range(start, c_half(n - 2) + 1)]


def _even_pairs(n: int) -> List[Tuple[int, int]]:
    return [(2 * i, -i) for i in range(1, c_half(n - 1) + 1)]


def _counter(n: int, pairs, mult: int = 1) -> Counter:
    out = Counter()
    for l, r in pairs:
        out[IndecLabel.projective(n, l, r)] += mult
    return out


def _syz1(n: int, sign: str) -> IndecLabel:
    return IndecLabel.syz(n, sign, 1, 1, 0)


def _twisted_band(n: int, m: int, eta: EtaParam) -> IndecLabel:
    """M_m(n-1, 1, -eta q), the band part of V(n-1, 1) (x) M_m(1, 0, eta)."""
    field = cyclotomic_field(n)
    return IndecLabel.band(n, m, n - 1, 1, eta.scaled(-field.q))


# symbolic sides


def _odd_projective_sum(pres, tables, m_values, etas):
    lhs = _projective_sum(pres, tables, _odd_pairs(pres.n, 0))
    return [("", lhs, pres.x * pres.f1 * pres.f1, False)]


def _odd_projective_tail(pres, tables, m_values, etas):
    lhs = _projective_sum(pres, tables, _odd_pairs(pres.n, 1))
    return [("", lhs, pres.f3 * pres.f1, False)]


def _even_projective_sum(pres, tables, m_values, etas):
    lhs = _projective_sum(pres, tables, _even_pairs(pres.n))
    return [("", lhs, pres.f4 * pres.f1, False)]


def _syzygy_product(pres, tables, m_values, etas):
    lhs = pres.z(Sign.Plus) * pres.z(Sign.Minus)
    return [("", lhs, 1 + pres.f1 * (2 * pres.y + 4 * pres.f3), False)]


def _syzygy_absorption(pres, tables, m_values, etas):
    rhs = pres.f1 * (1 + 2 * pres.f4)
    return [(f"z{sign}", pres.z(sign) * pres.f1, rhs, False) for sign in (Sign.Plus, Sign.Minus)]


def _band_absorption(pres, tables, m_values, etas):
    return [
        (_tag(m, eta), pres.w(m, eta) * pres.f1, m * (1 + pres.f4) * pres.f1, False)
        for m, eta in _band_items(m_values, etas)
    ]


def _band_syzygy_plus(pres, tables, m_values, etas):
    out = []
    for m, eta in _band_items(m_values, etas):
        w = pres.w(m, eta)
        out.append((_tag(m, eta), pres.z(Sign.Plus) * w, pres.f4 * w + m * pres.x * pres.f1 * pres.f1, False))
    return out


def _band_syzygy_minus(pres, tables, m_values, etas):
    out = []
    for m, eta in _band_items(m_values, etas):
        w = pres.w(m, eta)
        rhs = pres.f4 * w + m * pres.f1 * (pres.y + pres.f3)
        out.append((_tag(m, eta), pres.z(Sign.Minus) * w, rhs, False))
    return out


def _distinct_pairs(m_values, etas):
    for (m, eta), (s, alpha) in itertools.combinations(_band_items(m_values, etas), 2):
        if eta != alpha:
            yield m, eta, s, alpha


def _band_distinct(pres, tables, m_values, etas):
    out = []
    for m, eta, s, alpha in _distinct_pairs(m_values, etas):
        tag = f"{_tag(m, eta)}; {_tag(s, alpha)}"
        out.append((tag, pres.w(m, eta) * pres.w(s, alpha), m * s * pres.x * pres.f1 * pres.f1, False))
    return out


def _same_pairs(m_values, etas):
    m_values = sorted(set(m_values))
    for eta in sorted(set(etas), key=EtaParam.sort_key):
        for m in m_values:
            for t in m_values:
                if m <= t:
                    yield m, t, eta


def _band_same(pres, tables, m_values, etas):
    out = []
    for m, t, eta in _same_pairs(m_values, etas):
        w = pres.w(m, eta)
        rhs = w * (1 + pres.f4) + (t - 1) * m * pres.x * pres.f1 * pres.f1
        out.append((f"{_tag(m, eta)}, t={t}", w * pres.w(t, eta), rhs, False))
    return out


def _presentation_residue(pres, tables, m_values, etas):
    return [(tag, u, 0, False) for tag, u in pres.relations(m_values, etas)]


def _stable_residue(pres, tables, m_values, etas):
    return [(tag, u, 0, True) for tag, u in pres.stable_relations(m_values, etas)]


def _presentation_residue_images(pres, m_values, etas):
    return [(tag, u, False) for tag, u in pres.relations(m_values, etas)]


def _stable_residue_images(pres, m_values, etas):
    return [(tag, u, True) for tag, u in pres.stable_relations(m_values, etas)]


def simple_power_coefficients(l: int) -> List[Tuple[int, int]]:
    """
    (j, multiplicity of V(l+1-2j, j)) in V(2,0)^{(x) l}, for l <= n-1:
    ((l-2j+1)/(l-j+1)) C(l, j), always an integer.
    """
    out = []
    for j in range(l // 2 + 1):
        numerator = (l - 2 * j + 1) * binomial(l, j)
        out.append((j, numerator // (l - j + 1)))
    return out


def _simple_tensor_power(pres, tables, m_values, etas):
    out = []
    for l in range(1, pres.n):
        rhs = 0
        for j, mult in simple_power_coefficients(l):
            rhs = mult * pres.simple_class(l + 1 - 2 * j, j) + rhs
        out.append((f"l={l}", pres.y_power(l), rhs, False))
    return out


# oracle sides


def _odd_projective_oracle(n, m_values, etas):
    pair = (IndecLabel.simple(n, n, 1), IndecLabel.simple(n, n, 0))
    return [("V(n,1) (x) V(n,0)", pair, _counter(n, _odd_pairs(n, 0)))]


def _syzygy_absorption_oracle(n, m_values, etas):
    out = []
    for sign in (Sign.Plus, Sign.Minus):
        expected = _counter(n, _even_pairs(n), 2)
        expected[IndecLabel.simple(n, n, 0)] += 1
        out.append((f"z{sign}", (_syz1(n, sign), IndecLabel.simple(n, n, 0)), expected))
    return out


def _syzygy_product_oracle(n, m_values, etas):
    expected = _counter(n, _odd_pairs(n, 1), 4)
    expected[IndecLabel.simple(n, 1, 0)] += 1
    expected[IndecLabel.projective(n, n - 1, 1)] += 2
    return [("", (_syz1(n, Sign.Plus), _syz1(n, Sign.Minus)), expected)]


def _band_absorption_oracle(n, m_values, etas):
    out = []
    for m, eta in _band_items(m_values, etas):
        expected = _counter(n, _even_pairs(n), m)
        expected[IndecLabel.simple(n, n, 0)] += m
        pair = (IndecLabel.band(n, m, 1, 0, eta), IndecLabel.simple(n, n, 0))
        out.append((_tag(m, eta), pair, expected))
    return out


def _band_syzygy_oracle(sign: str):
    def build(n, m_values, etas):
        out = []
        for m, eta in _band_items(m_values, etas):
            expected = _counter(n, _odd_pairs(n, 1), 2 * m)
            expected[_twisted_band(n, m, eta)] += 1
            top = IndecLabel.proj(n, 1, 0) if sign == Sign.Plus else IndecLabel.proj(n, n - 1, 1)
            expected[top] += m
            pair = (_syz1(n, sign), IndecLabel.band(n, m, 1, 0, eta))
            out.append((_tag(m, eta), pair, expected))
        return out

    return build


def _band_distinct_oracle(n, m_values, etas):
    out = []
    for m, eta, s, alpha in _distinct_pairs(m_values, etas):
        pair = (IndecLabel.band(n, m, 1, 0, eta), IndecLabel.band(n, s, 1, 0, alpha))
        out.append((f"{_tag(m, eta)}; {_tag(s, alpha)}", pair, _counter(n, _odd_pairs(n, 0), m * s)))
    return out


def _band_same_oracle(n, m_values, etas):
    out = []
    for m, t, eta in _same_pairs(m_values, etas):
        expected = _counter(n, _odd_pairs(n, 1), m * t)
        expected[IndecLabel.band(n, m, 1, 0, eta)] += 1
        expected[_twisted_band(n, m, eta)] += 1
        if t > 1:
            expected[IndecLabel.proj(n, 1, 0)] += (t - 1) * m
        pair = (IndecLabel.band(n, m, 1, 0, eta), IndecLabel.band(n, t, 1, 0, eta))
        out.append((f"{_tag(m, eta)}, t={t}", pair, expected))
    return out


def _simple_tensor_power_oracle(n, m_values, etas):
    """V(2,0) (x) V(l,0) = V(l+1,0) + V(l-1,1), the step that builds the powers of y."""
    out = []
    for l in range(1, n):
        expected = Counter({IndecLabel.simple(n, l + 1, 0): 1})
        if l > 1:
            expected[IndecLabel.simple(n, l - 1, 1)] += 1
        pair = (IndecLabel.simple(n, 2, 0), IndecLabel.simple(n, l, 0))
        out.append((f"l={l}", pair, expected))
    return out


relation_models = [
    RelationModel("odd-projective-sum", "sum_{i>=0} [P(2i+1,-i)] = x f1^2", _odd_projective_sum, _odd_projective_oracle),
    RelationModel("odd-projective-tail", "sum_{i>=1} [P(2i+1,-i)] = f3 f1", _odd_projective_tail, _odd_projective_oracle),
    RelationModel("even-projective-sum", "sum_{i>=1} [P(2i,-i)] = f4 f1", _even_projective_sum, _syzygy_absorption_oracle),
    RelationModel("syzygy-product", "z+ z- = 1 + f1(2y + 4f3)", _syzygy_product, _syzygy_product_oracle),
    RelationModel("syzygy-absorption", "z+- f1 = f1(1 + 2f4)", _syzygy_absorption, _syzygy_absorption_oracle),
    RelationModel("band-absorption", "w f1 = m(1 + f4) f1", _band_absorption, _band_absorption_oracle, True),
    RelationModel("band-syzygy-plus", "z+ w = f4 w + m x f1^2", _band_syzygy_plus, _band_syzygy_oracle(Sign.Plus), True),
    RelationModel("band-syzygy-minus", "z- w = f4 w + m f1(y + f3)", _band_syzygy_minus, _band_syzygy_oracle(Sign.Minus), True),
    RelationModel("band-distinct", "w_{m,eta} w_{s,alpha} = m s x f1^2", _band_distinct, _band_distinct_oracle, True),
    RelationModel("band-same", "w_m w_t = w_m(1 + f4) + (t-1) m x f1^2", _band_same, _band_same_oracle, True),
    RelationModel("presentation-residue", "every generator of U normalizes to 0 and splits to 0 among modules", _presentation_residue, None, True, _presentation_residue_images),
    RelationModel("stable-residue", "every generator of the stable ideal normalizes to 0 and splits to projectives", _stable_residue, None, True, _stable_residue_images),
    RelationModel("simple-tensor-power", "y^l = sum_j ((l-2j+1)/(l-j+1)) C(l,j) [V(l+1-2j, j)]", _simple_tensor_power, _simple_tensor_power_oracle),
]

relation_names = [i.name for i in relation_models]


def normalize_relation_name(name: str) -> str:
    """
    Normalize a relation name as typed on the command line: lower case, underscores and
    spaces read as hyphens (e.g. 'Band_Same' -> 'band-same').
    """
    return name.strip().lower().replace("_", "-").replace(" ", "-")


def get_relation_model(name: str) -> Union[RelationModel, None]:
    """
    Retrieve a named relation.

    Parameters:
        name (str): Relation name, normalized with `normalize_relation_name`.

    Returns:
        RelationModel | None: The model if known, else None.
    """
    normalized = normalize_relation_name(name)
    for model in relation_models:
        if model.name == normalized:
            return model
    return None
