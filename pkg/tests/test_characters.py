"""Weight multiplicities, tensor decomposition, and restriction to a Levi."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from heckebranch.characters import (
    branch_decompose,
    branch_multiplicity,
    dominant_weights,
    module_dimension,
    tensor_decompose,
    tensor_decompose_by_tables,
    tensor_multiplicity,
    weight_table,
)
from heckebranch.errors import DomainError, FeasibilityError
from heckebranch.rootdata import (
    dual_star,
    levi_view,
    root_datum,
    vec_add,
    weyl_dim,
)


def test_dominant_weights_goldens():
    d = root_datum("A2")
    assert dominant_weights(d.full, (1, 1)) == {(1, 1): 1, (0, 0): 2}
    assert dominant_weights(d.full, (1, 0)) == {(1, 0): 1}
    a1 = root_datum("A1")
    assert dominant_weights(a1.full, (4,)) == {(4,): 1, (2,): 1, (0,): 1}
    g2 = root_datum("G2")
    # adjoint module of the dual group: long root string through zero
    assert dominant_weights(g2.full, (1, 0)) == {(1, 0): 1, (0, 1): 1, (0, 0): 2}


def test_weight_table_sums_to_dimension():
    for type_str, mu in [("A2", (1, 1)), ("A2", (2, 1)), ("B2", (1, 1)),
                         ("G2", (0, 1)), ("A3", (1, 0, 1)), ("B3", (0, 1, 0))]:
        d = root_datum(type_str)
        table = weight_table(d.full, mu)
        assert sum(table.values()) == weyl_dim(d.full, mu)
        assert module_dimension(d.full, mu) == weyl_dim(d.full, mu)
        assert table[mu] == 1


def test_weight_table_weyl_invariance():
    d = root_datum("B2")
    table = weight_table(d.full, (1, 1))
    from heckebranch.rootdata import weyl_orbit
    for w, m in table.items():
        for y in weyl_orbit(d, w):
            assert table[y] == m


def test_tensor_golden_a2():
    d = root_datum("A2")
    assert tensor_decompose(d, (1, 1), (1, 1)) == {
        (2, 2): 1, (3, 0): 1, (0, 3): 1, (1, 1): 2, (0, 0): 1}
    assert tensor_decompose(d, (1, 0), (0, 1)) == {(1, 1): 1, (0, 0): 1}
    assert tensor_multiplicity(d, (1, 0), (1, 0), (0, 1)) == 1
    assert tensor_multiplicity(d, (1, 0), (1, 0), (2, 0)) == 1
    assert tensor_multiplicity(d, (1, 0), (1, 0), (1, 1)) == 0


def test_tensor_dimension_and_table_oracle():
    cases = [("A2", (1, 1), (2, 0)), ("B2", (1, 0), (0, 1)),
             ("B2", (1, 1), (1, 0)), ("G2", (0, 1), (0, 1)),
             ("A3", (1, 0, 0), (0, 0, 1))]
    for type_str, a, b in cases:
        d = root_datum(type_str)
        dec = tensor_decompose(d, a, b)
        assert all(m > 0 for m in dec.values())
        total = sum(m * weyl_dim(d.full, c) for c, m in dec.items())
        assert total == weyl_dim(d.full, a) * weyl_dim(d.full, b)
        assert tensor_decompose_by_tables(d, a, b) == dec


def test_tensor_commutes():
    d = root_datum("B2")
    assert tensor_decompose(d, (1, 0), (0, 1)) == tensor_decompose(d, (0, 1), (1, 0))


def test_tensor_duality():
    # multiplicity of c in a(x)b equals multiplicity of a in c(x)dual(b)
    d = root_datum("A2")
    pool = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]
    for a, b, c in itertools.product(pool, repeat=3):
        lhs = tensor_multiplicity(d, a, b, c)
        rhs = tensor_multiplicity(d, c, dual_star(d, b), a)
        assert lhs == rhs


def test_branch_golden_a2():
    d = root_datum("A2")
    lv = levi_view(d, (1,))
    assert branch_decompose(d, lv, (1, 1)) == {
        (1, 1): 1, (2, -1): 1, (1, -2): 1, (0, 0): 1}
    assert branch_multiplicity(d, lv, (1, 1), (0, 0)) == 1
    assert branch_multiplicity(d, lv, (1, 1), (5, 5)) == 0


def test_branch_to_torus_is_weight_table():
    d = root_datum("B2")
    torus = levi_view(d, ())
    assert branch_decompose(d, torus, (1, 1)) == weight_table(d.full, (1, 1))


def test_branch_to_full_is_identity():
    d = root_datum("A3")
    assert branch_decompose(d, d.full, (1, 0, 1)) == {(1, 0, 1): 1}


def test_branch_dimension_count():
    for type_str, levi_idx, mu in [("A2", (1,), (2, 1)), ("B2", (2,), (1, 1)),
                                   ("A3", (1, 3), (1, 1, 0)),
                                   ("G2", (1,), (0, 1))]:
        d = root_datum(type_str)
        lv = levi_view(d, levi_idx)
        dec = branch_decompose(d, lv, mu)
        assert all(m > 0 for m in dec.values())
        total = sum(m * weyl_dim(lv, lam) for lam, m in dec.items())
        assert total == weyl_dim(d.full, mu)
        assert all(lv.is_dominant(lam) for lam in dec)


@settings(max_examples=25, derandomize=True)
@given(st.sampled_from(["A2", "B2"]),
       st.tuples(st.integers(0, 2), st.integers(0, 2)),
       st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_tensor_oracles_agree(type_str, a, b):
    d = root_datum(type_str)
    assert tensor_decompose(d, a, b) == tensor_decompose_by_tables(d, a, b)


def test_levi_freudenthal_matches_sub_datum():
    d = root_datum("A3")
    lv = levi_view(d, (1, 2))
    a2 = root_datum("A2")
    sub = dominant_weights(a2.full, (1, 1))
    emb = dominant_weights(lv, (1, 1, 0))
    assert {k[:2]: m for k, m in emb.items()} == sub


def test_dimension_cap():
    a1 = root_datum("A1")
    with pytest.raises(FeasibilityError):
        dominant_weights(a1.full, (10 ** 6,))
    with pytest.raises(DomainError):
        dominant_weights(a1.full, (-1,))


def test_branch_tensor_compatibility():
    # restriction multiplicities appear inside a tensor product with the
    # smallest strictly dominant offset: r is bounded by the tensor count
    d = root_datum("A2")
    lv = levi_view(d, (2,))
    mu = (1, 1)
    from heckebranch.parabolic import minimal_offset
    nu = minimal_offset(d, lv, mu)
    for lam, r in branch_decompose(d, lv, mu).items():
        target = vec_add(nu, lam)
        if all(c >= 0 for c in target):
            assert tensor_multiplicity(d, nu, mu, target) == r
