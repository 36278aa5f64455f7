import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubitizer import densemath as dm
from qubitizer.circuit import lower
from qubitizer.errors import (
    DimMismatch,
    InvalidSpec,
    NotBijective,
    NotNormalized,
    NotSingleCycle,
    OutOfRange,
)
from qubitizer.opalg import SpectralKind, classify
from qubitizer.structured import (
    PermutationSpec,
    build,
    circular_permutation,
    corner_embed,
    dense_oracle,
    density_matrix,
    fusc,
    line_column,
    load_spec,
    outer_product,
    permutation_circuit,
    predicted_count,
    spec_from_dict,
    summand_count,
    table_one_count,
    toeplitz_diag,
)
from qubitizer.structured.counting import fusc_recursive
from qubitizer.structured.oracle import hankel_matrix
from qubitizer.synth import adder_matrix, term_weight


def _spec(**kw):
    return spec_from_dict(kw)


def test_fusc_values():
    assert fusc(0) == 0 and fusc(1) == 1 and fusc(13) == 5
    for k in range(1, 513):
        assert fusc(2 * k) == fusc(k)
        assert fusc(2 * k + 1) == fusc(k) + fusc(k + 1)
    assert all(fusc(n) == fusc_recursive(n) for n in range(300))


def test_oracle_examples():
    tri = dense_oracle(_spec(kind="toeplitz_diag", n=3, m=4))
    assert np.array_equal(tri, np.eye(4, k=1) + np.eye(4, k=-1))
    circ = dense_oracle(_spec(kind="circulant", n=1, m=4))
    assert np.array_equal(circ, adder_matrix(1, 4) + adder_matrix(1, 4).T)
    hank = dense_oracle(_spec(kind="hankel_antidiag", n=3, m=4))
    assert {(i, j) for i, j in zip(*np.nonzero(hank))} == {(0, 2), (1, 1), (2, 0)}
    anti = dense_oracle(_spec(kind="anticirculant", n=0, m=4))
    assert np.array_equal(anti, np.fliplr(np.eye(4)))
    two = dense_oracle(_spec(kind="grid", dims=[2, 2]))
    x = np.array([[0, 1], [1, 0]])
    assert np.array_equal(two, np.kron(np.eye(2), x) + np.kron(x, np.eye(2)))
    line = dense_oracle(_spec(kind="grid", dims=[4]))
    assert np.array_equal(line, tri)


@pytest.mark.parametrize("m", [2, 4, 8, 16, 32])
def test_builders_match_oracle(m):
    cases = [("toeplitz_diag", n) for n in range(1, m)]
    cases += [("circulant", n) for n in range(1, m)]
    cases += [("hankel_antidiag", n) for n in range(1, 2 * m)]
    cases += [("anticirculant", n) for n in range(m)]
    for kind, n in cases:
        spec = _spec(kind=kind, n=n, m=m, weight=[0.7, -0.2] if kind in ("toeplitz_diag", "circulant") else 0.7)
        res = build(spec)
        assert dm.max_abs_diff(res.matrix(), dense_oracle(spec)) < 1e-12, (kind, n, m)
        if res.lch is not None:
            assert summand_count(spec) == predicted_count(spec)
            for term in res.lch.terms:
                kind_ = classify(term.materialize() / abs(term_weight(term.string)))
                assert kind_ in (SpectralKind.QUBITIZED, SpectralKind.PROJECTOR)


def test_hankel_mirror():
    # the far anti-diagonals are the near ones conjugated by X on every qubit
    for m in (4, 8, 16):
        flip = np.fliplr(np.eye(m))
        for n in range(m + 1, 2 * m):
            assert dm.max_abs_diff(hankel_matrix(n, m), flip @ hankel_matrix(2 * m - n, m) @ flip) < 1e-15
            spec = _spec(kind="hankel_antidiag", n=n, m=m)
            assert summand_count(spec) == fusc(2 * m - n)


def test_summand_count_examples():
    assert summand_count(_spec(kind="toeplitz_diag", n=13, m=16)) == 5
    assert summand_count(_spec(kind="toeplitz_diag", n=13, m=16), "LCU") == 10
    assert summand_count(_spec(kind="circulant", n=3, m=4)) == fusc(3) + fusc(1) == 3
    # above the smallest enclosing power of two the partner diagonal is m - n
    wide = _spec(kind="circulant", n=3, m=8)
    assert summand_count(wide) == fusc(3) + fusc(5) == 5
    assert table_one_count(wide) == 3
    assert summand_count(_spec(kind="circulant", n=3, m=8, variant="lcu"), "LCU") == 2
    with pytest.raises(InvalidSpec):
        summand_count(_spec(kind="permutation_table", table=[1, 0]), "LCH")


def test_corner_embed():
    inner = toeplitz_diag(3, 4)
    same = corner_embed(inner, 2)
    assert dm.max_abs_diff(same.materialize(), inner.materialize()) < 1e-15
    spec = _spec(kind="corner_embed", s=8, inner={"kind": "circulant", "n": 3, "m": 4})
    out = build(spec).matrix()
    assert dm.max_abs_diff(out, dense_oracle(spec)) < 1e-12
    assert np.count_nonzero(out[4:]) == 0 and np.count_nonzero(out[:, 4:]) == 0


def test_permutation_specs():
    with pytest.raises(NotBijective):
        PermutationSpec((0, 0, 1, 2))
    assert len(permutation_circuit(PermutationSpec((0, 1, 2, 3)))) == 0
    with pytest.raises(NotSingleCycle):
        circular_permutation(PermutationSpec((1, 0, 3, 2)), 1, 4)
    rng = np.random.default_rng(3)
    for _ in range(10):
        table = tuple(int(v) for v in rng.permutation(8))
        p = PermutationSpec(table)
        assert np.array_equal(lower(permutation_circuit(p)), p.matrix())


@pytest.mark.parametrize("m", [4, 8])
def test_permutation_table_oracles(m):
    for n in range(m):
        spec = _spec(kind="permutation_table", table=[(i + n) % m for i in range(m)])
        assert dm.max_abs_diff(build(spec).matrix(), adder_matrix(n, m)) < 1e-12
    bitrev = [int(format(i, "03b")[::-1], 2) for i in range(8)]
    spec = _spec(kind="permutation_table", table=bitrev)
    swap_net = np.zeros((8, 8))
    for i, j in enumerate(bitrev):
        swap_net[j, i] = 1
    assert dm.max_abs_diff(build(spec).matrix(), swap_net) < 1e-12


def test_density_matrix_examples(rng):
    plus = np.array([1, 1]) / math.sqrt(2)
    be = density_matrix(plus)
    assert dm.max_abs_diff(be.block() * be.subnormalization, np.full((2, 2), 0.5)) < 1e-12
    uni = np.full(4, 0.5)
    be = density_matrix(uni)
    assert dm.max_abs_diff(be.block() * be.subnormalization, np.full((4, 4), 0.25)) < 1e-12
    psi = dm.random_state(8, rng)
    be = density_matrix(psi)
    assert dm.max_abs_diff(be.block() * be.subnormalization, np.outer(psi, psi.conj())) < 1e-10
    with pytest.raises(NotNormalized):
        density_matrix([1, 1])


def test_outer_products(rng):
    phi, psi = dm.random_state(4, rng), dm.random_state(4, rng)
    be = outer_product(phi, psi)
    assert dm.max_abs_diff(be.block() * be.subnormalization, np.outer(phi, psi.conj())) < 1e-10
    same = outer_product(psi, psi)
    assert dm.max_abs_diff(same.block(), density_matrix(psi).block()) < 1e-12
    with pytest.raises(DimMismatch):
        outer_product(phi, dm.random_state(8, rng))


def test_line_column_examples():
    uni = np.full(4, 0.5)
    be = line_column(uni, 0, "column")
    got = be.block() * be.subnormalization
    assert dm.max_abs_diff(got[:, :1], np.full((4, 1), 0.5)) < 1e-12
    assert np.abs(got[:, 1:]).max() < 1e-12
    be = line_column(dm.basis_state(0, 4), 0)
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert dm.max_abs_diff(be.block() * be.subnormalization, expected) < 1e-12
    with pytest.raises(OutOfRange):
        line_column(uni, 4)


def test_spec_errors(tmp_path):
    with pytest.raises(InvalidSpec):
        spec_from_dict({"kind": "banded"})
    with pytest.raises(InvalidSpec):
        spec_from_dict({"m": 4})
    with pytest.raises(InvalidSpec):
        dense_oracle(_spec(kind="toeplitz_diag", n=4, m=4))
    with pytest.raises(InvalidSpec):
        dense_oracle(_spec(kind="circulant", n=1, m=6))
    with pytest.raises(InvalidSpec):
        build(_spec(kind="grid"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidSpec):
        load_spec(bad)
    good = tmp_path / "good.json"
    good.write_text('{"kind": "toeplitz_diag", "n": 5, "m": 8, "weight": [0.5, 0.5]}')
    spec = load_spec(good)
    assert spec.weight == 0.5 + 0.5j and spec_from_dict(spec.to_json()) == spec


@settings(max_examples=40, deadline=None)
@given(dims=st.lists(st.sampled_from([2, 4, 8]), min_size=1, max_size=3), data=st.data())
def test_grids_match_oracle(dims, data):
    if np.prod(dims) > 64:
        return
    cyclic = data.draw(st.lists(st.booleans(), min_size=len(dims), max_size=len(dims)))
    weights = data.draw(st.lists(st.floats(0.1, 2), min_size=len(dims), max_size=len(dims)))
    spec = _spec(kind="grid", dims=dims, cyclic=cyclic, weights=weights)
    assert dm.max_abs_diff(build(spec).matrix(), dense_oracle(spec)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 15), seed=st.integers(0, 10_000))
def test_circular_permutation_relabels(n, seed):
    rng = np.random.default_rng(seed)
    order = rng.permutation(16)
    table = [0] * 16
    for a, b in zip(order, np.roll(order, -1)):
        table[a] = int(b)
    spec = _spec(kind="circular_permutation", n=n, m=16, table=table, weight=0.4)
    assert dm.max_abs_diff(build(spec).matrix(), dense_oracle(spec)) < 1e-12
