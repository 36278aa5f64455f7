import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubitizer import densemath as dm
from qubitizer.errors import EmptyString, NotQubitized, ParseError
from qubitizer.opalg import (
    Factor,
    LinearCombination,
    OperatorString,
    SpectralKind,
    classify,
    materialize,
    parse_combination,
    parse_string,
    string_dagger,
    xy_variants,
)
from qubitizer.synth.reducer import reducer_from_string

X = np.array([[0, 1], [1, 0]])
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1, -1])

factors = st.lists(st.sampled_from(list(Factor)), min_size=1, max_size=5)
coeffs = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


def test_factor_matrices():
    assert np.array_equal(Factor.sigma.matrix, [[0, 0], [1, 0]])
    assert np.array_equal(Factor.sigma_dagger.matrix, [[0, 1], [0, 0]])
    assert np.array_equal(Factor.n.matrix, np.diag([0, 1]))
    assert np.array_equal(Factor.m.matrix, np.diag([1, 0]))
    assert np.array_equal(Factor.Y.matrix, Y)


def test_materialize_examples():
    assert np.array_equal(materialize(OperatorString.of("Z.Z")), np.diag([1, -1, -1, 1]))
    assert np.array_equal(materialize(OperatorString.of("s", 1, True)), X)
    m = materialize(OperatorString.of("s.sd", 1, True))
    expected = np.zeros((4, 4))
    expected[2, 1] = expected[1, 2] = 1
    assert np.array_equal(m, expected)
    with pytest.raises(EmptyString):
        materialize(OperatorString((), 1.0))


def test_classify_examples():
    assert classify(np.kron(Z, Z)) == SpectralKind.QUBITIZED
    assert classify(materialize(OperatorString.of("n.n"))) == SpectralKind.PROJECTOR
    assert classify(materialize(OperatorString.of("s.s", 1, True))) == SpectralKind.QUBITIZED
    assert classify(np.diag([1, 1j])) == SpectralKind.UNITARY
    assert classify(np.diag([2.0, 0.0])) == SpectralKind.OTHER


def test_hadamard_is_qubitized_rotated_z():
    had = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert classify(had) == SpectralKind.QUBITIZED
    theta = np.pi / 4
    ry = np.array([[np.cos(theta / 2), -np.sin(theta / 2)], [np.sin(theta / 2), np.cos(theta / 2)]])
    assert dm.max_abs_diff(ry @ Z @ ry.T, had) < 1e-12
    # the +1 eigenvector is cos(pi/8)|0> + sin(pi/8)|1>
    w, v = dm.hermitian_eig(had)
    top = v[:, np.argmax(w)] * np.sign(v[0, np.argmax(w)])
    assert np.allclose(top, [np.cos(np.pi / 8), np.sin(np.pi / 8)])


def test_xy_variants_examples():
    r = reducer_from_string(OperatorString.of("Z"))
    xf, yf = xy_variants(Z, r)
    assert dm.max_abs_diff(xf, X) < 1e-12 and dm.max_abs_diff(yf, Y) < 1e-12
    zz = np.kron(Z, Z)
    r = reducer_from_string(OperatorString.of("Z.Z"))
    xf, yf = xy_variants(zz, r)
    for f in (xf, yf):
        assert classify(f) == SpectralKind.QUBITIZED
        assert dm.max_abs_diff(zz @ f + f @ zz, np.zeros((4, 4))) < 1e-12
    with pytest.raises(NotQubitized):
        xy_variants(np.diag([1, 0]), reducer_from_string(OperatorString.of("n")))


@settings(max_examples=120, deadline=None)
@given(fs=factors, c=coeffs, hc=st.booleans())
def test_dagger_matches_adjoint(fs, c, hc):
    s = OperatorString(tuple(fs), c, hc)
    assert dm.max_abs_diff(materialize(string_dagger(s)), dm.dagger(materialize(s))) < 1e-12


@settings(max_examples=120, deadline=None)
@given(fs=factors, c=coeffs, hc=st.booleans())
def test_text_round_trip(fs, c, hc):
    s = OperatorString(tuple(fs), c, hc)
    assert parse_string(s.to_text()) == s


@settings(max_examples=60, deadline=None)
@given(fs=factors, c=coeffs)
def test_scb_with_hc_is_traceless(fs, c):
    if not any(f.is_ladder for f in fs):
        fs = list(fs) + [Factor.sigma]
    h = materialize(OperatorString(tuple(fs), c, True))
    assert abs(np.trace(h)) < 1e-12
    assert dm.is_hermitian(h)


@settings(max_examples=40, deadline=None)
@given(fs=factors, t=st.floats(-5, 5))
def test_qubitized_evolution_has_unit_determinant(fs, t):
    s = OperatorString(tuple(fs), 1.0, any(f.is_ladder for f in fs))
    h = materialize(s)
    if classify(h) != SpectralKind.QUBITIZED:
        return
    assert abs(np.linalg.det(dm.expm_hermitian(h, t)) - 1) < 1e-9


def test_pauli_strings_span():
    paulis = [Factor.I, Factor.X, Factor.Y, Factor.Z]
    mats = [materialize(OperatorString((a, b))).reshape(-1) for a in paulis for b in paulis]
    assert np.linalg.matrix_rank(np.array(mats)) == 16


def test_parse_errors_and_combination():
    with pytest.raises(ParseError):
        parse_string("Z.Z")
    with pytest.raises(ParseError):
        parse_string("abc * Z")
    lc = parse_combination("# comment\n1.0 * Z.Z\n0.5 * s.sd + h.c.\n")
    assert len(lc) == 2
    expected = np.diag([1, -1, -1, 1]).astype(complex)
    expected[1, 2] = expected[2, 1] = 0.5
    assert dm.max_abs_diff(lc.materialize(), expected) < 1e-12
    assert [t.kind for t in lc.tags()] == [SpectralKind.QUBITIZED] * 2
    assert LinearCombination.of([OperatorString.of("Z")]).n_qubits == 1
