import numpy as np
import pytest
import scipy.linalg

from momentreg import (ConvergenceError, IndefiniteMatrixError, InputError, SPDFactor,
                       gen_eig_sym, spd_solve)
from momentreg import linalg

from oracles import solve_2x2


def random_spd(rng, n, cond):
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    values = np.logspace(0, -np.log10(cond), n)
    return (q * values) @ q.T


@pytest.mark.parametrize("a, b, expected", [
    (np.eye(3), [1, 2, 3], [1, 2, 3]),
    (np.diag([2.0, 4.0]), [2, 4], [1, 1]),
])
def test_spd_solve_examples(a, b, expected):
    z, degenerate = spd_solve(a, b)
    np.testing.assert_allclose(z, expected, rtol=1e-15)
    assert not degenerate


def test_spd_solve_against_elimination():
    a = [[2.0, 1.0], [1.0, 2.0]]
    ref = solve_2x2(a, [3.0, 3.0])
    np.testing.assert_allclose(ref, [1.0, 1.0], rtol=1e-15)
    np.testing.assert_allclose(spd_solve(a, [3.0, 3.0])[0], ref, rtol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 5, 11, 20])
@pytest.mark.parametrize("cond", [1.0, 1e4, 1e8])
def test_spd_solve_residual(rng, n, cond):
    for _ in range(5):
        a = random_spd(rng, n, cond)
        b = rng.normal(size=n)
        z, degenerate = spd_solve(a, b)
        assert not degenerate
        assert np.linalg.norm(a @ z - b) <= 1e-8 * np.linalg.norm(b)


def test_spd_solve_degenerate_uses_pseudo_inverse():
    a = np.diag([1.0, 0.0])
    z, degenerate = spd_solve(a, [3.0, 5.0])
    assert degenerate
    np.testing.assert_array_equal(z, [3.0, 0.0])
    a = np.array([[1.0, 1.0], [1.0, 1.0]])
    z, degenerate = spd_solve(a, [2.0, 2.0])
    assert degenerate
    np.testing.assert_allclose(z, np.linalg.pinv(a) @ [2.0, 2.0], rtol=1e-14)


def test_spd_solve_shape_mismatch():
    with pytest.raises(InputError):
        spd_solve(np.eye(2), [1.0, 2.0, 3.0])


def test_gen_eig_examples():
    pairs = gen_eig_sym(np.diag([1.0, 2.0]), np.eye(2))
    assert [p.value for p in pairs] == [1.0, 2.0]
    np.testing.assert_array_equal(pairs[0].vector, [1.0, 0.0])
    np.testing.assert_array_equal(pairs[1].vector, [0.0, 1.0])
    pairs = gen_eig_sym([[0.0, 1.0], [1.0, 0.0]], np.eye(2))
    np.testing.assert_allclose([p.value for p in pairs], [-1.0, 1.0], rtol=1e-15)


def test_proportional_pencil(rng):
    b = random_spd(rng, 6, 1e3)
    for p in gen_eig_sym(2.5 * b, b):
        assert p.value == pytest.approx(2.5, rel=1e-12)


def check_pencil(a, b, pairs):
    values = np.array([p.value for p in pairs])
    psi = np.column_stack([p.vector for p in pairs])
    assert np.all(np.diff(values) >= 0)
    np.testing.assert_allclose(psi.T @ b @ psi, np.eye(len(pairs)), atol=1e-8)
    norm_a, norm_b = np.linalg.norm(a, 2), np.linalg.norm(b, 2)
    for y, v in zip(values, psi.T):
        residual = np.abs(a @ v - y * (b @ v)).max()
        assert residual <= 1e-8 * (norm_a + abs(y) * norm_b)
    return values, psi


@pytest.mark.parametrize("n", [1, 2, 4, 9, 15])
def test_gen_eig_random(rng, n):
    a = rng.normal(size=(n, n))
    a = a + a.T
    b = random_spd(rng, n, 1e5)
    values, psi = check_pencil(a, b, gen_eig_sym(a, b))
    np.testing.assert_allclose(values, scipy.linalg.eigh(a, b, eigvals_only=True),
                               rtol=1e-9, atol=1e-9 * np.abs(values).max())
    recon = b @ psi @ np.diag(values) @ psi.T @ b
    assert np.linalg.norm(recon - a) <= 1e-6 * np.linalg.norm(a)


def test_rayleigh_bounds(rng):
    for n in (2, 3, 4):
        a = rng.normal(size=(n, n))
        a = a + a.T
        b = random_spd(rng, n, 50.0)
        values = [p.value for p in gen_eig_sym(a, b)]
        v = rng.normal(size=(20000, n))
        ratios = np.einsum("ij,jk,ik->i", v, a, v) / np.einsum("ij,jk,ik->i", v, b, v)
        assert values[0] <= ratios.min() + 1e-12
        assert values[-1] >= ratios.max() - 1e-12
        # dense sampling gets close to the true extremes
        spread = ratios.max() - ratios.min()
        assert ratios.min() - values[0] <= 0.05 * spread
        assert values[-1] - ratios.max() <= 0.05 * spread


def test_indefinite_b_raises():
    with pytest.raises(IndefiniteMatrixError) as info:
        gen_eig_sym(np.eye(2), np.diag([1.0, -0.5]))
    assert info.value.eigenvalue == pytest.approx(-0.5)


def test_semidefinite_b_truncates():
    b = np.diag([1.0, 4.0, 0.0])
    a = np.diag([3.0, 8.0, 5.0])
    pairs = gen_eig_sym(a, b)
    assert [p.value for p in pairs] == pytest.approx([2.0, 3.0])


def test_factor_whitener(rng):
    a = random_spd(rng, 10, 1e7)
    f = SPDFactor(a)
    assert not f.degenerate and f.rank == 10
    np.testing.assert_allclose(f.whitener.T @ a @ f.whitener, np.eye(10), atol=1e-9)
    assert f.condition == pytest.approx(1e7, rel=1e-6)


def test_factor_rank_deficient(rng):
    x = rng.normal(size=(6, 3))
    a = x @ x.T
    f = SPDFactor(a)
    assert f.degenerate and f.rank == 3
    b = x @ rng.normal(size=3)
    assert f.span_fraction(b) == pytest.approx(1.0)
    null = np.linalg.svd(x.T)[2][-1]
    assert f.span_fraction(null) < 1e-10
    np.testing.assert_allclose(a @ f.solve(b), b, atol=1e-10 * np.linalg.norm(b))


def test_symmetric_eigh_convergence_error(rng, monkeypatch):
    a = rng.normal(size=(5, 5))
    with pytest.raises(ConvergenceError):
        linalg.symmetric_eigh(a + a.T, max_sweeps=1)


def test_eigenvector_orientation(rng):
    a = rng.normal(size=(5, 5))
    a = a + a.T
    for p in gen_eig_sym(a, np.eye(5)):
        lead = p.vector[np.argmax(np.abs(p.vector) > 1e-12 * np.abs(p.vector).max())]
        assert lead > 0


def test_only_upper_triangle_is_used():
    a = np.array([[2.0, 1.0], [1.0 + 1e-9, 2.0]])
    z, _ = spd_solve(a, [3.0, 3.0])
    np.testing.assert_allclose(z, [1.0, 1.0], rtol=1e-14)
