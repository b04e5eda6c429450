import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmentangle.entanglement import (
    NegativitySeries,
    Subsystem,
    negativity,
    negativity_many,
    negativity_series,
    partial_transpose,
    pure_state_negativity_oracle,
    time_average,
    time_grid,
)
from dmentangle.errors import NotDensityMatrix, WrongDimension
from dmentangle.model import FIGURE_DZ_VALUES, FIGURE_PARAMETERS, SpinParameters
from dmentangle.states import InitialStateSpec, density_matrix, substituted_state

from .conftest import random_unit_vector, random_unitary

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)
BELL_RHO = np.outer(BELL, BELL)
SUBSYSTEMS = [Subsystem.QubitA, Subsystem.QubitB]


def random_density(rng, n=4):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_subsystem_parse():
    assert Subsystem.parse("a") is Subsystem.QubitA
    assert Subsystem.parse("B") is Subsystem.QubitB
    assert Subsystem.parse("qubitb") is Subsystem.QubitB
    assert Subsystem.parse(Subsystem.QubitA) is Subsystem.QubitA
    with pytest.raises(ValueError):
        Subsystem.parse("c")


@pytest.mark.parametrize("sub", SUBSYSTEMS)
def test_partial_transpose_diagonal_invariant(sub):
    d = np.diag([0.1, 0.2, 0.3, 0.4])
    np.testing.assert_array_equal(partial_transpose(d, sub), d)


@pytest.mark.parametrize("sub", SUBSYSTEMS)
def test_partial_transpose_bell_spectrum(sub):
    w = np.linalg.eigvalsh(partial_transpose(BELL_RHO, sub))
    np.testing.assert_allclose(w, [-0.5, 0.5, 0.5, 0.5], atol=1e-15)


def test_partial_transpose_index_layout():
    m = np.arange(16).reshape(4, 4)
    # qubit b: transpose within each 2x2 block
    np.testing.assert_array_equal(
        partial_transpose(m, Subsystem.QubitB),
        [[0, 4, 2, 6], [1, 5, 3, 7], [8, 12, 10, 14], [9, 13, 11, 15]],
    )
    # qubit a: transpose the grid of blocks
    np.testing.assert_array_equal(
        partial_transpose(m, Subsystem.QubitA),
        [[0, 1, 8, 9], [4, 5, 12, 13], [2, 3, 10, 11], [6, 7, 14, 15]],
    )


def test_partial_transpose_properties(rng):
    for _ in range(50):
        rho = random_density(rng)
        for sub in SUBSYSTEMS:
            pt = partial_transpose(rho, sub)
            np.testing.assert_array_equal(partial_transpose(pt, sub), rho)
            assert np.abs(pt - pt.conj().T).max() < 1e-15
            assert abs(np.trace(pt) - 1) < 1e-14
        # transposing both qubits is the full transpose
        both = partial_transpose(partial_transpose(rho, Subsystem.QubitA), Subsystem.QubitB)
        np.testing.assert_array_equal(both, rho.T)


def test_partial_transpose_wrong_dimension():
    with pytest.raises(WrongDimension):
        partial_transpose(np.eye(3))


def test_negativity_examples():
    assert negativity(BELL_RHO) == pytest.approx(0.5, abs=1e-14)
    assert negativity(np.eye(4) / 4) == 0.0
    assert negativity(np.diag([1, 0, 0, 0])) == 0.0


def test_negativity_rejects_non_density():
    with pytest.raises(NotDensityMatrix):
        negativity(np.eye(4))
    with pytest.raises(NotDensityMatrix):
        negativity(np.eye(2) / 2)
    with pytest.raises(NotDensityMatrix):
        negativity_many(np.stack([np.eye(4) / 4, np.eye(4)]))


def test_product_states_have_zero_negativity(rng):
    rhos = np.array([np.kron(random_density(rng, 2), random_density(rng, 2)) for _ in range(1000)])
    np.testing.assert_array_equal(negativity_many(rhos, Subsystem.QubitA), 0.0)
    np.testing.assert_array_equal(negativity_many(rhos, Subsystem.QubitB), 0.0)
    assert negativity(rhos[0]) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.floats(-50, 50, allow_nan=False))
def test_initial_product_family_exactly_zero(alpha):
    rho = density_matrix(substituted_state(alpha))
    assert negativity(rho) == 0.0


def test_oracle_examples():
    assert pure_state_negativity_oracle(BELL) == pytest.approx(0.5)
    assert pure_state_negativity_oracle(np.kron([0.6, 0.8], [1, 0])) == 0.0


def test_pure_state_identity_and_symmetry(rng):
    psis = np.array([random_unit_vector(rng) for _ in range(10_000)])
    rhos = psis[:, :, None] * psis[:, None, :].conj()
    na = negativity_many(rhos, Subsystem.QubitA)
    nb = negativity_many(rhos, Subsystem.QubitB)
    oracle = np.abs(psis[:, 0] * psis[:, 3] - psis[:, 1] * psis[:, 2])
    assert np.abs(na - oracle).max() < 1e-10
    assert np.abs(na - nb).max() < 1e-10
    assert na.min() >= 0 and na.max() <= 0.5


def test_negativity_many_matches_single(rng):
    rhos = np.array([random_density(rng) for _ in range(30)])
    np.testing.assert_allclose(negativity_many(rhos), [negativity(r) for r in rhos], atol=1e-14)


def test_mixed_state_range(rng):
    for _ in range(500):
        n = negativity(random_density(rng))
        assert 0.0 <= n <= 0.5


def test_local_unitary_invariance(rng):
    for _ in range(200):
        rho = random_density(rng)
        u = np.kron(random_unitary(rng), random_unitary(rng))
        assert abs(negativity(u @ rho @ u.conj().T) - negativity(rho)) < 1e-10


def test_time_grid():
    t = time_grid(100.0, 10_001)
    assert t[0] == 0.0 and t[-1] == 100.0 and t.size == 10_001
    assert t[1] == pytest.approx(0.01)
    with pytest.raises(ValueError):
        time_grid(0.0, 10)
    with pytest.raises(ValueError):
        time_grid(1.0, 1)


def test_series_validation():
    spec = InitialStateSpec.substituted(1.0)
    p = SpinParameters()
    with pytest.raises(ValueError):
        NegativitySeries([0, 1, 3], [0, 0, 0], p, spec)
    with pytest.raises(ValueError):
        NegativitySeries([0, 1, 2], [0, 0.6, 0], p, spec)
    with pytest.raises(ValueError):
        NegativitySeries([0, 1, 2], [0, -0.1, 0], p, spec)


def test_constant_series_average():
    s = NegativitySeries(np.linspace(0, 7, 15), np.full(15, 0.123), SpinParameters(),
                         InitialStateSpec.substituted(1.0))
    assert time_average(s) == pytest.approx(0.123, abs=1e-15)


def test_series_matches_oracle_pointwise():
    p = FIGURE_PARAMETERS["fig4"]
    spec = InitialStateSpec.substituted(2.0)
    s = negativity_series(p, spec, 30.0, 301)
    from dmentangle.dynamics import evolve, make_propagator
    from dmentangle.model import build_hamiltonian
    from dmentangle.states import initial_state

    prop = make_propagator(build_hamiltonian(p))
    psi0 = initial_state(spec)
    for t, v in zip(s.times[::37], s.values[::37]):
        assert abs(v - pure_state_negativity_oracle(evolve(prop, psi0, t).amplitudes)) < 1e-10


@pytest.fixture(scope="module")
def fig1_series():
    return {
        a: negativity_series(FIGURE_PARAMETERS["fig1"], InitialStateSpec.substituted(a), 100.0, 10_001)
        for a in (1.0, 2.0, 3.0)
    }


def test_fig1_series_starts_at_zero_and_is_bounded(fig1_series):
    s = fig1_series[1.0]
    assert s.values[0] == 0.0
    assert s.values.max() <= 0.5


def test_fig1_larger_alpha_lower_peaks(fig1_series):
    assert fig1_series[3.0].values.max() <= fig1_series[1.0].values.max()
    assert fig1_series[3.0].values.max() <= fig1_series[2.0].values.max()


def test_fig1_no_decay(fig1_series):
    for s in fig1_series.values():
        assert s.values.max() > 0.05
        late = s.values[s.times > 50]
        assert late.max() > 0.5 * s.values.max()


def test_fig1_average_alpha_one(fig1_series):
    assert time_average(fig1_series[1.0]) == pytest.approx(0.30, abs=0.02)


def test_fig5_average_dz_small():
    p = FIGURE_PARAMETERS["fig1"].replace(dz=0.1)
    s = negativity_series(p, InitialStateSpec.substituted(1.0), 100.0, 10_001)
    assert time_average(s) == pytest.approx(0.319, abs=0.02)


def test_subsystem_b_series_matches_a():
    p = FIGURE_PARAMETERS["fig2"]
    spec = InitialStateSpec.substituted(2.0)
    a = negativity_series(p, spec, 20.0, 2001, Subsystem.QubitA)
    b = negativity_series(p, spec, 20.0, 2001, Subsystem.QubitB)
    assert np.abs(a.values - b.values).max() < 1e-10


FIGURE_CASES = {name: FIGURE_PARAMETERS[name] for name in ("fig1", "fig2", "fig3", "fig4")}
FIGURE_CASES.update({f"fig5-dz{dz:g}": FIGURE_PARAMETERS["fig5"].replace(dz=dz) for dz in FIGURE_DZ_VALUES})


@pytest.mark.parametrize("name", FIGURE_CASES)
@pytest.mark.parametrize("alpha", [1.0, 3.0])
def test_grid_refinement_stability(name, alpha):
    params = FIGURE_CASES[name]
    spec = InitialStateSpec.substituted(alpha)
    coarse = time_average(negativity_series(params, spec, 100.0, 10_001))
    fine = time_average(negativity_series(params, spec, 100.0, 20_001))
    assert abs(coarse - fine) < 1e-3
