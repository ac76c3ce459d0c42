"""Smoke test for the python bindings: simulate, fit, select, covsel."""

import sys

import numpy as np

import _cvarpy as cvar


def main():
    rng = np.random.default_rng(0)

    A = np.eye(3)
    A[0, 1] = 0.4
    A[0, 2] = -0.3
    A[1, 2] = 0.5
    B1 = np.array([[-0.3, 0.1, 0.0], [0.05, -0.25, 0.1], [0.0, 0.1, -0.2]])
    delta = np.array([1.0, 0.5, 0.25])

    x = cvar.simulate(A, [B1], delta, 50000, seed=7)
    assert x.shape == (50000, 3)
    # deterministic under a fixed seed
    assert np.array_equal(x, cvar.simulate(A, [B1], delta, 50000, seed=7))

    model = cvar.fit(x, 1)
    assert model["p"] == 1
    assert np.abs(model["A"] - A).max() < 0.05
    assert np.abs(model["B"][0] - B1).max() < 0.05
    assert np.abs(model["Delta"] - delta).max() < 0.05
    assert model["spectral_radius"] < 1.0

    table = cvar.order_selection(x, 4)
    assert table["best"]["bic"] == 1

    adjacency = np.ones((3, 3)) - np.eye(3)
    restricted = cvar.fit_restricted(x, 1, adjacency)
    assert np.abs(restricted["A"] - model["A"]).max() < 1e-10

    # a missing contemporaneous edge becomes an exact structural zero
    sparse = adjacency.copy()
    sparse[0, 2] = sparse[2, 0] = 0.0
    r = cvar.fit_restricted(x, 1, sparse)
    assert r["A"][0, 2] == 0.0

    pc = cvar.partial_correlations(x, 1)
    assert pc.shape == (3, 3)
    assert np.allclose(np.diag(pc), 1.0)

    cov = rng.standard_normal((200, 4))
    S = cov.T @ cov
    K_hat, sigma_hat = cvar.covsel(S, np.ones((4, 4)) - np.eye(4), 200)
    assert np.abs(K_hat @ sigma_hat - np.eye(4)).max() < 1e-8

    try:
        cvar.fit(np.zeros((10, 2)), 1)
    except Exception as exc:  # noqa: BLE001 - any library error is acceptable
        assert "variance" in str(exc).lower() or "definite" in str(exc).lower()
    else:
        raise AssertionError("degenerate input should raise")

    print("python smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
