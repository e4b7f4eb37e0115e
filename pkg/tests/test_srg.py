import numpy as np
import pytest

from quasiherm.projgeom import geometry_for_q
from quasiherm import invariants as I
from quasiherm import quasi as QH
from quasiherm import srg
from quasiherm import varieties as V


@pytest.fixture(scope="module")
def g3():
    return geometry_for_q(3)


@pytest.fixture(scope="module")
def quasi_set(g3):
    return QH.assemble(g3, QH.QuasiKind("SH2", j=1))


def test_graph_parameters_sampled(g3, quasi_set):
    res = srg.graph_params(g3, quasi_set, sample_vertices=100, sample_pairs=2000, seed=1)
    assert res["n"] == 6561  # q^8
    assert res["k"] == 2240  # (q^2-1)|set|
    assert res["degree_ok"]
    assert res["srg_ok"]
    assert (res["lambda"], res["mu"]) == (781, 756)


def test_graph_parameters_exhaustive(g3, quasi_set):
    res = srg.graph_params(g3, quasi_set, sample_vertices=30, seed=2, exhaustive=True)
    assert res["srg_ok"]
    assert (res["lambda"], res["mu"]) == (781, 756)
    k, lam, mu, n = res["k"], res["lambda"], res["mu"], res["n"]
    # the standard feasibility identity of a strongly regular graph
    assert k * (k - lam - 1) == (n - k - 1) * mu


def test_same_parameters_for_hermitian_surface(g3, quasi_set):
    # equal size and character numbers force the same invariants; these
    # graphs are not distinguished at this level
    a = srg.graph_params(g3, quasi_set, sample_vertices=25, sample_pairs=400, seed=5)
    b = srg.graph_params(
        g3, V.hermitian_set(g3), sample_vertices=25, sample_pairs=400, seed=5
    )
    assert (a["k"], a["lambda"], a["mu"]) == (b["k"], b["lambda"], b["mu"])
    # ... whereas the line censuses do separate them
    ca = I.lines_in_set(g3, quasi_set)
    cb = I.lines_in_set(g3, V.hermitian_set(g3))
    assert (ca.contained, ca.per_point_hist) != (cb.contained, cb.per_point_hist)


def test_empty_set_is_edgeless(g3):
    res = srg.graph_params(
        g3, np.zeros(g3.n_points, dtype=bool), sample_vertices=5, sample_pairs=10
    )
    assert res["k"] == 0


def test_weight_distribution_duality(g3, quasi_set):
    wd = srg.weight_distribution(g3, quasi_set)
    assert wd == {243: 2240, 252: 4320}
    assert sum(wd.values()) == 6560  # q^8 - 1 nonzero codewords
    spec = QH.plane_spectrum(g3, quasi_set)
    size = int(quasi_set.sum())
    dual = {size - h: m * (g3.Q - 1) for h, m in spec.items()}
    assert dual == wd


def test_weight_distribution_direct_oracle(g3, quasi_set):
    assert srg.weight_distribution_direct(g3, quasi_set) == {243: 2240, 252: 4320}


def test_weight_distribution_small_sets(g3):
    one = np.zeros(g3.n_points, dtype=bool)
    one[7] = True
    assert srg.weight_distribution(g3, one) == srg.weight_distribution_direct(g3, one)
    full = np.ones(g3.n_points, dtype=bool)
    assert srg.weight_distribution(g3, full) == srg.weight_distribution_direct(g3, full)
