import json
import math
from pathlib import Path

import pytest

import pmcsn

DATA = Path(__file__).resolve().parents[2] / "data"


def star():
    return pmcsn.Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


def test_graph_basics():
    g = pmcsn.Graph(3, [(0, 1), (1, 2)])
    assert g.node_count == 3
    assert g.arc_count == 2
    assert g.out_neighbors(0) == [1]
    assert g.arcs() == [(0, 1), (1, 2)]
    with pytest.raises(ValueError):
        pmcsn.Graph(2, [(0, 0)])


def test_load_edge_list():
    g, info = pmcsn.load_edge_list(str(DATA / "tiny.txt"))
    assert g.node_count == 8
    assert info["self_loops_dropped"] == 0
    with pytest.raises(pmcsn.DataError):
        pmcsn.load_edge_list(str(DATA / "missing.txt"))


def test_probabilities_and_costs():
    g = star()
    p = pmcsn.EdgeProbabilities.trivalency(g, 3)
    assert len(p) == 4
    assert set(p.values()) <= {0.1, 0.01, 0.001}
    assert pmcsn.EdgeProbabilities.weighted_cascade(g)[0] == 0.25
    cb = pmcsn.CostBenefitTable.uniform(5, 1.0, 10.0)
    assert cb.max_profit_bound == 49.0
    cb2 = pmcsn.CostBenefitTable.assign(g, "degree:1,0.1", "uniform:10")
    assert math.isclose(cb2.cost(0), 1.4)
    with pytest.raises(pmcsn.ConfigError):
        pmcsn.CostBenefitTable.assign(g, "uniform:-1")


def test_networks_and_counting():
    g = star()
    assert pmcsn.count_diffusion_networks(g, 2) == 6
    big = pmcsn.Graph(61, [(0, v) for v in range(1, 61)])
    assert pmcsn.count_diffusion_networks(big, 30) == math.comb(60, 30)
    net = pmcsn.sample_diffusion_network(g, 2, seed=4)
    assert net.retained_out_degree(0) == 2
    assert pmcsn.validate_network(g, net.arcs(), 2) is None
    node, reason = pmcsn.validate_network(g, [(0, 1)], 2)
    assert node == 0 and reason


def test_network_outlives_graph_reference():
    net = pmcsn.top_degree_network(pmcsn.Graph(3, [(0, 1), (0, 2)]), 1)
    assert net.arc_count == 1
    assert json.loads(net.to_json())["ell"] == 1


def test_exact_and_monte_carlo_agree_on_chain():
    g = pmcsn.Graph(3, [(0, 1), (1, 2)])
    p = pmcsn.EdgeProbabilities.constant(g, 0.5)
    cb = pmcsn.CostBenefitTable.uniform(3, 1.0, 1.0)
    net = pmcsn.top_degree_network(g, 1)
    assert pmcsn.exact_benefit(net, p, cb, [0]) == 1.75
    est = pmcsn.estimate_profit(net, p, cb, [0], replications=20000, seed=2)
    assert abs(est["mean"] - 0.75) <= 4 * est["stderr"]


def test_solvers_and_oracle_on_star():
    g = star()
    p = pmcsn.EdgeProbabilities.constant(g, 1.0)
    cb = pmcsn.CostBenefitTable.uniform(5, 1.0, 1.0)
    opt = pmcsn.exact_optimum(g, 4, p, cb, 1.0)
    assert opt["seeds"] == [0]
    assert opt["profit"] == 4.0
    for algo in ("sba", "heu", "random", "highdeg"):
        sol = pmcsn.solve(g, p, cb, algo, budget=1.0, ell=4, samples=3, mc_report=100, seed=9)
        assert sol.cost <= 1.0
        assert sol.profit["mean"] <= opt["profit"] + 1e-12
        assert json.loads(sol.to_json())["algo"] == algo
    assert pmcsn.solve(g, p, cb, "heu", budget=1.0, ell=4).seeds == [0]


def test_sample_bound():
    assert pmcsn.sample_bound(0.1, 0.05, 0.5) == 738
    assert pmcsn.sample_bound(0.1, 0.1, 1.0) == 150
    with pytest.raises(pmcsn.ConfigError):
        pmcsn.sample_bound(0.0, 0.1, 1.0)


def test_run_is_deterministic():
    kwargs = dict(dataset=str(DATA / "tiny.txt"), algo="heu", budget=5.0, ell=2, mc_report=500, seed=3)
    a = pmcsn.run(**kwargs)
    b = pmcsn.run(**kwargs)
    assert a["checksum"] == b["checksum"]
    assert a["profit_mean"] == b["profit_mean"]
    assert a["cost"] <= 5.0
    assert set(pmcsn.csv_columns()) >= {"dataset", "algo", "budget", "ell", "profit_mean", "checksum"}


def test_solution_network_survives_its_inputs():
    import gc

    g = star()
    sol = pmcsn.solve(g, pmcsn.EdgeProbabilities.constant(g, 0.5), pmcsn.CostBenefitTable.uniform(5, 1.0, 1.0),
                      "random", budget=2.0, ell=2, mc_report=10)
    del g
    net = sol.network
    del sol
    gc.collect()
    assert len(net.arcs()) == 2
