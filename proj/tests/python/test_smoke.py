import math

import pytest

import beepsim


def test_graph_basics():
    g = beepsim.ring_graph(6)
    assert g.node_count == 6
    assert g.edge_count == 6
    assert g.degree(0) == 2
    assert sorted(g.neighbours(0)) == [1, 5]
    assert g.has_edge(2, 3)
    assert not g.has_edge(0, 3)

    k4 = beepsim.complete_graph(4)
    assert k4.edge_count == 6
    assert k4.max_degree() == 3

    sq = beepsim.path_graph(3).square()
    assert sq.has_edge(0, 2)


def test_graph_round_trip():
    g = beepsim.erdos_renyi_graph(20, 0.3, seed=7)
    again = beepsim.parse_graph(g.save())
    assert again.edges() == g.edges()


def test_mis_run_is_valid():
    g = beepsim.erdos_renyi_graph(40, 0.15, seed=11)
    report = beepsim.simulate(g, "mis", seed=3)
    assert not report.aborted
    assert report.all_decided()
    assert beepsim.check_mis(g, report.outputs) == []


def test_colouring_run_is_valid():
    g = beepsim.ring_graph(16)
    report = beepsim.simulate(g, "colouring", seed=5)
    assert not report.aborted
    assert beepsim.check_colouring(g, report.outputs) == []


def test_k_colouring_palette():
    g = beepsim.complete_graph(5)
    report = beepsim.simulate(g, "k-colouring", seed=1)
    assert beepsim.check_colouring(g, report.outputs) == []
    assert beepsim.check_palette(report.outputs, 4) == []


def test_degree_outputs():
    g = beepsim.star_graph(7)
    report = beepsim.simulate(g, "degree", seed=2)
    assert beepsim.check_degrees(g, report.outputs) == []
    assert report.outputs[0] == 7


def test_two_hop_checkers():
    g = beepsim.erdos_renyi_graph(24, 0.1, seed=9)
    mis2 = beepsim.simulate(g, "two-hop-mis", seed=4)
    assert beepsim.check_two_hop_mis(g, mis2.outputs) == []
    col2 = beepsim.simulate(g, "two-hop-colouring", seed=4)
    assert beepsim.check_two_hop_colouring(g, col2.outputs) == []


def test_simulate_is_deterministic():
    g = beepsim.ring_graph(12)
    a = beepsim.simulate(g, "mis", seed=42)
    b = beepsim.simulate(g, "mis", seed=42)
    assert a.outputs == b.outputs
    assert a.slots == b.slots


def test_emulated_run():
    g = beepsim.ring_graph(8)
    report = beepsim.simulate(g, "mis", seed=6, emulate_k=8, forced_distinct=True)
    assert not report.aborted
    assert beepsim.check_mis(g, report.outputs) == []


def test_choose_k():
    assert beepsim.choose_k("per-node-step", epsilon=1 / 1024) == 10
    assert beepsim.choose_k("all-nodes-run", epsilon=0.5, n=1024, max_degree=32) == 16
    assert beepsim.choose_k("whp-run", c=3, n=256, max_degree=8) == 27
    with pytest.raises(ValueError):
        beepsim.choose_k("whp-run", c=1.5, n=256, max_degree=8)


def test_diagnostics():
    assert beepsim.colouring_potential_f(1.0) == pytest.approx(4.0)
    assert beepsim.colouring_potential_f(2.0) == pytest.approx(6.0)
    assert beepsim.mis_survival_bound(0.5, 0.0, 2) == pytest.approx(1.0)
    assert beepsim.colouring_measure(0.5, 0.5, 0) == pytest.approx(3.0)


def test_missrate_small():
    rate = beepsim.missrate(4, 20000, seed=1)
    assert abs(rate - 2**-4) < 0.01
    assert beepsim.missrate_false_positives(4, 5000, seed=1) == 0


def test_wheel_survival():
    out = beepsim.wheel_survival(4, 8, steps=2, trials=4000, seed=3)
    assert out["expected"] == pytest.approx(0.25)
    assert len(out["spoke_survival"]) == 4
    for s in out["spoke_survival"]:
        assert abs(s - 0.25) < 0.05


def test_model_mismatch_raises():
    g = beepsim.ring_graph(6)
    with pytest.raises(ValueError):
        beepsim.simulate(g, "mis", seed=1, model="BL")


def test_default_max_slots():
    n = 1024
    expected = 10 * (76 * math.log2(n) + 20 * 4 + 180 * math.log(n) + 100)
    assert beepsim.default_max_slots(n, 4) == int(expected)
