"""Smoke tests for the bapsolve extension module.

These exercise the Python surface end to end on tiny instances whose
solutions are known by hand; the heavy property testing lives in the C++
suites.
"""

import math
import os
import subprocess
import sys

import pytest

import bapsolve as bs

# 2x2 with pairwise distinct weights: the sequential solver is exact and
# must agree with the exhaustive lexicographic baseline.
DISTINCT = [(1, 1, 1.0), (1, 2, 3.0), (2, 1, 2.0), (2, 2, 4.0)]

# 2x2 with a three-way weight tie: the sequential rule admits two matchings,
# only one of which is lexicographically optimal, so exact must be False.
TIE = [(1, 1, 2.0), (1, 2, 2.0), (2, 1, 1.0), (2, 2, 2.0)]


def test_graph_and_matching_basics():
    g = bs.Graph.from_edges(DISTINCT)
    assert g.agents == [1, 2]
    assert g.tasks == [1, 2]
    assert g.edge_count() == 4
    assert g.weight(1, 2) == 3.0
    assert g.weight(bs.Edge(2, 2)) == 4.0
    assert g.has_edge(bs.Edge(2, 1))
    assert not g.has_edge(bs.Edge(3, 1))

    m = bs.Matching([(1, 2), (2, 1)])
    assert len(m) == 2
    assert bs.Edge(1, 2) in m
    assert m.task_of(1) == 2
    assert m.agent_of(1) == 2
    assert m.task_of(9) is None
    assert m == bs.Matching([bs.Edge(2, 1), bs.Edge(1, 2)])

    with pytest.raises(bs.InvalidInput):
        bs.Matching([(1, 1), (1, 2)])  # agent 1 used twice


def test_distinct_instance_is_exact():
    g = bs.Graph.from_edges(DISTINCT)
    r = bs.solve_seqbap(g)
    assert r.exact is True
    assert r.matching == bs.Matching([(1, 2), (2, 1)])
    assert r.matching == bs.solve_lexbap_exact(g)
    assert bs.WeightTuple.of(g, r.matching).values() == [3.0, 2.0]

    cert = bs.solve_bap(g)
    assert cert.bottleneck_weight == 3.0
    assert cert.bottleneck_edge == bs.Edge(1, 2)

    assert bs.has_positive_price(g, cert.matching, bs.Edge(1, 2))
    price = bs.price_of_absence(g, bs.Edge(1, 2))
    assert not price.is_infinite()
    assert price.value == 1.0


def test_tie_instance_is_not_exact():
    g = bs.Graph.from_edges(TIE)
    r = bs.solve_seqbap(g)
    assert r.exact is False
    assert len(r.selections) == 2

    solutions = bs.enumerate_seqbap_solutions(g)
    assert len(solutions) == 2
    assert r.matching in solutions

    report = bs.brute_force_enumerate(g)
    assert len(report.bap_solutions) == 2
    assert report.lexbap_solutions == [bs.Matching([(1, 2), (2, 1)])]
    assert report.lex_min_tuple == bs.WeightTuple([2.0, 1.0])
    assert report.lex_min_tuple < bs.WeightTuple.of(g, r.matching) or \
        bs.WeightTuple.of(g, r.matching) == report.lex_min_tuple


def test_errors_form_a_hierarchy():
    assert issubclass(bs.InvalidInput, bs.Error)
    assert issubclass(bs.SolverError, bs.Error)
    assert issubclass(bs.DisconnectedTopology, bs.Error)
    assert issubclass(bs.EnumerationCapExceeded, bs.InvalidInput)

    with pytest.raises(bs.InvalidInput):
        bs.solve_bap(bs.Graph.from_edges([]))

    # One agent cannot cover two tasks.
    g = bs.Graph.from_edges([(1, 1, 1.0), (1, 2, 2.0)])
    with pytest.raises(bs.SolverError):
        bs.solve_seqbap(g)
    with pytest.raises(bs.Error):  # base class catches it too
        bs.solve_bap(g)

    big = bs.generate_instance(8, 1).graph
    with pytest.raises(bs.EnumerationCapExceeded):
        bs.brute_force_enumerate(big)


def test_generated_instance_geometry():
    inst = bs.generate_instance(6, 99)
    assert inst.n == 6
    assert inst.seed == 99
    assert len(inst.agent_positions) == 6
    assert len(inst.goal_positions) == 6
    assert inst.graph.edge_count() == 36
    for p in inst.agent_positions + inst.goal_positions:
        assert 0.0 <= p.x < 100.0
        assert 0.0 <= p.y < 100.0
    a, t = inst.agent_positions[2], inst.goal_positions[3]
    dx, dy = a.x - t.x, a.y - t.y
    assert inst.graph.weight(2, 3) == math.sqrt(dx * dx + dy * dy)
    # Same seed, same instance.
    assert bs.generate_instance(6, 99).graph == inst.graph


def test_instance_csv_round_trip(tmp_path):
    g = bs.generate_instance(4, 5).graph
    text = bs.instance_to_csv(g)
    assert text.startswith("agent,task,weight\n")
    assert bs.instance_from_csv(text) == g

    path = str(tmp_path / "inst.csv")
    bs.save_instance_file(g, path)
    assert bs.load_instance_file(path) == g

    with pytest.raises(bs.InvalidInput):
        bs.instance_from_csv("not,a,header\n")


def test_distributed_run_matches_centralized():
    inst = bs.generate_instance(5, 3)
    g = inst.graph
    m0 = bs.maximum_cardinality_matching(g)
    central = bs.solve_seqbap(g, m0)

    complete = bs.CommGraph.complete(g.agents)
    assert complete.diameter == 1
    on_complete = bs.run_distributed_seqbap(g, complete, m0)
    assert on_complete.result == central
    assert on_complete.trace.clock_steps >= 1
    assert on_complete.trace.to_csv().startswith("round,primitive,steps,messages\n")

    chain = bs.CommGraph(g.agents, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert chain.diameter == 4
    on_chain = bs.run_distributed_seqbap(g, chain, m0)
    assert on_chain.result == central
    # Every flooding round pays diameter-many clock steps.
    assert on_chain.trace.clock_steps == 4 * on_complete.trace.clock_steps

    with pytest.raises(bs.DisconnectedTopology):
        bs.CommGraph(g.agents, [(0, 1)])


def test_verify_and_benchmark():
    report = bs.verify(base_seed=1, seed_count=5, n_max=4)
    assert report.ok()
    assert report.failures == 0
    assert report.checks_run > 0

    records = bs.run_benchmark([5], 2, ["seqbap", "naive"], 7)
    assert len(records) == 4
    assert {r.algorithm for r in records} == {"seqbap", "naive"}
    assert all(r.seconds >= 0.0 for r in records)
    medians = bs.bench_medians(records)
    assert set(medians) == {(5, "seqbap"), (5, "naive")}


@pytest.mark.skipif("BAP_CLI" not in os.environ, reason="BAP_CLI not set")
def test_cli_agrees_with_module(tmp_path):
    cli = os.environ["BAP_CLI"]
    gen = subprocess.run([cli, "gen", "--n", "4", "--seed", "9"],
                         capture_output=True, text=True, check=True)
    g = bs.instance_from_csv(gen.stdout)
    assert g == bs.generate_instance(4, 9).graph

    path = str(tmp_path / "inst.csv")
    bs.save_instance_file(g, path)
    solve = subprocess.run(
        [cli, "solve", "--in", path, "--algo", "seqbap", "--json"],
        capture_output=True, text=True, check=True)
    import json
    doc = json.loads(solve.stdout)
    got = bs.Matching([(p["agent"], p["task"]) for p in doc["matching"]])
    want = bs.solve_seqbap(g)
    assert got == want.matching
    assert doc["exact"] == want.exact


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
