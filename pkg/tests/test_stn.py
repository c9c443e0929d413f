import xml.dom.minidom

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitscape.bitspace import Bitstring, hamming
from bitscape.errors import ConfigError, DomainError
from bitscape.stn import (
    ALGORITHMS,
    ROLE_BEST,
    ROLE_END,
    ROLE_SHARED,
    ROLE_START,
    Trajectory,
    build_stn,
    export_stn,
    read_trajectories_csv,
    run_algorithm,
    run_ensemble,
    stn_metrics,
    write_trajectories_csv,
)
from bitscape.problems import make_onemax, make_sin2dec, make_two_trap

# accepted states of simulated annealing on onemax n=8, seed 3, budget 500,
# frozen from a reference run
SA_GOLDEN = [
    ("00010010", 6.0),
    ("01010010", 5.0),
    ("01010011", 4.0),
    ("01010001", 5.0),
    ("11010001", 4.0),
    ("11011001", 3.0),
    ("11011101", 2.0),
    ("11011111", 1.0),
    ("11111111", 0.0),
]


def test_sa_golden_trajectory():
    t = run_algorithm(make_onemax(8), "simulated_annealing", {"budget": 500}, seed=3)
    assert [(str(b), f) for b, f in t.steps] == SA_GOLDEN
    assert t.algorithm == "simulated_annealing"
    assert t.best_fitness == 0.0


def test_runs_are_deterministic():
    L = make_sin2dec(6)
    for algo, params in (
        ("rr_hillclimb", {"restarts": 3}),
        ("simulated_annealing", {"budget": 200}),
        ("genetic", {"pop_size": 8, "generations": 10}),
    ):
        a = run_algorithm(L, algo, params, seed=42)
        b = run_algorithm(L, algo, params, seed=42)
        assert a.steps == b.steps


def test_trajectory_rejects_repeats():
    b = Bitstring("01")
    with pytest.raises(DomainError):
        Trajectory(algorithm="x", run=0, steps=((b, 1.0), (b, 1.0)))
    with pytest.raises(DomainError):
        Trajectory(algorithm="x", run=0, steps=())


def test_consecutive_states_always_differ():
    L = make_two_trap(6)
    for algo, params in (
        ("rr_hillclimb", {"restarts": 4}),
        ("simulated_annealing", {"budget": 300, "t0": 2.0}),
        ("genetic", {"pop_size": 6, "generations": 15}),
    ):
        for t in run_ensemble(L, algo, params, runs=3, seed=9):
            for (a, _), (b, _) in zip(t.steps, t.steps[1:]):
                assert a != b


def test_rr_hillclimb_lands_on_local_optimum():
    from bitscape.optima import is_local_optimum

    L = make_sin2dec(6)
    t = run_algorithm(L, "rr_hillclimb", {"restarts": 2}, seed=1)
    assert is_local_optimum(t.steps[-1][0], L)


def test_rr_hillclimb_fixed_start():
    L = make_onemax(3)
    t = run_algorithm(L, "rr_hillclimb", {"restarts": 1, "start": "000"}, seed=0)
    assert [str(b) for b, _ in t.steps] == ["000", "001", "011", "111"]


def test_sa_single_bit_moves():
    t = run_algorithm(make_sin2dec(6), "simulated_annealing", {"budget": 400}, seed=11)
    for (a, _), (b, _) in zip(t.steps, t.steps[1:]):
        assert hamming(a, b) == 1


def test_ga_elitism_never_loses_the_best():
    t = run_algorithm(
        make_two_trap(8), "genetic", {"pop_size": 10, "generations": 30}, seed=5
    )
    fits = [f for _, f in t.steps]
    assert fits == sorted(fits, reverse=True) or all(
        b <= a for a, b in zip(fits, fits[1:])
    )


def test_param_validation_names_the_field():
    L = make_onemax(4)
    with pytest.raises(ConfigError) as err:
        run_algorithm(L, "simulated_annealing", {"budget": 0}, seed=0)
    assert "params.budget" in str(err.value)
    with pytest.raises(ConfigError) as err:
        run_algorithm(L, "genetic", {"pop_size": 1}, seed=0)
    assert "params.pop_size" in str(err.value)
    with pytest.raises(ConfigError) as err:
        run_algorithm(L, "rr_hillclimb", {"bogus": 1}, seed=0)
    assert "bogus" in str(err.value)
    with pytest.raises(ConfigError) as err:
        run_algorithm(L, "tabu", {}, seed=0)
    assert "algo" in str(err.value)


def test_ensemble_runs_differ_but_rerun_identically():
    L = make_sin2dec(6)
    ens = run_ensemble(L, "simulated_annealing", {"budget": 150}, runs=4, seed=7)
    assert [t.run for t in ens] == [0, 1, 2, 3]
    assert len({t.steps for t in ens}) > 1
    again = run_ensemble(L, "simulated_annealing", {"budget": 150}, runs=4, seed=7)
    assert [t.steps for t in ens] == [t.steps for t in again]


def _toy_trajectories():
    def T(algo, run, *values):
        steps = tuple(
            (Bitstring.from_value(v, 3), float(v)) for v in values
        )
        return Trajectory(algorithm=algo, run=run, steps=steps)

    # two algorithms; state 2 is visited by three (algorithm, run) pairs
    return [
        T("rr_hillclimb", 0, 5, 2, 0),
        T("rr_hillclimb", 1, 6, 2, 0),
        T("simulated_annealing", 0, 7, 2, 1),
    ]


def test_build_stn_merges_states_and_counts():
    g = build_stn(_toy_trajectories())
    assert g.n == 3
    node2 = g.node("010")
    assert node2.visit_count == 3
    assert node2.visitor_count == 3
    assert ROLE_SHARED in node2.roles
    assert node2.algorithms == ("rr_hillclimb", "simulated_annealing")
    node0 = g.node("000")
    assert ROLE_END in node0.roles
    assert ROLE_BEST in node0.roles
    assert ROLE_SHARED in node0.roles  # two hillclimb runs end here
    assert ROLE_START in g.node("101").roles
    edge = next(e for e in g.edges if e.source == "010" and e.target == "000")
    assert edge.weight == 2
    assert dict(edge.per_algorithm) == {"rr_hillclimb": 2}


def test_stn_weights_conserve_transitions():
    trajectories = _toy_trajectories()
    g = build_stn(trajectories)
    assert sum(e.weight for e in g.edges) == sum(len(t.steps) - 1 for t in trajectories)


def test_single_run_has_no_shared_nodes():
    t = run_algorithm(make_sin2dec(6), "simulated_annealing", {"budget": 100}, seed=2)
    g = build_stn([t])
    assert all(ROLE_SHARED not in node.roles for node in g.nodes)
    assert all(node.visitor_count == 1 for node in g.nodes)


def test_fitness_bucket_coarsens():
    g = build_stn(_toy_trajectories(), fitness_bucket=4.0)
    # values 0..3 fall in bucket 0, 4..7 in bucket 1
    keys = {node.key for node in g.nodes}
    assert keys == {"bucket0", "bucket1"}
    assert g.fitness_bucket == 4.0
    assert all(node.bits is None for node in g.nodes)
    assert {node.key: node.fitness for node in g.nodes} == {"bucket0": 0.0, "bucket1": 4.0}
    # the three cross-bucket moves survive; bucket-internal moves vanish
    assert [(e.source, e.target, e.weight) for e in g.edges] == [("bucket1", "bucket0", 3)]


def test_fitness_bucket_must_be_positive():
    with pytest.raises(DomainError):
        build_stn(_toy_trajectories(), fitness_bucket=0.0)


def test_metrics():
    m = stn_metrics(build_stn(_toy_trajectories()))
    assert m.node_count == 6
    assert m.edge_count == 5
    assert m.shared_count == 2  # states 010 and 000
    assert m.cross_algorithm_shared_count == 1  # only 010 mixes algorithms
    assert m.best_fitness == {"rr_hillclimb": 0.0, "simulated_annealing": 1.0}
    assert m.coverage == {"rr_hillclimb": 4, "simulated_annealing": 3}


def test_stn_graphml_roundtrip_shape(tmp_path):
    g = build_stn(_toy_trajectories())
    path = tmp_path / "stn.graphml"
    export_stn(g, path, "graphml")
    doc = xml.dom.minidom.parse(str(path))
    assert len(doc.getElementsByTagName("node")) == len(g.nodes)
    assert len(doc.getElementsByTagName("edge")) == len(g.edges)
    text = path.read_text(encoding="utf-8")
    assert 'attr.name="roles"' in text
    assert 'attr.name="per_algorithm"' in text


def test_trajectory_csv_roundtrip(tmp_path):
    trajectories = run_ensemble(
        make_sin2dec(6), "simulated_annealing", {"budget": 120}, runs=2, seed=3
    ) + run_ensemble(make_sin2dec(6), "rr_hillclimb", {"restarts": 2}, runs=2, seed=4)
    path = tmp_path / "t.csv"
    write_trajectories_csv(trajectories, path)
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header == "algorithm,run,step,bits,fitness"
    back = read_trajectories_csv(path)
    assert [(t.algorithm, t.run, t.steps) for t in sorted(back, key=lambda t: (t.algorithm, t.run))] == [
        (t.algorithm, t.run, t.steps)
        for t in sorted(trajectories, key=lambda t: (t.algorithm, t.run))
    ]


@settings(max_examples=25, deadline=None)
@given(
    algo=st.sampled_from(ALGORITHMS),
    seed=st.integers(min_value=0, max_value=10_000),
)
def test_any_seed_yields_wellformed_trajectories(algo, seed):
    L = make_two_trap(5)
    params = {
        "rr_hillclimb": {"restarts": 2},
        "simulated_annealing": {"budget": 60},
        "genetic": {"pop_size": 4, "generations": 8},
    }[algo]
    t = run_algorithm(L, algo, params, seed=seed)
    assert t.steps
    assert all(b.n == 5 for b, _ in t.steps)
    assert all(f == L.f(b) for b, f in t.steps)
