import xml.dom.minidom

import pytest

from bitscape.bitspace import dec
from bitscape.errors import DomainError
from bitscape.lon import (
    build_basin_transition_lon,
    build_escape_lon,
    compress_plateaus,
    export_graph,
    to_mlon,
)
from bitscape.optima import find_optima
from bitscape.problems import make_nk, make_onemax, make_sin2dec, make_two_trap
from oracles import brute_basin_edges, brute_basins, brute_escape_edges, brute_local_optima, fitness_table


def _edge_dict(g):
    return {(dec(e.source), dec(e.target)): e.weight for e in g.edges}


def test_two_trap_basin_edges_hand_checked():
    g = build_basin_transition_lon(find_optima(make_two_trap(4)))
    # the two basins meet along the ones-count 1 to 2 and 2 to 3 cuts; in a
    # 4-cube that boundary has 12 ordered pairs each way
    assert _edge_dict(g) == {(0, 15): 12.0, (15, 0): 12.0}
    assert g.kind == "basin_transition"


@pytest.mark.parametrize(
    "landscape",
    [make_sin2dec(6), make_two_trap(5), make_nk(8, 2, 16), make_nk(9, 2, 4)],
    ids=lambda ls: ls.name,
)
def test_basin_edges_match_oracle(landscape):
    fit = fitness_table(landscape)
    basin = brute_basins(landscape.n, fit)
    expected = brute_basin_edges(landscape.n, basin)
    g = build_basin_transition_lon(find_optima(landscape))
    assert _edge_dict(g) == {k: float(v) for k, v in expected.items()}


def test_basin_edges_are_symmetric(sin6_report):
    edges = _edge_dict(build_basin_transition_lon(sin6_report))
    for (i, j), w in edges.items():
        assert edges[(j, i)] == w


def test_nodes_mirror_census(sin6_report):
    g = build_basin_transition_lon(sin6_report)
    assert len(g.nodes) == len(sin6_report.optima)
    for node, opt in zip(g.nodes, sin6_report.optima):
        assert node.bits == opt.bits
        assert node.fitness == opt.fitness
        assert node.basin_size == opt.basin_size
        assert node.is_global == opt.is_global


@pytest.mark.parametrize("D", [1, 2, 3])
@pytest.mark.parametrize(
    "landscape",
    [make_sin2dec(6), make_nk(8, 2, 16), make_two_trap(6)],
    ids=lambda ls: ls.name,
)
def test_escape_edges_match_oracle(landscape, D):
    fit = fitness_table(landscape)
    basin = brute_basins(landscape.n, fit)
    optima = brute_local_optima(landscape.n, fit)
    expected = brute_escape_edges(landscape.n, basin, optima, D)
    g = build_escape_lon(find_optima(landscape), D)
    assert g.kind == "escape"
    assert g.metadata["escape_radius"] == str(D)
    assert _edge_dict(g) == {k: float(v) for k, v in expected.items()}


def test_escape_needs_positive_radius(sin6_report):
    with pytest.raises(DomainError):
        build_escape_lon(sin6_report, 0)


def test_escape_single_optimum_has_no_edges():
    g = build_escape_lon(find_optima(make_onemax(6)), 2)
    assert len(g.nodes) == 1
    assert g.edges == ()


def test_escape_weight_bounded_by_ball_size(sin6_report):
    # at most sum(C(6, d) for d in 1..2) = 21 points can leave one basin
    g = build_escape_lon(sin6_report, 2)
    for i in {dec(e.source) for e in g.edges}:
        out = sum(e.weight for e in g.edges if dec(e.source) == i)
        assert out <= 21


def test_mlon_keeps_only_non_worsening_edges(sin6_report):
    g = build_escape_lon(sin6_report, 2)
    fit = {dec(node.bits): node.fitness for node in g.nodes}
    m = to_mlon(g)
    kept = set(_edge_dict(m))
    for e in g.edges:
        retained = fit[dec(e.target)] <= fit[dec(e.source)]
        assert ((dec(e.source), dec(e.target)) in kept) == retained
    assert m.metadata["monotonic"] == "true"
    # weights of surviving edges are untouched
    full = _edge_dict(g)
    for key, w in _edge_dict(m).items():
        assert w == full[key]


def test_compress_merges_plateau(plateau3):
    report = find_optima(plateau3)
    assert [str(o.bits) for o in report.optima] == ["000", "001"]
    g = compress_plateaus(build_basin_transition_lon(report), report)
    assert len(g.nodes) == 1
    node = g.nodes[0]
    assert str(node.bits) == "000"  # smallest decimal member represents
    assert node.basin_size == 8  # basin sizes add up
    assert g.edges == ()  # the only edge collapsed into a dropped self-loop
    assert g.metadata["compressed"] == "true"


def test_compress_keeps_distinct_fitness_apart(sin6_report):
    g = build_basin_transition_lon(sin6_report)
    c = compress_plateaus(g, sin6_report)
    # sin2dec has no equal-fitness neighboring optima, nothing merges
    assert len(c.nodes) == len(g.nodes)
    assert _edge_dict(c) == _edge_dict(g)


def test_graphml_export_is_valid_xml(tmp_path, sin6_report):
    g = build_basin_transition_lon(sin6_report)
    path = tmp_path / "lon.graphml"
    export_graph(g, path, "graphml")
    doc = xml.dom.minidom.parse(str(path))
    nodes = doc.getElementsByTagName("node")
    edges = doc.getElementsByTagName("edge")
    assert len(nodes) == len(g.nodes)
    assert len(edges) == len(g.edges)
    keys = {k.getAttribute("attr.name") for k in doc.getElementsByTagName("key")}
    assert {"bits", "fitness", "basin_size", "is_global", "weight", "kind"} <= keys


def test_graphml_declares_types(tmp_path, sin6_report):
    path = tmp_path / "lon.graphml"
    export_graph(build_basin_transition_lon(sin6_report), path, "graphml")
    text = path.read_text(encoding="utf-8")
    assert 'attr.name="fitness" attr.type="double"' in text
    assert 'attr.name="basin_size" attr.type="long"' in text
    assert 'attr.name="is_global" attr.type="boolean"' in text
    assert 'edgedefault="directed"' in text


def test_dot_export_mentions_every_node(tmp_path, sin6_report):
    g = build_basin_transition_lon(sin6_report)
    path = tmp_path / "lon.dot"
    export_graph(g, path, "dot")
    text = path.read_text(encoding="utf-8")
    assert text.startswith("digraph")
    for node in g.nodes:
        assert f'"n{dec(node.bits)}"' in text
    assert "->" in text


def test_export_rejects_unknown_format(tmp_path, sin6_report):
    with pytest.raises(DomainError):
        export_graph(build_basin_transition_lon(sin6_report), tmp_path / "x.gexf", "gexf")


def test_export_is_deterministic(tmp_path, sin6_report):
    g = build_escape_lon(sin6_report, 2)
    a = tmp_path / "a.graphml"
    b = tmp_path / "b.graphml"
    export_graph(g, a, "graphml")
    export_graph(g, b, "graphml")
    assert a.read_bytes() == b.read_bytes()
