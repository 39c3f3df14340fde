# 🧠 Geniusrise
# Copyright (C) 2023  geniusrise.ai
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import tempfile

import networkx as nx
import pytest

from geniusrise_raag.errors import GraphError, GraphParseError
from geniusrise_raag.graphs import (
    Graph,
    connected_components,
    enumerate_graphs,
    induced_subgraph,
    load_graph,
    parse_graph,
    to_dot,
)


def test_parse_graph_orders_vertices_by_first_mention():
    g = parse_graph("# a path\nb c\n\na b\nd\n")

    assert g.vertices == ("b", "c", "a", "d")
    assert g.edges == {frozenset(("b", "c")), frozenset(("a", "b"))}
    assert g.adjacent("a", "b") and g.adjacent("b", "a")
    assert not g.adjacent("a", "c")
    assert g.edge_list() == [("b", "c"), ("b", "a")]


def test_parse_graph_collapses_repeated_edges():
    g = parse_graph("a b\nb a\na b\n")

    assert len(g) == 2
    assert len(g.edges) == 1


@pytest.mark.parametrize(
    "text,line",
    [
        ("a b\na a\n", 2),
        ("a b c\n", 1),
        ("a\n1b\n", 2),
        ("a\nb-c d\n", 2),
    ],
)
def test_parse_graph_reports_line(text, line):
    with pytest.raises(GraphParseError) as e:
        parse_graph(text)
    assert e.value.line == line
    assert f"line {line}" in str(e.value)


def test_parse_graph_empty():
    with pytest.raises(GraphParseError):
        parse_graph("# nothing here\n\n")

    g = parse_graph("", allow_empty=True)
    assert len(g) == 0
    assert connected_components(g) == []


def test_parse_graph_vertex_cap():
    text = "\n".join(f"v{i}" for i in range(65))
    with pytest.raises(GraphParseError):
        parse_graph(text)

    assert len(parse_graph("\n".join(f"v{i}" for i in range(64)))) == 64


def test_graph_constructor_validation():
    with pytest.raises(GraphError):
        Graph(["a", "a"])
    with pytest.raises(GraphError):
        Graph(["a", "b"], [("a", "a")])
    with pytest.raises(GraphError):
        Graph(["a"], [("a", "b")])
    with pytest.raises(GraphError):
        Graph(["a b"])


def test_graph_equality_and_hash():
    g = Graph(["a", "b", "c"], [("a", "b")])
    h = Graph(["a", "b", "c"], [("b", "a")])

    assert g == h
    assert hash(g) == hash(h)
    assert g != Graph(["a", "b", "c"])
    assert g != Graph(["b", "a", "c"], [("a", "b")])


def test_load_graph_and_dot():
    folder = tempfile.mkdtemp()
    path = os.path.join(folder, "square.graph")
    with open(path, "w") as f:
        f.write("a b\nb c\nc d\nd a\ne\n")

    g = load_graph(path)
    dot = to_dot(g)

    assert g.vertices == ("a", "b", "c", "d", "e")
    assert dot.startswith("graph G {")
    assert "    a -- b;" in dot
    assert "    a -- d;" in dot
    assert "    e;" in dot


def test_load_graph_rejects_non_utf8():
    folder = tempfile.mkdtemp()
    path = os.path.join(folder, "binary.graph")
    with open(path, "wb") as f:
        f.write(b"a b\n\xff\xfe c\n")

    with pytest.raises(GraphParseError, match="not UTF-8"):
        load_graph(path)


def test_induced_subgraph_keeps_parent_order():
    g = parse_graph("a b\nb c\nc d\nd a\n")
    sub = induced_subgraph(g, ["c", "a", "b"])

    assert sub.vertices == ("a", "b", "c")
    assert sub.edges == {frozenset(("a", "b")), frozenset(("b", "c"))}

    with pytest.raises(GraphError):
        induced_subgraph(g, ["a", "z"])
    with pytest.raises(GraphError):
        induced_subgraph(g, ["a", "a"])


def test_induced_subgraph_idempotent_and_hereditary():
    for g in enumerate_graphs(4):
        assert induced_subgraph(g, g.vertices) == g
        for outer in range(1, 16):
            s = g.vertices_of(outer)
            sub = induced_subgraph(g, s)
            assert induced_subgraph(sub, s) == sub
            for inner in range(1, 16):
                if inner & ~outer:
                    continue
                t = g.vertices_of(inner)
                assert induced_subgraph(sub, t) == induced_subgraph(g, t)


def test_connected_components_order():
    g = parse_graph("d e\nb\na c\n")

    assert connected_components(g) == [frozenset({"d", "e"}), frozenset({"b"}), frozenset({"a", "c"})]


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 8), (4, 64), (5, 1024)])
def test_enumerate_graphs_counts(n, count):
    graphs = list(enumerate_graphs(n))

    assert len(graphs) == count
    assert len(set(graphs)) == count
    assert all(g.vertices == tuple(f"v{i}" for i in range(1, n + 1)) for g in graphs)


def test_enumerate_graphs_bit_order():
    graphs = list(enumerate_graphs(3))

    assert graphs[0].edges == frozenset()
    assert graphs[1].edges == {frozenset(("v1", "v2"))}
    assert graphs[2].edges == {frozenset(("v1", "v3"))}
    assert graphs[4].edges == {frozenset(("v2", "v3"))}
    assert len(graphs[7].edges) == 3


@pytest.mark.parametrize("n", [0, 7])
def test_enumerate_graphs_range(n):
    with pytest.raises(GraphError):
        list(enumerate_graphs(n))


def test_components_match_networkx():
    for n in range(1, 6):
        for g in enumerate_graphs(n):
            expected = {frozenset(c) for c in nx.connected_components(g.to_networkx())}
            assert set(connected_components(g)) == expected
