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

import itertools
import re
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from geniusrise_raag.errors import GraphError, GraphParseError
from geniusrise_raag.log import setup_logger

log = setup_logger(__name__)

MAX_VERTICES = 64
MAX_ENUMERATION = 6
VERTEX_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

VertexSet = FrozenSet[str]


class Graph:
    r"""
    A finite simplicial graph with named vertices.

    Vertices keep the order they were given in; that order is the letter order used by normal forms
    and the tie-break order used by every search. Adjacency is held twice: as a frozen edge set and as
    one neighbour bitset per vertex, so adjacency tests and subset scans work on integers.

    Graph values are immutable and hashable.

    Args:
        vertices (Sequence[str]): Distinct vertex names matching `[A-Za-z][A-Za-z0-9_]*`.
        edges (Iterable[Tuple[str, str]]): Unordered vertex pairs, duplicates collapse.

    Raises:
        GraphError: On duplicate or malformed names, self-loops, unknown endpoints or more than 64 vertices.
    """

    __slots__ = ("_vertices", "_index", "_neighbours", "_edges")

    def __init__(self, vertices: Sequence[str], edges: Iterable[Tuple[str, str]] = ()) -> None:
        vertices = tuple(vertices)
        if len(vertices) > MAX_VERTICES:
            raise GraphError(f"graphs are capped at {MAX_VERTICES} vertices, got {len(vertices)}")

        index: Dict[str, int] = {}
        for v in vertices:
            if not isinstance(v, str) or not VERTEX_NAME.fullmatch(v):
                raise GraphError(f"invalid vertex name {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = len(index)

        neighbours = [0] * len(vertices)
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop on {u!r}")
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphError(f"edge endpoint {missing!r} is not a vertex")
            neighbours[index[u]] |= 1 << index[v]
            neighbours[index[v]] |= 1 << index[u]
            edge_set.add(frozenset((u, v)))

        self._vertices: Tuple[str, ...] = vertices
        self._index = index
        self._neighbours: Tuple[int, ...] = tuple(neighbours)
        self._edges: FrozenSet[FrozenSet[str]] = frozenset(edge_set)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> FrozenSet[FrozenSet[str]]:
        return self._edges

    @property
    def full_mask(self) -> int:
        return (1 << len(self._vertices)) - 1

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        edges = ", ".join(f"{u}-{v}" for u, v in self.edge_list())
        return f"Graph(vertices=[{', '.join(self._vertices)}], edges={{{edges}}})"

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"{v!r} is not a vertex of the graph") from None

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self._neighbours[self.index(u)] >> self.index(v) & 1)

    def neighbour_mask(self, v: str) -> int:
        return self._neighbours[self.index(v)]

    def neighbour_masks(self) -> Tuple[int, ...]:
        """Neighbour bitsets indexed by vertex position."""
        return self._neighbours

    def mask(self, vertices: Iterable[str]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.index(v)
        return m

    def vertices_of(self, mask: int) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self._vertices) if mask >> i & 1)

    def edge_list(self) -> List[Tuple[str, str]]:
        """Edges as ordered pairs, least-index endpoint first, sorted by index."""
        pairs = []
        for e in self._edges:
            u, v = sorted(e, key=self._index.__getitem__)
            pairs.append((u, v))
        return sorted(pairs, key=lambda p: (self._index[p[0]], self._index[p[1]]))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self._vertices)
        graph.add_edges_from(self.edge_list())
        return graph


def parse_graph(text: str, allow_empty: bool = False) -> Graph:
    """
    Parse the edge-list format.

    One item per line: `u v` declares an edge, `u` an isolated vertex. Blank lines and lines starting
    with `#` are skipped. Vertices are numbered in order of first mention and repeated edges collapse.

    Args:
        text (str): The file contents.
        allow_empty (bool): Accept input that declares no vertex at all.

    Returns:
        Graph: The parsed graph.

    Raises:
        GraphParseError: On self-loops, malformed tokens or lines, or empty input without `allow_empty`.
    """
    vertices: Dict[str, None] = {}
    edges: List[Tuple[str, str]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        tokens = line.split()
        if len(tokens) > 2:
            raise GraphParseError(f"expected one or two tokens, got {len(tokens)}", number)
        for token in tokens:
            if not VERTEX_NAME.fullmatch(token):
                raise GraphParseError(f"malformed vertex name {token!r}", number)
        if len(tokens) == 2:
            u, v = tokens
            if u == v:
                raise GraphParseError(f"self-loop on {u!r}", number)
            edges.append((u, v))

        for token in tokens:
            vertices.setdefault(token)

    if not vertices and not allow_empty:
        raise GraphParseError("empty graph (pass allow_empty to accept it)")
    if len(vertices) > MAX_VERTICES:
        raise GraphParseError(f"graphs are capped at {MAX_VERTICES} vertices, got {len(vertices)}")

    graph = Graph(list(vertices), edges)
    log.debug(f"Parsed graph with {len(graph)} vertices and {len(graph.edges)} edges")
    return graph


def load_graph(path: str, allow_empty: bool = False) -> Graph:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise GraphParseError(f"{path} is not UTF-8 text: {e.reason} at byte {e.start}")
    return parse_graph(text, allow_empty=allow_empty)


def to_dot(g: Graph) -> str:
    lines = ["graph G {"]
    touched = set()
    for u, v in g.edge_list():
        lines.append(f"    {u} -- {v};")
        touched.update((u, v))
    for v in g.vertices:
        if v not in touched:
            lines.append(f"    {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def induced_subgraph(g: Graph, s: Iterable[str]) -> Graph:
    """
    The full subgraph of `g` on the vertex set `s`, vertex order inherited from `g`.

    Raises:
        GraphError: If `s` names a vertex outside `g` or repeats a name.
    """
    chosen = list(s)
    if len(set(chosen)) != len(chosen):
        raise GraphError("vertex set contains duplicates")
    mask = g.mask(chosen)
    return induced_by_mask(g, mask)


def induced_by_mask(g: Graph, mask: int) -> Graph:
    vertices = g.vertices_of(mask)
    edges = [(u, v) for u, v in g.edge_list() if mask >> g.index(u) & 1 and mask >> g.index(v) & 1]
    return Graph(vertices, edges)


def component_masks(g: Graph, within: int) -> List[int]:
    """Connected components of the subgraph induced on `within`, as bitmasks ordered by least vertex."""
    neighbours = g.neighbour_masks()
    remaining = within
    components = []
    while remaining:
        seed = remaining & -remaining
        component = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = neighbours[low.bit_length() - 1] & within & ~component
            component |= fresh
            frontier |= fresh
        components.append(component)
        remaining &= ~component
    return components


def connected_components(g: Graph) -> List[VertexSet]:
    """Partition of the vertices into maximal connected sets, ordered by least vertex index."""
    return [frozenset(g.vertices_of(m)) for m in component_masks(g, g.full_mask)]


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """
    Every labeled graph on `v1..vn`, each exactly once.

    Graph number k (counting from 0) carries the edge `(vi, vj)` iff bit p of k is set, where p is the
    position of `(i, j)` in the lexicographic list of pairs i < j.

    Raises:
        GraphError: Unless 1 <= n <= 6.
    """
    if not 1 <= n <= MAX_ENUMERATION:
        raise GraphError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION}, got {n}")

    vertices = [f"v{i}" for i in range(1, n + 1)]
    pairs = list(itertools.combinations(vertices, 2))
    for code in range(1 << len(pairs)):
        yield Graph(vertices, [pair for bit, pair in enumerate(pairs) if code >> bit & 1])
