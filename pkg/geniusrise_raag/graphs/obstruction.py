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
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, Iterator, Optional, Tuple

import networkx as nx

from geniusrise_raag.graphs.core import Graph, induced_subgraph
from geniusrise_raag.groups.words import GroupPresentation, commutator_presentation
from geniusrise_raag.log import setup_logger

if TYPE_CHECKING:
    from geniusrise_raag.graphs.decomposition import DecompositionTree

log = setup_logger(__name__)


class ObstructionKind(Enum):
    PATH3 = "path3"
    SQUARE = "square"


@dataclass(frozen=True)
class ObstructionWitness:
    """
    Four vertices inducing a path of length three or a square, listed along the path or cycle.

    `obstruction_group` presents the subgroup these vertices generate: the group L for a path,
    F2 × F2 for a square.
    """

    kind: ObstructionKind
    vertices: Tuple[str, str, str, str]
    obstruction_group: GroupPresentation

    @property
    def group_name(self) -> str:
        return "L" if self.kind is ObstructionKind.PATH3 else "F2 × F2"

    def expected_edges(self) -> frozenset:
        a, b, c, d = self.vertices
        edges = {frozenset((a, b)), frozenset((b, c)), frozenset((c, d))}
        if self.kind is ObstructionKind.SQUARE:
            edges.add(frozenset((d, a)))
        return frozenset(edges)

    def validate(self, g: Graph) -> bool:
        """Re-check that `g` induces exactly the witnessed edges on the four vertices."""
        if len(set(self.vertices)) != 4 or any(v not in g for v in self.vertices):
            return False
        return induced_subgraph(g, self.vertices).edges == self.expected_edges()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "vertices": list(self.vertices),
            "group": self.group_name,
            "presentation": self.obstruction_group.to_dict(),
        }


def _subsets(g: Graph) -> Iterator[Tuple[Tuple[int, ...], int, Tuple[int, ...]]]:
    """4-subsets in lexicographic index order with their mask and induced degrees."""
    neighbours = g.neighbour_masks()
    for quad in itertools.combinations(range(len(g)), 4):
        mask = (1 << quad[0]) | (1 << quad[1]) | (1 << quad[2]) | (1 << quad[3])
        degrees = tuple(bin(neighbours[i] & mask).count("1") for i in quad)
        yield quad, mask, degrees


def _path_witness(g: Graph, order: Tuple[int, ...]) -> ObstructionWitness:
    names = tuple(g.vertices[i] for i in order)
    presentation = commutator_presentation(names, zip(names, names[1:]))
    return ObstructionWitness(ObstructionKind.PATH3, names, presentation)  # type: ignore


def _square_witness(g: Graph, order: Tuple[int, ...]) -> ObstructionWitness:
    names = tuple(g.vertices[i] for i in order)
    presentation = commutator_presentation(names, zip(names, names[1:] + names[:1]))
    return ObstructionWitness(ObstructionKind.SQUARE, names, presentation)  # type: ignore


def find_induced_path3(g: Graph) -> Optional[ObstructionWitness]:
    """
    The least 4-subset inducing a path of length three, listed from its lesser endpoint.

    Returns:
        Optional[ObstructionWitness]: A `PATH3` witness presenting `<a, b, c, d | [a,b]=[b,c]=[c,d]=1>`
        on the witness vertices, or None.
    """
    neighbours = g.neighbour_masks()
    for quad, mask, degrees in _subsets(g):
        if sorted(degrees) != [1, 1, 2, 2]:
            continue
        # degree sequence 1,1,2,2 on four vertices is only realised by the path
        start = next(i for i, d in zip(quad, degrees) if d == 1)
        order = [start]
        seen = 1 << start
        while len(order) < 4:
            step = neighbours[order[-1]] & mask & ~seen
            nxt = step.bit_length() - 1
            order.append(nxt)
            seen |= 1 << nxt
        log.debug(f"Induced path of length three on {g.vertices_of(mask)}")
        return _path_witness(g, tuple(order))
    return None


def find_induced_square(g: Graph) -> Optional[ObstructionWitness]:
    """
    The least 4-subset inducing a square, listed from its least vertex towards the lesser neighbour.

    Returns:
        Optional[ObstructionWitness]: A `SQUARE` witness presenting F2 × F2 on the witness vertices, or None.
    """
    neighbours = g.neighbour_masks()
    for quad, mask, degrees in _subsets(g):
        if degrees != (2, 2, 2, 2):
            continue
        first = quad[0]
        around = neighbours[first] & mask
        low = around & -around
        second = low.bit_length() - 1
        fourth = (around ^ low).bit_length() - 1
        third = (mask & ~around & ~(1 << first)).bit_length() - 1
        log.debug(f"Induced square on {g.vertices_of(mask)}")
        return _square_witness(g, (first, second, third, fourth))
    return None


def find_induced_hole(g: Graph) -> Optional[Tuple[str, ...]]:
    """
    An induced closed path of length four or more, or None.

    For each vertex s and pair of non-adjacent neighbours a, b, a shortest a-b path avoiding the rest
    of the closed neighbourhood of s closes a chordless cycle through s. Used for reporting only;
    separability is decided on paths of length three and squares.
    """
    graph = g.to_networkx()
    for s in g.vertices:
        around = [v for v in g.vertices if g.adjacent(s, v)]
        closed = set(around) | {s}
        for a, b in itertools.combinations(around, 2):
            if g.adjacent(a, b):
                continue
            allowed = [v for v in g.vertices if v not in closed or v in (a, b)]
            try:
                path = nx.shortest_path(graph.subgraph(allowed), a, b)
            except nx.NetworkXNoPath:
                continue
            return (s, *path)
    return None


def dominating_vertex(g: Graph) -> Optional[str]:
    """The least vertex adjacent to every other vertex, the vertex itself for a one-vertex graph."""
    full = g.full_mask
    for i, m in enumerate(g.neighbour_masks()):
        if m | 1 << i == full:
            return g.vertices[i]
    return None


@dataclass(frozen=True)
class Verdict:
    """Subgroup separability of a RAAG: a witness when it fails, a decomposition tree when it holds."""

    separable: bool
    witness: Optional[ObstructionWitness] = None
    tree: Optional["DecompositionTree"] = None

    def __post_init__(self) -> None:
        if self.separable != (self.tree is not None) or self.separable == (self.witness is not None):
            raise ValueError("a verdict carries a tree iff separable and a witness iff not")

    def to_dict(self) -> Dict[str, Any]:
        from geniusrise_raag.graphs.decomposition import group_name, render_structure, tree_to_dict

        if self.tree is None:
            return {"separable": False, "witness": self.witness.to_dict()}  # type: ignore
        return {
            "separable": True,
            "structure": render_structure(self.tree),
            "group": group_name(self.tree),
            "tree": tree_to_dict(self.tree),
        }


def separability_verdict(g: Graph) -> Verdict:
    """
    Decide subgroup separability of the RAAG on `g`.

    Not separable iff an induced path of length three or an induced square exists; the path is
    reported when both do. Otherwise the decomposition tree certifies separability.
    """
    from geniusrise_raag.graphs.decomposition import decompose

    witness = find_induced_path3(g) or find_induced_square(g)
    if witness is not None:
        return Verdict(separable=False, witness=witness)
    return Verdict(separable=True, tree=decompose(g))
