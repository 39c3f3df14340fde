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

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union

from geniusrise_raag.errors import ObstructionPresent
from geniusrise_raag.graphs.core import Graph, component_masks, connected_components, induced_subgraph
from geniusrise_raag.graphs.obstruction import dominating_vertex, find_induced_path3, find_induced_square
from geniusrise_raag.log import setup_logger

log = setup_logger(__name__)


@dataclass(frozen=True)
class LeafZ:
    vertex: str


@dataclass(frozen=True)
class DirectWithZ:
    """`child × Z[vertex]`: the vertex was adjacent to every vertex spanned by `child`."""

    vertex: str
    child: "DecompositionTree"


@dataclass(frozen=True)
class FreeProduct:
    """
    Free product over connected components.

    A free product never has a free product child. The empty free product is the trivial group of the
    empty graph; otherwise there are at least two children.
    """

    children: Tuple["DecompositionTree", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) == 1:
            raise ValueError("a free product needs zero or at least two factors")
        if any(isinstance(c, FreeProduct) for c in self.children):
            raise ValueError("nested free products must be flattened")


DecompositionTree = Union[LeafZ, DirectWithZ, FreeProduct]


def _dominating_in(g: Graph, mask: int) -> Optional[int]:
    neighbours = g.neighbour_masks()
    rest = mask
    while rest:
        low = rest & -rest
        i = low.bit_length() - 1
        if (neighbours[i] | low) & mask == mask:
            return i
        rest ^= low
    return None


def _decompose(g: Graph, mask: int) -> Optional[DecompositionTree]:
    components = component_masks(g, mask)
    if len(components) != 1:
        children = [_decompose(g, c) for c in components]
        if any(c is None for c in children):
            return None
        return FreeProduct(tuple(children))  # type: ignore

    if mask & (mask - 1) == 0:
        return LeafZ(g.vertices[mask.bit_length() - 1])

    centre = _dominating_in(g, mask)
    if centre is None:
        return None
    child = _decompose(g, mask & ~(1 << centre))
    if child is None:
        return None
    return DirectWithZ(g.vertices[centre], child)


def decompose(g: Graph) -> DecompositionTree:
    """
    The group-structure tree of a subgroup separable RAAG.

    Disconnected graphs split into a free product over components, a single vertex is Z, and a
    connected graph with more vertices splits off its least dominating vertex as a direct factor Z.

    Raises:
        ObstructionPresent: When the recursion meets a connected piece without a dominating vertex;
            the exception carries the obstruction found in `g`.
    """
    tree = _decompose(g, g.full_mask)
    if tree is not None:
        return tree

    witness = find_induced_path3(g) or find_induced_square(g)
    if witness is None:
        raise RuntimeError("dominating-vertex recursion failed on a graph without obstruction")
    log.debug(f"Decomposition blocked by {witness.kind.value} {witness.vertices}")
    raise ObstructionPresent(witness)


def reduces_by_domination(g: Graph) -> bool:
    """
    Whether repeatedly deleting a dominating vertex and splitting into components ends at single
    vertices on every branch.
    """
    pieces = [g]
    while pieces:
        piece = pieces.pop()
        if len(piece) <= 1:
            continue
        components = connected_components(piece)
        if len(components) > 1:
            pieces.extend(induced_subgraph(piece, [v for v in piece.vertices if v in c]) for c in components)
            continue
        centre = dominating_vertex(piece)
        if centre is None:
            return False
        pieces.append(induced_subgraph(piece, [v for v in piece.vertices if v != centre]))
    return True


def tree_vertices(t: DecompositionTree) -> List[str]:
    if isinstance(t, LeafZ):
        return [t.vertex]
    if isinstance(t, DirectWithZ):
        return tree_vertices(t.child) + [t.vertex]
    return [v for c in t.children for v in tree_vertices(c)]


def render_structure(t: DecompositionTree) -> str:
    """
    Algebraic rendering: `Z[v]` leaves, `×` for direct factors, `*` for free products.

    Chains of direct factors and free products print without inner parentheses, e.g.
    `(Z[a] * Z[c]) × Z[b]` and `Z[c] × Z[b] × Z[a]`.
    """
    if isinstance(t, LeafZ):
        return f"Z[{t.vertex}]"
    if isinstance(t, DirectWithZ):
        inner = render_structure(t.child)
        if isinstance(t.child, FreeProduct) and t.child.children:
            inner = f"({inner})"
        return f"{inner} × Z[{t.vertex}]"
    if not t.children:
        return "1"
    parts = []
    for c in t.children:
        inner = render_structure(c)
        parts.append(f"({inner})" if isinstance(c, DirectWithZ) else inner)
    return " * ".join(parts)


def group_name(t: DecompositionTree) -> str:
    """Isomorphism type such as `Z`, `Z^3`, `F2`, `F2 × Z` or `(F2 × Z) * Z`."""
    if isinstance(t, LeafZ):
        return "Z"

    if isinstance(t, DirectWithZ):
        rank = 0
        node: DecompositionTree = t
        while isinstance(node, DirectWithZ):
            rank += 1
            node = node.child
        if isinstance(node, LeafZ):
            return f"Z^{rank + 1}"
        base = group_name(node)
        if " " in base:
            base = f"({base})"
        return f"{base} × Z" if rank == 1 else f"{base} × Z^{rank}"

    if not t.children:
        return "1"
    if all(isinstance(c, LeafZ) for c in t.children):
        return f"F{len(t.children)}"
    parts = []
    for c in t.children:
        name = group_name(c)
        parts.append(f"({name})" if "×" in name else name)
    return " * ".join(parts)


def tree_to_dict(t: DecompositionTree) -> Dict[str, Any]:
    if isinstance(t, LeafZ):
        return {"kind": "leaf", "v": t.vertex}
    if isinstance(t, DirectWithZ):
        return {"kind": "direct_z", "v": t.vertex, "child": tree_to_dict(t.child)}
    return {"kind": "free", "children": [tree_to_dict(c) for c in t.children]}


def tree_from_dict(data: Dict[str, Any]) -> DecompositionTree:
    kind = data.get("kind")
    if kind == "leaf":
        return LeafZ(data["v"])
    if kind == "direct_z":
        return DirectWithZ(data["v"], tree_from_dict(data["child"]))
    if kind == "free":
        return FreeProduct(tuple(tree_from_dict(c) for c in data["children"]))
    raise ValueError(f"unknown tree node kind {kind!r}")
