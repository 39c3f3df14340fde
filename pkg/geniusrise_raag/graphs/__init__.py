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

from .core import (
    Graph,
    connected_components,
    enumerate_graphs,
    induced_subgraph,
    load_graph,
    parse_graph,
    to_dot,
)
from .obstruction import (
    ObstructionKind,
    ObstructionWitness,
    Verdict,
    dominating_vertex,
    find_induced_hole,
    find_induced_path3,
    find_induced_square,
    separability_verdict,
)
from .decomposition import (
    DecompositionTree,
    DirectWithZ,
    FreeProduct,
    LeafZ,
    decompose,
    group_name,
    reduces_by_domination,
    render_structure,
    tree_from_dict,
    tree_to_dict,
    tree_vertices,
)
