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

from .graphs import (
    Graph,
    ObstructionWitness,
    Verdict,
    connected_components,
    decompose,
    dominating_vertex,
    enumerate_graphs,
    find_induced_path3,
    find_induced_square,
    induced_subgraph,
    parse_graph,
    render_structure,
    separability_verdict,
)
from .groups import (
    FinitePresentation,
    PairWord,
    Word,
    lh_contains,
    michailova_generators,
    normal_form,
    raag_presentation,
    separate_cyclic,
    todd_coxeter,
    verify_witness,
    word_trivial_in_h,
    words_equal,
)
