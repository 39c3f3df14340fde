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

from .words import (
    GroupPresentation,
    Word,
    commutator,
    format_word,
    normal_form,
    parse_word,
    raag_presentation,
    reduce_word,
    words_equal,
)
from .coset import CosetTable, todd_coxeter
from .michailova import (
    FinitePresentation,
    PairWord,
    ToddCoxeterOracle,
    WordProblemOracle,
    lh_contains,
    load_presentation,
    michailova_generators,
    parse_pair,
    parse_presentation,
    regular_image,
    word_trivial_in_h,
)
from .separation import (
    DESK_SUITE,
    FiniteQuotientWitness,
    SearchBudget,
    SeparationOutcome,
    SeparationStatus,
    separate_cyclic,
    verify_witness,
)
