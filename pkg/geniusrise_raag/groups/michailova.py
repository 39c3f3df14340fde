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

from dataclasses import dataclass, field
from typing import List, Optional, Protocol, Tuple, runtime_checkable

from geniusrise_raag.errors import BoundError, PresentationError, WordError
from geniusrise_raag.graphs.core import VERTEX_NAME
from geniusrise_raag.groups.coset import DEFAULT_MAX_COSETS, CosetTable, todd_coxeter
from geniusrise_raag.groups.words import GroupPresentation, Word, format_word, parse_word
from geniusrise_raag.log import setup_logger

log = setup_logger(__name__)


@dataclass(frozen=True)
class FinitePresentation(GroupPresentation):
    """`H = <x_1, ..., x_n | r_1, ..., r_m>` with at least one generator."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.generators:
            raise PresentationError("a presentation needs at least one generator")


def parse_presentation(text: str) -> FinitePresentation:
    """
    Parse a presentation file.

    The first non-comment line reads `gens: x y`; every later non-comment line is one relator in
    word syntax. Lines starting with `#` and blank lines are skipped.

    Raises:
        PresentationError: On a missing or malformed `gens:` line.
        WordError: On a malformed relator or a relator letter outside the generators.
    """
    generators: Optional[List[str]] = None
    relators: List[Word] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if generators is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "gens":
                raise PresentationError(f"line {number}: expected 'gens: x y ...'")
            generators = rest.split()
            for name in generators:
                if not VERTEX_NAME.fullmatch(name):
                    raise PresentationError(f"line {number}: malformed generator {name!r}")
            continue
        relators.append(parse_word(line))

    if generators is None:
        raise PresentationError("missing 'gens:' line")
    return FinitePresentation(tuple(generators), tuple(relators))


def load_presentation(path: str) -> FinitePresentation:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise PresentationError(f"{path} is not UTF-8 text: {e.reason} at byte {e.start}")
    return parse_presentation(text)


@dataclass(frozen=True)
class PairWord:
    """An element `(u, v)` of `F_n × F_n`; both components are freely reduced on construction."""

    first: Word = field(default_factory=Word)
    second: Word = field(default_factory=Word)

    def __post_init__(self) -> None:
        object.__setattr__(self, "first", self.first.free_reduce())
        object.__setattr__(self, "second", self.second.free_reduce())

    def __mul__(self, other: "PairWord") -> "PairWord":
        return PairWord(self.first * other.first, self.second * other.second)

    def __invert__(self) -> "PairWord":
        return PairWord(~self.first, ~self.second)

    def __str__(self) -> str:
        return f"{format_word(self.first)} | {format_word(self.second)}"


def parse_pair(text: str) -> PairWord:
    """Parse `u | v`, each side in word syntax, `1` for the identity."""
    parts = text.split("|")
    if len(parts) != 2:
        raise PresentationError(f"expected 'u | v', got {text!r}")
    return PairWord(parse_word(parts[0]), parse_word(parts[1]))


@runtime_checkable
class WordProblemOracle(Protocol):
    """Decides whether a word over the generators of H is trivial in H."""

    def is_trivial(self, w: Word) -> bool:
        ...


class ToddCoxeterOracle:
    """
    Word-problem oracle for finite H, backed by a coset table enumerated on first use.

    Raises:
        BoundError: On construction, if `max_cosets` is not a positive integer.
        Exhausted: From the first query if H does not close within `max_cosets`.
    """

    def __init__(self, h: GroupPresentation, max_cosets: int = DEFAULT_MAX_COSETS) -> None:
        if isinstance(max_cosets, bool) or not isinstance(max_cosets, int) or max_cosets < 1:
            raise BoundError(f"max_cosets must be a positive integer, got {max_cosets!r}")
        self.h = h
        self.max_cosets = max_cosets
        self._table: Optional[CosetTable] = None

    @property
    def table(self) -> CosetTable:
        if self._table is None:
            self._table = todd_coxeter(self.h, self.max_cosets)
        return self._table

    def is_trivial(self, w: Word) -> bool:
        return word_trivial_in_h(self.table, w)


def michailova_generators(h: GroupPresentation) -> List[PairWord]:
    """The diagonal pairs `(x_i, x_i)` followed by the relator pairs `(1, r_j)`, in presentation order."""
    diagonal = [PairWord(Word.power(x), Word.power(x)) for x in h.generators]
    return diagonal + [PairWord(Word(), r) for r in h.relators]


def word_trivial_in_h(table: CosetTable, w: Word) -> bool:
    """Whether `w` fixes the subgroup coset; for the regular action this is `w = 1` in H."""
    return table.is_trivial(w)


def regular_image(table: CosetTable, w: Word) -> Tuple[int, ...]:
    """The permutation `w` induces on the cosets; it is the identity iff `w = 1` in H."""
    return tuple(table.act(c, w) for c in range(table.size))


def _check_pair(h: GroupPresentation, p: PairWord) -> None:
    known = set(h.generators)
    for w in (p.first, p.second):
        for name in w.generators():
            if name not in known:
                raise WordError(f"unknown letter {name!r}")


def lh_contains(h: GroupPresentation, p: PairWord, oracle: WordProblemOracle) -> bool:
    """
    Membership of `(u, v)` in `L_H`.

    `L_H` is generated by the diagonal pairs and the pairs `(1, r_j)`; since the diagonal covers every
    first component, `(u, v)` lies in `L_H` iff `(1, u^-1 v)` does, i.e. iff `u^-1 v` lies in the normal
    closure of the relators, i.e. iff `u = v` in H.

    Args:
        h (GroupPresentation): The presentation of H.
        p (PairWord): The pair to test.
        oracle (WordProblemOracle): Decides triviality in H; its failures propagate.

    Raises:
        WordError: If `p` uses a letter outside the generators of H.
    """
    _check_pair(h, p)
    quotient = (~p.first * p.second).free_reduce()
    member = oracle.is_trivial(quotient)
    log.debug(f"({p}) {'in' if member else 'not in'} L_H: u^-1 v = {format_word(quotient)}")
    return member
