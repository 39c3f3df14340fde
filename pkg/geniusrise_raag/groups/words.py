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

import re
from collections import deque
from dataclasses import dataclass
from typing import Deque, Iterable, Iterator, List, Sequence, Tuple, Union

from geniusrise_raag.errors import PresentationError, WordError
from geniusrise_raag.graphs.core import Graph

Letter = Tuple[str, int]

TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?")
MAX_WORD_LENGTH = 100_000


class Word:
    """
    A group element spelled as a sequence of signed generator letters.

    Words stay fully expanded (`a^3` is three letters); exponents only exist in the text syntax.
    The empty word is the identity.
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()) -> None:
        checked = []
        for name, sign in letters:
            if sign not in (1, -1):
                raise WordError(f"letter sign must be +1 or -1, got {sign!r}")
            checked.append((name, sign))
        self.letters: Tuple[Letter, ...] = tuple(checked)

    @classmethod
    def power(cls, name: str, exponent: int = 1) -> "Word":
        sign = 1 if exponent > 0 else -1
        return cls([(name, sign)] * abs(exponent))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word((name, -sign) for name, sign in reversed(self.letters))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** -n
        return Word(self.letters * n)

    def generators(self) -> List[str]:
        seen = dict.fromkeys(name for name, _ in self.letters)
        return list(seen)

    def free_reduce(self) -> "Word":
        stack: List[Letter] = []
        for name, sign in self.letters:
            if stack and stack[-1] == (name, -sign):
                stack.pop()
            else:
                stack.append((name, sign))
        return Word(stack)


def parse_word(text: str) -> Word:
    """
    Parse whitespace-separated tokens `a`, `a^-1`, `a^3`; `1` spells the identity.

    Raises:
        WordError: On a malformed token, or when the expanded word exceeds `MAX_WORD_LENGTH` letters.
    """
    letters: List[Letter] = []
    for token in text.split():
        if token == "1":
            continue
        match = TOKEN.fullmatch(token)
        if not match:
            raise WordError(f"malformed word token {token!r}")
        name, digits = match.group(1), match.group(2) or "1"
        if len(digits.lstrip("-")) > len(str(MAX_WORD_LENGTH)) or len(letters) + abs(int(digits)) > MAX_WORD_LENGTH:
            raise WordError(f"word expands to more than {MAX_WORD_LENGTH} letters at token {token!r}")
        letters.extend(Word.power(name, int(digits)).letters)
    return Word(letters)


def format_word(w: Word, compress: bool = False) -> str:
    """
    Render a word in the token syntax, `1` for the identity.

    With `compress`, runs of one letter collapse to a single `a^k` token.
    """
    if not w.letters:
        return "1"

    runs: List[Tuple[str, int]] = []
    for name, sign in w.letters:
        if compress and runs and runs[-1][0] == name and (runs[-1][1] > 0) == (sign > 0):
            runs[-1] = (name, runs[-1][1] + sign)
        else:
            runs.append((name, sign))
    return " ".join(name if exponent == 1 else f"{name}^{exponent}" for name, exponent in runs)


def commutator(a: Union[str, Word], b: Union[str, Word]) -> Word:
    """`[a,b] = a b a^-1 b^-1`."""
    x = Word.power(a) if isinstance(a, str) else a
    y = Word.power(b) if isinstance(b, str) else b
    return x * y * ~x * ~y


def _commutator_pair(w: Word) -> Union[Tuple[str, str], None]:
    if len(w) != 4:
        return None
    (a, s1), (b, s2), (c, s3), (d, s4) = w.letters
    if a == c and b == d and a != b and (s1, s2, s3, s4) == (1, 1, -1, -1):
        return a, b
    return None


@dataclass(frozen=True)
class GroupPresentation:
    """
    Generators and relators of a finitely presented group.

    Args:
        generators (Tuple[str, ...]): Ordered generator names.
        relators (Tuple[Word, ...]): Relator words over the generators.
    """

    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        known = set(self.generators)
        for relator in self.relators:
            for name in relator.generators():
                if name not in known:
                    raise WordError(f"relator letter {name!r} is not a generator")

    def render(self) -> str:
        """`<a, b, c, d | [a,b]=[b,c]=[c,d]=1>` for commutator relators, relator words otherwise."""
        gens = ", ".join(self.generators)
        if not self.relators:
            return f"<{gens} | >"
        pairs = [_commutator_pair(r) for r in self.relators]
        if all(p is not None for p in pairs):
            body = "=".join(f"[{a},{b}]" for a, b in pairs) + "=1"  # type: ignore
        else:
            body = ", ".join(format_word(r, compress=True) for r in self.relators)
        return f"<{gens} | {body}>"

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [format_word(r) for r in self.relators],
            "text": self.render(),
        }


def commutator_presentation(generators: Sequence[str], pairs: Iterable[Tuple[str, str]]) -> GroupPresentation:
    return GroupPresentation(tuple(generators), tuple(commutator(a, b) for a, b in pairs))


def raag_presentation(g: Graph) -> GroupPresentation:
    """One generator per vertex in graph order, one commutator per edge, least vertex first."""
    return commutator_presentation(g.vertices, g.edge_list())


def _check_letters(g: Graph, w: Word) -> None:
    for name in w.generators():
        if name not in g:
            raise WordError(f"unknown letter {name!r}")


def _commute_table(g: Graph) -> List[int]:
    """Per vertex index, the bitset of generators it commutes with (itself included)."""
    return [m | 1 << i for i, m in enumerate(g.neighbour_masks())]


def reduce_word(g: Graph, w: Word) -> Word:
    """
    Cancel `x ... x^-1` whenever every letter in between commutes with `x`, until none is left.

    One left-to-right pass: each generator keeps a pile of its surviving letters, and an incoming
    letter cancels the top of its own pile unless a non-commuting generator has a later survivor.
    The result is a geodesic for the element; all geodesics of an element differ only by swaps of
    commuting neighbours.
    """
    _check_letters(g, w)
    commutes = _commute_table(g)
    blockers = [[y for y in range(len(g)) if not commutes[x] >> y & 1] for x in range(len(g))]
    piles: List[List[Tuple[int, int]]] = [[] for _ in range(len(g))]

    for position, (name, sign) in enumerate(w.letters):
        x = g.index(name)
        pile = piles[x]
        if pile and pile[-1][1] == -sign:
            top = pile[-1][0]
            if all(not piles[y] or piles[y][-1][0] < top for y in blockers[x]):
                pile.pop()
                continue
        pile.append((position, sign))

    survivors = sorted((position, x, sign) for x, pile in enumerate(piles) for position, sign in pile)
    return Word((g.vertices[x], sign) for _, x, sign in survivors)


def normal_form(g: Graph, w: Word) -> Word:
    """
    The shortlex-least word equal to `w` in the right-angled Artin group of `g`.

    Letters are ordered by vertex order, `x` before `x^-1`. After cancellation the word is emitted
    front to back, each time taking the least letter that commutes with every letter still ahead of it.

    Raises:
        WordError: If `w` uses a letter that is not a vertex of `g`.
    """
    commutes = _commute_table(g)
    reduced = reduce_word(g, w).letters
    pending: List[Deque[Tuple[int, int]]] = [deque() for _ in range(len(g))]
    for position, (name, sign) in enumerate(reduced):
        pending[g.index(name)].append((position, sign))

    emitted: List[Letter] = []
    for _ in range(len(reduced)):
        # only the first pending letter of a generator can move to the front
        ahead = 0
        best = -1
        for _, x in sorted((queue[0][0], x) for x, queue in enumerate(pending) if queue):
            if commutes[x] & ahead == ahead:
                if best < 0 or (x, -pending[x][0][1]) < (best, -pending[best][0][1]):
                    best = x
            ahead |= 1 << x
        _, sign = pending[best].popleft()
        emitted.append((g.vertices[best], sign))

    return Word(emitted)


def words_equal(g: Graph, w1: Word, w2: Word) -> bool:
    return normal_form(g, w1) == normal_form(g, w2)
