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

from typing import Dict, List, Sequence, Tuple

from geniusrise_raag.errors import BoundError, Exhausted, WordError
from geniusrise_raag.groups.words import GroupPresentation, Word
from geniusrise_raag.log import setup_logger

log = setup_logger(__name__)

DEFAULT_MAX_COSETS = 100_000
UNDEFINED = -1


class CosetTable:
    """
    A closed coset table: the right action of each generator on cosets `0..size-1`.

    Coset 0 is the subgroup itself. For the trivial subgroup this is the regular action of the group,
    so a word is trivial exactly when it fixes coset 0.

    Args:
        generators (Sequence[str]): Generator names in presentation order.
        action (Dict[str, Sequence[int]]): For each generator, the image of every coset.

    Raises:
        ValueError: If an action is not a permutation of the cosets.
    """

    def __init__(self, generators: Sequence[str], action: Dict[str, Sequence[int]]) -> None:
        self.generators: Tuple[str, ...] = tuple(generators)
        self.action: Dict[str, Tuple[int, ...]] = {x: tuple(action[x]) for x in self.generators}
        sizes = {len(images) for images in self.action.values()}
        if len(sizes) > 1:
            raise ValueError("generator actions disagree on the number of cosets")
        self.size = sizes.pop() if sizes else 1
        if self.size < 1:
            raise ValueError("a coset table has at least one coset")

        self._inverse: Dict[str, Tuple[int, ...]] = {}
        for x, images in self.action.items():
            if sorted(images) != list(range(self.size)):
                raise ValueError(f"action of {x!r} is not a permutation")
            inverse = [0] * self.size
            for coset, image in enumerate(images):
                inverse[image] = coset
            self._inverse[x] = tuple(inverse)

    @property
    def order(self) -> int:
        return self.size

    def act(self, coset: int, w: Word) -> int:
        for name, sign in w.letters:
            if name not in self.action:
                raise WordError(f"unknown letter {name!r}")
            coset = (self.action if sign > 0 else self._inverse)[name][coset]
        return coset

    def is_trivial(self, w: Word) -> bool:
        return self.act(0, w) == 0

    def validate(self, relators: Sequence[Word]) -> bool:
        """Every relator fixes every coset."""
        return all(self.act(c, r) == c for r in relators for c in range(self.size))

    def to_dict(self) -> Dict[str, object]:
        return {"cosets": self.size, "action": {x: list(images) for x, images in self.action.items()}}


class _Enumeration:
    """HLT coset enumeration for the trivial subgroup with immediate coincidence processing."""

    def __init__(self, presentation: GroupPresentation, max_cosets: int) -> None:
        self.generators = presentation.generators
        column = {}
        for k, x in enumerate(self.generators):
            column[(x, 1)] = 2 * k
            column[(x, -1)] = 2 * k + 1
        reduced = [r.free_reduce() for r in presentation.relators]
        self.relators: List[List[int]] = [[column[letter] for letter in r.letters] for r in reduced if len(r)]
        self.width = 2 * len(self.generators)
        self.max_cosets = max_cosets

        self.table: List[List[int]] = [[UNDEFINED] * self.width]
        self.parent: List[int] = [0]
        self.live = 1

    @staticmethod
    def inverse(col: int) -> int:
        return col ^ 1

    def define(self, coset: int, col: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise Exhausted(self.max_cosets)
        fresh = len(self.table)
        self.table.append([UNDEFINED] * self.width)
        self.parent.append(fresh)
        self.live += 1
        self.table[coset][col] = fresh
        self.table[fresh][self.inverse(col)] = coset

    def rep(self, coset: int) -> int:
        root = coset
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[coset] != root:
            self.parent[coset], coset = root, self.parent[coset]
        return root

    def merge(self, a: int, b: int, queue: List[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        low, high = min(a, b), max(a, b)
        self.parent[high] = low
        self.live -= 1
        queue.append(high)

    def coincidence(self, a: int, b: int) -> None:
        queue: List[int] = []
        self.merge(a, b, queue)
        k = 0
        while k < len(queue):
            dead = queue[k]
            k += 1
            for col in range(self.width):
                target = self.table[dead][col]
                if target == UNDEFINED:
                    continue
                self.table[target][self.inverse(col)] = UNDEFINED
                mu, nu = self.rep(dead), self.rep(target)
                if self.table[mu][col] != UNDEFINED:
                    self.merge(nu, self.table[mu][col], queue)
                elif self.table[nu][self.inverse(col)] != UNDEFINED:
                    self.merge(mu, self.table[nu][self.inverse(col)], queue)
                else:
                    self.table[mu][col] = nu
                    self.table[nu][self.inverse(col)] = mu

    def scan_and_fill(self, coset: int, relator: List[int]) -> None:
        table = self.table
        forward, i = coset, 0
        backward, j = coset, len(relator) - 1
        while True:
            while i <= j and table[forward][relator[i]] != UNDEFINED:
                forward = table[forward][relator[i]]
                i += 1
            if i > j:
                if forward != backward:
                    self.coincidence(forward, backward)
                return
            while j >= i and table[backward][self.inverse(relator[j])] != UNDEFINED:
                backward = table[backward][self.inverse(relator[j])]
                j -= 1
            if j < i:
                self.coincidence(forward, backward)
                return
            if i == j:
                table[forward][relator[i]] = backward
                table[backward][self.inverse(relator[i])] = forward
                return
            self.define(forward, relator[i])

    def run(self) -> CosetTable:
        coset = 0
        while coset < len(self.table):
            if self.parent[coset] == coset:
                for relator in self.relators:
                    if self.parent[coset] != coset:
                        break
                    self.scan_and_fill(coset, relator)
                for col in range(self.width):
                    if self.parent[coset] != coset:
                        break
                    if self.table[coset][col] == UNDEFINED:
                        self.define(coset, col)
            coset += 1
        return self.compact()

    def compact(self) -> CosetTable:
        alive = [c for c in range(len(self.table)) if self.parent[c] == c]
        number = {c: k for k, c in enumerate(alive)}
        action = {}
        for k, x in enumerate(self.generators):
            images = [self.table[c][2 * k] for c in alive]
            if UNDEFINED in images:
                raise RuntimeError("coset enumeration finished with an incomplete table")
            action[x] = [number[self.rep(image)] for image in images]
        return CosetTable(self.generators, action)


def todd_coxeter(h: GroupPresentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """
    Enumerate the cosets of the trivial subgroup of `h`.

    Args:
        h (GroupPresentation): The presentation to enumerate.
        max_cosets (int): Bound on the number of cosets ever defined.

    Returns:
        CosetTable: The regular action of the group; its size is the group order.

    Raises:
        Exhausted: If the enumeration does not close within `max_cosets`, e.g. for an infinite group.
        BoundError: If `max_cosets` is below 1.
    """
    if max_cosets < 1:
        raise BoundError(f"max_cosets must be at least 1, got {max_cosets}")
    enumeration = _Enumeration(h, max_cosets)
    table = enumeration.run()
    log.debug(f"Coset enumeration closed with {table.size} cosets after defining {len(enumeration.table)}")
    return table
