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
import random
import time
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy.combinatorics import Permutation

from geniusrise_raag.errors import NotOutside
from geniusrise_raag.graphs.core import Graph
from geniusrise_raag.groups.words import Word, normal_form
from geniusrise_raag.log import setup_logger

log = setup_logger(__name__)

DEFAULT_SEED = 0x5AA6
PRIMES = (2, 3, 5, 7)
RANDOM_TRIES = 20

Perm = Tuple[int, ...]


class SearchBudget(BaseModel):
    """
    Limits of the finite-quotient search.

    Attributes:
        max_degree (int): Largest permutation degree searched exhaustively.
        random_degree (int): Largest degree of the seeded random phase.
        max_candidates (int): Number of evaluated candidate quotients before giving up.
        seed (int): Seed of the random phase.
        time_cap (float): Wall-clock limit in seconds.
    """

    model_config = ConfigDict(frozen=True)

    max_degree: int = Field(5, ge=2, le=8)
    random_degree: int = Field(8, ge=2, le=12)
    max_candidates: int = Field(1_000_000, ge=1)
    seed: int = DEFAULT_SEED
    time_cap: float = Field(10.0, gt=0)


class SeparationStatus(str, Enum):
    SEPARATED = "separated"
    INCONCLUSIVE = "inconclusive"


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply `p`, then `q`."""
    return tuple(q[i] for i in p)


def invert(p: Perm) -> Perm:
    inverse = [0] * len(p)
    for i, image in enumerate(p):
        inverse[image] = i
    return tuple(inverse)


def cyclic_powers(p: Perm) -> List[Perm]:
    """`[1, p, p^2, ...]` up to the order of `p`."""
    powers = [identity(len(p))]
    current = p
    while current != powers[0]:
        powers.append(current)
        current = compose(current, p)
    return powers


def evaluate(images: Dict[str, Perm], w: Word, degree: int) -> Perm:
    result = identity(degree)
    for name, sign in w.letters:
        image = images[name]
        result = compose(result, image if sign > 0 else invert(image))
    return result


@dataclass(frozen=True)
class FiniteQuotientWitness:
    """
    A homomorphism onto a permutation group of degree `degree` separating x from `<h>`.

    `images` sends every generator to a permutation in one-line form (0-based images); `qx` is the
    image of x and `qh_powers` lists the image of `<h>`, which does not contain `qx`.
    """

    degree: int
    images: Dict[str, Perm]
    qx: Perm
    qh_powers: Tuple[Perm, ...]
    phase: str

    @property
    def target(self) -> str:
        return f"permutation group of degree {self.degree}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "images": {v: list(p) for v, p in self.images.items()},
            "qx": list(self.qx),
            "qh_powers": [list(p) for p in self.qh_powers],
            "phase": self.phase,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FiniteQuotientWitness":
        return cls(
            degree=int(data["degree"]),
            images={v: tuple(p) for v, p in data["images"].items()},
            qx=tuple(data["qx"]),
            qh_powers=tuple(tuple(p) for p in data["qh_powers"]),
            phase=data.get("phase", "unknown"),
        )


@dataclass(frozen=True)
class SeparationOutcome:
    status: SeparationStatus
    witness: Optional[FiniteQuotientWitness]
    candidates: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "candidates": self.candidates,
            "witness": self.witness.to_dict() if self.witness else None,
        }


class _OutOfBudget(Exception):
    pass


def _exponent_sums(g: Graph, w: Word) -> List[int]:
    sums = [0] * len(g)
    for name, sign in w.letters:
        sums[g.index(name)] += sign
    return sums


def _functional(h: Sequence[int], x: Sequence[int], p: int) -> Optional[List[int]]:
    """A vector phi over Z/p with phi.h = 0 and phi.x != 0, if x lies outside the span of h."""
    hm = [a % p for a in h]
    xm = [a % p for a in x]
    phi = [0] * len(hm)
    if not any(hm):
        for i, a in enumerate(xm):
            if a:
                phi[i] = 1
                return phi
        return None

    j = next(i for i, a in enumerate(hm) if a)
    for i in range(len(hm)):
        if i != j and (hm[j] * xm[i] - hm[i] * xm[j]) % p:
            phi[i] = hm[j]
            phi[j] = -hm[i] % p
            return phi
    return None


def _cycle_type_representatives(degree: int) -> Iterator[Perm]:
    """One permutation per conjugacy class of the symmetric group, consecutive cycles."""

    def partitions(n: int, largest: int) -> Iterator[List[int]]:
        if n == 0:
            yield []
            return
        for part in range(min(n, largest), 0, -1):
            for rest in partitions(n - part, part):
                yield [part] + rest

    for shape in partitions(degree, degree):
        perm = list(range(degree))
        start = 0
        for length in shape:
            for k in range(length):
                perm[start + k] = start + (k + 1) % length
            start += length
        yield tuple(perm)


class _Search:
    def __init__(self, g: Graph, h: Word, x: Word, budget: SearchBudget) -> None:
        self.g = g
        self.h = h
        self.x = x
        self.budget = budget
        self.candidates = 0
        self.deadline = time.monotonic() + budget.time_cap
        mentioned = set(h.generators()) | set(x.generators())
        self.relevant = [v for v in g.vertices if v in mentioned]

    def spend(self) -> None:
        if self.candidates >= self.budget.max_candidates or time.monotonic() > self.deadline:
            raise _OutOfBudget()
        self.candidates += 1

    def check(self, images: Dict[str, Perm], degree: int, phase: str) -> Optional[FiniteQuotientWitness]:
        self.spend()
        qh = evaluate(images, self.h, degree)
        qx = evaluate(images, self.x, degree)
        powers = cyclic_powers(qh)
        if qx in powers:
            return None
        full = {v: images.get(v, identity(degree)) for v in self.g.vertices}
        return FiniteQuotientWitness(degree, full, qx, tuple(powers), phase)

    def abelian(self) -> Optional[FiniteQuotientWitness]:
        hv = _exponent_sums(self.g, self.h)
        xv = _exponent_sums(self.g, self.x)
        for p in PRIMES:
            phi = _functional(hv, xv, p)
            if phi is None:
                self.spend()
                continue
            rotation = tuple((i + 1) % p for i in range(p))
            images = {v: identity(p) for v in self.g.vertices}
            for v, a in zip(self.g.vertices, phi):
                for _ in range(a):
                    images[v] = compose(images[v], rotation)
            witness = self.check(images, p, "abelian")
            if witness is not None:
                return witness
        return None

    def commutes_with_assigned(self, v: str, perm: Perm, images: Dict[str, Perm]) -> bool:
        for u, image in images.items():
            if self.g.adjacent(u, v) and compose(perm, image) != compose(image, perm):
                return False
        return True

    def exhaustive(self, degree: int) -> Optional[FiniteQuotientWitness]:
        perms = list(itertools.permutations(range(degree)))
        images: Dict[str, Perm] = {}

        def assign(k: int) -> Optional[FiniteQuotientWitness]:
            if k == len(self.relevant):
                return self.check(images, degree, "exhaustive")
            v = self.relevant[k]
            # conjugating every image preserves a witness, so the first image is a class representative
            choices = _cycle_type_representatives(degree) if k == 0 else iter(perms)
            for perm in choices:
                if not self.commutes_with_assigned(v, perm, images):
                    continue
                images[v] = perm
                found = assign(k + 1)
                del images[v]
                if found is not None:
                    return found
            return None

        return assign(0)

    def randomized(self) -> Optional[FiniteQuotientWitness]:
        rng = random.Random(self.budget.seed)
        degrees = list(range(self.budget.max_degree + 1, self.budget.random_degree + 1))
        if not degrees:
            return None
        while True:
            for degree in degrees:
                images: Dict[str, Perm] = {}
                for v in self.relevant:
                    images[v] = identity(degree)
                    for _ in range(RANDOM_TRIES):
                        perm = tuple(rng.sample(range(degree), degree))
                        if self.commutes_with_assigned(v, perm, images):
                            images[v] = perm
                            break
                witness = self.check(images, degree, "random")
                if witness is not None:
                    return witness

    def run(self) -> Optional[FiniteQuotientWitness]:
        try:
            witness = self.abelian()
            if witness is not None:
                return witness
            log.debug(f"Abelian phase failed after {self.candidates} candidates")
            for degree in range(2, self.budget.max_degree + 1):
                witness = self.exhaustive(degree)
                if witness is not None:
                    return witness
                log.debug(f"Exhaustive phase failed at degree {degree} ({self.candidates} candidates)")
            return self.randomized()
        except _OutOfBudget:
            log.debug(f"Search budget spent after {self.candidates} candidates")
            return None


def _inside_cyclic(g: Graph, h: Word, x: Word, deadline: float) -> Optional[int]:
    """
    An exponent e with `x = h^e`, searched over |e| <= length(x) + length(h).

    Only exponents whose generator exponent sums match those of `x` are compared. When `h` has a
    nonzero exponent sum there is at most one such e; otherwise the powers are normal-formed one
    factor at a time.

    Raises:
        _OutOfBudget: If the deadline passes before the search ends.
    """
    target = normal_form(g, x)
    if not target:
        return 0
    hs, xs = _exponent_sums(g, h), _exponent_sums(g, x)
    bound = len(x) + len(h)
    exponents = [e for k in range(1, bound + 1) for e in (k, -k) if all(xv == e * hv for hv, xv in zip(hs, xs))]
    if not exponents:
        return None
    if any(hs):
        e = exponents[0]
        return e if normal_form(g, h**e) == target else None

    for step, direction in ((h, 1), (~h, -1)):
        power = Word()
        for k in range(1, bound + 1):
            if time.monotonic() > deadline:
                raise _OutOfBudget()
            power = normal_form(g, power * step)
            if power == target:
                return direction * k
    return None


def separate_cyclic(g: Graph, h: Word, x: Word, budget: Optional[SearchBudget] = None) -> SeparationOutcome:
    """
    Search a finite quotient of the RAAG on `g` in which the image of `x` avoids the image of `<h>`.

    The search runs abelian quotients over Z/p first, then every assignment of generators to
    permutations of degree 2 up to `budget.max_degree` that respects the commutation relations, then
    seeded random assignments up to `budget.random_degree`. Finding nothing within the budget is
    inconclusive: the quotient exists but may have larger degree. The time cap also covers the
    check that `x` lies outside `<h>`.

    Raises:
        NotOutside: If `x = h^e` for some |e| <= length(x) + length(h).
        WordError: If `h` or `x` use a letter outside `g`.
    """
    budget = budget or SearchBudget()
    normal_form(g, h)
    search = _Search(g, h, x, budget)

    try:
        exponent = _inside_cyclic(g, h, x, search.deadline)
    except _OutOfBudget:
        log.info("Separation inconclusive: time cap passed while checking x against <h>")
        return SeparationOutcome(SeparationStatus.INCONCLUSIVE, None, 0)
    if exponent is not None:
        raise NotOutside(exponent)

    witness = search.run()
    status = SeparationStatus.SEPARATED if witness is not None else SeparationStatus.INCONCLUSIVE
    log.info(f"Separation {status.value} after {search.candidates} candidates")
    return SeparationOutcome(status, witness, search.candidates)


def _sympy_image(perms: Dict[str, Permutation], w: Word, degree: int) -> Permutation:
    result = Permutation(list(range(degree)))
    for name, sign in w.letters:
        result = result * (perms[name] if sign > 0 else perms[name] ** -1)
    return result


def verify_witness(g: Graph, h: Word, x: Word, w: FiniteQuotientWitness) -> bool:
    """
    Independently re-check a witness: every generator has a degree-`w.degree` image, images of adjacent
    generators commute, the recorded image of x is correct and it avoids the cyclic image of `<h>`.
    """
    if set(w.images) != set(g.vertices) or w.degree < 1:
        return False
    try:
        perms = {v: Permutation(list(p)) for v, p in w.images.items()}
    except (ValueError, TypeError):
        return False
    if any(p.size != w.degree for p in perms.values()):
        return False

    for u, v in g.edge_list():
        if perms[u] * perms[v] != perms[v] * perms[u]:
            return False

    try:
        qx = _sympy_image(perms, x, w.degree)
        qh = _sympy_image(perms, h, w.degree)
    except KeyError:
        return False
    if tuple(qx.array_form) != tuple(w.qx):
        return False
    return all(qh**e != qx for e in range(qh.order()))


class SuiteCase(NamedTuple):
    name: str
    graph: str
    h: str
    x: str


DESK_SUITE: Tuple[SuiteCase, ...] = (
    SuiteCase("parity", "a", "a^2", "a"),
    SuiteCase("kill-a", "a\nb", "a", "b"),
    SuiteCase("free-commutator", "a\nb", "a", "a b a^-1 b^-1"),
    SuiteCase("path-endpoint", "a b\nb c", "a", "c"),
    SuiteCase("path-conjugate", "a b\nb c", "a c", "c a"),
    SuiteCase("free-abelian", "a b\nb c\na c", "a b", "a"),
    SuiteCase("square", "a b\nb c\nc d\nd a", "a b", "a"),
    SuiteCase("group-L-conjugate", "a b\nb c\nc d", "a d", "d a"),
    SuiteCase("free-conjugate", "a\nb", "a b", "b a"),
    SuiteCase("cyclic-order-four", "a", "a^4", "a^2"),
)
