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
import json
import random
import time
from collections import deque
from types import SimpleNamespace

import pytest
from pydantic import ValidationError
from sympy.combinatorics import Permutation

from geniusrise_raag.errors import NotOutside, WordError
from geniusrise_raag.graphs import enumerate_graphs, parse_graph
from geniusrise_raag.groups import (
    DESK_SUITE,
    FiniteQuotientWitness,
    SearchBudget,
    SeparationStatus,
    Word,
    parse_word,
    separate_cyclic,
    verify_witness,
)
from geniusrise_raag.groups.separation import compose, cyclic_powers, invert

EXPECTED = {
    "parity": ("abelian", 2),
    "kill-a": ("abelian", 2),
    "free-commutator": ("exhaustive", 3),
    "path-endpoint": ("abelian", 2),
    "path-conjugate": ("exhaustive", 3),
    "free-abelian": ("abelian", 2),
    "square": ("abelian", 2),
    "group-L-conjugate": ("exhaustive", 3),
    "free-conjugate": ("exhaustive", 3),
    "cyclic-order-four": ("exhaustive", 4),
}


def run(graph, h, x, budget=None):
    g = parse_graph(graph)
    hw, xw = parse_word(h), parse_word(x)
    return g, hw, xw, separate_cyclic(g, hw, xw, budget)


def test_suite_is_named_and_complete():
    assert len(DESK_SUITE) == 10
    assert {case.name for case in DESK_SUITE} == set(EXPECTED)


@pytest.mark.parametrize("case", DESK_SUITE, ids=lambda c: c.name)
def test_desk_suite(case):
    g, hw, xw, outcome = run(case.graph, case.h, case.x)

    assert outcome.status is SeparationStatus.SEPARATED
    assert outcome.witness is not None
    assert verify_witness(g, hw, xw, outcome.witness)
    assert (outcome.witness.phase, outcome.witness.degree) == EXPECTED[case.name]


def moves(g, letters):
    for i in range(len(letters) - 1):
        (x, s), (y, t) = letters[i], letters[i + 1]
        if x == y and s == -t:
            yield letters[:i] + letters[i + 2 :]
        elif x != y and g.adjacent(x, y):
            yield letters[:i] + (letters[i + 1], letters[i]) + letters[i + 2 :]


def trivial_by_search(g, w):
    """The empty word is reachable by cancellations and commuting swaps."""
    seen = {w.letters}
    queue = deque([w.letters])
    while queue:
        letters = queue.popleft()
        if not letters:
            return True
        for nxt in moves(g, letters):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


@pytest.mark.parametrize("case", DESK_SUITE, ids=lambda c: c.name)
def test_desk_suite_x_outside_bounded_powers(case):
    g, hw, xw = parse_graph(case.graph), parse_word(case.h), parse_word(case.x)

    for e in range(-4, 5):
        assert not trivial_by_search(g, xw * hw ** (-e))


def test_parity_witness():
    _, _, _, outcome = run("a", "a^2", "a")
    w = outcome.witness

    assert w.images == {"a": (1, 0)}
    assert w.qx == (1, 0)
    assert w.qh_powers == ((0, 1),)
    assert w.target == "permutation group of degree 2"


def test_kill_a_witness():
    _, _, _, outcome = run("a\nb", "a", "b")

    assert outcome.witness.images == {"a": (0, 1), "b": (1, 0)}


def test_free_commutator_needs_nonabelian_image():
    g, hw, xw, outcome = run("a\nb", "a", "a b a^-1 b^-1")
    w = outcome.witness
    a, b = Permutation(list(w.images["a"])), Permutation(list(w.images["b"]))

    assert a * b != b * a
    assert outcome.candidates > 4


def test_witness_json():
    _, _, _, outcome = run("a\nb", "a", "a b a^-1 b^-1")
    data = outcome.to_dict()

    assert data["status"] == "separated"
    assert set(data["witness"]) == {"degree", "images", "qx", "qh_powers", "phase"}
    assert data["witness"]["degree"] == 3
    assert FiniteQuotientWitness.from_dict(json.loads(json.dumps(data["witness"]))) == outcome.witness


def test_random_phase_is_deterministic():
    budget = SearchBudget(max_degree=2, random_degree=6, seed=1234, time_cap=60.0)
    first = run("a\nb", "a", "a b a^-1 b^-1", budget)
    second = run("a\nb", "a", "a b a^-1 b^-1", budget)

    assert first[3].witness.phase == "random"
    assert verify_witness(first[0], first[1], first[2], first[3].witness)
    assert json.dumps(first[3].to_dict(), sort_keys=True) == json.dumps(second[3].to_dict(), sort_keys=True)


def test_default_search_is_deterministic():
    for case in DESK_SUITE:
        outputs = {json.dumps(run(case.graph, case.h, case.x)[3].to_dict(), sort_keys=True) for _ in range(2)}
        assert len(outputs) == 1


def test_tiny_budget_is_inconclusive():
    _, _, _, outcome = run("a\nb", "a", "a b a^-1 b^-1", SearchBudget(max_candidates=4))

    assert outcome.status is SeparationStatus.INCONCLUSIVE
    assert outcome.witness is None
    assert outcome.candidates == 4
    assert outcome.to_dict()["witness"] is None


K6 = "\n".join(f"{u} {v}" for u, v in itertools.combinations("abcdef", 2))


@pytest.mark.parametrize("graph,h", [("a\nb", "b"), (K6, "b c d e f")])
def test_long_x_stays_within_time_cap(graph, h):
    start = time.monotonic()
    _, _, _, outcome = run(graph, h, "a^420", SearchBudget(time_cap=0.5))

    assert time.monotonic() - start < 5
    if outcome.status is SeparationStatus.SEPARATED:
        assert verify_witness(parse_graph(graph), parse_word(h), parse_word("a^420"), outcome.witness)


def test_time_cap_covers_inside_check(monkeypatch):
    ticks = itertools.count(0.0, 100.0)
    monkeypatch.setattr("geniusrise_raag.groups.separation.time", SimpleNamespace(monotonic=lambda: next(ticks)))

    _, _, _, outcome = run("a\nb", "a b a^-1 b^-1", "a b^-1 a^-1 b", SearchBudget(time_cap=10))

    assert outcome.status is SeparationStatus.INCONCLUSIVE
    assert outcome.witness is None
    assert outcome.candidates == 0


@pytest.mark.parametrize(
    "graph,h,x,exponent",
    [
        ("a b\nb c", "a b", "b a", 1),
        ("a b\nb c", "a", "a^-3", -3),
        ("a\nb", "a b", "1", 0),
        ("a\nb", "a b", "b^-1 a^-1 b^-1 a^-1", -2),
        ("a\nb", "a b a^-1 b^-1", "b a b^-1 a^-1 b a b^-1 a^-1 b a b^-1 a^-1", -3),
    ],
)
def test_not_outside(graph, h, x, exponent):
    with pytest.raises(NotOutside) as e:
        run(graph, h, x)
    assert e.value.exponent == exponent
    assert e.value.exit_code == 3


def test_unknown_letter():
    with pytest.raises(WordError):
        run("a\nb", "a", "z")


def test_budget_validation():
    with pytest.raises(ValidationError):
        SearchBudget(max_degree=9)
    with pytest.raises(ValidationError):
        SearchBudget(max_candidates=0)

    budget = SearchBudget()
    assert (budget.max_degree, budget.random_degree, budget.max_candidates) == (5, 8, 1_000_000)
    assert budget.seed == 0x5AA6
    with pytest.raises(ValidationError):
        budget.max_degree = 3


def test_verify_rejects_relator_violation():
    g = parse_graph("a b\nb c\nc d\nd a")
    bad = FiniteQuotientWitness(
        degree=3,
        images={"a": (1, 0, 2), "b": (0, 2, 1), "c": (0, 1, 2), "d": (0, 1, 2)},
        qx=(1, 0, 2),
        qh_powers=(),
        phase="manual",
    )

    assert not verify_witness(g, parse_word("a b"), parse_word("a"), bad)


def test_verify_rejects_image_inside_cyclic_subgroup():
    g = parse_graph("a")
    inside = FiniteQuotientWitness(degree=2, images={"a": (1, 0)}, qx=(1, 0), qh_powers=(), phase="manual")

    assert not verify_witness(g, parse_word("a"), parse_word("a^3"), inside)
    assert verify_witness(g, parse_word("a^2"), parse_word("a^3"), inside)


def test_verify_rejects_malformed_witness():
    g = parse_graph("a\nb")
    h, x = parse_word("a"), parse_word("b")
    good = run("a\nb", "a", "b")[3].witness

    missing = FiniteQuotientWitness(good.degree, {"a": good.images["a"]}, good.qx, good.qh_powers, good.phase)
    wrong_qx = FiniteQuotientWitness(good.degree, good.images, (0, 1), good.qh_powers, good.phase)
    not_a_perm = FiniteQuotientWitness(2, {"a": (0, 0), "b": (1, 0)}, (1, 0), (), "manual")

    assert verify_witness(g, h, x, good)
    assert not verify_witness(g, h, x, missing)
    assert not verify_witness(g, h, x, wrong_qx)
    assert not verify_witness(g, h, x, not_a_perm)


def test_permutation_helpers_agree_with_sympy():
    for p, q in itertools.product(itertools.permutations(range(4)), repeat=2):
        expected = Permutation(list(p)) * Permutation(list(q))
        assert compose(p, q) == tuple(expected.array_form)
    for p in itertools.permutations(range(4)):
        assert compose(p, invert(p)) == (0, 1, 2, 3)
        assert len(cyclic_powers(p)) == Permutation(list(p)).order()


def outside_span_mod(h, x, p):
    """Whether no c makes the exponent-sum vector of x congruent to c times that of h."""
    return all(any((xi - c * hi) % p for hi, xi in zip(h, x)) for c in range(p))


def exponent_sums(g, w):
    sums = [0] * len(g)
    for name, sign in w.letters:
        sums[g.index(name)] += sign
    return sums


def test_abelian_phase_catches_homology_separations():
    rng = random.Random(29)
    graphs = [g for n in (2, 3, 4) for g in enumerate_graphs(n)]
    checked = 0
    while checked < 200:
        g = rng.choice(graphs)
        h = Word((rng.choice(g.vertices), rng.choice((1, -1))) for _ in range(rng.randint(1, 4)))
        x = Word((rng.choice(g.vertices), rng.choice((1, -1))) for _ in range(rng.randint(1, 4)))
        hv, xv = exponent_sums(g, h), exponent_sums(g, x)
        if not any(outside_span_mod(hv, xv, p) for p in (2, 3, 5, 7)):
            continue
        outcome = separate_cyclic(g, h, x)
        assert outcome.witness.phase == "abelian"
        assert outcome.witness.degree <= 7
        assert verify_witness(g, h, x, outcome.witness)
        checked += 1
