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

import json
import os
import tempfile

import pytest

from geniusrise_raag.cli import ExitCode, OutputEnvelope, build_parser, main


def write(name, text):
    folder = tempfile.mkdtemp()
    path = os.path.join(folder, name)
    with open(path, "w") as f:
        f.write(text)
    return path


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    data = json.loads(out)
    assert data["exit_code"] == code
    return code, data


def test_analyze_square(capsys):
    code, data = run_json(capsys, "analyze", write("square.graph", "a b\nb c\nc d\nd a\n"))

    assert code == 3
    assert data["status"] == "ok"
    assert data["payload"]["separable"] is False
    assert data["payload"]["witness"]["kind"] == "square"
    assert data["payload"]["hole"] == ["a", "b", "c", "d"]


def test_analyze_path(capsys):
    code, data = run_json(capsys, "analyze", write("path.graph", "a b\nb c\n"), "--emit-dot")

    assert code == 0
    assert data["payload"]["structure"] == "(Z[a] * Z[c]) × Z[b]"
    assert data["payload"]["group"] == "F2 × Z"
    assert data["payload"]["graph"] == {"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}
    assert "a -- b;" in data["payload"]["dot"]


def test_analyze_errors(capsys):
    code, data = run_json(capsys, "analyze", write("bad.graph", "a a\n"))
    assert code == 2
    assert data["status"] == "error"
    assert data["payload"]["error"] == "GraphParseError"

    code, data = run_json(capsys, "analyze", os.path.join(tempfile.mkdtemp(), "missing.graph"))
    assert code == 2

    code, data = run_json(capsys, "analyze", write("empty.graph", "# nothing\n"))
    assert code == 2
    code, data = run_json(capsys, "analyze", write("empty.graph", "# nothing\n"), "--allow-empty")
    assert code == 0
    assert data["payload"]["structure"] == "1"


def test_decompose_and_present(capsys):
    path = write("path4.graph", "a b\nb c\nc d\n")

    code, data = run_json(capsys, "decompose", path)
    assert code == 3
    assert data["payload"]["witness"]["kind"] == "path3"

    code, data = run_json(capsys, "present", path)
    assert code == 0
    assert data["payload"]["text"] == "<a, b, c, d | [a,b]=[b,c]=[c,d]=1>"

    code, data = run_json(capsys, "decompose", write("triangle.graph", "a b\nb c\nc a\n"))
    assert code == 0
    assert data["payload"]["group"] == "Z^3"


def test_nf_and_equal(capsys):
    path = write("path.graph", "a b\nb c\n")

    code, data = run_json(capsys, "nf", path, "c b a")
    assert code == 0
    assert data["payload"]["normal_form"] == "b c a"

    assert main(["equal", path, "a b", "b a"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["equal", path, "a c", "c a"]) == 3
    assert capsys.readouterr().out.strip() == "false"

    code, data = run_json(capsys, "equal", path, "a", "z")
    assert code == 2
    assert data["payload"]["error"] == "WordError"


def test_michailova(capsys):
    z3 = write("z3.pres", "gens: x\nx^3\n")

    code, data = run_json(capsys, "michailova", z3, "x^2 | x^5")
    assert code == 0
    assert data["payload"]["member"] is True
    assert data["payload"]["order"] == 3
    assert data["payload"]["quotient"] == "x x x"

    code, data = run_json(capsys, "michailova", z3, "1 | x")
    assert code == 3

    code, data = run_json(capsys, "michailova", write("z.pres", "gens: x\n"), "1 | x", "--max-cosets", "10")
    assert code == 4
    assert data["status"] == "error"
    assert data["payload"]["error"] == "Exhausted"

    code, data = run_json(capsys, "michailova", z3, "x y")
    assert code == 2


def test_non_utf8_files_exit_two(capsys):
    folder = tempfile.mkdtemp()
    graph, pres = os.path.join(folder, "binary.graph"), os.path.join(folder, "binary.pres")
    for path in (graph, pres):
        with open(path, "wb") as f:
            f.write(b"a b\n\xff\xfe c\n")

    code, data = run_json(capsys, "analyze", graph)
    assert code == 2
    assert data["payload"]["error"] == "GraphParseError"

    code, data = run_json(capsys, "michailova", pres, "1 | x")
    assert code == 2
    assert data["payload"]["error"] == "PresentationError"


@pytest.mark.parametrize("bound", ["0", "-5"])
def test_michailova_rejects_bad_max_cosets(capsys, bound):
    code, data = run_json(capsys, "michailova", write("z3.pres", "gens: x\nx^3\n"), "1 | x", "--max-cosets", bound)

    assert code == 2
    assert data["status"] == "error"
    assert data["payload"]["error"] == "BoundError"


def test_long_and_oversized_words(capsys):
    path = write("path.graph", "a b\nb c\n")

    code, data = run_json(capsys, "nf", path, "a^3000 b a^-3000")
    assert code == 0
    assert data["payload"]["normal_form"] == "b"

    code, data = run_json(capsys, "nf", path, "a^1000000000")
    assert code == 2
    assert data["payload"]["error"] == "WordError"


def test_separate(capsys):
    single = write("a.graph", "a\n")

    code, data = run_json(capsys, "separate", single, "a^2", "a")
    assert code == 0
    assert data["payload"]["status"] == "separated"
    assert data["payload"]["verified"] is True
    assert data["payload"]["witness"]["images"] == {"a": [1, 0]}

    code, data = run_json(capsys, "separate", single, "a", "a^2")
    assert code == 3
    assert data["payload"]["exponent"] == 2

    free = write("free.graph", "a\nb\n")
    code, data = run_json(capsys, "separate", free, "a", "a b a^-1 b^-1", "--max-candidates", "4")
    assert code == 5
    assert data["payload"]["status"] == "inconclusive"

    code, data = run_json(capsys, "separate", free, "a", "b", "--degree", "9")
    assert code == 2
    assert data["payload"]["error"] == "ValidationError"


def test_separate_seed_accepts_hex(capsys):
    free = write("free.graph", "a\nb\n")
    argv = ["separate", free, "a", "a b a^-1 b^-1", "--degree", "2", "--seed", "0x10", "--json"]

    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["payload"]["witness"]["phase"] == "random"


def test_suite(capsys):
    code, data = run_json(capsys, "suite")

    assert code == 0
    assert len(data["payload"]["cases"]) == 10
    assert all(case["verified"] for case in data["payload"]["cases"])


def test_envelope_status():
    assert OutputEnvelope("x", ExitCode.NEGATIVE).status == "ok"
    assert OutputEnvelope("x", ExitCode.INCONCLUSIVE).status == "ok"
    assert OutputEnvelope("x", ExitCode.EXHAUSTED).status == "error"
    assert json.loads(OutputEnvelope("x", ExitCode.POSITIVE, {"k": 1}).to_json()) == {
        "command": "x",
        "status": "ok",
        "exit_code": 0,
        "payload": {"k": 1},
    }


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
