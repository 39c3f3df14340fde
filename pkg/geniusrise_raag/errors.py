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

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from geniusrise_raag.graphs.obstruction import ObstructionWitness


class RAAGError(Exception):
    """
    Base class for every error raised by geniusrise-raag.

    Each subclass carries the exit code the command line maps it to.
    """

    exit_code: int = 2


class GraphError(RAAGError):
    """Invalid graph construction, vertex set or enumeration size."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class WordError(RAAGError):
    """Malformed word token or a letter outside the generating set."""


class PresentationError(RAAGError):
    """Malformed presentation file or pair syntax."""


class BoundError(RAAGError):
    """A search or enumeration bound outside its valid range."""


class ObstructionPresent(RAAGError):
    exit_code = 3

    def __init__(self, witness: "ObstructionWitness") -> None:
        self.witness = witness
        super().__init__(f"graph contains an induced {witness.kind.value}: {' '.join(witness.vertices)}")


class NotOutside(RAAGError):
    exit_code = 3

    def __init__(self, exponent: int) -> None:
        self.exponent = exponent
        super().__init__(f"x equals h^{exponent}, it lies inside the cyclic subgroup")


class Exhausted(RAAGError):
    exit_code = 4

    def __init__(self, max_cosets: int) -> None:
        self.max_cosets = max_cosets
        super().__init__(
            f"coset enumeration did not close within {max_cosets} cosets "
            "(the group may be infinite or the bound too small)"
        )
