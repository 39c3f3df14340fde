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
from typing import Optional

from geniusrise import BatchInput, BatchOutput, Bolt, State
from geniusrise.logging import setup_logger

from geniusrise_raag.cli import cmd_analyze, guarded


class AnalyzeGraphs(Bolt):
    def __init__(self, input: BatchInput, output: BatchOutput, state: State, **kwargs) -> None:
        r"""
        The `AnalyzeGraphs` class decides subgroup separability for a folder of RAAG graphs.
        Every `.graph` file in the input folder is parsed in the edge-list format and analyzed.
        For each graph it writes a JSON file holding the verdict: the obstruction witness with its
        presentation when the group is not subgroup separable, the decomposition tree otherwise.

            Args:
                input (BatchInput): An instance of the BatchInput class for reading the data.
                output (BatchOutput): An instance of the BatchOutput class for saving the data.
                state (State): An instance of the State class for maintaining the state.
                **kwargs: Additional keyword arguments.

        ## Using geniusrise to invoke via command line
        ```bash
        genius AnalyzeGraphs rise \
            batch \
                --bucket my_bucket \
                --s3_folder s3/graphs \
            batch \
                --bucket my_bucket \
                --s3_folder s3/verdicts \
            none \
            process \
                --args allow_empty=False
        ```

        ## Using geniusrise to invoke via YAML file
        ```yaml
        version: "1"
        spouts:
            analyze_graphs:
                name: "AnalyzeGraphs"
                method: "process"
                args:
                    allow_empty: false
                input:
                    type: "batch"
                    args:
                        bucket: "my_bucket"
                        s3_folder: "s3/graphs"
                output:
                    type: "batch"
                    args:
                        bucket: "my_bucket"
                        s3_folder: "s3/verdicts"
        ```
        """
        super().__init__(input, output, state, **kwargs)
        self.log = setup_logger(self.state)

    def process(self, input_folder: Optional[str] = None, allow_empty: bool = False) -> None:
        """
        📖 Analyze every graph file in the input folder and save one JSON verdict per graph.

        Args:
            input_folder (str): The folder containing `.graph` files. Defaults to `input.input_folder`.
            allow_empty (bool): Accept graph files that declare no vertex.

        The JSON file carries the `analyze` envelope: `exit_code` 0 for separable, 3 for not separable
        and 2 for files that do not parse, with the verdict or the error under `payload`.
        """
        input_folder = input_folder if input_folder else self.input.input_folder

        for graph_file in sorted(os.listdir(input_folder)):
            if not graph_file.endswith(".graph"):
                continue

            graph_path = os.path.join(input_folder, graph_file)
            envelope = guarded("analyze", lambda: cmd_analyze(graph_path, allow_empty)).to_dict()

            json_file = graph_file.replace(".graph", ".json")
            json_path = os.path.join(self.output.output_folder, json_file)
            with open(json_path, "w") as f:
                json.dump(envelope, f, sort_keys=True, ensure_ascii=False)

            self.log.info(f"Analyzed {graph_file}: {envelope['status']} (exit {envelope['exit_code']})")
