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

import base64
from typing import Any, Dict, Optional

import cherrypy
from geniusrise import BatchInput, BatchOutput, Bolt, State
from geniusrise.logging import setup_logger

from geniusrise_raag.errors import Exhausted, RAAGError
from geniusrise_raag.graphs.core import parse_graph
from geniusrise_raag.graphs.obstruction import separability_verdict
from geniusrise_raag.groups.coset import DEFAULT_MAX_COSETS
from geniusrise_raag.groups.michailova import ToddCoxeterOracle, lh_contains, parse_pair, parse_presentation
from geniusrise_raag.groups.words import format_word, normal_form, parse_word, words_equal


class RAAGAPI(Bolt):
    def __init__(self, input: BatchInput, output: BatchOutput, state: State, **kwargs) -> None:
        r"""
        The `RAAGAPI` class serves the separability verdict, the RAAG word problem and L_H membership over HTTP.
        Endpoints live under `/api/v1/raag/` and take a POST request with a JSON payload:

        - `analyze`: `{"graph": "a b\nb c", "allow_empty": false}` returns the verdict with its certificate.
        - `equal`: `{"graph": "...", "w1": "a b", "w2": "b a"}` returns `{"equal": true, "normal_forms": [...]}`.
        - `michailova`: `{"presentation": "gens: x\nx^3", "pair": "1 | x^3"}` returns `{"member": true, ...}`.

        Malformed input answers 400, an enumeration that does not close answers 422.

        Args:
            input (BatchInput): Instance of BatchInput for reading data.
            output (BatchOutput): Instance of BatchOutput for saving data.
            state (State): Instance of State for maintaining state.
            **kwargs: Additional keyword arguments.

        ## Command Line Invocation with geniusrise
        ```bash
        genius RAAGAPI rise \
            batch \
                --bucket my_bucket \
                --s3_folder s3/input \
            batch \
                --bucket my_bucket \
                --s3_folder s3/output \
            none \
            listen \
                --args endpoint=* port=3000 cors_domain=*
        ```

        ### API Example
        ```bash
        curl -X POST "http://localhost:3000/api/v1/raag/analyze" -H "Content-Type: application/json" -d '{"graph": "a b\nb c\nc d"}'
        ```
        """
        super().__init__(input, output, state, **kwargs)
        self.log = setup_logger(self.state)

    def analyze_payload(self, data: Dict[str, Any]) -> Dict[str, Any]:
        g = parse_graph(data.get("graph", ""), allow_empty=bool(data.get("allow_empty", False)))
        return separability_verdict(g).to_dict()

    def equal_payload(self, data: Dict[str, Any]) -> Dict[str, Any]:
        g = parse_graph(data.get("graph", ""))
        w1, w2 = parse_word(data.get("w1", "1")), parse_word(data.get("w2", "1"))
        return {
            "equal": words_equal(g, w1, w2),
            "normal_forms": [format_word(normal_form(g, w1)), format_word(normal_form(g, w2))],
        }

    def michailova_payload(self, data: Dict[str, Any]) -> Dict[str, Any]:
        h = parse_presentation(data.get("presentation", ""))
        p = parse_pair(data.get("pair", ""))
        oracle = ToddCoxeterOracle(h, max_cosets=data.get("max_cosets", DEFAULT_MAX_COSETS))
        return {"pair": str(p), "member": lh_contains(h, p, oracle), "order": oracle.table.order}

    def _answer(self, handler, username: Optional[str], password: Optional[str]) -> Dict[str, Any]:
        if username and password:
            self._check_auth(username=username, password=password)
        try:
            result = handler(cherrypy.request.json)
        except Exhausted as e:
            raise cherrypy.HTTPError(422, str(e))
        except RAAGError as e:
            raise cherrypy.HTTPError(400, str(e))
        self.log.info(f"Answered {cherrypy.request.path_info}")
        return result

    @cherrypy.expose
    @cherrypy.tools.json_in()
    @cherrypy.tools.json_out()
    @cherrypy.tools.allow(methods=["POST"])
    def analyze(self, username: Optional[str] = None, password: Optional[str] = None) -> Dict[str, Any]:
        return self._answer(self.analyze_payload, username, password)

    @cherrypy.expose
    @cherrypy.tools.json_in()
    @cherrypy.tools.json_out()
    @cherrypy.tools.allow(methods=["POST"])
    def equal(self, username: Optional[str] = None, password: Optional[str] = None) -> Dict[str, Any]:
        return self._answer(self.equal_payload, username, password)

    @cherrypy.expose
    @cherrypy.tools.json_in()
    @cherrypy.tools.json_out()
    @cherrypy.tools.allow(methods=["POST"])
    def michailova(self, username: Optional[str] = None, password: Optional[str] = None) -> Dict[str, Any]:
        return self._answer(self.michailova_payload, username, password)

    def _check_auth(self, username: str, password: str) -> None:
        auth_header = cherrypy.request.headers.get("Authorization")
        if auth_header:
            auth_decoded = base64.b64decode(auth_header[6:]).decode("utf-8")
            provided_username, provided_password = auth_decoded.split(":", 1)
            if provided_username != username or provided_password != password:
                raise cherrypy.HTTPError(401, "Unauthorized")
        else:
            raise cherrypy.HTTPError(401, "Unauthorized")

    def listen(
        self,
        endpoint: str = "*",
        port: int = 3000,
        cors_domain: str = "http://localhost:3000",
        **kwargs,
    ) -> None:
        def CORS():
            cherrypy.response.headers["Access-Control-Allow-Origin"] = cors_domain
            cherrypy.response.headers["Access-Control-Allow-Methods"] = "GET, POST, PUT, DELETE, OPTIONS"
            cherrypy.response.headers["Access-Control-Allow-Headers"] = "Content-Type"
            cherrypy.response.headers["Access-Control-Allow-Credentials"] = "true"

            if cherrypy.request.method == "OPTIONS":
                cherrypy.response.status = 200
                return True

        cherrypy.config.update(
            {
                "server.socket_host": "0.0.0.0",
                "server.socket_port": port,
                "log.screen": False,
                "tools.CORS.on": True,
            }
        )

        cherrypy.tools.CORS = cherrypy.Tool("before_handler", CORS)
        cherrypy.tree.mount(self, "/api/v1/raag/", {"/": {"tools.CORS.on": True}})
        cherrypy.tools.CORS = cherrypy.Tool("before_finalize", CORS)
        self.log.info(f"Listening on port {port}")
        cherrypy.engine.start()
        cherrypy.engine.block()
