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

import logging
import os

import colorlog

LOGLEVEL = os.environ.get("GENIUS_RAAG_LOGLEVEL", "WARNING")
ROOT = "geniusrise_raag"


def setup_logger(name: str = ROOT) -> logging.Logger:
    """
    Return a logger under the `geniusrise_raag` namespace.

    The colored handler is attached once to the package root logger, every module logger
    propagates to it.
    """
    root = colorlog.getLogger(ROOT)
    if not root.handlers:
        handler = colorlog.StreamHandler()
        handler.setFormatter(
            colorlog.ColoredFormatter(
                "%(log_color)s%(levelname)-8s%(reset)s %(blue)s%(name)s%(reset)s %(message)s",
                log_colors={
                    "DEBUG": "cyan",
                    "INFO": "green",
                    "WARNING": "yellow",
                    "ERROR": "red",
                    "CRITICAL": "red,bg_white",
                },
            )
        )
        root.addHandler(handler)
        root.setLevel(LOGLEVEL)
        root.propagate = False
    return colorlog.getLogger(name)


def set_level(level: str) -> None:
    colorlog.getLogger(ROOT).setLevel(level)
