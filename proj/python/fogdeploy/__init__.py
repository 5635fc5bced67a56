# Copyright 2026 The fogdeploy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Fog/cloud placement simulator for serverless functions.

Buckets, configs and checkpoints are plain dicts in the documented JSON
shapes; the compiled core does the work.
"""

import json
from typing import Any, Dict, List, Optional, Tuple

from . import _core
from ._core import ConfigError, DomainError, SizeError

__all__ = [
    "ConfigError",
    "DomainError",
    "SizeError",
    "compare",
    "generate_bucket",
    "oracle",
    "place",
    "step_cost",
    "train",
    "validate_bucket",
]


def _dump(doc: Optional[Dict[str, Any]]) -> str:
    return "" if doc is None else json.dumps(doc)


def generate_bucket(config: Optional[Dict[str, Any]] = None,
                    total_functions: Optional[int] = None) -> Dict[str, Any]:
    """Generates a bucket from the config's generator section.

    With total_functions set, produces a sweep bucket of 10 SSRs.
    """
    return json.loads(_core.generate_bucket(_dump(config), total_functions))


def validate_bucket(bucket: Dict[str, Any]) -> List[str]:
    return _core.validate_bucket(json.dumps(bucket))


def place(bucket: Dict[str, Any], algorithm: str,
          checkpoint: Optional[Dict[str, Any]] = None, seed: int = 0) -> Dict[str, Any]:
    """Places a bucket with one algorithm; returns the placement and its report."""
    return json.loads(_core.place(json.dumps(bucket), algorithm, _dump(checkpoint), seed))


def oracle(bucket: Dict[str, Any]) -> Dict[str, Any]:
    return json.loads(_core.oracle(json.dumps(bucket)))


def step_cost(bucket: Dict[str, Any], ssr: int, index: int, side: str) -> float:
    return _core.step_cost(json.dumps(bucket), ssr, index, side)


def train(config: Dict[str, Any]) -> Tuple[Dict[str, Any], str]:
    """Trains an agent; returns the checkpoint and the training log CSV."""
    checkpoint, log = _core.train(json.dumps(config))
    return json.loads(checkpoint), log


def compare(config: Dict[str, Any],
            checkpoint: Optional[Dict[str, Any]] = None) -> Tuple[str, str]:
    """Runs the comparison sweep; returns the detail and mean CSV text."""
    return _core.compare(json.dumps(config), _dump(checkpoint))
