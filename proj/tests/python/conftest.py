# Copyright 2026 The cflab Authors
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

import json
import os
import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]

# ctest points CFLAB_PYTHONPATH at the in-tree extension; otherwise the
# installed package is used.
if os.environ.get("CFLAB_PYTHONPATH"):
    sys.path.insert(0, os.environ["CFLAB_PYTHONPATH"])


@pytest.fixture(scope="session")
def report_schema():
    with open(ROOT / "schemas" / "report.schema.json") as f:
        return json.load(f)
