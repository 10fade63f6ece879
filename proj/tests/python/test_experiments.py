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

import jsonschema
import pytest

import cflab

SMALL = [
    {"experiment": "expand", "rational": "7/22"},
    {"experiment": "exponent", "sampler": "golden", "horizon": 60, "series": True},
    {"experiment": "exponent", "sampler": "lebesgue", "horizon": 40, "replicas": 3, "seed": 4},
    {"experiment": "extravagance", "sampler": "uniform:1..10", "horizon": 200, "replicas": 2},
    {"experiment": "extravagance", "sampler": "geometric", "perturbation": "constant:1",
     "horizon": 200, "replicas": 2},
    {"experiment": "khinchin", "sampler": "lebesgue", "f": "1/(q*log(q)^2)", "horizon": 80,
     "replicas": 3, "seed": 7},
    {"experiment": "renyi-check", "max_prefix_len": 2, "max_digit": 3},
    {"experiment": "renyi-check", "max_prefix_len": 1, "max_digit": 3, "law": "geometric"},
    {"experiment": "dichotomy", "horizon": 300, "replicas": 2,
     "cases": [{"sampler": "uniform:1..10"}, {"sampler": "geometric"}]},
    {"experiment": "condensation", "law": "power:3", "horizon": 2000},
]


@pytest.mark.parametrize("config", SMALL, ids=lambda c: c["experiment"])
def test_report_validates_against_schema(config, report_schema):
    doc = cflab.run(config)
    tables = doc.pop("tables")
    assert tables
    jsonschema.validate(doc, report_schema)
    assert doc["config_hash"] == cflab.config_hash(config)


def test_golden_exponent_routes_near_two():
    doc = cflab.run({"experiment": "exponent", "sampler": "golden", "horizon": 200})
    est = doc["report"]["replicas"][0]["estimate"]
    for route in ("bugeaud", "digit", "direct"):
        assert abs(est[route]["estimate"] - 2) <= 0.05


def test_config_round_trip_is_identity():
    for config in SMALL:
        canon = cflab.canonical_config(config)
        assert cflab.canonical_config(canon) == canon


def test_unknown_key_rejected():
    with pytest.raises(cflab.ConfigError):
        cflab.run({"experiment": "expand", "rational": "1/3", "colour": "red"})


def test_bad_grammar_is_config_error():
    with pytest.raises(cflab.ConfigError):
        cflab.run({"experiment": "khinchin", "sampler": "lebesgue", "f": "1/(q*sin(q))"})


def test_parallelism_does_not_change_output():
    base = {"experiment": "khinchin", "sampler": "lebesgue", "f": "1/(q*log(q))",
            "horizon": 200, "replicas": 6, "seed": 3}
    one = cflab.run({**base, "jobs": 1})
    many = cflab.run({**base, "jobs": 4})
    assert one == many


def test_empty_hit_table_has_header_only():
    doc = cflab.run({"experiment": "khinchin", "sampler": "golden", "f": "1/(q^3)",
                     "divisor": "2*e^8", "horizon": 30})
    assert doc["tables"]["hits"].splitlines() == [
        "replica,n,p,q,gap_lo,gap_hi,threshold_lo,threshold_hi,convergent"
    ]
