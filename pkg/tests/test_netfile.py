import json

import numpy as np
import pytest

from muxdyn import (
    NetworkFormatError,
    fixture_path,
    load_network,
    parse_network,
    save_network,
    validate_assumptions,
)
from muxdyn.netfile import network_to_dict

from conftest import random_valid_network


def minimal_doc():
    return {
        "agents": ["A", "B"],
        "layers": [
            [{"source": "A", "target": "A"}, {"source": "A", "target": "B"}],
            [{"source": "A", "target": "A"}, {"source": "B", "target": "B"}],
        ],
        "initial_opinions": {"A": 4.0, "B": 2.0},
    }


class TestParse:
    def test_minimal_document(self):
        net, x0 = parse_network(minimal_doc())
        assert net.labels == ("A", "B")
        assert net.activation_period == 2
        assert np.array_equal(x0, [4.0, 2.0])

    def test_missing_opinion_names_the_agent(self):
        doc = minimal_doc()
        del doc["initial_opinions"]["B"]
        with pytest.raises(NetworkFormatError, match="missing opinion for 'B'"):
            parse_network(doc)

    def test_unknown_agent_in_opinions(self):
        doc = minimal_doc()
        doc["initial_opinions"]["Z"] = 1.0
        with pytest.raises(NetworkFormatError, match="unknown agent 'Z'"):
            parse_network(doc)

    def test_opinion_out_of_range(self):
        doc = minimal_doc()
        doc["initial_opinions"]["A"] = -0.5
        with pytest.raises(NetworkFormatError, match=r"initial_opinions\.A"):
            parse_network(doc)

    def test_boolean_opinion_rejected(self):
        doc = minimal_doc()
        doc["initial_opinions"]["A"] = True
        with pytest.raises(NetworkFormatError, match="expected a number"):
            parse_network(doc)

    def test_layers_must_be_exactly_two(self):
        doc = minimal_doc()
        doc["layers"].append([])
        with pytest.raises(NetworkFormatError, match="exactly 2"):
            parse_network(doc)

    def test_edge_with_undeclared_endpoint(self):
        doc = minimal_doc()
        doc["layers"][0].append({"source": "A", "target": "Q"})
        with pytest.raises(NetworkFormatError, match=r"layers\[0\]\[2\]\.target"):
            parse_network(doc)

    def test_edge_shape_enforced(self):
        doc = minimal_doc()
        doc["layers"][1][0] = {"from": "A", "to": "A"}
        with pytest.raises(NetworkFormatError, match="'source' and 'target'"):
            parse_network(doc)

    def test_duplicate_agents(self):
        doc = minimal_doc()
        doc["agents"] = ["A", "A"]
        with pytest.raises(NetworkFormatError, match="unique"):
            parse_network(doc)

    def test_bad_activation_period(self):
        doc = minimal_doc()
        doc["activation_period"] = 1
        with pytest.raises(NetworkFormatError, match="activation_period"):
            parse_network(doc)

    def test_non_object_top_level(self):
        with pytest.raises(NetworkFormatError, match="top level"):
            parse_network([1, 2, 3])


class TestFiles:
    def test_malformed_json_reports_position(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"agents": ["A"],\n  "layers"')
        with pytest.raises(NetworkFormatError, match="line 2"):
            load_network(bad)

    def test_missing_file(self, tmp_path):
        with pytest.raises(NetworkFormatError, match="cannot read"):
            load_network(tmp_path / "absent.json")

    def test_save_and_load_round_trip(self, tmp_path):
        net, x0 = parse_network(minimal_doc())
        out = tmp_path / "net.json"
        save_network(out, net, x0)
        net2, x2 = load_network(out)
        assert net2.labels == net.labels
        assert net2.layer1.edges == net.layer1.edges
        assert net2.layer2.edges == net.layer2.edges
        assert np.array_equal(x2, x0)

    def test_serialized_edges_are_sorted(self):
        net, x0 = parse_network(minimal_doc())
        doc = network_to_dict(net, x0)
        for layer in doc["layers"]:
            pairs = [(e["source"], e["target"]) for e in layer]
            assert pairs == sorted(pairs)

    def test_round_trip_random_networks(self, tmp_path):
        rng = np.random.default_rng(17)
        for k in range(10):
            net, x0 = random_valid_network(rng)
            out = tmp_path / f"net{k}.json"
            save_network(out, net, x0)
            net2, x2 = load_network(out)
            assert net2.layer1.edges == net.layer1.edges
            assert net2.layer2.edges == net.layer2.edges
            assert net2.activation_period == net.activation_period
            assert np.array_equal(x2, x0)


class TestShippedFixtures:
    @pytest.mark.parametrize("name", ["leader-net", "cycle-net"])
    def test_fixture_loads_and_validates(self, name):
        net, x0 = load_network(fixture_path(name))
        assert net.n == 9
        assert validate_assumptions(net).ok
        assert np.array_equal(
            x0, [4.74, 0.11, 1.14, 3.39, 1.16, 2.36, 0.47, 2.23, 4.92]
        )

    def test_fixture_path_rejects_unknown_names(self):
        with pytest.raises(KeyError):
            fixture_path("missing-net")

    def test_suffix_is_optional(self):
        assert fixture_path("cycle-net.json") == fixture_path("cycle-net")
