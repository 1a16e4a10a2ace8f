import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binsim.accounting import Tariff
from binsim.config import dump_config, load_config, parse_config, parse_graph
from binsim.engine import SimConfig
from binsim.errors import ParseError, SchemaError
from binsim.world import EXPLICIT_EDGES, WorldConfig


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    cfg = load_config(path)
    assert cfg == SimConfig()
    assert cfg.world.bin_count == 25
    assert (cfg.bin_capacity, cfg.yellow_threshold, cfg.truck_capacity) == (25, 10, 100)
    assert cfg.tariff == Tariff(500, 0)


def test_threshold_above_capacity():
    with pytest.raises(SchemaError) as exc:
        parse_config("bin_capacity = 25\nyellow_threshold = 30\n")
    assert exc.value.key == "yellow_threshold"


def test_price_per_unit():
    assert parse_config("price_per_unit = 500").tariff.price_per_unit == 500


def test_unknown_key():
    with pytest.raises(SchemaError) as exc:
        parse_config("# comment\nbin_count = 3\ncolour = red\n")
    assert exc.value.key == "colour"
    assert "line 3" in str(exc.value)


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("ticks = 10\nthis is not a pair\n", 2),
        ("ticks = ten\n", 1),
        ("bounds = 1, 2, 3\n", 1),
        ("[graph]\n0 1\n", 2),
        ("[roads]\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as exc:
        parse_config(text)
    assert exc.value.lineno == lineno


def test_graph_section_with_labels():
    cfg = parse_config(
        "bin_count = 2\ngraph_mode = explicit-edge-list\n"
        "[graph]\nDEPOT B0 1.5\nB0 B1 2\nB1 DUMP 3  # trailing comment\n"
    )
    assert cfg.world.edges == ((3, 0, 1.5), (0, 1, 2.0), (1, 2, 3.0))


def test_full_round_trip():
    cfg = SimConfig(
        world=WorldConfig(
            bin_count=3,
            bounds=(-5, 5, -4, 4),
            dump_position=(5, 4),
            depot_position=(0.25, -1),
            graph_mode=EXPLICIT_EDGES,
            edges=[(4, 0, 1.0), (0, 1, 0.1), (1, 2, 2.0), (2, 3, 1 / 3)],
            bin_positions=[(1, 1), (2, 2), (3, 3)],
        ),
        bin_capacity=12,
        yellow_threshold=4,
        truck_count=2,
        truck_capacity=30,
        fill_rates=[0.1, 0.7, 1.0],
        tariff=Tariff(7, 11),
        dispatch_threshold=2,
        ticks=17,
        seed=123456789,
        citizen_step=0.3,
    )
    assert parse_config(dump_config(cfg)) == cfg


@settings(max_examples=100, deadline=None)
@given(
    st.integers(1, 25),
    st.integers(2, 40),
    st.data(),
)
def test_round_trip_property(bins, cap, data):
    cfg = SimConfig(
        world=WorldConfig(bin_count=bins),
        bin_capacity=cap,
        yellow_threshold=data.draw(st.integers(1, cap - 1)),
        truck_capacity=data.draw(st.integers(cap, 500)),
        fill_model=data.draw(st.sampled_from(["bernoulli", "deterministic"])),
        fill_rate_min=0.1,
        fill_rate_max=data.draw(st.floats(0.1, 1.0)),
        tariff=Tariff(data.draw(st.integers(0, 10_000)), data.draw(st.integers(0, 10_000))),
        seed=data.draw(st.integers(0, 2**64 - 1)),
        ticks=data.draw(st.integers(0, 5000)),
    )
    assert parse_config(dump_config(cfg)) == cfg
    assert parse_config(dump_config(dataclasses.replace(cfg, seed=1))).seed == 1


def test_parse_graph_complete_and_explicit():
    g = parse_graph("vertex M 0 0\nvertex O 9 0\nvertex X 12 12 dump\n")
    assert len(g.edges) == 3 and g.dump == 2 and g.depot is None
    g = parse_graph("[graph]\nvertex A 0 0 depot\nA B 2.5\nvertex B 1 1 dump\n")
    assert g.edges == ((0, 1, 2.5),) and (g.depot, g.dump) == (0, 1)


def test_parse_graph_errors():
    with pytest.raises(ParseError):
        parse_graph("vertex A 0 0\nvertex A 1 1\n")
    with pytest.raises(ParseError) as exc:
        parse_graph("vertex A 0 0\nA Z 1\n")
    assert exc.value.lineno == 2
    with pytest.raises(ParseError):
        parse_graph("")
