import json

import pytest
from hypothesis import given, strategies as st

from aoi_ra.model import (
    InvalidConfigError,
    PhyConfig,
    Protocol,
    ProtocolParams,
    TimingModel,
    packet_duration,
    request_duration,
    timing_for_payload,
)

ALIGNED = PhyConfig(symbol_alignment=True)


@pytest.mark.parametrize("payload, phy, expected", [
    (128, PhyConfig(), 20 + 1270 / 6 + 6),
    (128, ALIGNED, 238.0),
    (16, ALIGNED, 90.0),
    (64, PhyConfig(), 20 + 758 / 6 + 6),
    (16, PhyConfig(), 20 + 374 / 6 + 6),
])
def test_packet_duration_values(payload, phy, expected):
    assert packet_duration(payload, phy) == pytest.approx(expected, abs=1e-9)


def test_packet_duration_quoted_rounding():
    assert round(packet_duration(128), 2) == 237.67
    assert round(packet_duration(64), 2) == 152.33


@pytest.mark.parametrize("phy, expected", [
    (PhyConfig(), 20 + 160 / 6 + 6),
    (ALIGNED, 54.0),
    (PhyConfig(bitrate=12.0), 20 + 160 / 12 + 6),
])
def test_request_duration_values(phy, expected):
    assert request_duration(phy) == pytest.approx(expected, abs=1e-9)
    assert round(request_duration(PhyConfig(bitrate=12.0)), 2) == 39.33


@pytest.mark.parametrize("kwargs", [{"bitrate": 0}, {"bitrate": -6}, {"phy_header": 0},
                                    {"request_frame_bits": float("nan")}])
def test_phy_rejects_nonpositive(kwargs):
    with pytest.raises(InvalidConfigError):
        PhyConfig(**kwargs)


def test_zero_payload_rejected():
    with pytest.raises(InvalidConfigError):
        packet_duration(0)


@given(st.integers(1, 2000), st.booleans(), st.floats(1.0, 100.0))
def test_duration_increasing_and_aligned(payload, aligned, bitrate):
    phy = PhyConfig(bitrate=bitrate, symbol_alignment=aligned)
    a, b = packet_duration(payload, phy), packet_duration(payload + 1, phy)
    if aligned:
        assert b >= a
        body = a - phy.phy_header - phy.signal_extension
        assert body / 4 == pytest.approx(round(body / 4), abs=1e-9)
    else:
        assert b > a


def test_request_shorter_than_smallest_packet():
    assert request_duration() < packet_duration(16)
    assert request_duration(ALIGNED) < packet_duration(16, ALIGNED)


def test_timing_for_payload():
    t = timing_for_payload(128)
    assert t.t_pk == packet_duration(128) and t.t_r == request_duration()
    assert TimingModel.normalized() == TimingModel(1.0, 0.0)


@pytest.mark.parametrize("t_pk, t_r", [(0, 0), (-1, 0), (1, -0.5), (float("inf"), 0)])
def test_timing_rejects_bad_values(t_pk, t_r):
    with pytest.raises(InvalidConfigError):
        TimingModel(t_pk, t_r)


def test_phy_from_json_and_toml(tmp_path):
    j = tmp_path / "phy.json"
    j.write_text(json.dumps({"bitrate": 12, "symbol_alignment": True}))
    assert PhyConfig.from_file(j) == PhyConfig(bitrate=12, symbol_alignment=True)
    t = tmp_path / "phy.toml"
    t.write_text("[phy]\nbitrate = 24.0\n")
    assert PhyConfig.from_file(t).bitrate == 24.0
    with pytest.raises(InvalidConfigError):
        PhyConfig.from_mapping({"bitrat": 6})


def test_phy_overrides_roundtrip():
    phy = PhyConfig().with_overrides(bitrate=12.0, phy_header=None)
    assert phy.bitrate == 12.0 and phy.phy_header == 20.0
    assert PhyConfig.from_mapping(phy.to_dict()) == phy


def test_protocol_parse():
    assert Protocol.parse("RTA") is Protocol.RTA
    assert Protocol.parse(Protocol.SA) is Protocol.SA
    with pytest.raises(InvalidConfigError):
        Protocol.parse("csma")


def test_protocol_params_validation():
    assert ProtocolParams("sa", 10, 0.1, k=7).k == 1
    assert ProtocolParams("fsa", 10, 0.5, k=5).k == 5
    for bad in [dict(n_sensors=0), dict(access_prob=1.5), dict(access_prob=-0.1), dict(k=0), dict(tx_power=-1)]:
        kwargs = dict(protocol="fsa", n_sensors=10, access_prob=0.5, k=5) | bad
        with pytest.raises(InvalidConfigError):
            ProtocolParams(**kwargs)
