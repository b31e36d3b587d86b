"""Protocol parameters and the 802.11 OFDM timing model.

All durations are microseconds (floats).  Power is in units of the nominal
transmit power ``P``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping

SYMBOL_US = 4.0


class InvalidConfigError(ValueError):
    """Raised for non-physical timing or protocol parameters."""


class Protocol(str, enum.Enum):
    SA = "sa"
    FSA = "fsa"
    RTA = "rta"

    @classmethod
    def parse(cls, value: "Protocol | str") -> "Protocol":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidConfigError(f"unknown protocol {value!r}") from None


@dataclass(frozen=True)
class PhyConfig:
    """PHY constants.  Defaults are the 802.11a/g 6 Mbps values."""

    bitrate: float = 6.0  # bits per microsecond
    phy_header: float = 20.0
    mac_overhead_bits: float = 246.0
    signal_extension: float = 6.0
    request_frame_bits: float = 160.0
    symbol_alignment: bool = False

    def __post_init__(self) -> None:
        for name in ("bitrate", "phy_header", "mac_overhead_bits",
                     "signal_extension", "request_frame_bits"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidConfigError(f"{name} must be a positive number, got {value!r}")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "PhyConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidConfigError(f"unknown PhyConfig fields: {sorted(unknown)}")
        return cls(**dict(data))

    @classmethod
    def from_file(cls, path: str | Path) -> "PhyConfig":
        """Load from a ``.json`` or ``.toml`` file.

        A TOML file may hold the fields at top level or under a ``[phy]`` table.
        """
        path = Path(path)
        text = path.read_text()
        if path.suffix.lower() == ".toml":
            try:
                import tomllib
            except ModuleNotFoundError:  # python < 3.11
                import tomli as tomllib
            data = tomllib.loads(text)
        else:
            data = json.loads(text)
        if "phy" in data and isinstance(data["phy"], Mapping):
            data = data["phy"]
        return cls.from_mapping(data)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def with_overrides(self, **overrides: Any) -> "PhyConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _frame_duration(bits: float, phy: PhyConfig) -> float:
    airtime = bits / phy.bitrate
    if phy.symbol_alignment:
        # guard against 1270/24 style quotients landing a hair above an integer
        symbols = math.ceil(airtime / SYMBOL_US - 1e-9)
        airtime = symbols * SYMBOL_US
    return phy.phy_header + airtime + phy.signal_extension


def packet_duration(payload_bytes: int, phy: PhyConfig | None = None) -> float:
    """Airtime of an update packet carrying ``payload_bytes`` of payload."""
    phy = phy or PhyConfig()
    if payload_bytes < 1:
        raise InvalidConfigError(f"payload must be at least one byte, got {payload_bytes}")
    return _frame_duration(phy.mac_overhead_bits + 8 * payload_bytes, phy)


def request_duration(phy: PhyConfig | None = None) -> float:
    """Airtime of a request frame."""
    phy = phy or PhyConfig()
    return _frame_duration(phy.request_frame_bits, phy)


@dataclass(frozen=True)
class TimingModel:
    t_pk: float
    t_r: float

    def __post_init__(self) -> None:
        if not (self.t_pk > 0 and math.isfinite(self.t_pk)):
            raise InvalidConfigError(f"t_pk must be positive, got {self.t_pk!r}")
        if not (self.t_r >= 0 and math.isfinite(self.t_r)):
            raise InvalidConfigError(f"t_r must be non-negative, got {self.t_r!r}")

    @classmethod
    def normalized(cls, t_r: float = 0.0) -> "TimingModel":
        """Unit-length packets, time measured in slots."""
        return cls(t_pk=1.0, t_r=t_r)


def timing_for_payload(payload_bytes: int, phy: PhyConfig | None = None) -> TimingModel:
    phy = phy or PhyConfig()
    return TimingModel(t_pk=packet_duration(payload_bytes, phy), t_r=request_duration(phy))


@dataclass(frozen=True)
class ProtocolParams:
    """One operating point.  ``access_prob`` is q (SA), omega (FSA) or pi (RTA)."""

    protocol: Protocol
    n_sensors: int
    access_prob: float
    k: int = 1
    tx_power: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "protocol", Protocol.parse(self.protocol))
        if self.protocol is Protocol.SA:
            object.__setattr__(self, "k", 1)
        if int(self.n_sensors) != self.n_sensors or self.n_sensors < 1:
            raise InvalidConfigError(f"n_sensors must be a positive integer, got {self.n_sensors!r}")
        if int(self.k) != self.k or self.k < 1:
            raise InvalidConfigError(f"k must be a positive integer, got {self.k!r}")
        if not 0.0 <= self.access_prob <= 1.0:
            raise InvalidConfigError(f"access probability must lie in [0, 1], got {self.access_prob!r}")
        if not self.tx_power >= 0:
            raise InvalidConfigError(f"tx_power must be non-negative, got {self.tx_power!r}")
        object.__setattr__(self, "n_sensors", int(self.n_sensors))
        object.__setattr__(self, "k", int(self.k))
