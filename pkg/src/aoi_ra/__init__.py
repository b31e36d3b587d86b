"""Age of Information and transmit power for slotted Aloha, frame slotted
Aloha and request-then-access random access."""

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
from aoi_ra.analytic import (
    InfiniteAoIError,
    Pmf,
    ProtocolReport,
    RtaMoments,
    fsa_report,
    fsa_success_prob,
    geometric_moments,
    occupancy_exactly_one,
    report,
    rta_d_pmf,
    rta_mf_pmf,
    rta_moments,
    rta_ms_pmf,
    rta_report,
    sa_report,
)
from aoi_ra.sim import (
    AoIStats,
    NoUpdateError,
    SimConfig,
    enumerate_request_phase,
    simulate,
)
from aoi_ra.optimizer import (
    FrontierPoint,
    InfeasibleBudgetError,
    SweepRow,
    frontier,
    min_aoi_given_power,
    min_aoi_unconstrained,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AoIStats",
    "FrontierPoint",
    "InfeasibleBudgetError",
    "InfiniteAoIError",
    "InvalidConfigError",
    "NoUpdateError",
    "PhyConfig",
    "Pmf",
    "Protocol",
    "ProtocolParams",
    "ProtocolReport",
    "RtaMoments",
    "SimConfig",
    "SweepRow",
    "TimingModel",
    "enumerate_request_phase",
    "frontier",
    "fsa_report",
    "fsa_success_prob",
    "geometric_moments",
    "min_aoi_given_power",
    "min_aoi_unconstrained",
    "occupancy_exactly_one",
    "packet_duration",
    "report",
    "request_duration",
    "rta_d_pmf",
    "rta_mf_pmf",
    "rta_moments",
    "rta_ms_pmf",
    "rta_report",
    "sa_report",
    "simulate",
    "sweep",
    "timing_for_payload",
]
