"""Time grid for the DSME superframe structure.

Every duration in the simulator is an exact integer number of PHY symbols
(62500 symbols/s, i.e. 16 us each), so slot arithmetic never drifts.
"""

from __future__ import annotations

from dataclasses import dataclass

SYMBOL_RATE = 62_500            # symbols per second (O-QPSK 250 kb/s PHY)
BASE_SLOT_SYMBOLS = 60          # slot duration at superframe order 0
SLOTS_PER_SUPERFRAME = 16
BEACON_SLOT = 0
CAP_FIRST_SLOT = 1
CFP_FIRST_SLOT = 9
MAX_ORDER = 14


def symbols_to_seconds(symbols: float) -> float:
    return symbols / SYMBOL_RATE


def seconds_to_symbols(seconds: float) -> int:
    return round(seconds * SYMBOL_RATE)


@dataclass(frozen=True)
class SuperframeConfig:
    """DSME orders plus the fixed beacon/CAP/CFP slot split."""

    so: int
    mo: int
    bo: int
    gao: int = 0
    cap_slots: int = 8
    cfp_slots: int = 7
    channels: int = 16

    def __post_init__(self) -> None:
        if not (0 <= self.so <= self.mo <= self.bo <= MAX_ORDER):
            raise ValueError(
                f"orders must satisfy 0 <= SO <= MO <= BO <= {MAX_ORDER}, "
                f"got SO={self.so} MO={self.mo} BO={self.bo}"
            )
        if not 0 <= self.gao <= MAX_ORDER:
            raise ValueError(f"GAO out of range: {self.gao}")
        if self.cap_slots + self.cfp_slots + 1 != SLOTS_PER_SUPERFRAME:
            raise ValueError("beacon + CAP + CFP slots must total 16")
        if self.channels < 1:
            raise ValueError("need at least one channel")


@dataclass(frozen=True)
class SlotAddress:
    """Coordinates of one slot in the multisuperframe grid."""

    msf_index: int
    sf_index: int
    slot_index: int


def slot_duration_symbols(cfg: SuperframeConfig) -> int:
    return BASE_SLOT_SYMBOLS * 2 ** cfg.so


def superframe_duration_symbols(cfg: SuperframeConfig) -> int:
    return SLOTS_PER_SUPERFRAME * slot_duration_symbols(cfg)


def multisuperframe_duration_symbols(cfg: SuperframeConfig) -> int:
    return SLOTS_PER_SUPERFRAME * BASE_SLOT_SYMBOLS * 2 ** cfg.mo


def beacon_interval_symbols(cfg: SuperframeConfig) -> int:
    return SLOTS_PER_SUPERFRAME * BASE_SLOT_SYMBOLS * 2 ** cfg.bo


def superframes_per_msf(cfg: SuperframeConfig) -> int:
    return 2 ** (cfg.mo - cfg.so)


def superframes_per_beacon_interval(cfg: SuperframeConfig) -> int:
    return 2 ** (cfg.bo - cfg.so)


def gack_slots_per_msf(cfg: SuperframeConfig) -> int:
    if cfg.gao > cfg.mo:
        raise ValueError(f"GAO={cfg.gao} exceeds MO={cfg.mo}")
    return 2 ** (cfg.mo - cfg.gao)


def gack_interval_symbols(cfg: SuperframeConfig) -> int:
    """Spacing between consecutive group-ack slots of one coordinator."""
    return multisuperframe_duration_symbols(cfg) // gack_slots_per_msf(cfg)


def locate(symbol_time: int, cfg: SuperframeConfig) -> SlotAddress:
    """Map an absolute symbol time onto (msf, superframe, slot) indices."""
    if symbol_time < 0:
        raise ValueError("symbol_time must be non-negative")
    s_slot = slot_duration_symbols(cfg)
    s_sf = superframe_duration_symbols(cfg)
    s_msf = multisuperframe_duration_symbols(cfg)
    msf, rem = divmod(symbol_time, s_msf)
    sf, rem = divmod(rem, s_sf)
    slot = rem // s_slot
    return SlotAddress(msf, sf, slot)


def slot_start_symbols(addr: SlotAddress, cfg: SuperframeConfig) -> int:
    """Absolute start time of the slot at the given address."""
    return (
        addr.msf_index * multisuperframe_duration_symbols(cfg)
        + addr.sf_index * superframe_duration_symbols(cfg)
        + addr.slot_index * slot_duration_symbols(cfg)
    )
