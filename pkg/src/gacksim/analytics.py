"""Closed-form maximum throughput and goodput of the acknowledgment schemes.

All arithmetic is exact (integers and fractions); the division by the
superframe duration happens last so no rounding creeps in.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .frames import (
    ACK_AIRTIME_SYMBOLS,
    AIFS_SYMBOLS,
    HEADER_SYMBOLS,
    MAX_PAYLOAD_BYTES,
    TURNAROUND_SYMBOLS,
    gack_cycle_symbols,
    ifs_symbols,
    regular_cycle_symbols,
)
from .timing import SYMBOL_RATE, SuperframeConfig, slot_duration_symbols

GTS_PER_SUPERFRAME = 7
S_ACK_TOTAL = ACK_AIRTIME_SYMBOLS + AIFS_SYMBOLS  # 34: ack frame plus AIFS


class TheoryScheme(Enum):
    REGULAR = "ack"
    GACK = "gack"
    GACK_IEEE = "gack-ieee"


@dataclass(frozen=True)
class TheoryInput:
    scheme: TheoryScheme
    so: int
    mo: int
    p: int

    def __post_init__(self) -> None:
        if not self.so <= self.mo:
            raise ValueError("SO must not exceed MO")
        if not 1 <= self.p <= MAX_PAYLOAD_BYTES:
            raise ValueError(f"payload out of range: {self.p}")


def cycle_symbols(scheme: TheoryScheme, p: int) -> int:
    """Symbols consumed per data packet under the given scheme."""
    if scheme is TheoryScheme.REGULAR:
        return regular_cycle_symbols(p)
    return gack_cycle_symbols(p)


def packets_per_gts(scheme: TheoryScheme, so: int, p: int) -> int:
    return slot_duration_symbols(_cfg(so)) // cycle_symbols(scheme, p)


def _cfg(so: int, mo: int | None = None) -> SuperframeConfig:
    mo = so if mo is None else mo
    return SuperframeConfig(so=so, mo=mo, bo=mo)


def _data_gts_per_superframe(scheme: TheoryScheme, so: int, mo: int) -> Fraction:
    """Usable data slots per superframe; fractional for the 2012 variant.

    The 2012 scheme reserves two slots per multisuperframe for its two
    group-ack frames and pairs every data slot with a retransmission slot,
    halving what remains.
    """
    if scheme is TheoryScheme.GACK_IEEE:
        sfs = 2 ** (mo - so)
        return Fraction(GTS_PER_SUPERFRAME * sfs - 2, 2 * sfs)
    return Fraction(GTS_PER_SUPERFRAME)


def max_throughput(inp: TheoryInput) -> Fraction:
    """Expected maximum throughput in packets per second."""
    s_gts = slot_duration_symbols(_cfg(inp.so, inp.mo))
    s_sf = 16 * s_gts
    per_gts = s_gts // cycle_symbols(inp.scheme, inp.p)
    gts = _data_gts_per_superframe(inp.scheme, inp.so, inp.mo)
    return Fraction(SYMBOL_RATE, s_sf) * gts * per_gts


def _goodput_per_gts(scheme: TheoryScheme, so: int) -> Fraction:
    """Application bytes per slot: full-size packets plus one remainder."""
    s_gts = slot_duration_symbols(_cfg(so))
    cycle = cycle_symbols(scheme, MAX_PAYLOAD_BYTES)
    if scheme is TheoryScheme.REGULAR:
        fixed = HEADER_SYMBOLS + S_ACK_TOTAL + ifs_symbols(MAX_PAYLOAD_BYTES)
    else:
        fixed = HEADER_SYMBOLS + ifs_symbols(MAX_PAYLOAD_BYTES) - TURNAROUND_SYMBOLS
    full = MAX_PAYLOAD_BYTES * (s_gts // cycle)
    remainder = Fraction(s_gts % cycle - fixed, 2)
    return full + max(Fraction(0), remainder)


def max_goodput(scheme: TheoryScheme, so: int, mo: int) -> Fraction:
    """Expected maximum goodput in bytes per second."""
    s_sf = 16 * slot_duration_symbols(_cfg(so, mo))
    gts = _data_gts_per_superframe(scheme, so, mo)
    return Fraction(SYMBOL_RATE, s_sf) * gts * _goodput_per_gts(scheme, so)


def greedy_slot_packer(scheme: TheoryScheme, so: int, p: int) -> int:
    """Independent oracle: walk the slot timeline segment by segment.

    Lays [data, AIFS, ack, IFS] or [data, gap] sequences into the slot one
    symbol-accurate segment at a time and counts complete data packets.
    """
    s_gts = slot_duration_symbols(_cfg(so))
    cursor = 0
    count = 0
    while True:
        segments = [HEADER_SYMBOLS + 2 * p]
        if scheme is TheoryScheme.REGULAR:
            segments += [AIFS_SYMBOLS, ACK_AIRTIME_SYMBOLS, ifs_symbols(p)]
        else:
            segments += [ifs_symbols(p) - TURNAROUND_SYMBOLS]
        if cursor + sum(segments) > s_gts:
            return count
        for seg in segments:
            cursor += seg
        count += 1


DEFAULT_PAYLOAD_GRID = (1, 25, 50, 75, 100, 116)
DEFAULT_SO_GRID = (3, 4, 5, 6, 7, 8)
CSV_HEADER = ("scheme", "so", "mo", "p", "packets_per_s", "goodput_Bps")


def default_inputs(mo: int = 8) -> list[TheoryInput]:
    inputs = []
    for scheme in TheoryScheme:
        for so in DEFAULT_SO_GRID:
            for p in DEFAULT_PAYLOAD_GRID:
                inputs.append(TheoryInput(scheme, so, min(mo, 14), p))
    return inputs


def sweep(inputs: list[TheoryInput] | None = None) -> str:
    """CSV with one throughput/goodput row per input."""
    if inputs is None:
        inputs = default_inputs()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for inp in inputs:
        writer.writerow([
            inp.scheme.value,
            inp.so,
            inp.mo,
            inp.p,
            f"{float(max_throughput(inp)):.6f}",
            f"{float(max_goodput(inp.scheme, inp.so, inp.mo)):.6f}",
        ])
    return buf.getvalue()
