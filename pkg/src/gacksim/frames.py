"""Frame kinds, symbol-accurate airtimes and the group-ack bitmap codec.

Wire contract for the group-ack body (bit-exact, golden-tested):

    [count:1] then per payload [addr:2 LE][bitmap_len:1][base_seq:1][bitmap:N]

Bit 0 of a bitmap is the most significant bit of its first octet and
acknowledges sequence number base_seq; bit i acknowledges
(base_seq + i) mod 256.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

MAX_PAYLOAD_BYTES = 116
BROADCAST = 0xFFFF
SEQ_MODULUS = 256

HEADER_SYMBOLS = 34             # PHY+MAC header overhead of any frame
SYMBOLS_PER_BYTE = 2
AIFS_SYMBOLS = 12               # turnaround before an acknowledgment
ACK_AIRTIME_SYMBOLS = 22        # ack frame on air; ack + AIFS = 34 symbols
TURNAROUND_SYMBOLS = 12
SIFS_SYMBOLS = 12
LIFS_SYMBOLS = 40
SIFS_MAX_PAYLOAD = 18           # payloads above this take the long IFS
ACK_WAIT_SYMBOLS = 54           # macAckMaxWaitDuration
CONTROL_BODY_BYTES = 23         # fixed body size assumed for mgmt frames


class FrameKind(Enum):
    DATA = "data"
    ACK = "ack"
    GACK = "gack"
    BEACON = "beacon"
    GTS_REQUEST = "gts_request"
    GTS_RESPONSE = "gts_response"
    GTS_NOTIFY = "gts_notify"
    GTS_CHANGE = "gts_change"


class GackCodecError(ValueError):
    """Base class for malformed group-ack bodies."""


class GackTruncated(GackCodecError):
    """Input octets end in the middle of a declared payload."""


class GackCountMismatch(GackCodecError):
    """Trailing octets remain after the declared payload count."""


@dataclass(frozen=True)
class GackPayload:
    """Acknowledgment record for one source node."""

    node_addr: int
    base_seq: int
    bitmap: bytes

    def __post_init__(self) -> None:
        if not 0 <= self.node_addr <= 0xFFFF:
            raise ValueError(f"node_addr out of range: {self.node_addr}")
        if not 0 <= self.base_seq < SEQ_MODULUS:
            raise ValueError(f"base_seq out of range: {self.base_seq}")
        if not 1 <= len(self.bitmap) <= 255:
            raise ValueError("bitmap length must be 1..255 octets")

    @property
    def bitmap_len(self) -> int:
        return len(self.bitmap)

    def encoded_size(self) -> int:
        return 4 + len(self.bitmap)


@dataclass(frozen=True)
class GackBody:
    """Ordered collection of per-source payloads inside one group ack."""

    payloads: tuple[GackPayload, ...] = ()

    def __post_init__(self) -> None:
        if len(self.payloads) > 255:
            raise ValueError("at most 255 payloads per group ack")

    def encoded_size(self) -> int:
        return 1 + sum(p.encoded_size() for p in self.payloads)


def encode_gack(body: GackBody) -> bytes:
    out = bytearray([len(body.payloads)])
    for p in body.payloads:
        out += p.node_addr.to_bytes(2, "little")
        out.append(p.bitmap_len)
        out.append(p.base_seq)
        out += p.bitmap
    return bytes(out)


def decode_gack(octets: bytes) -> GackBody:
    if len(octets) < 1:
        raise GackTruncated("empty input")
    count = octets[0]
    pos = 1
    payloads = []
    for _ in range(count):
        if len(octets) < pos + 4:
            raise GackTruncated(f"payload header cut short at octet {pos}")
        addr = int.from_bytes(octets[pos:pos + 2], "little")
        bitmap_len = octets[pos + 2]
        base_seq = octets[pos + 3]
        if bitmap_len == 0:
            raise GackCodecError("bitmap length of zero")
        pos += 4
        if len(octets) < pos + bitmap_len:
            raise GackTruncated(f"bitmap cut short at octet {pos}")
        payloads.append(GackPayload(addr, base_seq, bytes(octets[pos:pos + bitmap_len])))
        pos += bitmap_len
    if pos != len(octets):
        raise GackCountMismatch(f"{len(octets) - pos} trailing octets")
    return GackBody(tuple(payloads))


def acked_set(p: GackPayload) -> set[int]:
    """Sequence numbers acknowledged by one payload's bitmap."""
    acked = set()
    for i in range(8 * len(p.bitmap)):
        if p.bitmap[i // 8] & (0x80 >> (i % 8)):
            acked.add((p.base_seq + i) % SEQ_MODULUS)
    return acked


def bitmap_window(p: GackPayload) -> set[int]:
    """All sequence numbers covered by the bitmap, acked or not."""
    return {(p.base_seq + i) % SEQ_MODULUS for i in range(8 * len(p.bitmap))}


def ifs_symbols(payload_len: int) -> int:
    if not 0 <= payload_len <= MAX_PAYLOAD_BYTES:
        raise ValueError(f"payload length out of range: {payload_len}")
    return SIFS_SYMBOLS if payload_len <= SIFS_MAX_PAYLOAD else LIFS_SYMBOLS


def data_airtime_symbols(payload_len: int) -> int:
    if not 0 <= payload_len <= MAX_PAYLOAD_BYTES:
        raise ValueError(f"payload length out of range: {payload_len}")
    return HEADER_SYMBOLS + SYMBOLS_PER_BYTE * payload_len


def gack_airtime_symbols(body: GackBody) -> int:
    return HEADER_SYMBOLS + SYMBOLS_PER_BYTE * body.encoded_size()


def control_airtime_symbols() -> int:
    return HEADER_SYMBOLS + SYMBOLS_PER_BYTE * CONTROL_BODY_BYTES


@dataclass
class Frame:
    """One on-air frame; `payload` optionally carries a simulator packet."""

    kind: FrameKind
    src: int
    dst: int
    seq: int = 0
    payload_len: int = 0
    gack_body: GackBody | None = None
    handshake: object | None = None
    payload: object | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.payload_len <= MAX_PAYLOAD_BYTES:
            raise ValueError(f"payload length out of range: {self.payload_len}")
        if self.kind is FrameKind.ACK and self.payload_len != 0:
            raise ValueError("ack frames carry no payload")
        if self.kind is FrameKind.GACK and self.dst != BROADCAST:
            raise ValueError("group acks are broadcast")


def airtime_symbols(frame: Frame) -> int:
    """On-air duration of a frame in symbols (no IFS, no turnaround)."""
    if frame.kind is FrameKind.DATA:
        return data_airtime_symbols(frame.payload_len)
    if frame.kind is FrameKind.ACK:
        return ACK_AIRTIME_SYMBOLS
    if frame.kind is FrameKind.GACK:
        return gack_airtime_symbols(frame.gack_body or GackBody())
    if frame.kind is FrameKind.BEACON:
        extra = frame.gack_body.encoded_size() if frame.gack_body else 0
        return control_airtime_symbols() + SYMBOLS_PER_BYTE * extra
    return control_airtime_symbols()


def regular_cycle_symbols(payload_len: int) -> int:
    """Per-packet cost with a per-frame acknowledgment: data+AIFS+ack+IFS."""
    return (
        data_airtime_symbols(payload_len)
        + AIFS_SYMBOLS
        + ACK_AIRTIME_SYMBOLS
        + ifs_symbols(payload_len)
    )


def gack_cycle_symbols(payload_len: int) -> int:
    """Per-packet cost when acks are grouped: data plus a shortened gap."""
    return (
        data_airtime_symbols(payload_len)
        + ifs_symbols(payload_len)
        - TURNAROUND_SYMBOLS
    )
