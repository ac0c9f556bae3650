"""Deterministic discrete-event engine with a multichannel radio model.

Reachability is an explicit adjacency relation; reception is all-or-nothing
per receiver: a frame arrives intact only if the receiver listened on the
right channel for the whole airtime and no other in-range transmission or
jam burst overlapped any part of it.  Equal-time events dispatch in
scheduling order, so identical (config, seed) runs replay identically.
"""

from __future__ import annotations

import hashlib
import heapq
import random
from dataclasses import dataclass, field
from enum import Enum

from .frames import Frame, airtime_symbols


class BusyRadio(RuntimeError):
    """Raised when a node starts a transmission while already transmitting."""


class RadioState(Enum):
    OFF = "off"
    LISTEN = "listen"
    TX = "tx"


@dataclass
class RadioLedger:
    """Cumulative symbols a node spent in each radio state."""

    tx: int = 0
    rx: int = 0
    idle: int = 0
    off: int = 0

    def total(self) -> int:
        return self.tx + self.rx + self.idle + self.off


@dataclass
class _Radio:
    state: RadioState = RadioState.OFF
    channel: int = -1
    since: int = 0
    listen_since: int = -1
    rx_credit: int = 0
    ledger: RadioLedger = field(default_factory=RadioLedger)


@dataclass
class _TxRecord:
    src: int
    frame: Frame
    channel: int
    start: int
    end: int


def derive_seed(*parts) -> int:
    """Stable cross-process seed from arbitrary labels (no str hashing)."""
    text = ":".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big")


class Kernel:
    """Single-threaded event loop owning all radios of one replication."""

    def __init__(self, seed: int = 0):
        self.now = 0
        self.seed = seed
        self._heap: list[tuple[int, int, object]] = []
        self._seqno = 0
        self._radios: dict[int, _Radio] = {}
        self._macs: dict[int, object] = {}
        self._neighbors: dict[int, tuple[int, ...]] = {}
        self._records: list[_TxRecord] = []
        self._jams: list[tuple[int, int]] = []
        self._jam_conf: tuple[int, int] | None = None
        self._rngs: dict[tuple[int, str], random.Random] = {}
        self.drop_filter = None      # optional fn(src, dst, frame) -> bool, True drops
        self.dispatched = 0

    # ------------------------------------------------------------------ nodes

    def add_node(self, node_id: int, mac, neighbors) -> None:
        self._radios[node_id] = _Radio()
        self._macs[node_id] = mac
        self._neighbors[node_id] = tuple(sorted(neighbors))

    def neighbors(self, node_id: int) -> tuple[int, ...]:
        return self._neighbors[node_id]

    def rng(self, node_id: int, stream: str) -> random.Random:
        key = (node_id, stream)
        if key not in self._rngs:
            self._rngs[key] = random.Random(derive_seed(self.seed, node_id, stream))
        return self._rngs[key]

    # ----------------------------------------------------------------- events

    def schedule(self, time: int, fn, kind: str = "") -> None:
        if time < self.now:
            raise ValueError(f"event in the past: {time} < {self.now}")
        heapq.heappush(self._heap, (time, self._seqno, fn))
        self._seqno += 1

    def run_until(self, t_end: int) -> None:
        while self._heap and self._heap[0][0] < t_end:
            time, _, fn = heapq.heappop(self._heap)
            self.now = time
            self.dispatched += 1
            fn(time)
        self.now = max(self.now, t_end)

    # ------------------------------------------------------------------ radio

    def _flush_state(self, radio: _Radio) -> None:
        elapsed = self.now - radio.since
        if elapsed <= 0:
            radio.since = self.now
            return
        if radio.state is RadioState.TX:
            radio.ledger.tx += elapsed
        elif radio.state is RadioState.LISTEN:
            credit = min(radio.rx_credit, elapsed)
            radio.ledger.rx += credit
            radio.ledger.idle += elapsed - credit
        else:
            radio.ledger.off += elapsed
        radio.rx_credit = 0
        radio.since = self.now

    def set_listen(self, node_id: int, channel: int) -> None:
        radio = self._radios[node_id]
        if radio.state is RadioState.LISTEN and radio.channel == channel:
            return
        self._flush_state(radio)
        radio.state = RadioState.LISTEN
        radio.channel = channel
        radio.listen_since = self.now

    def set_off(self, node_id: int) -> None:
        radio = self._radios[node_id]
        if radio.state is RadioState.OFF:
            return
        self._flush_state(radio)
        radio.state = RadioState.OFF
        radio.channel = -1
        radio.listen_since = -1

    def radio_state(self, node_id: int) -> RadioState:
        return self._radios[node_id].state

    def ledger(self, node_id: int) -> RadioLedger:
        return self._radios[node_id].ledger

    def finalize_ledgers(self) -> None:
        for radio in self._radios.values():
            self._flush_state(radio)

    # ------------------------------------------------------------- the medium

    def transmit(self, node_id: int, frame: Frame, channel: int) -> int:
        """Put a frame on the air; returns its end time."""
        radio = self._radios[node_id]
        if radio.state is RadioState.TX:
            raise BusyRadio(f"node {node_id} already transmitting")
        prior = (radio.state, radio.channel)
        self._flush_state(radio)
        radio.state = RadioState.TX
        radio.listen_since = -1
        end = self.now + airtime_symbols(frame)
        record = _TxRecord(node_id, frame, channel, self.now, end)
        self._records.append(record)
        self.schedule(end, lambda _t, r=record, p=prior: self._tx_end(r, p), "TxEnd")
        return end

    def _tx_end(self, record: _TxRecord, prior: tuple[RadioState, int]) -> None:
        radio = self._radios[record.src]
        self._flush_state(radio)
        if prior[0] is RadioState.LISTEN:
            radio.state = RadioState.LISTEN
            radio.channel = prior[1]
            radio.listen_since = self.now
        else:
            radio.state = RadioState.OFF
            radio.channel = -1
        self._deliver(record)
        self._prune(record)

    def _deliver(self, record: _TxRecord) -> None:
        for v in self._neighbors[record.src]:
            radio = self._radios[v]
            if radio.state is not RadioState.LISTEN:
                continue
            if radio.channel != record.channel:
                continue
            if radio.listen_since < 0 or radio.listen_since > record.start:
                continue
            if self._interfered(record, v) or self._jammed(record.start, record.end):
                continue
            if self.drop_filter and self.drop_filter(record.src, v, record.frame):
                continue
            radio.rx_credit += record.end - record.start
            self._macs[v].on_frame(record.frame, self.now)

    def _interfered(self, record: _TxRecord, receiver: int) -> bool:
        hood = self._neighbors[receiver]
        for other in self._records:
            if other is record:
                continue
            if other.channel != record.channel:
                continue
            if other.start >= record.end or other.end <= record.start:
                continue
            if other.src in hood:
                return True
        return False

    def _jammed(self, start: int, end: int) -> bool:
        return any(js < end and je > start for js, je in self._jams)

    def _prune(self, done: _TxRecord) -> None:
        # Records ending right now may still be awaiting their own delivery
        # check, so anything overlapping them must stay visible.
        self._records.remove(done)
        horizon = min((r.start for r in self._records if r.end >= self.now),
                      default=self.now)
        self._records = [r for r in self._records if r.end > horizon]
        if done.end > horizon:
            self._records.append(done)
        self._jams = [(js, je) for js, je in self._jams if je > horizon]

    def channel_busy(self, node_id: int, channel: int) -> bool:
        """Carrier sense: in-range energy on the channel right now."""
        if any(js <= self.now < je for js, je in self._jams):
            return True
        hood = self._neighbors[node_id]
        for r in self._records:
            if r.channel == channel and r.start <= self.now < r.end and r.src in hood:
                return True
        return False

    # ----------------------------------------------------------------- jammer

    def start_jammer(self, interval: int, duration: int) -> None:
        """Periodic all-channel interference bursts."""
        if not interval > duration > 0:
            raise ValueError("jammer requires interval > duration > 0")
        self._jam_conf = (interval, duration)
        self.schedule(interval, self._jam_start, "JamStart")

    def _jam_start(self, time: int) -> None:
        interval, duration = self._jam_conf
        horizon = min((r.start for r in self._records if r.end >= self.now),
                      default=self.now)
        self._jams = [(js, je) for js, je in self._jams if je > horizon]
        self._jams.append((time, time + duration))
        self.schedule(time + interval, self._jam_start, "JamStart")

    def jam_active(self) -> bool:
        return any(js <= self.now < je for js, je in self._jams)
