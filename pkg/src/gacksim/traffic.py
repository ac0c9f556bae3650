"""Poisson traffic sources feeding the per-node MAC queues."""

from __future__ import annotations

from dataclasses import dataclass

from .timing import SYMBOL_RATE


@dataclass(frozen=True)
class PayloadSpec:
    """Fixed payload size, or a uniform integer range of sizes in bytes."""

    low: int
    high: int

    def __post_init__(self) -> None:
        if not 1 <= self.low <= self.high <= 116:
            raise ValueError(f"payload range must lie in [1, 116]: {self}")

    @classmethod
    def fixed(cls, size: int) -> "PayloadSpec":
        return cls(size, size)

    @classmethod
    def parse(cls, text: str) -> "PayloadSpec":
        if "-" in text:
            low, high = text.split("-", 1)
            return cls(int(low), int(high))
        return cls.fixed(int(text))

    def __str__(self) -> str:
        if self.low == self.high:
            return str(self.low)
        return f"{self.low}-{self.high}"

    def draw(self, rng) -> int:
        if self.low == self.high:
            return self.low
        return rng.randint(self.low, self.high)

    def mean(self) -> float:
        return (self.low + self.high) / 2


class TrafficSource:
    """Exponential inter-arrival process for one node.

    The generator draws only from the node's dedicated traffic stream, so
    arrival sequences are identical across runs that differ in MAC scheme.
    """

    def __init__(self, node_id, tau_seconds, payload_spec, kernel, on_arrival):
        self.node_id = node_id
        self.tau_symbols = tau_seconds * SYMBOL_RATE
        self.payload_spec = payload_spec
        self.kernel = kernel
        self.on_arrival = on_arrival
        self.rng = kernel.rng(node_id, "traffic")

    def start(self) -> None:
        self._schedule_next()

    def _schedule_next(self) -> None:
        gap = max(1, round(self.rng.expovariate(1.0) * self.tau_symbols))
        self.kernel.schedule(self.kernel.now + gap, self._arrive, "AppArrival")

    def _arrive(self, now: int) -> None:
        payload_len = self.payload_spec.draw(self.rng)
        keep_going = self.on_arrival(self.node_id, payload_len, now)
        if keep_going:
            self._schedule_next()


def exponential_intervals(tau_seconds: float, count: int, rng) -> list[float]:
    """Plain list of inter-arrival gaps, used by statistical tests."""
    return [rng.expovariate(1.0 / tau_seconds) for _ in range(count)]
