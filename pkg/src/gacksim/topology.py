"""Evaluation topologies: all traffic converges on sink node 0."""

from __future__ import annotations

from dataclasses import dataclass


class InvalidSize(ValueError):
    """Node count incompatible with the requested topology kind."""


TOPOLOGY_KINDS = ("line", "star", "binary_tree")


@dataclass(frozen=True)
class Topology:
    kind: str
    n: int
    adjacency: frozenset[frozenset[int]]
    parent: dict[int, int]

    def neighbors(self, node: int) -> list[int]:
        return sorted(v for e in self.adjacency if node in e for v in e if v != node)

    def children(self, node: int) -> list[int]:
        return sorted(c for c, p in self.parent.items() if p == node)

    def adjacent(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.adjacency

    def hops_to_sink(self, node: int) -> int:
        hops = 0
        while node != 0:
            node = self.parent[node]
            hops += 1
        return hops


def build_topology(kind: str, n: int) -> Topology:
    if kind == "line":
        if n < 2:
            raise InvalidSize("line topology needs at least 2 nodes")
        parent = {i: i - 1 for i in range(1, n)}
    elif kind == "star":
        if n < 2:
            raise InvalidSize("star topology needs at least 2 nodes")
        parent = {i: 0 for i in range(1, n)}
    elif kind == "binary_tree":
        if n < 3 or (n + 1) & n != 0:
            raise InvalidSize("binary tree needs n = 2^k - 1 nodes, k >= 2")
        parent = {i: (i - 1) // 2 for i in range(1, n)}
    else:
        raise InvalidSize(f"unknown topology kind: {kind!r}")
    # Only parent-child pairs are in range of each other; siblings stay
    # mutually hidden, which is what produces hidden-node collisions.
    adjacency = frozenset(frozenset((c, p)) for c, p in parent.items())
    return Topology(kind, n, adjacency, parent)
