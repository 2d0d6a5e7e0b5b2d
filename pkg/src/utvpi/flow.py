"""Exact uncapacitated min-cost flow by successive shortest paths.

Integer costs may be negative as long as there is no negative cycle.  The
solver returns arc flows together with optimal node potentials, both integral.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class FlowResult:
    flows: Tuple[int, ...]
    cost: int
    # potentials with cost(a) + pi[tail] - pi[head] >= 0 on every arc, and == 0
    # on every arc that carries flow
    potentials: Tuple[int, ...]


class _Residual:
    def __init__(self, num_nodes: int):
        self.adj: List[List[int]] = [[] for _ in range(num_nodes)]
        self.head: List[int] = []
        self.cost: List[int] = []
        self.cap: List[Optional[int]] = []  # None means unbounded

    def add(self, tail: int, head: int, cost: int, cap: Optional[int]) -> int:
        idx = len(self.head)
        self.adj[tail].append(idx)
        self.head.append(head)
        self.cost.append(cost)
        self.cap.append(cap)
        self.adj[head].append(idx + 1)
        self.head.append(tail)
        self.cost.append(-cost)
        self.cap.append(0)
        return idx

    def residual(self, idx: int) -> bool:
        c = self.cap[idx]
        return c is None or c > 0

    def push(self, idx: int, amount: int) -> None:
        if self.cap[idx] is not None:
            self.cap[idx] -= amount
        if self.cap[idx ^ 1] is not None:
            self.cap[idx ^ 1] += amount

    def shortest_paths(self, source: int, num_nodes: int):
        """Label-correcting shortest paths (no negative cycles by invariant)."""
        dist: List[Optional[int]] = [None] * num_nodes
        via: List[Optional[int]] = [None] * num_nodes
        dist[source] = 0
        queue = deque([source])
        queued = [False] * num_nodes
        queued[source] = True
        while queue:
            a = queue.popleft()
            queued[a] = False
            for idx in self.adj[a]:
                if not self.residual(idx):
                    continue
                b = self.head[idx]
                nd = dist[a] + self.cost[idx]
                if dist[b] is None or nd < dist[b]:
                    dist[b] = nd
                    via[b] = idx
                    if not queued[b]:
                        queued[b] = True
                        queue.append(b)
        return dist, via


def min_cost_flow(
    num_nodes: int, arcs: Sequence[Tuple[int, int, int]], demand: Sequence[int]
) -> Optional[FlowResult]:
    """Route ``demand[v]`` net units into every node over uncapacitated arcs.

    ``arcs`` holds ``(tail, head, cost)``; ``sum(demand)`` must be zero.
    Returns None when no feasible flow exists.
    """
    if sum(demand) != 0:
        raise ValueError("demands must sum to zero")
    source, sink = num_nodes, num_nodes + 1
    res = _Residual(num_nodes + 2)
    arc_ids = [res.add(t, h, c, None) for t, h, c in arcs]
    total = 0
    for v, d in enumerate(demand):
        if d < 0:
            res.add(source, v, 0, -d)
            total -= d
        elif d > 0:
            res.add(v, sink, 0, d)

    shipped = 0
    while shipped < total:
        dist, via = res.shortest_paths(source, num_nodes + 2)
        if dist[sink] is None:
            return None
        path = []
        node = sink
        while node != source:
            idx = via[node]
            path.append(idx)
            node = res.head[idx ^ 1]
        amount = min(res.cap[idx] for idx in path if res.cap[idx] is not None)
        for idx in path:
            res.push(idx, amount)
        shipped += amount

    flows = tuple(res.cap[idx ^ 1] for idx in arc_ids)
    cost = sum(f * c for f, (_, _, c) in zip(flows, arcs))

    # potentials: shortest distances in the final residual network restricted
    # to the original nodes, from a virtual root reaching every node at cost 0
    pot = [0] * num_nodes
    for _ in range(num_nodes):
        changed = False
        for a in range(num_nodes):
            for idx in res.adj[a]:
                b = res.head[idx]
                if b >= num_nodes or not res.residual(idx):
                    continue
                if pot[a] + res.cost[idx] < pot[b]:
                    pot[b] = pot[a] + res.cost[idx]
                    changed = True
        if not changed:
            break
    return FlowResult(flows, cost, tuple(pot))
