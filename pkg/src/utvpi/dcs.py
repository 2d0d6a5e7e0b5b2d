"""Doubled difference-constraint graph of a UTVPI system.

Every variable ``x_i`` gets two nodes: ``u_i = i`` standing for ``x_i`` and
``v_i = n + i`` standing for ``-x_i``.  A difference constraint
``y[a] - y[b] >= c`` is stored as the edge ``b -> a`` with weight ``-c``, so the
system is feasible iff the graph has no negative cycle, and ``y = -dist`` for
any shortest-path distances ``dist`` is a feasible potential.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .model import UtvpiInstance


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    weight: int
    row: Optional[int] = None  # originating instance row; None for derived edges


@dataclass(frozen=True)
class DiffGraph:
    n: int
    edges: Tuple[Edge, ...]
    node_cost: Tuple[int, ...]
    scale: int = 1  # lcm of objective denominators

    @property
    def num_nodes(self) -> int:
        return 2 * self.n

    def u(self, i: int) -> int:
        return i

    def v(self, i: int) -> int:
        return self.n + i

    def with_edges(self, extra: Sequence[Edge]) -> "DiffGraph":
        return DiffGraph(self.n, self.edges + tuple(extra), self.node_cost, self.scale)

    def objective_of(self, y: Sequence[int]) -> Fraction:
        """DCS objective ``sum(node_cost * y) / (2 * scale)``."""
        return Fraction(sum(c * yv for c, yv in zip(self.node_cost, y)), 2 * self.scale)

    def point_of(self, y: Sequence[int]) -> Tuple[Fraction, ...]:
        return tuple(Fraction(y[i] - y[self.n + i], 2) for i in range(self.n))


def _literal(n: int, j: int, sign: int) -> Tuple[int, int]:
    """(node for sign*x_j, node for -sign*x_j)."""
    return (j, n + j) if sign > 0 else (n + j, j)


def double(instance: UtvpiInstance) -> DiffGraph:
    n = instance.n
    edges: List[Edge] = []
    for i, row in enumerate(instance.constraints):
        b = row.bound
        if len(row.terms) == 1:
            (p, s), = row.terms
            pos, neg = _literal(n, p, s)
            edges.append(Edge(neg, pos, -2 * b, i))
        else:
            (p, s), (q, t) = row.terms
            pos_p, neg_p = _literal(n, p, s)
            pos_q, neg_q = _literal(n, q, t)
            # s*x_p + t*x_q >= b  becomes  pos_p - neg_q >= b  and  pos_q - neg_p >= b
            edges.append(Edge(neg_q, pos_p, -b, i))
            edges.append(Edge(neg_p, pos_q, -b, i))
    scale = lcm(*(w.denominator for w in instance.objective)) if n else 1
    ints = [int(w * scale) for w in instance.objective]
    node_cost = tuple(ints + [-c for c in ints])
    return DiffGraph(n, tuple(edges), node_cost, scale)


def _bellman_ford(num_nodes: int, edges: Sequence[Edge]):
    """Distances from a virtual root joined to every node by a 0-weight edge.

    Returns ``(dist, None)`` or ``(None, cycle_edges)``.
    """
    dist = [0] * num_nodes
    pred: List[Optional[Edge]] = [None] * num_nodes
    if num_nodes == 0:
        return dist, None
    last = None
    for _ in range(num_nodes):
        last = None
        for e in edges:
            if dist[e.tail] + e.weight < dist[e.head]:
                dist[e.head] = dist[e.tail] + e.weight
                pred[e.head] = e
                last = e.head
        if last is None:
            return dist, None
    # a relaxation in round num_nodes means a negative cycle reaches `last`
    node = last
    for _ in range(num_nodes):
        node = pred[node].tail
    cycle = []
    cur = node
    while True:
        e = pred[cur]
        cycle.append(e)
        cur = e.tail
        if cur == node:
            break
    cycle.reverse()
    return None, cycle


def detect_negative_cycle(g: DiffGraph) -> Optional[List[Edge]]:
    """A cycle of negative total weight, or None if the system is feasible."""
    _, cycle = _bellman_ford(g.num_nodes, g.edges)
    return cycle


def feasible_potentials(g: DiffGraph) -> Optional[List[int]]:
    """Integer potentials satisfying every difference constraint, if any exist."""
    dist, cycle = _bellman_ford(g.num_nodes, g.edges)
    if cycle is not None:
        return None
    return [-d for d in dist]


def all_pairs_distances(num_nodes: int, edges: Sequence[Edge]) -> List[List[Optional[int]]]:
    dist: List[List[Optional[int]]] = [[None] * num_nodes for _ in range(num_nodes)]
    for i in range(num_nodes):
        dist[i][i] = 0
    for e in edges:
        cur = dist[e.tail][e.head]
        if cur is None or e.weight < cur:
            dist[e.tail][e.head] = e.weight
    for k in range(num_nodes):
        dk = dist[k]
        for i in range(num_nodes):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(num_nodes):
                dkj = dk[j]
                if dkj is not None and (di[j] is None or dik + dkj < di[j]):
                    di[j] = dik + dkj
    return dist


def tighten_for_integers(g: DiffGraph) -> DiffGraph:
    """Strengthen derived bounds ``2 x_i >= c`` with odd ``c`` to ``c + 1``.

    Repeats shortest-path closure and parity strengthening until nothing
    changes (at most ``2n`` rounds) or a negative cycle appears.  The input
    system has an integer solution iff the result has no negative cycle.
    """
    n = g.n
    current = g
    for _ in range(2 * n + 1):
        dist = all_pairs_distances(current.num_nodes, current.edges)
        if any(dist[i][i] < 0 for i in range(current.num_nodes)):
            return current
        extra = []
        for i in range(n):
            u, v = current.u(i), current.v(i)
            for src, dst in ((v, u), (u, v)):
                d = dist[src][dst]
                # d is the tightest weight of an edge src -> dst, i.e. dst - src >= -d
                if d is not None and d % 2 != 0:
                    extra.append(Edge(src, dst, d - 1))
        if not extra:
            return current
        current = current.with_edges(extra)
    return current


def integer_feasible(instance: UtvpiInstance) -> bool:
    return detect_negative_cycle(tighten_for_integers(double(instance))) is None
