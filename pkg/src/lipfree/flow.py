"""Uncapacitated min-cost flow on a dense graph.

Successive shortest paths with Johnson potentials. Every arc i -> j exists
with unlimited capacity and cost ``cost[i, j] >= 0``; pushing flow creates
a residual reverse arc of cost ``-cost[i, j]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverFailure

FEAS_TOL = 1e-9


@dataclass(frozen=True)
class FlowSolution:
    cost: float
    flow: np.ndarray        # flow[i, j] = mass shipped from i to j
    potential: np.ndarray   # node potentials after the last augmentation


def _dijkstra(rescost: np.ndarray, pot: np.ndarray, sources: np.ndarray):
    n = rescost.shape[0]
    dist = np.full(n, np.inf)
    dist[sources] = 0.0
    pred = np.full(n, -1)
    done = np.zeros(n, dtype=bool)
    for _ in range(n):
        cand = np.where(done, np.inf, dist)
        u = int(np.argmin(cand))
        if not np.isfinite(cand[u]):
            break
        done[u] = True
        # reduced costs are >= 0 up to rounding; clip so labels stay monotone
        red = np.maximum(rescost[u] + pot[u] - pot, 0.0)
        alt = dist[u] + red
        better = (~done) & (alt < dist)
        dist[better] = alt[better]
        pred[better] = u
    return dist, pred


def min_cost_flow(cost: np.ndarray, supply: np.ndarray, max_rounds: int | None = None) -> FlowSolution:
    """Ship ``supply`` (positive = source, negative = sink) at minimum cost.

    ``supply`` must sum to zero within FEAS_TOL relative to its mass.
    """
    cost = np.asarray(cost, dtype=float)
    excess = np.array(supply, dtype=float)
    n = excess.shape[0]
    flow = np.zeros((n, n))
    pot = np.zeros(n)
    mass = float(np.sum(np.abs(excess)))
    if n == 0 or mass == 0.0:
        return FlowSolution(0.0, flow, pot)
    if abs(excess.sum()) > FEAS_TOL * max(1.0, mass):
        raise SolverFailure(f"supplies do not balance (sum={excess.sum():.3e})")
    eps = 1e-15 * mass
    rounds = 0
    limit = max_rounds if max_rounds is not None else 4 * n * n + 16
    while True:
        sources = np.flatnonzero(excess > eps)
        if sources.size == 0:
            break
        if not np.any(excess < -eps):
            break
        rounds += 1
        if rounds > limit:
            raise SolverFailure("successive shortest paths did not terminate")
        rescost = np.where(flow.T > 0, -cost.T, cost)
        dist, pred = _dijkstra(rescost, pot, sources)
        sinks = np.flatnonzero(excess < -eps)
        t = int(sinks[np.argmin(dist[sinks])])
        if not np.isfinite(dist[t]):
            raise SolverFailure("sink unreachable in residual graph")
        pot = pot + np.where(np.isfinite(dist), np.minimum(dist, dist[t]), dist[t])

        path = []
        v = t
        while pred[v] != -1:
            u = int(pred[v])
            path.append((u, v))
            v = u
        s = v
        delta = min(excess[s], -excess[t])
        for u, v in path:
            if flow[v, u] > 0:
                delta = min(delta, flow[v, u])
        for u, v in path:
            if flow[v, u] > 0:
                cancel = min(delta, flow[v, u])
                flow[v, u] -= cancel
                if cancel < delta:
                    flow[u, v] += delta - cancel
            else:
                flow[u, v] += delta
        excess[s] -= delta
        excess[t] += delta
        if abs(excess[s]) <= eps:
            excess[s] = 0.0
        if abs(excess[t]) <= eps:
            excess[t] = 0.0
    total = float(np.sum(flow * cost))
    return FlowSolution(total, flow, pot)
