"""Seeded force-directed placement for graphs without natural coordinates.

A plain Fruchterman-Reingold loop with a fixed iteration count and seeded
initial positions: run-to-run stability matters more here than layout
quality, since composed plots re-anchor nodes to real coordinates anyway.
"""

import numpy as np

from ..rng import Xorshift64Star

FR_ITERATIONS = 300


def fruchterman_reingold(
    node_count: int,
    edges: list[tuple[int, int]],
    seed: int,
    iterations: int = FR_ITERATIONS,
) -> list[tuple[float, float]]:
    """Place nodes in the unit square; identical inputs give identical
    coordinates."""
    if node_count <= 0:
        return []
    rng = Xorshift64Star(seed)
    pos = np.array(
        [[rng.random(), rng.random()] for _ in range(node_count)], dtype=np.float64
    )
    if node_count == 1:
        return [(0.5, 0.5)]
    k = 1.0 / np.sqrt(node_count)
    temp = 0.1
    cool = temp / (iterations + 1)
    edge_idx = np.array([(a, b) for a, b in edges if a != b], dtype=np.int64).reshape(-1, 2)
    for _ in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((delta**2).sum(axis=2))
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-9)
        repulse = (k * k) / dist
        disp = (delta / dist[:, :, None] * repulse[:, :, None]).sum(axis=1)
        if len(edge_idx):
            evec = pos[edge_idx[:, 0]] - pos[edge_idx[:, 1]]
            edist = np.maximum(np.sqrt((evec**2).sum(axis=1)), 1e-9)
            pull = (edist / k)[:, None] * (evec / edist[:, None])
            np.add.at(disp, edge_idx[:, 0], -pull)
            np.add.at(disp, edge_idx[:, 1], pull)
        length = np.maximum(np.sqrt((disp**2).sum(axis=1)), 1e-9)
        step = np.minimum(length, temp)
        pos += disp / length[:, None] * step[:, None]
        pos = np.clip(pos, 0.0, 1.0)
        temp -= cool
    return [(float(x), float(y)) for x, y in pos]
