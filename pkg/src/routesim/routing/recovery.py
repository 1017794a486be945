"""Backtracking and beacon-fallback recovery engines.

Both protocols run plain greedy forwarding while it makes progress and
recover differently when it stalls: the backtracking engine turns the route
into an ordered depth-first search with a per-packet visited set; the beacon
engine walks up the hop-count tree of the anchor the destination is closest
to and, failing greedy resumption, delivers through a scoped flood from that
anchor.
"""

from __future__ import annotations

import numpy as np

from routesim.coords import VirtualCoords
from routesim.routing.greedy import greedy_next_hop
from routesim.routing.result import Failure, Mode, RouteResult, finish
from routesim.topology import Topology


def lcr_route(src: int, dst: int, dfield: np.ndarray, t: Topology, ttl: int) -> RouteResult:
    """Depth-first greedy with physical backtracking.

    From each node the packet moves to the unvisited neighbor closest to the
    destination (even a farther one when no closer exists; such exploratory
    hops count as backtrack mode).  With every neighbor visited it pops back
    to the previous hop.  Exhausting the stack means the destination is
    unreachable from the explored region.
    """
    if src == dst:
        return finish(src, dst, [src], [])
    visited = {src}
    stack = [src]
    path = [src]
    modes: list[str] = []
    u = src
    while True:
        if u == dst:
            return finish(src, dst, path, modes)
        if dst in t.adjacency[u]:
            best, best_d = dst, dfield[dst]
        else:
            best = -1
            best_d = np.inf
            for v in t.adjacency[u]:  # ascending ids break distance ties
                if v not in visited and dfield[v] < best_d:
                    best = v
                    best_d = dfield[v]
        if len(modes) >= ttl:
            return finish(src, dst, path, modes, Failure.TTL_EXCEEDED)
        if best >= 0:
            mode = Mode.GREEDY if (best_d < dfield[u] or best == dst) else Mode.BACKTRACK
            visited.add(best)
            stack.append(best)
            path.append(best)
            modes.append(mode)
            u = best
        else:
            stack.pop()
            if not stack:
                return finish(src, dst, path, modes, Failure.BACKTRACK_EXHAUSTED)
            u = stack[-1]
            path.append(u)
            modes.append(Mode.BACKTRACK)


def _tree_parent(u: int, col: np.ndarray, t: Topology) -> int:
    """Lowest-id neighbor one hop closer to the anchor of this hop-count column."""
    target = col[u] - 1
    for v in t.adjacency[u]:
        if col[v] == target:
            return v
    raise RuntimeError("hop-count column is not a BFS layering")  # pragma: no cover


def bvr_route(
    src: int,
    dst: int,
    dfield: np.ndarray,
    vc: VirtualCoords,
    t: Topology,
    ttl: int,
) -> RouteResult:
    """Greedy forwarding with fallback toward the destination's best anchor.

    On a local minimum the packet climbs the hop-count tree of the anchor k
    minimizing V(dst)_k.  If some node on the way is closer to the
    destination than where the fallback began, greedy resumes.  Reaching the
    anchor triggers a scoped flood of radius V(dst)_k, which always covers
    the destination; its cost is charged as the anchor-to-destination
    shortest path, the path the delivered copy takes.
    """
    if src == dst:
        return finish(src, dst, [src], [])
    k = int(np.argmin(vc.matrix[dst]))  # ties to the lowest anchor index
    anchor = vc.anchors.ids[k]
    col = vc.matrix[:, k]
    path = [src]
    modes: list[str] = []
    u = src
    while u != dst:
        nxt = greedy_next_hop(u, dfield, t, dst)
        if nxt is not None:
            if len(modes) >= ttl:
                return finish(src, dst, path, modes, Failure.TTL_EXCEEDED)
            path.append(nxt)
            modes.append(Mode.GREEDY)
            u = nxt
            continue
        # Beacon fallback from the local minimum.
        entry_d = dfield[u]
        while u != anchor:
            if len(modes) >= ttl:
                return finish(src, dst, path, modes, Failure.TTL_EXCEEDED)
            u = _tree_parent(u, col, t)
            path.append(u)
            modes.append(Mode.FALLBACK)
            if u == dst or dfield[u] < entry_d:
                break
        else:
            # Scoped flood: deliver along the anchor->dst tree path.
            chain = [dst]
            while chain[-1] != anchor:
                chain.append(_tree_parent(chain[-1], col, t))
            for node in reversed(chain[:-1]):
                if len(modes) >= ttl:
                    return finish(src, dst, path, modes, Failure.TTL_EXCEEDED)
                path.append(node)
                modes.append(Mode.FLOOD)
            u = dst
    return finish(src, dst, path, modes)
