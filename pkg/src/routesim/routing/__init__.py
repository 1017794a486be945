"""Routing engines and the protocol dispatcher.

A RoutingContext bundles everything a single scenario binds: the topology,
the believed positions, the coordinate assignments, the configured distance,
and the TTL.  ``route`` picks the engine for a protocol name and hands it the
right distance field.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from routesim import distance as dist_mod
from routesim.coords import AlignedCoords, VirtualCoords
from routesim.routing.greedy import forwarding_set, fs_on_field, greedy_next_hop, greedy_route, sp_route
from routesim.routing.gpsr import gpsr_route
from routesim.routing.planar import METHOD_GG, METHOD_RNG, PlanarGraph, planarize, segments_properly_cross, count_crossings
from routesim.routing.recovery import bvr_route, lcr_route
from routesim.routing.result import Failure, Mode, Outcome, RouteResult, finish
from routesim.topology import Topology

PROTOCOLS = ("gf-geo", "gpsr-gg", "gpsr-rng", "gf-vcs", "gf-avcs", "lcr", "bvr", "sp")

GEO_PROTOCOLS = ("gf-geo", "gpsr-gg", "gpsr-rng", "sp")
VCS_PROTOCOLS = ("gf-vcs", "gf-avcs", "lcr", "bvr")


class ProtocolError(ValueError):
    pass


@dataclass
class RoutingContext:
    """Scenario-bound inputs shared by every route of one evaluation."""

    topology: Topology
    geo_positions: np.ndarray                # believed positions (true or perceived)
    ttl: int
    vc: VirtualCoords | None = None
    av: AlignedCoords | None = None          # None when alignment depth is 0
    distance_kind: str = "euclid"
    semi_weight: float = dist_mod.DEFAULT_SEMI_WEIGHT
    _planar: dict[str, PlanarGraph] = field(default_factory=dict)

    def planar(self, method: str) -> PlanarGraph:
        pg = self._planar.get(method)
        if pg is None:
            pg = planarize(self.topology, self.geo_positions, method)
            self._planar[method] = pg
        return pg

    def local_matrix(self, protocol: str) -> np.ndarray:
        """Coordinate rows nodes compare locally under this protocol."""
        if protocol in GEO_PROTOCOLS:
            return self.geo_positions
        if self.vc is None:
            raise ProtocolError(f"{protocol} needs virtual coordinates")
        if protocol == "gf-vcs":
            return self.vc.matrix.astype(float)
        if protocol == "gf-avcs":
            # Depth 0 is the raw integer assignment by definition.
            if self.av is None:
                return self.vc.matrix.astype(float)
            return self.av.matrix
        # Recovery protocols follow the scenario's alignment uniformly.
        if self.av is not None:
            return self.av.matrix
        return self.vc.matrix.astype(float)

    def dfield(self, protocol: str, dst: int) -> np.ndarray:
        """Distance of every node's local coordinates to the destination's.

        Packets on virtual coordinate systems carry the destination's integer
        vector, so the right-hand side is always V(dst) there; geographic
        protocols compare believed positions.
        """
        local = self.local_matrix(protocol)
        if protocol in GEO_PROTOCOLS:
            return dist_mod.planar_field(local, local[dst])
        kind = "semi" if protocol == "bvr" else self.distance_kind
        fn = dist_mod.field_function(kind, self.semi_weight)
        return fn(local, self.vc.matrix[dst].astype(float))


def route(protocol: str, src: int, dst: int, ctx: RoutingContext) -> RouteResult:
    """Dispatch one packet under the scenario's bindings."""
    if protocol not in PROTOCOLS:
        raise ProtocolError(f"unknown protocol {protocol!r}")
    t = ctx.topology
    if src == dst:
        return finish(src, dst, [src], [])
    if protocol == "sp":
        return sp_route(src, dst, t)
    if protocol in ("gpsr-gg", "gpsr-rng"):
        method = METHOD_GG if protocol == "gpsr-gg" else METHOD_RNG
        return gpsr_route(src, dst, ctx.geo_positions, ctx.planar(method), t, ctx.ttl)
    dfield = ctx.dfield(protocol, dst)
    if protocol == "lcr":
        return lcr_route(src, dst, dfield, t, ctx.ttl)
    if protocol == "bvr":
        return bvr_route(src, dst, dfield, ctx.vc, t, ctx.ttl)
    return greedy_route(src, dst, dfield, t, ctx.ttl)


__all__ = [
    "PROTOCOLS",
    "GEO_PROTOCOLS",
    "VCS_PROTOCOLS",
    "ProtocolError",
    "RoutingContext",
    "RouteResult",
    "Mode",
    "Outcome",
    "Failure",
    "finish",
    "forwarding_set",
    "fs_on_field",
    "greedy_next_hop",
    "greedy_route",
    "sp_route",
    "planarize",
    "PlanarGraph",
    "METHOD_GG",
    "METHOD_RNG",
    "segments_properly_cross",
    "count_crossings",
    "gpsr_route",
    "lcr_route",
    "bvr_route",
    "route",
]
