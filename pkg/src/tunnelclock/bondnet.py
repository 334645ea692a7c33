"""Toy tensor-network bond accounting.

Covers four pieces of machinery: two-site amplitude contraction across an
internal leg of dimension chi, bond-capacity accounting (bond count and
total log2 chi, with a configurable proportionality to model mass-energy),
a collapse-propagation delay model over the bond graph, and the geometric
entanglement-flux laws (area-law 1/r versus radiating 1/r^2).

The per-bond delay tau_b * log2(chi) is a declared model, not a derived
law: correlations carry log2(chi) bits across a bond and updates spread in
parallel, so the propagation time is the weighted eccentricity of the
collapse source, not a sum over bonds.  Alternative delay policies can be
swapped in.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .constants import C
from .errors import DomainError

__all__ = [
    "Bond", "BondNetwork", "TwoSiteState", "EntanglementCapacity", "NetworkFormatError",
    "contract_two_site", "entanglement_capacity", "collapse_propagation_time",
    "entanglement_flux", "effective_potential", "parse_network_file",
    "delay_log2_chi", "delay_linear_chi", "delay_constant",
]

NodeId = Union[str, int]


class NetworkFormatError(ValueError):
    """Malformed network description; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Bond:
    node_a: NodeId
    node_b: NodeId
    chi: int


@dataclass(frozen=True)
class BondNetwork:
    """Nodes with entanglement bonds of dimension chi; immutable after construction."""

    nodes: tuple[NodeId, ...]
    bonds: tuple[Bond, ...]
    positions: Mapping[NodeId, tuple[float, float, float]] = field(default_factory=dict)
    d_phys: int = 2

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("network needs at least one node")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node ids")
        if self.d_phys < 2:
            raise ValueError(f"physical dimension must be at least 2, got {self.d_phys}")
        known = set(self.nodes)
        for bond in self.bonds:
            if bond.node_a == bond.node_b:
                raise ValueError(f"self-loop on node {bond.node_a!r}")
            if bond.node_a not in known or bond.node_b not in known:
                raise ValueError(f"bond references unknown node: {bond}")
            if bond.chi < 1:
                raise ValueError(f"bond dimension must be at least 1, got {bond.chi}")
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "bonds", tuple(self.bonds))
        object.__setattr__(self, "positions", dict(self.positions))

    def adjacency(self) -> dict[NodeId, list[tuple[NodeId, int]]]:
        adj: dict[NodeId, list[tuple[NodeId, int]]] = {n: [] for n in self.nodes}
        for bond in self.bonds:
            adj[bond.node_a].append((bond.node_b, bond.chi))
            adj[bond.node_b].append((bond.node_a, bond.chi))
        return adj


@dataclass(frozen=True)
class TwoSiteState:
    """Site tensors X[alpha, j] and Y[beta, j] sharing an internal leg of range chi."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.complex128)
        y = np.asarray(self.y, dtype=np.complex128)
        if x.ndim != 2 or y.ndim != 2:
            raise ValueError("site tensors must be 2-D (physical x internal)")
        if x.shape[1] != y.shape[1]:
            raise ValueError(
                f"internal legs disagree: {x.shape[1]} vs {y.shape[1]}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def chi(self) -> int:
        return self.x.shape[1]


def contract_two_site(state: TwoSiteState, normalize: bool = False) -> np.ndarray:
    """Amplitude table A[alpha, beta] = sum_j X[alpha, j] Y[beta, j].

    With ``normalize`` the table is scaled to unit 2-norm; a zero table
    cannot be normalized and raises ValueError.
    """
    amplitudes = state.x @ state.y.T
    if normalize:
        norm = float(np.linalg.norm(amplitudes))
        if norm == 0.0:
            raise ValueError("contraction produced the zero table; cannot normalize")
        amplitudes = amplitudes / norm
    return amplitudes


@dataclass(frozen=True)
class EntanglementCapacity:
    bond_count: int
    total_log2_chi: float

    def model_energy(self, k: float) -> float:
        """Mass-energy proportional to total bond capacity, constant k configurable."""
        return k * self.total_log2_chi


def entanglement_capacity(net: BondNetwork) -> EntanglementCapacity:
    """Bond count and total log2(chi): the capacity measures of the network."""
    total = 0.0
    for bond in net.bonds:
        total += math.log2(bond.chi)
    return EntanglementCapacity(bond_count=len(net.bonds), total_log2_chi=total)


# Delay policies: dimensionless multiplier applied to tau_b per bond.

def delay_log2_chi(chi: int) -> float:
    """Bits of correlation across the bond; chi = 1 is clamped to one bit."""
    return math.log2(max(chi, 2))


def delay_linear_chi(chi: int) -> float:
    return float(chi)


def delay_constant(chi: int) -> float:
    return 1.0


def collapse_propagation_time(net: BondNetwork, source: NodeId, tau_b: float,
                              policy: Callable[[int], float] = delay_log2_chi) -> float:
    """Time until every node correlated with ``source`` has been updated.

    Per-bond delay is tau_b * policy(chi); updates spread in parallel, so
    the answer is the weighted eccentricity of the source (the largest
    shortest-path delay to any reachable node).  Nodes in other components
    are uncorrelated and ignored.
    """
    if source not in net.adjacency():
        raise KeyError(f"unknown source node {source!r}")
    if not (tau_b > 0.0):
        raise ValueError(f"tau_b must be positive, got {tau_b}")

    adj = net.adjacency()
    dist: dict[NodeId, float] = {source: 0.0}
    frontier: list[tuple[float, int, NodeId]] = [(0.0, 0, source)]
    counter = 1  # tie-breaker so heapq never compares node ids
    while frontier:
        d, _, node = heapq.heappop(frontier)
        if d > dist.get(node, math.inf):
            continue
        for neighbor, chi in adj[node]:
            candidate = d + tau_b * policy(chi)
            if candidate < dist.get(neighbor, math.inf):
                dist[neighbor] = candidate
                heapq.heappush(frontier, (candidate, counter, neighbor))
                counter += 1
    return max(dist.values())


def entanglement_flux(bond_count: float, r: float, geometry: str) -> float:
    """Bond flux density at distance r from a point source.

    Entanglement obeys an area law, so its flux spreads like a
    two-dimensional object: ``area_law_2d`` gives B/(2 pi r).  A radiating
    three-dimensional source (``volume_3d``) would give B/(4 pi r^2).
    """
    if not (r > 0.0):
        raise DomainError(f"r must be positive, got {r}")
    if bond_count < 0:
        raise DomainError(f"bond count must be nonnegative, got {bond_count}")
    if geometry == "area_law_2d":
        return bond_count / (2.0 * math.pi * r)
    if geometry == "volume_3d":
        return bond_count / (4.0 * math.pi * r**2)
    raise ValueError(f"unknown geometry {geometry!r}; use 'area_law_2d' or 'volume_3d'")


def effective_potential(b: float, mass: float, r: float) -> float:
    """The 1/r effective potential b*M*c^2/r assembled from the area-law flux."""
    if not (r > 0.0):
        raise DomainError(f"r must be positive, got {r}")
    return b * mass * C**2 / r


def parse_network_file(lines: Iterable[str], name: str = "<network>") -> BondNetwork:
    """Parse the line-oriented network format.

    Directives, one per line ('#' starts a comment):

        node <id> [x y z]
        bond <id1> <id2> <chi>

    Raises :class:`NetworkFormatError` with the offending line number.
    """
    nodes: list[NodeId] = []
    positions: dict[NodeId, tuple[float, float, float]] = {}
    bonds: list[Bond] = []
    seen: set[NodeId] = set()

    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        directive = parts[0]
        if directive == "node":
            if len(parts) not in (2, 5):
                raise NetworkFormatError(line_no, f"node takes an id and optionally x y z, got {len(parts) - 1} fields")
            node_id = parts[1]
            if node_id in seen:
                raise NetworkFormatError(line_no, f"duplicate node {node_id!r}")
            seen.add(node_id)
            nodes.append(node_id)
            if len(parts) == 5:
                try:
                    positions[node_id] = (float(parts[2]), float(parts[3]), float(parts[4]))
                except ValueError:
                    raise NetworkFormatError(line_no, "node position must be three numbers") from None
        elif directive == "bond":
            if len(parts) != 4:
                raise NetworkFormatError(line_no, f"bond takes two node ids and chi, got {len(parts) - 1} fields")
            a, b = parts[1], parts[2]
            if a not in seen:
                raise NetworkFormatError(line_no, f"unknown node {a!r}")
            if b not in seen:
                raise NetworkFormatError(line_no, f"unknown node {b!r}")
            if a == b:
                raise NetworkFormatError(line_no, f"self-loop on node {a!r}")
            try:
                chi = int(parts[3])
            except ValueError:
                raise NetworkFormatError(line_no, f"chi must be an integer, got {parts[3]!r}") from None
            if chi < 1:
                raise NetworkFormatError(line_no, f"chi must be at least 1, got {chi}")
            bonds.append(Bond(a, b, chi))
        else:
            raise NetworkFormatError(line_no, f"unknown directive {directive!r} (expected 'node' or 'bond')")

    if not nodes:
        raise NetworkFormatError(0, f"{name} defines no nodes")
    return BondNetwork(nodes=tuple(nodes), bonds=tuple(bonds), positions=positions)
