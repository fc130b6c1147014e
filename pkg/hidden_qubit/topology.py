"""
Topology Module

Qubit networks with control and hidden qubits: the k×k grid with h hidden
qubits attached to every control qubit used for routing, plus the chain and
grid families compared by their wiring cost.
"""

from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Any

import networkx as nx

from hidden_qubit.config_validator import ConfigValidator
from hidden_qubit.exceptions import ValidationError

FAMILIES: tuple[str, ...] = ("chain", "grid")
LAYOUTS: tuple[str, ...] = ("full", "converted", "attached")


@dataclass(frozen=True)
class GridTopology:
    """
    k×k control qubits in a square grid, each with h hidden qubits in a star.

    Qubit ids: control qubit at grid site s = r·k + c has id s; its hidden
    qubits have ids k² + s·h + j for j < h. A grid group is one control qubit
    with its hidden qubits and is identified by its site.
    """

    k: int
    h: int

    def __post_init__(self):
        ConfigValidator().validate_grid(self.k, self.h)

    @property
    def sites(self) -> int:
        return self.k * self.k

    @property
    def n_qubits(self) -> int:
        return (self.h + 1) * self.sites

    @property
    def n_hidden(self) -> int:
        return self.h * self.sites

    def coordinates(self, site: int) -> tuple[int, int]:
        return divmod(site, self.k)

    def site_at(self, row: int, col: int) -> int:
        return row * self.k + col

    def is_control(self, qubit: int) -> bool:
        return qubit < self.sites

    def group_of(self, qubit: int) -> int:
        """Grid group (site) a qubit belongs to."""
        if not 0 <= qubit < self.n_qubits:
            raise ValidationError(f"Qubit {qubit} outside 0..{self.n_qubits - 1}", "qubit")
        if self.is_control(qubit):
            return qubit
        return (qubit - self.sites) // self.h

    def hidden_of(self, site: int) -> list[int]:
        start = self.sites + site * self.h
        return list(range(start, start + self.h))

    def distance(self, a: int, b: int) -> int:
        """L¹ distance between two grid sites."""
        ra, ca = self.coordinates(a)
        rb, cb = self.coordinates(b)
        return abs(ra - rb) + abs(ca - cb)

    def site_neighbors(self, site: int) -> list[int]:
        row, col = self.coordinates(site)
        neighbors = []
        for dr, dc in ((-1, 0), (0, -1), (0, 1), (1, 0)):
            r, c = row + dr, col + dc
            if 0 <= r < self.k and 0 <= c < self.k:
                neighbors.append(self.site_at(r, c))
        return neighbors

    def grid_edges(self) -> list[tuple[int, int]]:
        """Adjacent site pairs (a < b) in row-major order."""
        return [
            (site, other)
            for site in range(self.sites)
            for other in self.site_neighbors(site)
            if other > site
        ]

    def adjacent(self, a: int, b: int) -> bool:
        return self.graph.has_edge(a, b)

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        for site in range(self.sites):
            graph.add_node(site, control=True)
            for hidden in self.hidden_of(site):
                graph.add_node(hidden, control=False)
                graph.add_edge(site, hidden)
        graph.add_edges_from(self.grid_edges())
        return graph


@dataclass(frozen=True)
class TopologyMetrics:
    n_qubits: int
    control_lines: int
    readout_lines: int
    n_c: float
    n_r: float
    d_c: int
    d_bar: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def graph_metrics(graph: nx.Graph) -> TopologyMetrics:
    """
    Wiring and distance metrics of a network whose nodes carry a boolean
    ``control`` attribute.

    One control line per control-qubit drive and one per coupler; readout
    resonators only on control qubits.
    """
    controls = [node for node, data in graph.nodes(data=True) if data["control"]]
    if not controls:
        raise ValidationError("Network has no control qubit", "graph")
    n = graph.number_of_nodes()
    control_lines = len(controls) + graph.number_of_edges()
    to_control = nx.multi_source_dijkstra_path_length(graph, controls)
    d_bar = nx.average_shortest_path_length(graph) if n > 1 else 0.0
    return TopologyMetrics(
        n_qubits=n,
        control_lines=control_lines,
        readout_lines=len(controls),
        n_c=control_lines / n,
        n_r=len(controls) / n,
        d_c=int(max(to_control.values())),
        d_bar=float(d_bar),
    )


def topology_metrics(topo: GridTopology) -> TopologyMetrics:
    return graph_metrics(topo.graph)


def _converted_controls(positions: list[tuple[int, int]], pattern) -> set:
    controls = {p for p in positions if pattern(p)}
    occupied = set(positions)
    # Promote boundary qubits left without a control neighbour
    for row, col in positions:
        if (row, col) in controls:
            continue
        around = {(row + dr, col + dc) for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1))}
        if not around & occupied & controls:
            controls.add((row, col))
    return controls


def build_network(family: str, layout: str, size: int, h: int = 0) -> nx.Graph:
    """
    Args:
        family: "chain" (``size`` qubits in a line) or "grid" (size×size)
        layout: "full" (every qubit controlled), "converted" (every third
            chain qubit or every fifth grid qubit controlled, each hidden
            qubit next to a control) or "attached" (h hidden per control)
        size: Chain length or grid side of the underlying network
        h: Hidden qubits per control qubit for the attached layout
    """
    if family not in FAMILIES:
        raise ValidationError(f"Unknown family '{family}'", "family")
    if layout not in LAYOUTS:
        raise ValidationError(f"Unknown layout '{layout}'", "layout")
    if size < 1:
        raise ValidationError(f"size must be ≥ 1, got {size}", "size")
    if h < 0:
        raise ValidationError(f"h must be ≥ 0, got {h}", "h")

    if family == "chain":
        base = nx.Graph()
        positions = [(0, i) for i in range(size)]
        base.add_nodes_from(positions)
        base.add_edges_from(zip(positions, positions[1:], strict=False))
    else:
        base = nx.grid_2d_graph(size, size)
        positions = sorted(base.nodes)

    if layout == "converted":
        if family == "chain":
            controls = _converted_controls(positions, lambda p: p[1] % 3 == 1)
        else:
            controls = _converted_controls(positions, lambda p: (p[0] + 2 * p[1]) % 5 == 0)
    else:
        controls = set(positions)
    for node in base.nodes:
        base.nodes[node]["control"] = node in controls

    if layout == "attached":
        for node in positions:
            for j in range(h):
                base.add_node((node, j), control=False)
                base.add_edge(node, (node, j))
    return base


def network_metrics(family: str, layout: str, size: int, h: int = 0) -> TopologyMetrics:
    return graph_metrics(build_network(family, layout, size, h))
