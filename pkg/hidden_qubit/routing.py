"""
Routing Module

Transpiles one layer of random two-qubit pairs onto a grid of control qubits
with attached hidden qubits:

1. split the pairs into groups that use every grid group at most once
   (edge colouring of the grid-group multigraph),
2. swap hidden members onto their control qubits,
3. move every pair to adjacent meeting sites (assignment problem solved by
   branch and bound or local search, then permutation routing),
4. entangle all pairs of the group in one layer,
5. route back and
6. swap the hidden qubits back.
"""

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment

from hidden_qubit import config_constants as cc
from hidden_qubit.exceptions import ColoringBoundError, HiddenQubitError, ValidationError
from hidden_qubit.topology import GridTopology

Pair = tuple[int, int]
SiteSwap = tuple[int, int]

HIDDEN_SWAP = "hidden-swap"
GRID_SWAP = "grid-swap"
ENTANGLE = "entangle"
OPERATION_KINDS: tuple[str, ...] = (HIDDEN_SWAP, GRID_SWAP, ENTANGLE)


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[Pair, ...]
    idle: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.pairs)


def sample_pairing(
    topo: GridTopology, rng: np.random.Generator, allow_idle: bool = False
) -> Pairing:
    """
    Uniformly random perfect matching of all qubits.

    Args:
        topo: Grid topology
        rng: Random generator
        allow_idle: Leave one qubit unpaired when the qubit count is odd

    Raises:
        ValidationError: For an odd qubit count without allow_idle
    """
    n = topo.n_qubits
    if n % 2 and not allow_idle:
        raise ValidationError(f"Pairing needs an even qubit count, got {n}", "n_qubits")
    order = [int(q) for q in rng.permutation(n)]
    pairs = tuple(
        (min(order[i], order[i + 1]), max(order[i], order[i + 1]))
        for i in range(0, n - 1, 2)
    )
    return Pairing(pairs, (order[-1],) if n % 2 else ())


def validate_pairing(pairing: Pairing, topo: GridTopology) -> None:
    seen = [q for pair in pairing.pairs for q in pair] + list(pairing.idle)
    counts = Counter(seen)
    repeated = [q for q, count in counts.items() if count > 1]
    if repeated:
        raise ValidationError(f"Qubits paired more than once: {sorted(repeated)}", "pairs")
    if any(not 0 <= q < topo.n_qubits for q in seen):
        raise ValidationError("Pairing refers to qubits outside the topology", "pairs")
    if len(pairing.pairs) != topo.n_qubits // 2:
        raise ValidationError(
            f"Expected {topo.n_qubits // 2} pairs, got {len(pairing.pairs)}", "pairs"
        )


class _EdgeColoring:
    """
    Proper edge colouring of a loopless multigraph with at most
    min(Δ + μ, ⌊3Δ/2⌋) colours.

    Edges are coloured in order. When no colour is free at both ends, a fan
    of edges is grown around one endpoint until it can be folded, swapping
    an alternating two-colour path first if two rim vertices share a free
    colour.
    """

    def __init__(self, n_vertices: int, edges: Sequence[Pair]):
        self.edges = list(edges)
        self.color: list[int | None] = [None] * len(self.edges)
        self.at: list[dict[int, int]] = [{} for _ in range(n_vertices)]
        self.incident: list[list[int]] = [[] for _ in range(n_vertices)]
        for index, (u, v) in enumerate(self.edges):
            if u == v:
                raise ValidationError("Self-loops cannot be edge coloured", "edges")
            self.incident[u].append(index)
            self.incident[v].append(index)
        degree = max((len(inc) for inc in self.incident), default=0)
        multiplicity = max(
            Counter(tuple(sorted(e)) for e in self.edges).values(), default=0
        )
        self.palette = range(min(degree + multiplicity, 3 * degree // 2))

    def missing(self, vertex: int) -> set[int]:
        return {c for c in self.palette if c not in self.at[vertex]}

    def other(self, edge: int, vertex: int) -> int:
        u, v = self.edges[edge]
        return v if u == vertex else u

    def paint(self, edge: int, new: int) -> None:
        u, v = self.edges[edge]
        old = self.color[edge]
        if old is not None:
            del self.at[u][old], self.at[v][old]
        self.color[edge] = new
        self.at[u][new] = edge
        self.at[v][new] = edge

    def run(self) -> list[int]:
        for edge, (u, v) in enumerate(self.edges):
            both = self.missing(u) & self.missing(v)
            if both:
                self.paint(edge, min(both))
            else:
                self._fan(edge)
        return [int(c) for c in self.color]

    def _stuck(self) -> ColoringBoundError:
        return ColoringBoundError(len(self.palette) + 1, len(self.palette))

    def _fan(self, edge: int) -> None:
        u, v = self.edges[edge]
        x = u if len(self.incident[u]) <= len(self.incident[v]) else v
        fan = [edge]
        rim = [self.other(edge, x)]
        candidates = [e for e in self.incident[x] if self.color[e] is not None]
        reachable = self.missing(rim[0])
        while True:
            following = next((e for e in candidates if self.color[e] in reachable), None)
            if following is None:
                raise self._stuck()
            candidates.remove(following)
            fan.append(following)
            y = self.other(following, x)
            rim.append(y)
            reachable |= self.missing(y)
            if self.missing(y) & self.missing(x):
                self._fold(x, fan, rim)
                return
            for index, z in enumerate(rim[:-1]):
                if z != y and self.missing(z) & self.missing(y):
                    self._reduce(x, fan, rim, index)
                    return

    def _fold(self, x: int, fan: list[int], rim: list[int]) -> None:
        while True:
            free = self.missing(x) & self.missing(rim[-1])
            if not free:
                raise self._stuck()
            old = self.color[fan[-1]]
            self.paint(fan[-1], min(free))
            if len(fan) == 1:
                return
            index = next((i for i, y in enumerate(rim[:-1]) if old in self.missing(y)), None)
            if index is None:
                raise self._stuck()
            fan, rim = fan[: index + 1], rim[: index + 1]

    def _reduce(self, x: int, fan: list[int], rim: list[int], index: int) -> None:
        a = min(self.missing(rim[index]) & self.missing(rim[-1]))
        b = min(self.missing(x))
        if self._swap_chain(rim[index], a, b, x):
            self._fold(x, fan[: index + 1], rim[: index + 1])
        else:
            self._swap_chain(rim[-1], a, b, x)
            self._fold(x, fan, rim)

    def _swap_chain(self, start: int, a: int, b: int, x: int) -> bool:
        """Swap colours a and b along the a/b path from start unless it ends at x."""
        current, vertex, path = b, start, []
        while current in self.at[vertex]:
            edge = self.at[vertex][current]
            path.append(edge)
            if len(path) > len(self.edges):
                raise self._stuck()
            vertex = self.other(edge, vertex)
            current = a if current == b else b
        if vertex == x:
            return False
        for edge in path:
            u, v = self.edges[edge]
            del self.at[u][self.color[edge]], self.at[v][self.color[edge]]
        for edge in path:
            u, v = self.edges[edge]
            swapped = b if self.color[edge] == a else a
            self.color[edge] = swapped
            self.at[u][swapped] = edge
            self.at[v][swapped] = edge
        return True


def coloring_bound(h: int) -> int:
    return 3 * (h + 1) // 2


def group_pairs(pairing: Pairing, topo: GridTopology) -> list[list[Pair]]:
    """
    Split the pairs into groups in which every grid group occurs at most once.

    Pairs become edges between their grid groups; a pair inside one grid
    group becomes an edge to its own private vertex so that it still blocks
    its grid group. The groups are the colour classes of a proper edge
    colouring.

    Raises:
        ColoringBoundError: If more than ⌊3(h+1)/2⌋ groups were needed
    """
    edges = []
    loops = 0
    for a, b in pairing.pairs:
        ga, gb = topo.group_of(a), topo.group_of(b)
        if ga == gb:
            edges.append((ga, topo.sites + loops))
            loops += 1
        else:
            edges.append((ga, gb))

    colors = _EdgeColoring(topo.sites + loops, edges).run()
    groups: dict[int, list[Pair]] = {}
    for pair, color in zip(pairing.pairs, colors, strict=True):
        groups.setdefault(color, []).append(pair)
    bound = coloring_bound(topo.h)
    if len(groups) > bound:
        raise ColoringBoundError(len(groups), bound)
    return [groups[color] for color in sorted(groups)]


@dataclass(frozen=True)
class MeetingPlan:
    """
    Destinations of the pairs of one group.

    ``destinations`` maps each pair spanning two grid groups to the adjacent
    sites its (first, second) member is routed to. Pairs inside one grid
    group are either ``stationary`` (their site stays fixed and they entangle
    with the others) or ``deferred`` (entangled right after the hidden swaps).
    """

    destinations: dict[Pair, tuple[int, int]]
    stationary: tuple[Pair, ...] = ()
    deferred: tuple[Pair, ...] = ()
    cost: int = 0


_Option = tuple[int, int, int]


def _options(
    origins: Sequence[tuple[int, int]], topo: GridTopology, blocked: set[int]
) -> list[list[_Option]]:
    """Per pair: (cost, site for lower origin, site for higher origin), cheapest first."""
    edges = [e for e in topo.grid_edges() if not set(e) & blocked]
    options = []
    for low, high in origins:
        pair_options = []
        for t1, t2 in edges:
            forward = topo.distance(low, t1) + topo.distance(high, t2)
            backward = topo.distance(low, t2) + topo.distance(high, t1)
            if forward <= backward:
                pair_options.append((forward, t1, t2))
            else:
                pair_options.append((backward, t2, t1))
        options.append(sorted(pair_options))
    return options


def _domino_tiling(k: int) -> list[tuple[int, int]]:
    tiles = []
    for row in range(k):
        for col in range(0, k - 1, 2):
            tiles.append((row * k + col, row * k + col + 1))
    if k % 2:
        for row in range(0, k - 1, 2):
            tiles.append((row * k + k - 1, (row + 1) * k + k - 1))
    return tiles


def _greedy(options: list[list[_Option]]) -> list[_Option] | None:
    order = sorted(range(len(options)), key=lambda i: -options[i][0][0] if options[i] else 0)
    chosen: list[_Option | None] = [None] * len(options)
    used: set[int] = set()
    for i in order:
        option = next((o for o in options[i] if o[1] not in used and o[2] not in used), None)
        if option is None:
            return None
        chosen[i] = option
        used |= {option[1], option[2]}
    return chosen


def _tiling_assignment(
    origins: Sequence[tuple[int, int]], topo: GridTopology, blocked: set[int]
) -> list[_Option] | None:
    tiles = [t for t in _domino_tiling(topo.k) if not set(t) & blocked]
    if len(tiles) < len(origins):
        return None
    tile_options = _options(origins, topo, set())
    lookup = [{frozenset(o[1:]): o for o in opts} for opts in tile_options]
    costs = np.array([[lookup[i][frozenset(t)][0] for t in tiles] for i in range(len(origins))])
    rows, cols = linear_sum_assignment(costs)
    chosen: list[_Option] = [None] * len(origins)  # type: ignore[list-item]
    for i, j in zip(rows, cols, strict=True):
        chosen[i] = lookup[i][frozenset(tiles[j])]
    return chosen


def _local_search(
    options: list[list[_Option]], chosen: list[_Option], candidates: int
) -> list[_Option]:
    """Single-pair moves and pairwise exchanges among each pair's cheapest options."""
    chosen = list(chosen)
    shortlist = [opts[:candidates] for opts in options]

    def occupied(skip: Iterable[int]) -> set[int]:
        skipped = set(skip)
        return {s for i, o in enumerate(chosen) if i not in skipped for s in o[1:]}

    improved = True
    while improved:
        improved = False
        for i in range(len(chosen)):
            used = occupied([i])
            for option in shortlist[i]:
                if option[0] >= chosen[i][0]:
                    break
                if not set(option[1:]) & used:
                    chosen[i] = option
                    improved = True
                    break
        for i in range(len(chosen)):
            for j in range(i + 1, len(chosen)):
                current = chosen[i][0] + chosen[j][0]
                used = occupied([i, j])
                best = None
                for oi in shortlist[i]:
                    if oi[0] >= current or set(oi[1:]) & used:
                        continue
                    for oj in shortlist[j]:
                        total = oi[0] + oj[0]
                        if total >= current:
                            break
                        sites = {oi[1], oi[2], oj[1], oj[2]}
                        if len(sites) == 4 and not sites & used:
                            best, current = (oi, oj), total
                            break
                if best is not None:
                    chosen[i], chosen[j] = best
                    improved = True
    return chosen


def _branch_and_bound(
    options: list[list[_Option]], incumbent: list[_Option] | None
) -> list[_Option] | None:
    """Depth-first search with per-pair cheapest-option lower bounds; the
    incumbent is returned if nothing cheaper is found within the node limit."""
    order = sorted(range(len(options)), key=lambda i: -options[i][0][0] if options[i] else 0)
    ordered = [options[i] for i in order]
    if any(not opts for opts in ordered):
        return None
    suffix = [0] * (len(ordered) + 1)
    for i in range(len(ordered) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + ordered[i][0][0]

    best_cost = sum(o[0] for o in incumbent) if incumbent is not None else np.inf
    best: list[_Option] | None = None
    partial: list[_Option] = []
    nodes = 0

    def search(depth: int, cost: int, used: set[int]) -> None:
        nonlocal best_cost, best, nodes
        nodes += 1
        if nodes > cc.EXACT_ASSIGNMENT_NODE_LIMIT:
            return
        if depth == len(ordered):
            if cost < best_cost:
                best_cost, best = cost, list(partial)
            return
        for option in ordered[depth]:
            if cost + option[0] + suffix[depth + 1] >= best_cost:
                break
            if option[1] in used or option[2] in used:
                continue
            partial.append(option)
            search(depth + 1, cost + option[0], used | {option[1], option[2]})
            partial.pop()

    search(0, 0, set())
    if best is None:
        return incumbent
    result: list[_Option] = [None] * len(options)  # type: ignore[list-item]
    for position, i in enumerate(order):
        result[i] = best[position]
    return result


def _solve_assignment(
    origins: Sequence[tuple[int, int]], topo: GridTopology, blocked: set[int], method: str
) -> list[_Option] | None:
    if not origins:
        return []
    options = _options(origins, topo, blocked)
    if any(not opts for opts in options):
        return None
    start = _greedy(options) or _tiling_assignment(origins, topo, blocked)
    if start is not None:
        start = _local_search(options, start, cc.HEURISTIC_CANDIDATES)
    if method == "heuristic":
        return start
    return _branch_and_bound(options, start)


def assign_meeting_sites(
    group: Sequence[Pair], topo: GridTopology, method: str = "auto"
) -> MeetingPlan:
    """
    Choose adjacent meeting sites for every pair of a group, minimizing the
    summed L¹ distance from the pair members' grid sites.

    Pairs inside one grid group keep their site fixed when possible; if that
    makes the problem infeasible they are deferred to a layer right after
    the hidden swaps.

    Args:
        group: Pairs using every grid group at most once
        topo: Grid topology
        method: "exact" (branch and bound), "heuristic" (greedy plus
            pairwise exchange) or "auto" (exact up to k = 4)

    Raises:
        ValidationError: For an unknown method, a group reusing a grid group
            or more spanning pairs than the grid can seat
    """
    if method not in ("auto", "exact", "heuristic"):
        raise ValidationError(f"Unknown assignment method '{method}'", "method")
    if method == "auto":
        method = "exact" if topo.k <= cc.EXACT_ASSIGNMENT_MAX_K else "heuristic"

    spanning: list[Pair] = []
    origins: list[tuple[int, int]] = []
    internal: list[Pair] = []
    used_groups: list[int] = []
    for a, b in group:
        ga, gb = topo.group_of(a), topo.group_of(b)
        used_groups += [ga] if ga == gb else [ga, gb]
        if ga == gb:
            internal.append((a, b))
        else:
            spanning.append((a, b))
            origins.append((min(ga, gb), max(ga, gb)))
    if len(set(used_groups)) != len(used_groups):
        raise ValidationError("Group uses a grid group more than once", "group")
    if len(spanning) > topo.sites // 2:
        raise ValidationError(
            f"{len(spanning)} pairs cannot meet on a {topo.k}×{topo.k} grid", "group"
        )

    reserved = {topo.group_of(a) for a, _ in internal}
    solution = _solve_assignment(origins, topo, reserved, method)
    stationary, deferred = tuple(internal), ()
    if solution is None:
        solution = _solve_assignment(origins, topo, set(), method)
        stationary, deferred = (), tuple(internal)
    if solution is None:
        raise HiddenQubitError("No meeting-site assignment found", {"group": list(group)})

    destinations = {}
    for (a, b), (_, low_site, high_site) in zip(spanning, solution, strict=True):
        if topo.group_of(a) < topo.group_of(b):
            destinations[(a, b)] = (low_site, high_site)
        else:
            destinations[(a, b)] = (high_site, low_site)
    return MeetingPlan(
        destinations, stationary, deferred, int(sum(o[0] for o in solution))
    )


def _line_sort_layers(
    occupant: list[int], target: Mapping[int, int], lines: list[list[int]]
) -> list[list[SiteSwap]]:
    """
    Odd-even transposition sort run on all lines in parallel; ``target``
    gives each item's index along its line.
    """
    layers = []
    length = len(lines[0]) if lines else 0
    for step in range(2 * length + 2):
        if all(
            target[occupant[line[i]]] <= target[occupant[line[i + 1]]]
            for line in lines
            for i in range(length - 1)
        ):
            return layers
        layer = []
        for line in lines:
            for i in range(step % 2, length - 1, 2):
                left, right = line[i], line[i + 1]
                if target[occupant[left]] > target[occupant[right]]:
                    occupant[left], occupant[right] = occupant[right], occupant[left]
                    layer.append((left, right))
        if layer:
            layers.append(layer)
    raise HiddenQubitError("Odd-even transposition sort did not finish")


def _intermediate_rows(perm: Sequence[int], k: int) -> dict[int, int]:
    """
    Row every item visits between the column and row phases so that no row
    holds two items bound for the same column.

    Columns and destination columns form a k-regular bipartite multigraph;
    it splits into k perfect matchings, one per row, preferring items that
    already sit in that row.
    """
    unassigned = set(range(k * k))
    rows: dict[int, int] = {}
    for row in range(k):
        buckets: dict[tuple[int, int], list[int]] = {}
        for item in sorted(unassigned):
            buckets.setdefault((item % k, perm[item] % k), []).append(item)
        graph = nx.Graph()
        for (col, dest), items in buckets.items():
            stays = any(item // k == row for item in items)
            graph.add_edge(("col", col), ("dest", dest), weight=1 + int(stays))
        matching = nx.max_weight_matching(graph, maxcardinality=True)
        if len(matching) != k:
            raise HiddenQubitError("Column/row demand graph has no perfect matching")
        for u, v in sorted(matching):
            col_node, dest_node = (u, v) if u[0] == "col" else (v, u)
            items = buckets[(col_node[1], dest_node[1])]
            item = next((i for i in items if i // k == row), items[0])
            rows[item] = row
            unassigned.discard(item)
    return rows


def route_permutation(perm: Sequence[int], k: int) -> list[list[SiteSwap]]:
    """
    Swap layers moving the content of grid site s to site perm[s].

    Three phases: within columns to intermediate rows, within rows to the
    destination columns, within columns to the destination rows. Each phase
    sorts all its lines in parallel by odd-even transposition, so the total
    is at most 3k layers of nearest-neighbour swaps.

    Raises:
        ValidationError: If perm is not a permutation of the k² sites
    """
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(k * k)):
        raise ValidationError(f"Not a permutation of {k * k} sites", "perm")

    rows = _intermediate_rows(perm, k)
    occupant = list(range(k * k))
    columns = [[r * k + c for r in range(k)] for c in range(k)]
    lines_by_row = [[r * k + c for c in range(k)] for r in range(k)]

    layers = []
    layers += _line_sort_layers(occupant, rows, columns)
    layers += _line_sort_layers(occupant, {i: perm[i] % k for i in range(k * k)}, lines_by_row)
    layers += _line_sort_layers(occupant, {i: perm[i] // k for i in range(k * k)}, columns)
    return layers


@dataclass(frozen=True)
class Operation:
    kind: str
    slot_a: int
    slot_b: int

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "slots": [self.slot_a, self.slot_b]}


Layer = tuple[Operation, ...]


@dataclass(frozen=True)
class RoutingPlan:
    layers: tuple[Layer, ...]
    pairs: tuple[Pair, ...] = field(default_factory=tuple)

    @property
    def n_g(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def n_s(self) -> int:
        return len(self.layers)

    def to_dict(self) -> dict[str, Any]:
        return {
            "pairs": [list(p) for p in self.pairs],
            "n_g": self.n_g,
            "n_s": self.n_s,
            "layers": [[op.to_dict() for op in layer] for layer in self.layers],
        }


def _complete_permutation(partial: dict[int, int], topo: GridTopology) -> list[int]:
    sources = [s for s in range(topo.sites) if s not in partial]
    targets = sorted(set(range(topo.sites)) - set(partial.values()))
    perm = dict(partial)
    if sources:
        costs = np.array([[topo.distance(s, t) for t in targets] for s in sources])
        rows, cols = linear_sum_assignment(costs)
        for i, j in zip(rows, cols, strict=True):
            perm[sources[i]] = targets[j]
    return [perm[s] for s in range(topo.sites)]


def _group_layers(group: Sequence[Pair], topo: GridTopology) -> list[Layer]:
    meeting = assign_meeting_sites(group, topo)

    hidden_swaps = []
    for a, b in group:
        ga, gb = topo.group_of(a), topo.group_of(b)
        if ga != gb:
            hidden_swaps += [
                Operation(HIDDEN_SWAP, q, topo.group_of(q))
                for q in (a, b)
                if not topo.is_control(q)
            ]
        elif not topo.is_control(a) and not topo.is_control(b):
            # Both hidden: only the first moves onto the control qubit
            hidden_swaps.append(Operation(HIDDEN_SWAP, a, ga))

    def internal_entangle(pair: Pair) -> Operation:
        return Operation(ENTANGLE, topo.group_of(pair[0]), pair[1])

    partial = {}
    for (a, b), (ta, tb) in meeting.destinations.items():
        partial[topo.group_of(a)] = ta
        partial[topo.group_of(b)] = tb
    for a, _ in meeting.stationary:
        partial[topo.group_of(a)] = topo.group_of(a)
    route = route_permutation(_complete_permutation(partial, topo), topo.k)
    route_in = [tuple(Operation(GRID_SWAP, a, b) for a, b in layer) for layer in route]

    entangle = [Operation(ENTANGLE, ta, tb) for ta, tb in meeting.destinations.values()]
    entangle += [internal_entangle(pair) for pair in meeting.stationary]

    layers: list[Layer] = [
        tuple(hidden_swaps),
        tuple(internal_entangle(pair) for pair in meeting.deferred),
        *route_in,
        tuple(entangle),
        *reversed(route_in),
        tuple(hidden_swaps),
    ]
    return [layer for layer in layers if layer]


def layer_cost(pairing: Pairing, topo: GridTopology) -> tuple[int, int, RoutingPlan]:
    """
    Transpile one layer of pairs.

    Returns:
        (n_g, n_s, plan): total operations, time steps and the plan itself
    """
    validate_pairing(pairing, topo)
    layers = []
    for group in group_pairs(pairing, topo):
        layers += _group_layers(group, topo)
    plan = RoutingPlan(tuple(layers), pairing.pairs)
    return plan.n_g, plan.n_s, plan


def validate_plan(plan: RoutingPlan, topo: GridTopology, pairing: Pairing) -> None:
    """
    Replay a plan: every layer acts on disjoint adjacent slots, every pair is
    entangled exactly once while adjacent and all qubits end where they
    started.

    Raises:
        ValidationError: On the first violation found
    """
    occupant = list(range(topo.n_qubits))
    expected = {frozenset(p) for p in pairing.pairs}
    entangled: set[frozenset[int]] = set()
    for index, layer in enumerate(plan.layers):
        touched: set[int] = set()
        for op in layer:
            slots = {op.slot_a, op.slot_b}
            if len(slots) != 2 or slots & touched:
                raise ValidationError(f"Layer {index} reuses a qubit", "layers")
            touched |= slots
            if not topo.adjacent(op.slot_a, op.slot_b):
                raise ValidationError(
                    f"Layer {index}: slots {op.slot_a} and {op.slot_b} are not adjacent",
                    "layers",
                )
            controls = topo.is_control(op.slot_a) + topo.is_control(op.slot_b)
            match op.kind:
                case "hidden-swap" if controls == 1:
                    pass
                case "grid-swap" if controls == 2:
                    pass
                case "entangle":
                    pair = frozenset((occupant[op.slot_a], occupant[op.slot_b]))
                    if pair not in expected or pair in entangled:
                        raise ValidationError(
                            f"Layer {index} entangles unexpected pair {sorted(pair)}",
                            "layers",
                        )
                    entangled.add(pair)
                    continue
                case _:
                    raise ValidationError(
                        f"Layer {index}: invalid {op.kind} operation", "layers"
                    )
            occupant[op.slot_a], occupant[op.slot_b] = occupant[op.slot_b], occupant[op.slot_a]
    if entangled != expected:
        raise ValidationError(f"{len(expected - entangled)} pairs never entangled", "layers")
    if occupant != list(range(topo.n_qubits)):
        raise ValidationError("Qubits are not restored to their initial slots", "layers")
