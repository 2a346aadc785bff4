"""Conflict graphs over (input, decoding set) pairs, and exact solvers.

Two graphs drive the two capacity metrics:

* the maximum-one-shot graph for an error budget eps: nodes are pairs
  (x, D) where D captures mass >= 1-eps of row x; nodes conflict when they
  share the input or their output sets intersect.  An independent set is a
  packing of decoder pre-images, so the max-error capacity is the log of
  the independence number.

* the average-one-shot graph: nodes are pairs (x, D) with positive mass;
  conflicting pairs get an infinite edge, all other pairs a finite edge
  weighing the two escape masses P(Y not in D | X=x) + P(Y not in D'|X=x').
  An eps-sparse set (induced weight at most eps*k*(k-1), each unordered
  pair counted once) corresponds to a scheme with average error <= eps.

For a set with no infinite edges the dsets are pairwise disjoint and the
inputs distinct, so the induced weight collapses to (k-1) * sum of the
member escapes; the sparse condition is then equivalent to
sum(escapes) <= eps*k for k >= 2.  The sparse-set solver branches on that
form; the exhaustive fallback sums pair weights directly so the two
accountings check each other.

The independence-number solver is an exact branch and bound (max clique on
the complement with a greedy colouring bound) over bitmask adjacency; an
enumeration-based exhaustive mode is kept as an independent cross-check
for small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .channel import ONE, ZERO, Channel, format_prob
from .decoding import minimal_decoding_masks

_EXHAUSTIVE_NODE_LIMIT = 20


@dataclass(frozen=True)
class OneShotNode:
    """A candidate decoder pre-image: input symbol x with output set D."""

    input: int
    outputs: tuple[int, ...]
    mask: int


@dataclass(frozen=True)
class NodeSetWitness:
    """Node indices backing a claimed independence / sparsity value."""

    indices: tuple[int, ...]
    pairs: tuple[tuple[int, tuple[int, ...]], ...]

    def to_json_list(self) -> list:
        return [[x, list(outputs)] for x, outputs in self.pairs]


def _make_nodes(per_input: list[list[tuple[int, Fraction]]]) -> tuple[
    tuple[OneShotNode, ...], tuple[Fraction, ...]
]:
    """Canonical node order: by input, then |D|, then lexicographic D."""
    nodes = []
    escapes = []
    for x, entries in enumerate(per_input):
        entries.sort(key=lambda e: (e[0].bit_count(), _outputs_of(e[0])))
        for mask, escape in entries:
            nodes.append(OneShotNode(x, _outputs_of(mask), mask))
            escapes.append(escape)
    return tuple(nodes), tuple(escapes)


def _outputs_of(mask: int) -> tuple[int, ...]:
    out = []
    y = 0
    while mask:
        if mask & 1:
            out.append(y)
        mask >>= 1
        y += 1
    return tuple(out)


def _subset_masses(row: Sequence[Fraction]) -> list[Fraction]:
    """mass[mask] for every output subset, via the lowest-set-bit recursion."""
    n = len(row)
    masses = [ZERO] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        masses[mask] = masses[mask ^ low] + row[low.bit_length() - 1]
    return masses


# ---------------------------------------------------------------------------
# Maximum-one-shot graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaxOneShotGraph:
    """Unweighted conflict graph; adj[i] is the neighbour bitmask of node i."""

    epsilon: Fraction
    nodes: tuple[OneShotNode, ...]
    adj: tuple[int, ...]

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and bool(self.adj[i] >> j & 1)

    def is_independent_set(self, indices: Sequence[int]) -> bool:
        indices = list(indices)
        for a in range(len(indices)):
            for b in range(a + 1, len(indices)):
                if self.has_edge(indices[a], indices[b]):
                    return False
        return True


def build_max_graph(
    c: Channel,
    eps: Fraction,
    minimal_only: bool = True,
    exhaustive_bound: int = 12,
) -> MaxOneShotGraph:
    """Conflict graph whose nodes are the admissible decoding sets at eps.

    With minimal_only (the default) only inclusion-minimal sets become
    nodes, which preserves the independence number but keeps the graph
    small.  The exhaustive mode enumerates every qualifying subset and is
    limited to channels with at most `exhaustive_bound` outputs.
    """
    eps = Fraction(eps)
    if not (ZERO <= eps < ONE):
        raise ValueError("eps must be in [0, 1) for the maximum-one-shot graph")
    per_input: list[list[tuple[int, Fraction]]] = []
    if minimal_only:
        for x in range(c.num_inputs):
            per_input.append(
                [(m, ZERO) for m in minimal_decoding_masks(c, x, eps)]
            )
    else:
        if c.num_outputs > exhaustive_bound:
            raise ValueError(
                f"exhaustive node enumeration needs <= {exhaustive_bound} outputs, "
                f"channel has {c.num_outputs}"
            )
        threshold = ONE - eps
        for x in range(c.num_inputs):
            masses = _subset_masses(c.row(x))
            per_input.append(
                [(mask, ZERO) for mask in range(1, 1 << c.num_outputs)
                 if masses[mask] >= threshold]
            )
    nodes, _ = _make_nodes(per_input)
    adj = _conflict_adjacency(nodes)
    return MaxOneShotGraph(eps, nodes, adj)


def _conflict_adjacency(nodes: tuple[OneShotNode, ...]) -> tuple[int, ...]:
    n = len(nodes)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if nodes[i].input == nodes[j].input or nodes[i].mask & nodes[j].mask:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return tuple(adj)


# ---------------------------------------------------------------------------
# Exact independent-set solvers (bitmask adjacency)
# ---------------------------------------------------------------------------

def max_independent_set(adj: Sequence[int], method: str = "bnb") -> tuple[int, int]:
    """Exact maximum independent set; returns (size, member bitmask).

    method "bnb" runs branch and bound (clique search on the complement
    with a greedy colouring bound); "exhaustive" walks every independent
    set and is meant as a cross-check on small graphs.
    """
    if method == "exhaustive":
        return _mis_enumerate(adj)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    n = len(adj)
    full = (1 << n) - 1
    complement = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    return _max_clique(complement)


def _max_clique(adj: Sequence[int]) -> tuple[int, int]:
    n = len(adj)
    best_size = 0
    best_mask = 0

    def expand(r_size: int, r_mask: int, cand: int) -> None:
        nonlocal best_size, best_mask
        if cand == 0:
            if r_size > best_size:
                best_size, best_mask = r_size, r_mask
            return
        # Greedy colouring: vertices in colour class c cannot extend a
        # clique by more than c, so colour numbers bound the branches.
        order: list[int] = []
        bound: list[int] = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                bit = avail & -avail
                v = bit.bit_length() - 1
                avail &= ~(adj[v] | bit)
                rest &= ~bit
                order.append(v)
                bound.append(colour)
        for i in range(len(order) - 1, -1, -1):
            if r_size + bound[i] <= best_size:
                return
            v = order[i]
            bit = 1 << v
            expand(r_size + 1, r_mask | bit, cand & adj[v])
            cand &= ~bit

    expand(0, 0, (1 << n) - 1)
    return best_size, best_mask


def _mis_enumerate(adj: Sequence[int]) -> tuple[int, int]:
    n = len(adj)
    best_size = 0
    best_mask = 0

    def rec(cand: int, size: int, mask: int) -> None:
        nonlocal best_size, best_mask
        if size > best_size:
            best_size, best_mask = size, mask
        if cand == 0:
            return
        bit = cand & -cand
        v = bit.bit_length() - 1
        rec(cand & ~(adj[v] | bit), size + 1, mask | bit)
        rec(cand & ~bit, size, mask)

    rec((1 << n) - 1, 0, 0)
    return best_size, best_mask


def _witness_from_mask(nodes: tuple[OneShotNode, ...], mask: int) -> NodeSetWitness:
    indices = tuple(i for i in range(len(nodes)) if mask >> i & 1)
    pairs = tuple((nodes[i].input, nodes[i].outputs) for i in indices)
    return NodeSetWitness(indices, pairs)


def independence_number(
    g: MaxOneShotGraph, method: str = "bnb"
) -> tuple[int, NodeSetWitness]:
    """Exact independence number of the conflict graph, with a witness."""
    size, mask = max_independent_set(g.adj, method=method)
    return size, _witness_from_mask(g.nodes, mask)


# ---------------------------------------------------------------------------
# Average-one-shot graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AvgOneShotGraph:
    """Complete weighted graph over positive-mass decoding sets.

    Edge weights are implicit: conflicting nodes (shared input or
    intersecting dsets) are joined with infinite weight, every other pair
    weighs the sum of the two escape masses.  ``edge_weight`` returns None
    for the infinite case.
    """

    nodes: tuple[OneShotNode, ...]
    escapes: tuple[Fraction, ...]
    num_inputs: int
    num_outputs: int
    supports: tuple[int, ...]

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    def is_conflict(self, i: int, j: int) -> bool:
        a, b = self.nodes[i], self.nodes[j]
        return a.input == b.input or bool(a.mask & b.mask)

    def edge_weight(self, i: int, j: int) -> Fraction | None:
        if i == j:
            raise ValueError("no self edges")
        if self.is_conflict(i, j):
            return None
        return self.escapes[i] + self.escapes[j]

    def node_index(self, x: int, outputs: Sequence[int]) -> int:
        target = tuple(sorted(outputs))
        for i, node in enumerate(self.nodes):
            if node.input == x and node.outputs == target:
                return i
        raise KeyError(f"no node ({x}, {target})")


def build_avg_graph(c: Channel, exhaustive_bound: int = 10) -> AvgOneShotGraph:
    """Average-one-shot graph; node count is exponential in |Y|, so the
    channel must have at most `exhaustive_bound` outputs."""
    if c.num_outputs > exhaustive_bound:
        raise ValueError(
            f"average-one-shot graph needs <= {exhaustive_bound} outputs, "
            f"channel has {c.num_outputs}"
        )
    per_input: list[list[tuple[int, Fraction]]] = []
    for x in range(c.num_inputs):
        masses = _subset_masses(c.row(x))
        per_input.append(
            [(mask, ONE - masses[mask]) for mask in range(1, 1 << c.num_outputs)
             if masses[mask] > ZERO]
        )
    nodes, escapes = _make_nodes(per_input)
    supports = tuple(c.support_mask(x) for x in range(c.num_inputs))
    return AvgOneShotGraph(nodes, escapes, c.num_inputs, c.num_outputs, supports)


def induced_weight_sum(g: AvgOneShotGraph, indices: Sequence[int]) -> Fraction | None:
    """Total induced edge weight, each unordered pair counted once; None if
    the set contains an infinite edge."""
    indices = list(indices)
    total = ZERO
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            w = g.edge_weight(indices[a], indices[b])
            if w is None:
                return None
            total += w
    return total


def is_sparse_set(g: AvgOneShotGraph, indices: Sequence[int], eps: Fraction) -> bool:
    """Direct definition check: induced weight <= eps * k * (k-1)."""
    indices = list(indices)
    if len(set(indices)) != len(indices):
        raise ValueError("witness indices must be distinct")
    k = len(indices)
    if k <= 1:
        return True
    total = induced_weight_sum(g, indices)
    return total is not None and total <= Fraction(eps) * k * (k - 1)


def sparse_number(
    g: AvgOneShotGraph, eps: Fraction, method: str = "bnb"
) -> tuple[int, NodeSetWitness]:
    """Largest eps-sparse node set, exactly, with a witness.

    The branch and bound walks inputs in order, assigning each at most one
    node with dset disjoint from the claimed outputs; for target size k >= 2
    the sparse condition reduces to sum(escapes) <= eps*k, which prunes by
    escape budget.  Nodes padded with zero-probability outputs are skipped:
    their in-support core has the same escape and blocks fewer outputs.
    """
    eps = Fraction(eps)
    if not (ZERO <= eps <= ONE):
        raise ValueError("eps must be in [0, 1]")
    if method == "exhaustive":
        return _sparse_exhaustive(g, eps)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    if not g.nodes:
        raise ValueError("graph has no nodes")

    groups: list[list[tuple[Fraction, int, int]]] = [[] for _ in range(g.num_inputs)]
    for i, node in enumerate(g.nodes):
        if node.mask & ~g.supports[node.input]:
            continue
        groups[node.input].append((g.escapes[i], node.mask, i))
    for entries in groups:
        entries.sort(key=lambda e: (e[0], e[1]))

    nx = g.num_inputs
    for k in range(nx, 1, -1):
        budget = eps * k
        chosen: list[int] = []

        def dfs(x: int, count: int, esc_sum: Fraction, used: int) -> bool:
            if count == k:
                return True
            if count + (nx - x) < k:
                return False
            for esc, mask, idx in groups[x]:
                if esc_sum + esc > budget:
                    break  # entries are escape-sorted
                if mask & used:
                    continue
                chosen.append(idx)
                if dfs(x + 1, count + 1, esc_sum + esc, used | mask):
                    return True
                chosen.pop()
            return dfs(x + 1, count, esc_sum, used)

        if dfs(0, 0, ZERO, 0):
            mask = 0
            for i in chosen:
                mask |= 1 << i
            return k, _witness_from_mask(g.nodes, mask)
    # Singletons are always sparse: k*(k-1) = 0 bounds an empty edge set.
    return 1, _witness_from_mask(g.nodes, 1)


def _sparse_exhaustive(g: AvgOneShotGraph, eps: Fraction) -> tuple[int, NodeSetWitness]:
    """Subset enumeration against the literal definition; small graphs only."""
    n = g.num_nodes
    if n > _EXHAUSTIVE_NODE_LIMIT:
        raise ValueError(f"exhaustive sparse search limited to {_EXHAUSTIVE_NODE_LIMIT} nodes")
    best_size, best_mask = 0, 0
    for mask in range(1, 1 << n):
        k = mask.bit_count()
        if k <= best_size:
            continue
        indices = [i for i in range(n) if mask >> i & 1]
        total = induced_weight_sum(g, indices)
        if total is not None and total <= eps * k * (k - 1):
            best_size, best_mask = k, mask
    return best_size, _witness_from_mask(g.nodes, best_mask)


# ---------------------------------------------------------------------------
# Debug dump format
# ---------------------------------------------------------------------------

def dump_graph(g: MaxOneShotGraph | AvgOneShotGraph) -> str:
    """`node <id> <x> {y,...}` lines, then `edge <i> <j> [weight|inf]` lines."""
    lines = []
    for i, node in enumerate(g.nodes):
        dset = ",".join(str(y) for y in node.outputs)
        lines.append(f"node {i} {node.input} {{{dset}}}")
    n = len(g.nodes)
    if isinstance(g, MaxOneShotGraph):
        for i in range(n):
            for j in range(i + 1, n):
                if g.has_edge(i, j):
                    lines.append(f"edge {i} {j}")
    else:
        for i in range(n):
            for j in range(i + 1, n):
                w = g.edge_weight(i, j)
                lines.append(f"edge {i} {j} {'inf' if w is None else format_prob(w)}")
    return "\n".join(lines) + "\n"
