"""Capacity engines for the two one-shot error metrics.

The primary engines work directly on the channel:

* ``max_capacity``  -- packs pairwise-disjoint minimal decoding sets, one
  per chosen input.  The packing size equals the independence number of
  the maximum-one-shot graph (``max_capacity_via_graph`` crosses the two
  paths against each other in the test suite).
* ``avg_capacity``  -- searches codebooks largest-first; for a fixed
  codebook the pointwise-argmax decoder is average-optimal, so the mean
  error of a codebook is 1 - (1/k) * sum_y max_x P(y|x) and admissibility
  is a single exact comparison.  ``avg_capacity_via_sparse`` goes through
  the eps-sparse number of the average-one-shot graph instead.

``brute_force_capacity`` enumerates every codebook and every total decoder
on tiny channels; it is the independent oracle the engines are validated
against and is deliberately kept literal.

Capacity values are reported as the exact codebook size k; log2(k) is only
ever rendered for display, never compared.

All epsilon comparisons are exact rational comparisons; the capacity-vs-
epsilon step function jumps exactly at rational breakpoints and
``capacity_curve`` recovers those breakpoints exactly.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .channel import ONE, ZERO, Channel, FunnelSpec, format_prob
from .decoding import (
    Scheme,
    avg_error,
    max_error,
    minimal_decoding_masks,
    optimal_avg_decoder,
    scheme_from_disjoint_sets,
)
from .graphs import build_avg_graph, build_max_graph, independence_number, sparse_number

METRIC_MAX = "maximum"
METRIC_AVG = "average"

_BRUTE_FORCE_LIMIT = 5


def normalize_metric(metric: str) -> str:
    aliases = {
        "max": METRIC_MAX, "maximum": METRIC_MAX,
        "avg": METRIC_AVG, "average": METRIC_AVG,
    }
    try:
        return aliases[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}") from None


def render_bits(k: int) -> str:
    return f"{math.log2(k):.12f}"


@dataclass(frozen=True)
class CapacityResult:
    """Capacity value (exact codebook size) plus a witness scheme."""

    metric: str
    epsilon: Fraction
    codebook_size: int
    witness: Scheme

    def __post_init__(self):
        if self.codebook_size < 1:
            raise ValueError("codebook size is always >= 1")
        if len(self.witness.codebook) != self.codebook_size:
            raise ValueError("witness codebook size does not match the claim")

    @property
    def capacity_bits(self) -> float:
        return math.log2(self.codebook_size)

    def to_json_dict(self) -> dict:
        return {
            "metric": self.metric,
            "epsilon": format_prob(self.epsilon),
            "codebook_size": self.codebook_size,
            "capacity_bits": render_bits(self.codebook_size),
            "witness": self.witness.to_json_dict(),
        }


@dataclass(frozen=True)
class CapacityCurve:
    """Right-continuous step function of codebook size versus epsilon.

    breakpoints[i] = (threshold, k): size is k for thresholds[i] <= eps <
    thresholds[i+1].  Thresholds start at 0 and sizes increase strictly.
    """

    metric: str
    breakpoints: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        if not self.breakpoints or self.breakpoints[0][0] != ZERO:
            raise ValueError("curve must start at epsilon = 0")
        for (t0, k0), (t1, k1) in zip(self.breakpoints, self.breakpoints[1:]):
            if not (t0 < t1 and k0 < k1):
                raise ValueError("breakpoints must increase strictly in both fields")

    def value_at(self, eps: Fraction) -> int:
        eps = Fraction(eps)
        if not (ZERO <= eps <= ONE):
            raise ValueError("eps must be in [0, 1]")
        thresholds = [t for t, _ in self.breakpoints]
        return self.breakpoints[bisect_right(thresholds, eps) - 1][1]

    def to_csv(self) -> str:
        lines = ["epsilon,codebook_size,capacity_bits"]
        for threshold, k in self.breakpoints:
            lines.append(f"{format_prob(threshold)},{k},{render_bits(k)}")
        return "\n".join(lines) + "\n"


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if not (ZERO <= eps <= ONE):
        raise ValueError("eps must be in [0, 1]")
    return eps


# ---------------------------------------------------------------------------
# Maximum-error metric
# ---------------------------------------------------------------------------

def max_capacity(c: Channel, eps) -> CapacityResult:
    """Largest codebook with worst-codeword error <= eps, by set packing.

    Packs one minimal decoding set per chosen input, pairwise disjoint; the
    witness decoder sends each packed set to its input and every leftover
    output to the first codeword.  eps = 1 short-circuits to the full input
    alphabet (no error can exceed 1).
    """
    eps = _check_eps(eps)
    if eps == ONE:
        scheme = optimal_avg_decoder(c, range(c.num_inputs))
        return CapacityResult(METRIC_MAX, eps, c.num_inputs, scheme)
    minsets = [minimal_decoding_masks(c, x, eps) for x in range(c.num_inputs)]
    _, pairs = _pack_disjoint(minsets)
    witness = scheme_from_disjoint_sets(
        c, [(x, _bits(mask)) for x, mask in pairs]
    )
    return CapacityResult(METRIC_MAX, eps, len(pairs), witness)


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    y = 0
    while mask:
        if mask & 1:
            out.append(y)
        mask >>= 1
        y += 1
    return tuple(out)


def _pack_disjoint(minsets: list[list[int]]) -> tuple[int, list[tuple[int, int]]]:
    """Max number of inputs assignable pairwise-disjoint sets; exact DFS."""
    nx = len(minsets)
    best_count = 0
    best: list[tuple[int, int]] = []
    cur: list[tuple[int, int]] = []

    def dfs(x: int, used: int) -> None:
        nonlocal best_count, best
        if len(cur) + (nx - x) <= best_count:
            return
        if x == nx:
            best_count, best = len(cur), cur.copy()
            return
        for mask in minsets[x]:
            if not mask & used:
                cur.append((x, mask))
                dfs(x + 1, used | mask)
                cur.pop()
        dfs(x + 1, used)

    dfs(0, 0)
    return best_count, best


def max_capacity_via_graph(
    c: Channel, eps, minimal_only: bool = True
) -> CapacityResult:
    """Max-error capacity through the independence number of the conflict
    graph; requires eps < 1 (the graph characterization's domain)."""
    eps = _check_eps(eps)
    if eps == ONE:
        raise ValueError("graph path requires eps < 1; use max_capacity")
    g = build_max_graph(c, eps, minimal_only=minimal_only)
    size, witness = independence_number(g)
    scheme = scheme_from_disjoint_sets(c, witness.pairs)
    return CapacityResult(METRIC_MAX, eps, size, scheme)


# ---------------------------------------------------------------------------
# Average-error metric
# ---------------------------------------------------------------------------

def avg_capacity(c: Channel, eps) -> CapacityResult:
    """Largest codebook whose optimal decoder has mean error <= eps.

    Codebook sizes are searched largest-first with a per-size bound (the
    best case uses the column maxima over the whole input alphabet), then
    codebooks in lexicographic order; the first admissible codebook wins,
    which makes witnesses deterministic.
    """
    eps = _check_eps(eps)
    nx, ny = c.num_inputs, c.num_outputs
    global_captured = sum(
        (max(c.prob(x, y) for x in range(nx)) for y in range(ny)), ZERO
    )
    for k in range(nx, 0, -1):
        if ONE - global_captured / k > eps:
            continue  # even the best-case codebook of this size fails
        for cb in combinations(range(nx), k):
            captured = sum(
                (max(c.prob(x, y) for x in cb) for y in range(ny)), ZERO
            )
            if ONE - captured / k <= eps:
                return CapacityResult(METRIC_AVG, eps, k, optimal_avg_decoder(c, cb))
    raise AssertionError("unreachable: a singleton codebook has error 0")


def avg_capacity_via_sparse(c: Channel, eps, exhaustive_bound: int = 10) -> CapacityResult:
    """Average capacity through the eps-sparse number of the weighted graph.

    The sparse-set path matches the codebook search whenever some optimal
    scheme keeps positive decoding mass on every codeword.  A scheme may
    instead sacrifice a codeword outright (decoding error exactly 1, e.g.
    duplicate rows fighting over a single output at large eps); such
    codewords have no graph node, so on those instances this path returns
    a smaller, still witness-sound, value.
    """
    eps = _check_eps(eps)
    g = build_avg_graph(c, exhaustive_bound=exhaustive_bound)
    size, witness = sparse_number(g, eps)
    scheme = scheme_from_disjoint_sets(c, witness.pairs)
    return CapacityResult(METRIC_AVG, eps, size, scheme)


# ---------------------------------------------------------------------------
# Closed form for the funnel family
# ---------------------------------------------------------------------------

def funnel_closed_form(spec: FunnelSpec, eps) -> int:
    """Max-metric codebook size of the funnel channel, without any search.

    With sentinels e_0 = 0 and e_n = 1, the size is i+1 for the unique i
    with e_i <= eps < e_{i+1}: the codebook {1, ..., i+1} decodes symbol
    i+1 through everything that leaks, and no larger codebook survives
    because all other symbols leak into output 0 with mass > eps.
    """
    eps = _check_eps(eps)
    return bisect_right(spec.e, eps) + 1


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def brute_force_capacity(c: Channel, metric: str, eps) -> CapacityResult:
    """Exhaustive maximization over every codebook and every total decoder.

    The oracle the engines are tested against: nothing shared with the
    packing, graph, or codebook-search paths beyond the error metrics
    themselves.  Limited to 5x5 channels (decoder count is |codebook|^|Y|).
    """
    eps = _check_eps(eps)
    metric = normalize_metric(metric)
    nx, ny = c.num_inputs, c.num_outputs
    if nx > _BRUTE_FORCE_LIMIT or ny > _BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {_BRUTE_FORCE_LIMIT}x{_BRUTE_FORCE_LIMIT} channels")
    err_fn = max_error if metric == METRIC_MAX else avg_error
    for k in range(nx, 0, -1):
        for cb in combinations(range(nx), k):
            for dec in product(cb, repeat=ny):
                s = Scheme(cb, dec)
                if err_fn(c, s) <= eps:
                    return CapacityResult(metric, eps, k, s)
    raise AssertionError("unreachable: a singleton codebook has error 0")


# ---------------------------------------------------------------------------
# Capacity curves
# ---------------------------------------------------------------------------

def capacity_curve(c: Channel, metric: str, exhaustive_bound: int = 12) -> CapacityCurve:
    """Exact breakpoints of codebook size as a step function of epsilon.

    Maximum metric: the admissible-set families change only at values
    1 - mass(D) over output subsets D, so those are the only candidate
    thresholds.  Average metric: the capacity jumps only at achievable
    optimal-decoder mean errors, one per codebook.  Candidates are
    evaluated exactly and equal consecutive sizes are merged.
    """
    metric = normalize_metric(metric)
    if metric == METRIC_MAX:
        if c.num_outputs > exhaustive_bound:
            raise ValueError(
                f"curve sweep needs <= {exhaustive_bound} outputs, channel has {c.num_outputs}"
            )
        candidates = set()
        for x in range(c.num_inputs):
            masses = _row_subset_masses(c, x)
            candidates.update(ONE - m for m in masses)
        sizes = {
            eps: max_capacity(c, eps).codebook_size for eps in candidates
        }
    else:
        if c.num_inputs > exhaustive_bound:
            raise ValueError(
                f"curve sweep needs <= {exhaustive_bound} inputs, channel has {c.num_inputs}"
            )
        nx, ny = c.num_inputs, c.num_outputs
        err_of_size: dict[Fraction, int] = {}
        for k in range(1, nx + 1):
            for cb in combinations(range(nx), k):
                captured = sum(
                    (max(c.prob(x, y) for x in cb) for y in range(ny)), ZERO
                )
                err = ONE - captured / k
                if err_of_size.get(err, 0) < k:
                    err_of_size[err] = k
        candidates = set(err_of_size)
        # size at threshold v = best size among errors <= v
        sizes = {}
        running = 0
        for err in sorted(candidates):
            running = max(running, err_of_size[err])
            sizes[err] = running

    breakpoints: list[tuple[Fraction, int]] = []
    for eps in sorted(candidates):
        k = sizes[eps]
        if not breakpoints or k > breakpoints[-1][1]:
            breakpoints.append((eps, k))
    return CapacityCurve(metric, tuple(breakpoints))


def _row_subset_masses(c: Channel, x: int) -> list[Fraction]:
    row = c.row(x)
    masses = [ZERO] * (1 << len(row))
    for mask in range(1, 1 << len(row)):
        low = mask & -mask
        masses[mask] = masses[mask ^ low] + row[low.bit_length() - 1]
    return masses
