"""Discrete channels with exact rational transition probabilities.

A channel is an |X| x |Y| matrix of transition probabilities P(Y=y|X=x).
Every probability is a `fractions.Fraction`, every row sums to exactly 1,
and every comparison made downstream (admissibility thresholds, capacity
breakpoints) is an exact rational comparison.  Binary floating point never
enters any capacity-relevant decision: capacity is a step function of the
error budget and jumps exactly at rational thresholds, so a float epsilon
could land on the wrong side of a breakpoint.

The module also provides the channel generators used throughout the test
suite and the demos:

* ``gen_funnel``       -- the "funnel" family: symbol 0 is noiseless, every
  other symbol i leaks into output 0 with probability e_i.  Its capacity
  has a simple closed form (see ``capacity.funnel_closed_form``).
* ``gen_from_cubic_graph`` -- the channel derived from a 3-regular graph
  (inputs = vertices, outputs = edges, mass 1/3 on incident edges), the
  instance family behind the hardness reduction.
* ``gen_random``       -- seeded random channels with exact row sums.

File formats (UTF-8 text, ``#`` starts a comment):

    channel <num_inputs> <num_outputs>
    <p> <p> ... <p>          one line per input row; p is "p/q" or a
    ...                      finite decimal such as 0.01

    graph <num_vertices> <num_edges>
    <u> <v>                  one 0-indexed edge per line
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

# "p/q" with integer p, q, or a plain finite decimal (no signs, no exponents).
_PROB_TOKEN = re.compile(r"^(?:\d+/\d+|\d+(?:\.\d*)?|\.\d+)$")


class ChannelFormatError(ValueError):
    """Malformed channel or graph file, with a row/column location."""


def parse_prob(token: str, where: str = "probability") -> Fraction:
    """Parse "p/q" or a finite decimal into an exact Fraction in [0, 1].

    Decimals are converted in base 10 (d digits after the point become a
    numerator over 10^d); they are never routed through binary floats.
    """
    token = token.strip()
    if not _PROB_TOKEN.match(token):
        raise ChannelFormatError(
            f"{where}: {token!r} is not a p/q fraction or finite decimal"
        )
    value = Fraction(token)
    if not (ZERO <= value <= ONE):
        raise ChannelFormatError(f"{where}: {token!r} is outside [0, 1]")
    return value


def format_prob(value: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _as_prob(entry, where: str) -> Fraction:
    if isinstance(entry, str):
        return parse_prob(entry, where)
    value = Fraction(entry)
    if not (ZERO <= value <= ONE):
        raise ValueError(f"{where}: {entry!r} is outside [0, 1]")
    return value


@dataclass(frozen=True)
class Channel:
    """Immutable transition matrix, indexed [input][output]."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("channel needs at least one input")
        width = len(self.rows[0])
        if width == 0:
            raise ValueError("channel needs at least one output")
        for x, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(
                    f"row {x}: expected {width} entries, got {len(row)}"
                )
            for y, p in enumerate(row):
                if not (ZERO <= p <= ONE):
                    raise ValueError(f"entry ({x},{y}): {p} is outside [0, 1]")
            total = sum(row)
            if total != ONE:
                raise ValueError(f"row {x}: probabilities sum to {total}, not 1")

    @classmethod
    def make(cls, rows: Iterable[Iterable]) -> "Channel":
        """Build a Channel from any nested iterable of ints/Fractions/strings."""
        converted = tuple(
            tuple(_as_prob(p, f"entry ({x},{y})") for y, p in enumerate(row))
            for x, row in enumerate(rows)
        )
        return cls(converted)

    @property
    def num_inputs(self) -> int:
        return len(self.rows)

    @property
    def num_outputs(self) -> int:
        return len(self.rows[0])

    def prob(self, x: int, y: int) -> Fraction:
        return self.rows[x][y]

    def row(self, x: int) -> tuple[Fraction, ...]:
        return self.rows[x]

    def support(self, x: int) -> tuple[int, ...]:
        """Outputs with positive probability under input x."""
        return tuple(y for y, p in enumerate(self.rows[x]) if p > ZERO)

    def support_mask(self, x: int) -> int:
        mask = 0
        for y, p in enumerate(self.rows[x]):
            if p > ZERO:
                mask |= 1 << y
        return mask


def identity_channel(n: int) -> Channel:
    """Noiseless n-symbol channel: P(y|x) = 1 iff y == x."""
    return Channel.make([[1 if y == x else 0 for y in range(n)] for x in range(n)])


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_channel(text: str) -> Channel:
    """Parse the channel file format into a validated Channel."""
    lines = list(_content_lines(text))
    if not lines:
        raise ChannelFormatError("empty channel file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "channel":
        raise ChannelFormatError(
            f"line {lineno}: expected 'channel <num_inputs> <num_outputs>'"
        )
    try:
        nx, ny = int(parts[1]), int(parts[2])
    except ValueError:
        raise ChannelFormatError(f"line {lineno}: dimensions must be integers") from None
    if nx < 1 or ny < 1:
        raise ChannelFormatError(f"line {lineno}: dimensions must be positive")
    body = lines[1:]
    if len(body) != nx:
        raise ChannelFormatError(f"expected {nx} rows, found {len(body)}")
    rows = []
    for x, (lineno, line) in enumerate(body):
        tokens = line.split()
        if len(tokens) != ny:
            raise ChannelFormatError(
                f"line {lineno}: row {x} has {len(tokens)} entries, expected {ny}"
            )
        row = tuple(
            parse_prob(tok, f"line {lineno}: row {x}, column {y}")
            for y, tok in enumerate(tokens)
        )
        total = sum(row)
        if total != ONE:
            raise ChannelFormatError(
                f"line {lineno}: row {x} sums to {format_prob(total)}, not 1"
            )
        rows.append(row)
    return Channel(tuple(rows))


def serialize_channel(c: Channel) -> str:
    """Render a Channel in the channel file format. Round-trips exactly."""
    lines = [f"channel {c.num_inputs} {c.num_outputs}"]
    for row in c.rows:
        lines.append(" ".join(format_prob(p) for p in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Cubic graphs (reduction instances)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicGraph:
    """Simple 3-regular graph; edges stored as sorted (u, v) pairs with u < v."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        degree = [0] * self.num_vertices
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge ({u},{v}) not normalized as u < v")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            degree[u] += 1
            degree[v] += 1
        for v, d in enumerate(degree):
            if d != 3:
                raise ValueError(f"vertex {v} has degree {d}, expected 3")

    @classmethod
    def make(cls, num_vertices: int, edges: Iterable[Sequence[int]]) -> "CubicGraph":
        normalized = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        return cls(num_vertices, normalized)

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Indices (into the edge list) of the three edges touching v."""
        return tuple(i for i, (a, b) in enumerate(self.edges) if v in (a, b))

    def neighbors(self, v: int) -> tuple[int, ...]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return tuple(sorted(out))


def parse_cubic_graph(text: str) -> CubicGraph:
    """Parse the graph file format into a validated CubicGraph."""
    lines = list(_content_lines(text))
    if not lines:
        raise ChannelFormatError("empty graph file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "graph":
        raise ChannelFormatError(
            f"line {lineno}: expected 'graph <num_vertices> <num_edges>'"
        )
    try:
        nv, ne = int(parts[1]), int(parts[2])
    except ValueError:
        raise ChannelFormatError(f"line {lineno}: dimensions must be integers") from None
    body = lines[1:]
    if len(body) != ne:
        raise ChannelFormatError(f"expected {ne} edges, found {len(body)}")
    edges = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise ChannelFormatError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ChannelFormatError(f"line {lineno}: vertex ids must be integers") from None
        edges.append((u, v))
    return CubicGraph.make(nv, edges)


def serialize_cubic_graph(g: CubicGraph) -> str:
    lines = [f"graph {g.num_vertices} {len(g.edges)}"]
    for u, v in g.edges:
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FunnelSpec:
    """Parameters of the funnel family: leak probabilities 0 < e_1 < ... <= 1.

    Symbol 0 is transmitted noiselessly; symbol i >= 1 arrives intact with
    probability 1 - e_i and collapses into output 0 with probability e_i.
    Zero leak probabilities are rejected: a symbol that never leaks changes
    the capacity structure and is not part of this family.
    """

    n: int
    e: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("funnel family needs n >= 2 symbols")
        if len(self.e) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} leak probabilities, got {len(self.e)}")
        prev = ZERO
        for i, ei in enumerate(self.e, start=1):
            if not isinstance(ei, Fraction):
                raise ValueError(f"e_{i} must be a Fraction")
            if ei <= prev:
                raise ValueError(
                    f"leak probabilities must be strictly increasing and positive; "
                    f"e_{i} = {ei} after {prev}"
                )
            prev = ei
        if self.e[-1] > ONE:
            raise ValueError(f"e_{self.n - 1} = {self.e[-1]} exceeds 1")

    @classmethod
    def make(cls, n: int, e: Iterable) -> "FunnelSpec":
        return cls(n, tuple(Fraction(v) for v in e))


def gen_funnel(spec: FunnelSpec) -> Channel:
    """Channel of the funnel family: row i puts 1-e_i on output i, e_i on 0."""
    rows = []
    rows.append(tuple(ONE if y == 0 else ZERO for y in range(spec.n)))
    for i in range(1, spec.n):
        ei = spec.e[i - 1]
        row = [ZERO] * spec.n
        row[0] = ei
        row[i] = ONE - ei
        rows.append(tuple(row))
    return Channel(tuple(rows))


def gen_from_cubic_graph(g: CubicGraph) -> Channel:
    """Reduction channel: inputs = vertices, outputs = edges, mass 1/3 on
    each of a vertex's three incident edges.  Rows sum to 1 exactly because
    the graph is 3-regular."""
    third = Fraction(1, 3)
    rows = []
    for v in range(g.num_vertices):
        row = [ZERO] * len(g.edges)
        for i, (a, b) in enumerate(g.edges):
            if v in (a, b):
                row[i] = third
        rows.append(tuple(row))
    return Channel(tuple(rows))


def gen_random(
    num_inputs: int, num_outputs: int, seed: int, denominator_bound: int
) -> Channel:
    """Seeded random channel with exact row sums.

    Each row is a random composition of d = denominator_bound: d unit
    masses are dropped independently into the num_outputs bins, so the row
    sums to d/d = 1 without any renormalization and every entry has
    denominator dividing d.
    """
    if num_inputs < 1 or num_outputs < 1:
        raise ValueError("dimensions must be >= 1")
    if denominator_bound < 1:
        raise ValueError("denominator_bound must be >= 1")
    rng = random.Random(seed)
    d = denominator_bound
    rows = []
    for _ in range(num_inputs):
        counts = [0] * num_outputs
        for _ in range(d):
            counts[rng.randrange(num_outputs)] += 1
        rows.append(tuple(Fraction(k, d) for k in counts))
    return Channel(tuple(rows))
