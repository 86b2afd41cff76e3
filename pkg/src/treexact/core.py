"""Fundamental value types and operations: dissimilarity matrices, weighted
trees, parsing, path weights, and structural equality.

Vertex labels are 1-based throughout. Both value types are immutable after
construction and every operation here is a pure function, so concurrent read
access is safe.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .errors import InvalidMatrix, InvalidTree, MalformedInput, UnknownVertex
from .numeric import EXACT, ExactPolicy, Policy, Scalar, ensure_same_policy

__all__ = [
    "Edge",
    "DissimilarityMatrix",
    "WeightedTree",
    "parse_matrix",
    "parse_tree",
    "path_weight",
    "all_pairs_weights",
    "trees_equal",
    "tree_to_dot",
]


class Edge(NamedTuple):
    u: int
    v: int
    w: Scalar


def _check_label(label: int, n: int) -> None:
    if not isinstance(label, int) or isinstance(label, bool) or not 1 <= label <= n:
        raise UnknownVertex(label, n)


@dataclass(frozen=True)
class DissimilarityMatrix:
    """Symmetric positive dissimilarities on labels 1..n with a zero diagonal.

    `rows` carries a dummy 0th row and column so entries are addressed
    directly by 1-based labels: ``rows[i][j]`` is the dissimilarity of i and
    j. Build instances through `from_rows` / `from_pairs` / `parse_matrix`,
    which validate; the raw constructor trusts its input.
    """

    n: int
    rows: tuple[tuple[Scalar, ...], ...]
    policy: Policy = EXACT

    def __post_init__(self):
        if len(self.rows) != self.n + 1 or any(len(r) != self.n + 1 for r in self.rows):
            raise InvalidMatrix(f"internal grid shape does not match n={self.n}")

    @classmethod
    def from_rows(cls, raw_rows, policy: Policy = EXACT) -> "DissimilarityMatrix":
        """Validate and build from an n x n nested sequence (0-based storage in,
        1-based labels out)."""
        n = len(raw_rows)
        if n < 1:
            raise InvalidMatrix("matrix must have at least one row")
        cells: list[list[Scalar]] = []
        for i, row in enumerate(raw_rows, start=1):
            row = list(row)
            if len(row) != n:
                raise InvalidMatrix(
                    f"row {i} has {len(row)} entries, expected {n}", row=i
                )
            parsed = []
            for j, cell in enumerate(row, start=1):
                try:
                    parsed.append(policy.coerce(cell))
                except (ValueError, TypeError, ZeroDivisionError) as exc:
                    raise MalformedInput(f"bad entry {cell!r}: {exc}", row=i, col=j)
            cells.append(parsed)
        zero = policy.zero()
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                x = cells[i - 1][j - 1]
                if i == j:
                    if not policy.eq(x, zero):
                        raise InvalidMatrix("nonzero diagonal entry", row=i, col=i)
                    continue
                if not policy.eq(x, cells[j - 1][i - 1]):
                    raise InvalidMatrix("asymmetric entry", row=i, col=j)
                if not policy.is_positive(x):
                    raise InvalidMatrix("non-positive off-diagonal entry", row=i, col=j)
        # Canonical storage: exact zeros on the diagonal, lower mirrors upper.
        grid = [[zero] * (n + 1) for _ in range(n + 1)]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                grid[i][j] = grid[j][i] = cells[i - 1][j - 1]
        return cls(n, tuple(tuple(r) for r in grid), policy)

    @classmethod
    def from_pairs(cls, n: int, pairs, policy: Policy = EXACT) -> "DissimilarityMatrix":
        """Build from a mapping {(i, j): value} covering every unordered pair."""
        zero = policy.zero()
        grid = [[zero] * n for _ in range(n)]
        seen = set()
        for (i, j), value in pairs.items():
            _check_label(i, n)
            _check_label(j, n)
            if i == j:
                raise InvalidMatrix("diagonal pair in pair mapping", row=i, col=j)
            key = (min(i, j), max(i, j))
            if key in seen and grid[key[0] - 1][key[1] - 1] != policy.coerce(value):
                raise InvalidMatrix("conflicting values for one pair", row=i, col=j)
            seen.add(key)
            grid[i - 1][j - 1] = grid[j - 1][i - 1] = policy.coerce(value)
        missing = [
            (i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if (i, j) not in seen
        ]
        if missing:
            raise InvalidMatrix(f"missing pairs: {missing[:5]}")
        return cls.from_rows(grid, policy)

    def d(self, i: int, j: int) -> Scalar:
        """Dissimilarity of labels i and j; zero when i == j."""
        _check_label(i, self.n)
        _check_label(j, self.n)
        return self.rows[i][j]

    def pairs(self) -> Iterator[tuple[int, int, Scalar]]:
        """Yield (i, j, value) for every unordered pair i < j."""
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                yield i, j, self.rows[i][j]

    def to_csv(self) -> str:
        fmt = self.policy.format
        return "\n".join(
            ",".join(fmt(self.rows[i][j]) for j in range(1, self.n + 1))
            for i in range(1, self.n + 1)
        )

    def to_json_dict(self) -> dict:
        fmt = self.policy.format
        return {
            "n": self.n,
            "d": [
                [fmt(self.rows[i][j]) for j in range(1, self.n + 1)]
                for i in range(1, self.n + 1)
            ],
        }

    def comparison_view(self):
        """Return (grid, eq, lt) for hot loops.

        Under the exact policy the grid holds integers (all entries scaled by
        the common denominator), so sums and comparisons are plain int
        arithmetic that mirrors the rational values exactly. Under the float
        policy the grid is the raw floats and eq/lt apply the epsilon rule.
        The view is cached on the instance.
        """
        cached = self.__dict__.get("_cmp_view")
        if cached is not None:
            return cached
        if isinstance(self.policy, ExactPolicy):
            scale = 1
            for _, _, value in self.pairs():
                scale = scale * value.denominator // math.gcd(scale, value.denominator)
            grid = tuple(
                tuple(int(cell * scale) for cell in row) for row in self.rows
            )
            view = (grid, operator.eq, operator.lt)
        else:
            view = (self.rows, self.policy.eq, self.policy.lt)
        object.__setattr__(self, "_cmp_view", view)
        return view

    def __repr__(self):
        return f"DissimilarityMatrix(n={self.n}, policy={self.policy.name})"


@dataclass(frozen=True)
class WeightedTree:
    """Tree on vertex set exactly {1..n} with positive edge weights.

    `edges` is canonical: each edge has u < v and the tuple is sorted by
    (u, v). Leaves, adjacency, and vertex set are derived queries. Build
    through `from_edges`, which normalizes and validates.
    """

    n: int
    edges: tuple[Edge, ...]
    policy: Policy = EXACT

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, policy: Policy = EXACT) -> "WeightedTree":
        if not isinstance(n, int) or n < 1:
            raise InvalidTree(f"vertex count must be a positive integer, got {n!r}")
        normalized = []
        for item in edges:
            u, v, w = item
            if not isinstance(u, int) or not isinstance(v, int):
                raise InvalidTree(f"non-integer endpoint in edge {item!r}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidTree(f"edge ({u},{v}) has an endpoint outside 1..{n}")
            if u == v:
                raise InvalidTree(f"loop edge at vertex {u}")
            try:
                weight = policy.coerce(w)
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise InvalidTree(f"bad weight on edge ({u},{v}): {exc}")
            if not policy.is_positive(weight):
                raise InvalidTree(f"non-positive weight on edge ({u},{v})")
            normalized.append(Edge(min(u, v), max(u, v), weight))
        normalized.sort(key=lambda e: (e.u, e.v))
        if len(normalized) != n - 1:
            raise InvalidTree(f"{len(normalized)} edges for {n} vertices, expected {n - 1}")
        for prev, cur in zip(normalized, normalized[1:]):
            if (prev.u, prev.v) == (cur.u, cur.v):
                raise InvalidTree(f"parallel edges between {cur.u} and {cur.v}")
        tree = cls(n, tuple(normalized), policy)
        if n > 1 and len(tree._reachable_from(1)) != n:
            raise InvalidTree("edges do not connect all vertices into one tree")
        return tree

    def adjacency(self) -> dict[int, list[tuple[int, Scalar]]]:
        adj: dict[int, list[tuple[int, Scalar]]] = {v: [] for v in range(1, self.n + 1)}
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def _reachable_from(self, start: int) -> set[int]:
        adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            here = stack.pop()
            for nxt, _ in adj[here]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def leaves(self) -> list[int]:
        degree = [0] * (self.n + 1)
        for u, v, _ in self.edges:
            degree[u] += 1
            degree[v] += 1
        return [v for v in range(1, self.n + 1) if degree[v] == 1]

    def to_json_dict(self) -> dict:
        fmt = self.policy.format
        return {
            "n": self.n,
            "edges": [{"u": u, "v": v, "w": fmt(w)} for u, v, w in self.edges],
        }

    def __repr__(self):
        return f"WeightedTree(n={self.n}, edges={len(self.edges)}, policy={self.policy.name})"


def parse_matrix(text: str, fmt: str = "csv", policy: Policy = EXACT) -> DissimilarityMatrix:
    """Parse CSV or JSON text into a validated DissimilarityMatrix.

    CSV is n lines of n comma-separated values. JSON is an object
    ``{"n": int, "d": [[...]]}`` whose cells may be numbers or decimal
    strings; an object wrapping the matrix under a "matrix" key (as emitted
    by the generator subcommand) is unwrapped.
    """
    kind = fmt.lower()
    if kind == "csv":
        lines = text.splitlines()
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            raise MalformedInput("empty matrix input")
        raw_rows = []
        for i, line in enumerate(lines, start=1):
            if not line.strip():
                raise MalformedInput("blank line inside matrix", row=i)
            raw_rows.append([cell.strip() for cell in line.split(",")])
        return DissimilarityMatrix.from_rows(raw_rows, policy)
    if kind == "json":
        try:
            obj = json.loads(text, parse_float=policy.json_parse_float)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}")
        if isinstance(obj, dict) and "d" not in obj and isinstance(obj.get("matrix"), dict):
            obj = obj["matrix"]
        if not isinstance(obj, dict) or "n" not in obj or "d" not in obj:
            raise MalformedInput('matrix JSON must be an object with "n" and "d"')
        n, rows = obj["n"], obj["d"]
        if not isinstance(n, int) or not isinstance(rows, list) or len(rows) != n:
            raise MalformedInput('"d" must be an n-row array matching "n"')
        return DissimilarityMatrix.from_rows(rows, policy)
    raise MalformedInput(f"unknown matrix format {fmt!r}")


def parse_tree(text: str, policy: Policy = EXACT) -> WeightedTree:
    """Parse tree JSON ``{"n": int, "edges": [{"u","v","w"}, ...]}``."""
    try:
        obj = json.loads(text, parse_float=policy.json_parse_float)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}")
    if isinstance(obj, dict) and "edges" not in obj and isinstance(obj.get("tree"), dict):
        obj = obj["tree"]
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise MalformedInput('tree JSON must be an object with "n" and "edges"')
    if not isinstance(obj["n"], int) or not isinstance(obj["edges"], list):
        raise MalformedInput('"n" must be an integer and "edges" an array')
    triples = []
    for k, entry in enumerate(obj["edges"]):
        if not isinstance(entry, dict) or not {"u", "v", "w"} <= entry.keys():
            raise MalformedInput(f'edge {k} must be an object with "u", "v", "w"')
        triples.append((entry["u"], entry["v"], entry["w"]))
    return WeightedTree.from_edges(obj["n"], triples, policy)


def path_weight(tree: WeightedTree, i: int, j: int) -> Scalar:
    """Total weight of the unique path between i and j; zero when i == j."""
    _check_label(i, tree.n)
    _check_label(j, tree.n)
    if i == j:
        return tree.policy.zero()
    adj = tree.adjacency()
    dist = {i: tree.policy.zero()}
    stack = [i]
    while stack:
        here = stack.pop()
        if here == j:
            return dist[j]
        for nxt, w in adj[here]:
            if nxt not in dist:
                dist[nxt] = dist[here] + w
                stack.append(nxt)
    return dist[j]


def all_pairs_weights(tree: WeightedTree) -> DissimilarityMatrix:
    """Matrix of path weights between every pair of vertices.

    Positivity and symmetry hold by construction, so the result always
    satisfies the dissimilarity invariants.
    """
    n = tree.n
    adj = tree.adjacency()
    zero = tree.policy.zero()
    grid = [[zero] * (n + 1) for _ in range(n + 1)]
    for src in range(1, n + 1):
        dist = {src: zero}
        stack = [src]
        while stack:
            here = stack.pop()
            for nxt, w in adj[here]:
                if nxt not in dist:
                    dist[nxt] = dist[here] + w
                    stack.append(nxt)
        row = grid[src]
        for dst, value in dist.items():
            if dst > src:
                row[dst] = value
                grid[dst][src] = value
    return DissimilarityMatrix(n, tuple(tuple(r) for r in grid), tree.policy)


def trees_equal(a: WeightedTree, b: WeightedTree) -> bool:
    """True iff same vertex count and identical edge sets with equal weights."""
    policy = ensure_same_policy(a, b)
    if a.n != b.n or len(a.edges) != len(b.edges):
        return False
    for ea, eb in zip(a.edges, b.edges):
        if (ea.u, ea.v) != (eb.u, eb.v) or not policy.eq(ea.w, eb.w):
            return False
    return True


def tree_to_dot(tree: WeightedTree) -> str:
    """Render the tree as an undirected DOT graph with weight labels."""
    lines = ["graph tree {"]
    for v in tree.vertices():
        lines.append(f"  {v};")
    fmt = tree.policy.format
    for u, v, w in tree.edges:
        lines.append(f'  {u} -- {v} [label="{fmt(w)}"];')
    lines.append("}")
    return "\n".join(lines)
