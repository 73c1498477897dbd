"""Dense graphs, Cayley graphs, common-neighbor counts and graph6 I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ContainsIdentity, MalformedInput, NotInverseClosed, TooLarge
from .groups import FiniteGroup

GRAPH6_MAX_N = 2**18 - 1


@dataclass(eq=False)
class Graph:
    """Undirected simple graph stored as a symmetric boolean adjacency matrix."""

    adj: np.ndarray
    labels: list[str] | None = field(default=None)

    def __post_init__(self):
        a = np.asarray(self.adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if a.diagonal().any():
            raise ValueError("adjacency has loops")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency is not symmetric")
        self.adj = a

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adj[v]).tolist()

    def edges(self) -> list[tuple[int, int]]:
        u, v = np.nonzero(np.triu(self.adj, 1))
        return list(zip(u.tolist(), v.tolist()))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex perm[u] plays the role of old vertex u."""
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return Graph(self.adj[np.ix_(inv, inv)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and np.array_equal(self.adj, other.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={int(self.adj.sum()) // 2})"

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            a[u, v] = a[v, u] = True
        return cls(a)


def cayley_graph(G: FiniteGroup, S: Iterable[int]) -> Graph:
    """x ~ y iff x y^{-1} in S."""
    s = np.unique(np.asarray(list(S), dtype=np.int64))
    if G.identity in s:
        raise ContainsIdentity("generating set contains the identity")
    if not np.isin(G.inv[s], s).all():
        raise NotInverseClosed("generating set is not closed under inversion")
    in_s = np.zeros(G.order, dtype=bool)
    in_s[s] = True
    quot = G.mul[:, G.inv]  # quot[x, y] = x y^{-1}
    return Graph(in_s[quot], labels=G.labels)


def common_neighbor_counts(g: Graph) -> np.ndarray:
    a = g.adj.astype(np.int32)
    return a @ a


def common_neighbor_profile(g: Graph) -> dict[int, int]:
    """Histogram of common-neighbor counts over unordered pairs of distinct vertices."""
    c = common_neighbor_counts(g)[np.triu_indices(g.n, 1)]
    vals, cnt = np.unique(c, return_counts=True)
    return {int(v): int(k) for v, k in zip(vals, cnt)}


# --- graph6 -----------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= GRAPH6_MAX_N:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    raise TooLarge(f"graph6 supports n < 2^18, got {n}")


def _column_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Pairs (i, j), i < j, in graph6 order x(0,1), x(0,2), x(1,2), x(0,3), ..."""
    r, c = np.triu_indices(n, 1)
    order = np.lexsort((r, c))
    return r[order], c[order]


def graph6_encode(g: Graph) -> bytes:
    head = _encode_n(g.n)
    i, j = _column_pairs(g.n)
    bits = g.adj[i, j]
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=bool)]).reshape(-1, 6)
    vals = bits.astype(np.uint8) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return head + bytes((vals + 63).tolist())


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data or any(b < 63 or b > 126 for b in data):
        raise MalformedInput("graph6 bytes must lie in 63..126")
    if data[0] != 126:
        n, rest = data[0] - 63, data[1:]
    else:
        if len(data) < 4 or data[1] == 126:
            raise MalformedInput("unsupported or truncated graph6 size header")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        rest = data[4:]
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise MalformedInput(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(rest)}")
    vals = np.frombuffer(bytes(rest), dtype=np.uint8) - 63
    bits = np.unpackbits(vals[:, None], axis=1)[:, 2:].ravel().astype(bool)
    if bits[nbits:].any():
        raise MalformedInput("nonzero padding bits")
    i, j = _column_pairs(n)
    adj = np.zeros((n, n), dtype=bool)
    adj[i, j] = bits[:nbits]
    adj |= adj.T
    return Graph(adj)


def write_graph6(path: str | Path, graphs: Iterable[Graph]) -> None:
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(graph6_encode(g) + b"\n")


def read_graph6(path: str | Path) -> list[Graph]:
    out = []
    for line in Path(path).read_bytes().splitlines():
        if line.strip():
            out.append(graph6_decode(line))
    return out


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lab = g.labels[v] if g.labels else str(v)
        lines.append(f'  {v} [label="{lab}"];')
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: Graph) -> str:
    d = {"n": g.n, "adjacency": [g.neighbors(v) for v in range(g.n)]}
    if g.labels:
        d["labels"] = g.labels
    return json.dumps(d)
