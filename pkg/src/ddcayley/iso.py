"""Canonical forms by individualization-refinement.

Colour refinement splits cells by the multiset of neighbour colours; the
target cell is the first largest non-singleton cell and its vertices are
individualized in increasing index order.  The certificate is the
lexicographically least packed upper triangle over all leaves of the search
tree.  Subtrees that are images of already explored ones under a discovered
automorphism (fixing the current prefix) are skipped; they would produce the
same leaf certificates.  A leaf equal to the first leaf under an automorphism
that maps the first path onto the current path ends the search of the current
subtree at the level where the two paths diverge.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import TooLarge
from .graphs import Graph

MAX_N = 128


@dataclass(frozen=True)
class Certificate:
    n: int
    bits: bytes
    labeling: tuple[int, ...] = field(compare=False)  # labeling[v] = canonical position of v

    def hex(self) -> str:
        return f"{self.n}:{self.bits.hex()}"

    def canonical_graph(self) -> Graph:
        a = np.zeros((self.n, self.n), dtype=bool)
        iu = np.triu_indices(self.n, 1)
        flat = np.unpackbits(np.frombuffer(self.bits, dtype=np.uint8))[: len(iu[0])]
        a[iu] = flat.astype(bool)
        return Graph(a | a.T)


def refine(adj: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """Equitable refinement of an ordered colouring; colours are ranks 0..k-1."""
    n = adj.shape[0]
    k = int(colors.max()) + 1
    rows = np.arange(n)
    while k < n:
        onehot = np.zeros((n, k), dtype=np.int32)
        onehot[rows, colors] = 1
        keys = np.concatenate([colors[:, None], adj @ onehot], axis=1).astype(">i4")
        # big-endian rows compare bytewise in numeric order; unique on void rows is fast
        rows_v = keys.view(np.dtype((np.void, 4 * keys.shape[1]))).ravel()
        _, new = np.unique(rows_v, return_inverse=True)
        new = new.ravel()
        k2 = int(new.max()) + 1
        colors = new
        if k2 == k:
            break
        k = k2
    return colors


def _individualize(colors: np.ndarray, v: int) -> np.ndarray:
    key = 2 * colors + 1
    key[v] -= 1
    _, new = np.unique(key, return_inverse=True)
    return new.ravel()


def _target_cell(colors: np.ndarray) -> np.ndarray | None:
    sizes = np.bincount(colors)
    big = sizes.max()
    if big == 1:
        return None
    c = int(np.flatnonzero(sizes == big)[0])
    return np.flatnonzero(colors == c)


class _Search:
    def __init__(self, adj: np.ndarray):
        self.adj = adj
        self.A = adj.astype(np.int32)
        self.n = adj.shape[0]
        self.iu = np.triu_indices(self.n, 1)
        self.first: tuple[bytes, np.ndarray] | None = None
        self.best: tuple[bytes, np.ndarray] | None = None
        self.autos: list[np.ndarray] = []
        self.leaves = 0
        self.first_prefix: list[int] = []

    def _bits(self, order: np.ndarray) -> bytes:
        return np.packbits(self.adj[np.ix_(order, order)][self.iu]).tobytes()

    def _leaf(self, colors: np.ndarray, prefix: list[int]) -> int | None:
        """Record a leaf; return a level to jump back to, if any."""
        self.leaves += 1
        order = np.argsort(colors)  # order[pos] = vertex
        bits = self._bits(order)
        if self.first is None:
            self.first = self.best = (bits, order)
            self.first_prefix = list(prefix)
            return None
        for ref_bits, ref_order in (self.first, self.best):
            if bits == ref_bits:
                gamma = np.empty(self.n, dtype=np.int64)
                gamma[ref_order] = order
                self.autos.append(gamma)
                if ref_order is self.first[1] and gamma[self.first_prefix].tolist() == prefix:
                    # gamma carries the first path onto this one, hence the subtree below
                    # their common ancestor onto the one just entered
                    d = 0
                    while prefix[d] == self.first_prefix[d]:
                        d += 1
                    return d
                return None
        if bits < self.best[0]:
            self.best = (bits, order)
        return None

    def _orbits(self, prefix: list[int]) -> np.ndarray | None:
        """Orbit representatives (least member) of the automorphisms found so far that fix prefix."""
        if not self.autos:
            return None
        gens = np.asarray(self.autos)
        if prefix:
            pre = np.asarray(prefix, dtype=np.int64)
            gens = gens[(gens[:, pre] == pre).all(axis=1)]
            if not len(gens):
                return None
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ar = np.arange(self.n)
        for g in gens:
            for x in np.flatnonzero(g != ar).tolist():
                rx, ry = find(x), find(int(g[x]))
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        return np.asarray([find(x) for x in range(self.n)])

    def run(self, colors: np.ndarray, prefix: list[int]) -> int | None:
        cell = _target_cell(colors)
        if cell is None:
            return self._leaf(colors, prefix)
        depth = len(prefix)
        explored: set[int] = set()
        orbits, seen_autos = None, -1
        for v in cell.tolist():
            if explored:
                if len(self.autos) != seen_autos:
                    orbits, seen_autos = self._orbits(prefix), len(self.autos)
                if orbits is not None and int(orbits[v]) in {int(orbits[u]) for u in explored}:
                    continue
            explored.add(v)
            jump = self.run(refine(self.A, _individualize(colors, v)), prefix + [v])
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_form(g: Graph) -> Certificate:
    n = g.n
    if n > MAX_N:
        raise TooLarge(f"canonical_form supports n <= {MAX_N}, got {n}")
    if n == 0:
        return Certificate(0, b"", ())
    search = _Search(g.adj)
    search.run(refine(search.A, np.zeros(n, dtype=np.int64)), [])
    bits, order = search.best
    labeling = np.empty(n, dtype=np.int64)
    labeling[order] = np.arange(n)
    return Certificate(n, bits, tuple(labeling.tolist()))


class IsoResult(NamedTuple):
    isomorphic: bool
    mapping: tuple[int, ...] | None


def is_isomorphism(g1: Graph, g2: Graph, mapping: Sequence[int]) -> bool:
    m = np.asarray(mapping)
    if g1.n != g2.n or sorted(m.tolist()) != list(range(g1.n)):
        return False
    return bool(np.array_equal(g2.adj[np.ix_(m, m)], g1.adj))


def are_isomorphic(g1: Graph, g2: Graph) -> IsoResult:
    """Compare certificates; a True answer carries a verified vertex mapping g1 -> g2."""
    if g1.n != g2.n or int(g1.adj.sum()) != int(g2.adj.sum()):
        return IsoResult(False, None)
    c1, c2 = canonical_form(g1), canonical_form(g2)
    if c1 != c2:
        return IsoResult(False, None)
    order2 = np.empty(g2.n, dtype=np.int64)
    order2[np.asarray(c2.labeling)] = np.arange(g2.n)
    mapping = tuple(int(order2[p]) for p in c1.labeling)
    if not is_isomorphism(g1, g2, mapping):
        raise AssertionError("equal certificates but the induced mapping is not an isomorphism")
    return IsoResult(True, mapping)


def default_jobs() -> int:
    return max(1, int(os.environ.get("DDCAYLEY_JOBS", "1")))


def certificates(graphs: Sequence[Graph], jobs: int | None = None) -> list[Certificate]:
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(graphs) <= 1:
        return [canonical_form(g) for g in graphs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(canonical_form, graphs))


def classify(graphs: Sequence[Graph], jobs: int | None = None) -> list[list[int]]:
    """Isomorphism classes as lists of input positions, in order of first appearance."""
    classes: dict[Certificate, list[int]] = {}
    for k, cert in enumerate(certificates(graphs, jobs)):
        classes.setdefault(cert, []).append(k)
    return list(classes.values())
