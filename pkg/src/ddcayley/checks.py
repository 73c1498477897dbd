"""Verifiers for Deza / divisible design structure and divisible difference sets.

``ddg_check`` looks only at the graph and ``dds_check`` only at the group, so
agreement between them is a real cross-check rather than a tautology.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    NoSubgroupFound,
    NoValidPartition,
    NotConstantOffN,
    NotConstantOnN,
    NotRegular,
    ThreeOrMoreValues,
    VerificationFailed,
)
from .field import Field, prime_power
from .graphs import Graph, common_neighbor_counts
from .groups import FiniteGroup, right_cosets, subgroup_test

DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class DezaParams:
    v: int
    k: int
    b: int
    a: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.b, self.a)


@dataclass(frozen=True)
class DDGParams:
    v: int
    k: int
    lambda1: int
    lambda2: int
    m: int
    n: int

    def __post_init__(self):
        if self.v != self.m * self.n:
            raise ValueError(f"v={self.v} != m*n={self.m * self.n}")

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.v, self.k, self.lambda1, self.lambda2, self.m, self.n)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.as_tuple())) + ")"


@dataclass
class DDGResult:
    params: DDGParams
    partition: list[list[int]]
    flags: list[str] = field(default_factory=list)
    alternatives: list[tuple[DDGParams, list[list[int]]]] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return DEGENERATE in self.flags

    def to_dict(self) -> dict:
        return {
            "status": "degenerate" if self.degenerate else "ok",
            "params": asdict(self.params),
            "partition": self.partition,
            "lambda_assignment": {"lambda1": self.params.lambda1, "lambda2": self.params.lambda2},
            "flags": self.flags,
            "alternatives": [{"params": asdict(p), "partition": part} for p, part in self.alternatives],
        }


# --- graph side -------------------------------------------------------------


def deza_check(g: Graph) -> DezaParams:
    deg = g.degrees()
    if g.n == 0 or (deg != deg[0]).any():
        raise NotRegular("graph is not regular")
    c = common_neighbor_counts(g)[np.triu_indices(g.n, 1)]
    vals = sorted(set(c.tolist()))
    if len(vals) > 2:
        raise ThreeOrMoreValues(f"common-neighbor counts take values {vals}")
    if not vals:  # n == 1
        vals = [0]
    return DezaParams(g.n, int(deg[0]), vals[-1], vals[0])


def _partition_for(counts: np.ndarray, lam1: int) -> list[list[int]] | None:
    """Classes of R = {count == lam1} + diagonal, if R is an equivalence with equal classes."""
    n = counts.shape[0]
    rel = counts == lam1
    np.fill_diagonal(rel, True)
    classes, seen = [], np.zeros(n, dtype=bool)
    for u in range(n):
        if seen[u]:
            continue
        members = np.flatnonzero(rel[u])
        # every member must relate to exactly the same set
        if not (rel[members] == rel[u]).all():
            return None
        seen[members] = True
        classes.append(members.tolist())
    if len({len(c) for c in classes}) != 1:
        return None
    return classes


def ddg_check(g: Graph) -> DDGResult:
    dz = deza_check(g)
    counts = common_neighbor_counts(g)
    assignments = [(dz.a, dz.b), (dz.b, dz.a)] if dz.a != dz.b else [(dz.a, dz.a)]
    found = []
    for lam1, lam2 in assignments:
        part = _partition_for(counts, lam1)
        if part is None:
            continue
        m, n = len(part), len(part[0])
        found.append((DDGParams(g.n, dz.k, lam1, lam2, m, n), part))
    if not found:
        raise NoValidPartition(f"no canonical partition for Deza parameters {dz.as_tuple()}")
    found.sort(key=lambda x: (x[0].lambda1 == x[0].lambda2, -x[0].m))
    params, part = found[0]
    flags = []
    if params.lambda1 == params.lambda2 or params.m == 1 or params.n == 1:
        flags.append(DEGENERATE)
    return DDGResult(params, part, flags, found[1:])


# --- group side -------------------------------------------------------------


def difference_multiset(G: FiniteGroup, S: Iterable[int]) -> np.ndarray:
    """counts[g] = #{(x, y) in S x S : x y^{-1} = g}."""
    s = np.asarray(sorted(set(int(x) for x in S)), dtype=np.int64)
    quot = G.mul[np.ix_(s, G.inv[s])]
    return np.bincount(quot.ravel(), minlength=G.order)


def dds_check(G: FiniteGroup, S: Iterable[int], N: Iterable[int]) -> tuple[int | None, int | None]:
    """(lambda1, lambda2) if S is a divisible difference set relative to N.

    A value is ``None`` when its region is empty (N trivial, or N = G).
    """
    S = set(int(x) for x in S)
    counts = difference_multiset(G, S)
    in_n = np.zeros(G.order, dtype=bool)
    in_n[list(set(int(x) for x in N))] = True
    e = G.identity
    if counts[e] != len(S):
        raise VerificationFailed("identity count differs from |S|")
    on = in_n.copy()
    on[e] = False
    on_vals = set(counts[on].tolist())
    off_vals = set(counts[~in_n].tolist())
    if len(on_vals) > 1:
        raise NotConstantOnN(f"counts on N - e take values {sorted(on_vals)}")
    if len(off_vals) > 1:
        raise NotConstantOffN(f"counts off N take values {sorted(off_vals)}")
    lam1 = on_vals.pop() if on_vals else None
    lam2 = off_vals.pop() if off_vals else None
    return lam1, lam2


def dds_discover_subgroup(
    G: FiniteGroup, S: Iterable[int], partition: list[list[int]] | None = None
) -> list[int]:
    """Recover the exceptional subgroup from the S S^{-1} multiset alone.

    If ``partition`` (e.g. from ``ddg_check``) is given, the right cosets of
    the subgroup found must coincide with it.
    """
    S = set(int(x) for x in S)
    counts = difference_multiset(G, S)
    e = G.identity
    others = np.delete(np.arange(G.order), e)
    values = sorted(set(counts[others].tolist()))
    if len(values) > 2:
        raise NoSubgroupFound(f"S S^-1 takes {len(values)} values off the identity")
    candidates = []
    for lam1 in values:
        N = sorted({e} | set(others[counts[others] == lam1].tolist()))
        if len(N) == G.order and len(values) == 2:
            continue
        if not subgroup_test(G, N):
            continue
        try:
            dds_check(G, S, N)
        except VerificationFailed:
            continue
        candidates.append(N)
    if not candidates:
        raise NoSubgroupFound("no level set of the difference multiset is a subgroup")
    # prefer a proper nontrivial subgroup
    candidates.sort(key=lambda N: (len(N) in (1, G.order), len(N)))
    N = candidates[0]
    if partition is not None:
        cosets = right_cosets(G, N)
        if sorted(map(sorted, partition)) != sorted(cosets):
            raise NoSubgroupFound("cosets of the recovered subgroup differ from the graph partition")
    return N


# --- formulas ---------------------------------------------------------------


def theorem2_params(q: int, r: int) -> DDGParams:
    prime_power(q)
    if r < 2:
        raise ValueError("r must exceed 1")
    Q = q**r
    return DDGParams(
        v=Q * (Q - 1) // (q - 1),
        k=q ** (r - 1) * (Q - 1),
        lambda1=q ** (r - 1) * (Q - q ** (r - 1) - 1),
        lambda2=q ** (r - 2) * (q - 1) * (Q - 1),
        m=(Q - 1) // (q - 1),
        n=Q,
    )


def hyperplane_membership_counts(field: Field) -> dict[int, int]:
    """For each nonzero alpha, the number of hyperplanes containing it."""
    out = {x: 0 for x in range(1, field.order)}
    for h in field.hyperplanes:
        for x in h.members:
            if x:
                out[x] += 1
    return out
