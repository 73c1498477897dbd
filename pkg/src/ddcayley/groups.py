"""Finite groups as multiplication tables, and the affine group G = N x| <f>.

An affine element f^i * a is stored as ``AffineElement(exp=i, alpha=α)`` where
α is the lower-left entry of the translation matrix ``a = (1 0; α 1)``, so the
matrix of the element is ``(1 0; θ^i α  θ^i)``.
"""

from __future__ import annotations

import json
import re
from collections import deque
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    ClosureTooLarge,
    FieldMismatch,
    GroupAxiomViolated,
    NotASubgroup,
    OrderTooLarge,
)
from .field import Field

MAX_GROUP_ORDER = 5000
EXHAUSTIVE_ASSOC_LIMIT = 200


class FiniteGroup:
    """A group on the indices ``0..order-1`` given by its multiplication table."""

    def __init__(
        self,
        mul: np.ndarray,
        labels: Sequence[str] | None = None,
        *,
        verify: bool = True,
    ):
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise GroupAxiomViolated("multiplication table must be square")
        self.mul = mul
        n = mul.shape[0]
        ident = [a for a in range(n) if np.array_equal(mul[a], np.arange(n))]
        if not ident:
            raise GroupAxiomViolated("no left identity")
        self.identity = ident[0]
        inv = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(mul == self.identity)
        inv[rows] = cols
        self.inv = inv
        self.labels = list(labels) if labels is not None else None
        if verify:
            self.verify()

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self) -> int:
        return self.order

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def verify(self, seed: int = 0) -> None:
        n, mul, e = self.order, self.mul, self.identity
        ar = np.arange(n)
        if mul.min() < 0 or mul.max() >= n:
            raise GroupAxiomViolated("table entries out of range")
        srt = np.sort(mul, axis=1)
        if not (srt == ar).all() or not (np.sort(mul, axis=0) == ar[:, None]).all():
            raise GroupAxiomViolated("table is not a Latin square")
        if not (mul[e] == ar).all() or not (mul[:, e] == ar).all():
            raise GroupAxiomViolated("identity is not two-sided")
        if (self.inv < 0).any() or not (mul[self.inv, ar] == e).all():
            raise GroupAxiomViolated("inverses are not two-sided")
        if n <= EXHAUSTIVE_ASSOC_LIMIT:
            left = mul[mul]  # (ab)c -> left[a, b, c]
            right = mul[:, mul]  # a(bc) -> right[a, b, c]
            ok = np.array_equal(left, right)
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, (3, 20000))
            ok = np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]])
        if not ok:
            raise GroupAxiomViolated("multiplication is not associative")

    def product(self, *elements: int) -> int:
        acc = self.identity
        for x in elements:
            acc = int(self.mul[acc, x])
        return acc

    def to_json(self) -> str:
        d = {
            "order": self.order,
            "identity": self.identity,
            "mul": self.mul.ravel().tolist(),
        }
        if self.labels is not None:
            d["labels"] = self.labels
        return json.dumps(d)

    @classmethod
    def from_json(cls, text: str) -> "FiniteGroup":
        d = json.loads(text)
        n = int(d["order"])
        mul = np.asarray(d["mul"], dtype=np.int64).reshape(n, n)
        g = cls(mul, d.get("labels"))
        if "identity" in d and int(d["identity"]) != g.identity:
            raise GroupAxiomViolated("declared identity does not match the table")
        return g


# --- the affine group -------------------------------------------------------


class AffineElement(NamedTuple):
    exp: int
    alpha: int


def _check(field: Field, *xs: AffineElement) -> None:
    for x in xs:
        if not (0 <= x.exp < field.t and 0 <= x.alpha < field.order):
            raise FieldMismatch(f"{x} is not an element over {field!r}")


def affine_mul(field: Field, x: AffineElement, y: AffineElement) -> AffineElement:
    """(i, α)(j, β) = (i + j, θ^{-j} α + β)."""
    _check(field, x, y)
    t = field.t
    th = field.pow(field.theta, -y.exp)
    return AffineElement((x.exp + y.exp) % t, field.add(field.mul(th, x.alpha), y.alpha))


def affine_inv(field: Field, x: AffineElement) -> AffineElement:
    """(i, α)^{-1} = (-i, -θ^i α)."""
    _check(field, x)
    th = field.pow(field.theta, x.exp)
    return AffineElement((-x.exp) % field.t, field.neg(field.mul(th, x.alpha)))


class AffineGroup(FiniteGroup):
    """G = N H with N the translations and H = <f>, f = diag(1, θ).

    Elements are enumerated exponent-major and, within an exponent, by α in
    discrete-log order with zero first.  The cosets of N are therefore
    contiguous index blocks.
    """

    def __init__(self, field: Field, *, verify: bool = True):
        t, Q = field.t, field.order
        n = t * Q
        if n > MAX_GROUP_ORDER:
            raise OrderTooLarge(f"group order {n} exceeds {MAX_GROUP_ORDER}")
        self.field = field
        self.t = t
        alpha_seq = np.concatenate([[0], field.exp_table]).astype(np.int64)
        apos = np.empty(Q, dtype=np.int64)
        apos[alpha_seq] = np.arange(Q)
        self._alpha_seq = alpha_seq
        self._apos = apos
        exps = np.repeat(np.arange(t), Q)
        alphas = np.tile(alpha_seq, t)
        self.exps = exps
        self.alphas = alphas

        theta_neg = np.asarray([field.pow(field.theta, -j) for j in range(t)], dtype=np.int64)
        mul = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            new_alpha = field.add_arr(field.mul_arr(theta_neg[exps], alphas[a]), alphas)
            new_exp = (exps[a] + exps) % t
            mul[a] = new_exp * Q + apos[new_alpha]
        super().__init__(mul, [self._fmt(a) for a in range(n)], verify=verify)

    def _fmt(self, a: int) -> str:
        i, al = int(self.exps[a]), int(self.alphas[a])
        lg = self.field.log(al)
        return f"f^{i}*a[{'0' if lg is None else f'tau^{lg}'}]"

    def element(self, a: int) -> AffineElement:
        return AffineElement(int(self.exps[a]), int(self.alphas[a]))

    def index(self, x: AffineElement) -> int:
        _check(self.field, x)
        return int(x.exp * self.field.order + self._apos[x.alpha])

    @cached_property
    def translations(self) -> list[int]:
        """The normal subgroup N = {(0, α)}."""
        return list(range(self.field.order))

    @cached_property
    def cyclic_part(self) -> list[int]:
        """H = {(i, 0)}."""
        return [self.index(AffineElement(i, 0)) for i in range(self.t)]

    def export_set(self, indices: Iterable[int]) -> list[list[int | None]]:
        """Elements as ``[exp, log(alpha)]`` pairs, ``None`` standing for alpha = 0."""
        return [[int(self.exps[a]), self.field.log(int(self.alphas[a]))] for a in sorted(indices)]


def affine_group_build(field: Field) -> AffineGroup:
    return AffineGroup(field)


# --- permutation groups -----------------------------------------------------


Perm = tuple[int, ...]


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse cycle notation with 1-based points.

    Points may be separated by spaces or commas, ``(1 2 3)(4)``; with no
    separator every digit is a point, ``(123)``.
    """
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip() not in ("", "e", "()"):
        raise ValueError(f"bad cycle notation: {text!r}")
    parsed = []
    for body in cycles:
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            pts = [int(x) for x in re.split(r"[\s,]+", body) if x]
        else:
            pts = [int(ch) for ch in body]
        parsed.append(pts)
    top = max((max(c) for c in parsed), default=0)
    degree = max(degree or 0, top)
    img = list(range(degree))
    seen = set()
    for pts in parsed:
        if len(set(pts)) != len(pts) or seen & set(pts) or min(pts) < 1:
            raise ValueError(f"bad cycle notation: {text!r}")
        seen |= set(pts)
        for k, pt in enumerate(pts):
            img[pt - 1] = pts[(k + 1) % len(pts)] - 1
    return tuple(img)


def format_cycles(perm: Perm) -> str:
    seen, out = set(), []
    sep = "" if len(perm) <= 9 else " "
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        out.append("(" + sep.join(cyc) + ")")
    return "".join(out) or "e"


def compose(x: Perm, y: Perm) -> Perm:
    """Apply x first, then y."""
    return tuple(y[i] for i in x)


class PermGroup(FiniteGroup):
    def __init__(self, perms: Sequence[Perm]):
        self.perms = [tuple(p) for p in perms]
        self._index = {p: k for k, p in enumerate(self.perms)}
        P = np.asarray(self.perms, dtype=np.int64)
        n = len(self.perms)
        mul = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            comp = P[:, P[a]]  # comp[b, i] = P[b][P[a][i]] = (a then b)(i)
            mul[a] = [self._index[tuple(row)] for row in comp.tolist()]
        super().__init__(mul, [format_cycles(p) for p in self.perms])

    def index(self, perm: Perm | str) -> int:
        if isinstance(perm, str):
            perm = parse_cycles(perm, len(self.perms[0]))
        return self._index[tuple(perm)]


def perm_group_closure(generators: Sequence[Perm | str], degree: int | None = None) -> PermGroup:
    """Breadth-first closure from the identity; elements in discovery order."""
    gens = [parse_cycles(g, degree) if isinstance(g, str) else tuple(g) for g in generators]
    d = max([degree or 0] + [len(g) for g in gens])
    gens = [tuple(g) + tuple(range(len(g), d)) for g in gens]
    for g in gens:
        if sorted(g) != list(range(d)):
            raise ValueError(f"not a permutation: {g}")
    ident = tuple(range(d))
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(g, s)
            if h not in seen:
                seen.add(h)
                order.append(h)
                queue.append(h)
                if len(order) > MAX_GROUP_ORDER:
                    raise ClosureTooLarge(f"closure exceeds {MAX_GROUP_ORDER} elements")
    return PermGroup(order)


# --- subgroups and cosets ---------------------------------------------------


def subgroup_test(G: FiniteGroup, subset: Iterable[int]) -> bool:
    sub = np.unique(np.asarray(list(subset), dtype=np.int64))
    if G.identity not in sub:
        return False
    closed = np.isin(G.mul[np.ix_(sub, sub)], sub).all()
    return bool(closed and np.isin(G.inv[sub], sub).all())


def right_cosets(G: FiniteGroup, subgroup: Iterable[int]) -> list[list[int]]:
    """Right cosets N g, each sorted, listed by least member."""
    sub = sorted(set(int(x) for x in subgroup))
    if not subgroup_test(G, sub):
        raise NotASubgroup("subset is not a subgroup")
    assigned = np.full(G.order, False)
    classes = []
    for g in range(G.order):
        if assigned[g]:
            continue
        coset = sorted(int(x) for x in G.mul[sub, g])
        assigned[coset] = True
        classes.append(coset)
    return classes


def is_normal(G: FiniteGroup, subgroup: Iterable[int]) -> bool:
    sub = np.asarray(sorted(set(subgroup)), dtype=np.int64)
    conj = G.mul[G.mul[G.inv[:, None], sub[None, :]], np.arange(G.order)[:, None]]
    return bool(np.isin(conj, sub).all())
