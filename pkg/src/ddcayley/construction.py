"""Inverse-closure condition, admissible permutations and the generating set S.

A permutation ``phi`` is written as a sequence ``(phi_1, ..., phi_t)`` whose
j-th entry is the power of f paired with hyperplane M_j, so that

    S = union over j of f^{phi_j} (N minus M_j).

Reading the union by exponent instead, i -> M_{h(i)} with ``h`` the inverse
of ``phi``; the inverse-closure condition is stated on ``h``:

    M_{h(i)} * theta^i == M_{h(t - i)}      for every i (indices mod t, 0 == t).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import TNotSupported, TTooLarge, WrongLength
from .field import Field, hyperplane_index, scale_hyperplane
from .groups import AffineElement, AffineGroup, FiniteGroup

MAX_ENUMERATION_T = 12


@dataclass(frozen=True)
class PermutationPhi:
    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(x) for x in self.seq))
        if sorted(self.seq) != list(range(1, len(self.seq) + 1)):
            raise WrongLength(f"{self.seq} is not a permutation of 1..{len(self.seq)}")

    @classmethod
    def parse(cls, text: str) -> "PermutationPhi":
        body = text.strip().strip("()[]")
        return cls(tuple(int(x) for x in body.replace(",", " ").split()))

    @property
    def t(self) -> int:
        return len(self.seq)

    def exponent_of(self, j: int) -> int:
        """Power of f paired with hyperplane M_j."""
        return self.seq[j - 1]

    def hyperplane_of(self, i: int) -> int:
        """Index of the hyperplane removed from N in the block f^i (i mod t, 0 read as t)."""
        i = (i - 1) % self.t + 1
        return self._inverse[i - 1]

    @property
    def _inverse(self) -> tuple[int, ...]:
        inv = [0] * self.t
        for j, i in enumerate(self.seq, start=1):
            inv[i - 1] = j
        return tuple(inv)

    @classmethod
    def from_hyperplane_map(cls, h: Sequence[int]) -> "PermutationPhi":
        """Build from the exponent-indexed map ``h[i-1] = j`` (block f^i removes M_j)."""
        seq = [0] * len(h)
        for i, j in enumerate(h, start=1):
            seq[j - 1] = i
        return cls(tuple(seq))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.seq)) + ")"

    def to_json(self) -> list[int]:
        return list(self.seq)


@dataclass(frozen=True)
class GeneratingSet:
    elements: tuple[int, ...]
    phi: PermutationPhi | None = None

    @property
    def k(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements


class StarResult(NamedTuple):
    ok: bool
    first_failure: int | None


def _require_length(phi: PermutationPhi, field: Field) -> None:
    if phi.t != field.t:
        raise WrongLength(f"permutation has length {phi.t}, field needs t={field.t}")


def _scaled_index_table(field: Field) -> np.ndarray:
    """table[j, i] = index of M_j * theta^i, for j, i in 1..t (row/col 0 unused)."""
    t = field.t
    tab = np.zeros((t + 1, t + 1), dtype=np.int64)
    for h in field.hyperplanes:
        for i in range(1, t + 1):
            tab[h.index, i] = hyperplane_index(field, scale_hyperplane(field, h, field.pow(field.theta, i)))
    return tab


def star_condition_check(phi: PermutationPhi, field: Field) -> StarResult:
    _require_length(phi, field)
    t = field.t
    hyps = field.hyperplanes
    for i in range(1, t + 1):
        c = field.pow(field.theta, i)
        if 2 * i == t:
            assert c in field.subfield_set, "theta^(t/2) should lie in GF(q)"
        lhs = scale_hyperplane(field, hyps[phi.hyperplane_of(i) - 1], c)
        rhs = hyps[phi.hyperplane_of(t - i) - 1].members
        if lhs != rhs:
            return StarResult(False, i)
    return StarResult(True, None)


def enumerate_star_permutations(
    field: Field, *, normalize: bool = True, max_t: int = MAX_ENUMERATION_T
) -> list[PermutationPhi]:
    """All permutations satisfying the inverse-closure condition, sorted.

    With ``normalize`` only those with ``phi_1 == 1`` are kept.  Adding a
    constant to every hyperplane index maps solutions to solutions (it is
    conjugation by a power of the orbit step), so each class of t solutions
    has exactly one member with ``phi_1 == 1``.
    """
    t = field.t
    if t > max_t:
        raise TTooLarge(f"t={t} exceeds the enumeration cap {max_t}")
    tab = _scaled_index_table(field)
    half = (t - 1) // 2
    h = [0] * (t + 1)  # h[i] = hyperplane index of block f^i
    used = [False] * (t + 1)
    found: list[PermutationPhi] = []

    def fill_rest():
        free_pos = [i for i in (t // 2 if t % 2 == 0 else None, t) if i is not None]
        free_val = [j for j in range(1, t + 1) if not used[j]]
        orders = [free_val] if len(free_val) == 1 else [free_val, free_val[::-1]]
        for vals in orders:
            ok = True
            for i, j in zip(free_pos, vals):
                if tab[j, i] != j:  # M_j * theta^i must equal M_{h(t-i)} = M_j
                    ok = False
            if ok:
                for i, j in zip(free_pos, vals):
                    h[i] = j
                found.append(PermutationPhi.from_hyperplane_map(h[1:]))

    def rec(i: int):
        if i > half:
            fill_rest()
            return
        choices = [1] if (normalize and i == 1) else range(1, t + 1)
        for j in choices:
            if used[j]:
                continue
            j2 = int(tab[j, i])
            if used[j2] or j2 == j:
                continue
            h[i], h[t - i] = j, j2
            used[j] = used[j2] = True
            rec(i + 1)
            used[j] = used[j2] = False

    rec(1)
    found.sort(key=lambda p: p.seq)
    return found


def _down(a: int, b: int) -> list[int]:
    return list(range(a, b - 1, -2)) if a >= b else []


def lemma2_sequence(t: int) -> list[int]:
    """The closed-form sequence (may fail to be a permutation for some even t)."""
    if t <= 2:
        raise TNotSupported(f"t={t} must exceed 2")
    if t % 2:
        return [(-2 * k) % t + 1 for k in range(t)]
    s = t // 2
    return (
        [1]
        + _down(t - 1, s + 2)
        + _down(s - 1, 2)
        + [s]
        + _down(t - 2, s + 1)
        + [t]
        + _down(s - 2, 3)
    )


class Lemma2Choice(NamedTuple):
    phi: PermutationPhi
    fallback: bool


def lemma2_permutation(t: int, field: Field | None = None) -> Lemma2Choice:
    """Closed-form admissible permutation, validated against ``field`` when given.

    If the closed form is not a permutation, or fails the condition over
    ``field``, the least enumerated admissible permutation is returned with
    ``fallback=True``.
    """
    seq = lemma2_sequence(t)
    valid_perm = sorted(seq) == list(range(1, t + 1))
    if field is None:
        if not valid_perm:
            raise TNotSupported(f"closed form for t={t} is not a permutation; pass a field")
        return Lemma2Choice(PermutationPhi(tuple(seq)), False)
    if field.t != t:
        raise WrongLength(f"field has t={field.t}, asked for t={t}")
    if valid_perm:
        phi = PermutationPhi(tuple(seq))
        if star_condition_check(phi, field).ok:
            return Lemma2Choice(phi, False)
    perms = enumerate_star_permutations(field)
    if not perms:
        raise TNotSupported(f"no admissible permutation for t={t}")
    return Lemma2Choice(perms[0], True)


def build_generating_set(phi: PermutationPhi, group: AffineGroup) -> GeneratingSet:
    """S = union over j of f^{phi_j} (N minus M_j); no symmetry requirement on phi."""
    field = group.field
    _require_length(phi, field)
    t = field.t
    out = []
    for h in field.hyperplanes:
        e = phi.exponent_of(h.index) % t
        for alpha in range(field.order):
            if alpha not in h:
                out.append(group.index(AffineElement(e, alpha)))
    return GeneratingSet(tuple(sorted(out)), phi)


def is_inverse_closed(G: FiniteGroup, S) -> bool:
    s = set(int(x) for x in S)
    return all(int(G.inv[x]) in s for x in s)
