"""Fixture groups and generating sets: Alt4 and the five AG(8) word sets."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .construction import GeneratingSet, is_inverse_closed
from .errors import RelationViolated, UnknownGenerator, WordSyntaxError
from .field import FieldSpec, Field
from .groups import AffineElement, AffineGroup, FiniteGroup, perm_group_closure

Word = list[tuple[int, int]]

_TERM = re.compile(r"f_?(\d+)(?:\^(-?\d+))?")
AG8_GENERATORS = (1, 2, 3, 4)
AG8_ORDERS = {1: 7, 2: 2, 3: 2, 4: 2}
AG8_MODULUS = (1, 1, 0, 1)  # x^3 + x + 1
EX3_IDS = tuple(f"ex3_s{k}" for k in range(1, 6))
EXAMPLE_IDS = ("ex1_alt4",) + EX3_IDS


@lru_cache(maxsize=None)
def _data() -> dict:
    return json.loads(resources.files("ddcayley").joinpath("data/corpus.json").read_text())


def parse_word(text: str) -> Word:
    """Parse ``f_1^5*f_2*f_4`` into ``[(1, 5), (2, 1), (4, 1)]``.

    Whitespace is ignored and the underscore is optional (``f2`` == ``f_2``).
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise WordSyntaxError("empty word")
    word = []
    for term in s.split("*"):
        m = _TERM.fullmatch(term)
        if not m:
            raise WordSyntaxError(f"cannot parse term {term!r} in {text!r}")
        g = int(m.group(1))
        if g not in AG8_GENERATORS:
            raise UnknownGenerator(f"unknown generator f_{g}")
        word.append((g, int(m.group(2)) if m.group(2) else 1))
    return word


def _power(G: FiniteGroup, x: int, k: int) -> int:
    if k < 0:
        x, k = int(G.inv[x]), -k
    acc = G.identity
    for _ in range(k):
        acc = int(G.mul[acc, x])
    return acc


def evaluate_word(G: FiniteGroup, gens: dict[int, int], word: Word) -> int:
    acc = G.identity
    for g, k in word:
        acc = int(G.mul[acc, _power(G, gens[g], k % AG8_ORDERS[g])])
    return acc


@lru_cache(maxsize=None)
def realize_ag8() -> tuple[AffineGroup, dict[int, int]]:
    """AG(8) inside the affine group over GF(2^3) = GF(2)[x]/(x^3 + x + 1).

    f1 -> (1, 0), f2 -> (0, 1), f3 -> (0, tau^-1), f4 -> (0, tau^-2); the
    defining relations are checked by multiplication before returning.
    """
    field = Field(FieldSpec(2, 1, 3, AG8_MODULUS))
    G = AffineGroup(field)
    tau_inv = field.inv(field.tau)
    gens = {
        1: G.index(AffineElement(1, 0)),
        2: G.index(AffineElement(0, 1)),
        3: G.index(AffineElement(0, tau_inv)),
        4: G.index(AffineElement(0, field.mul(tau_inv, tau_inv))),
    }
    e = G.identity
    for g, order in AG8_ORDERS.items():
        if _power(G, gens[g], order) != e or any(_power(G, gens[g], k) == e for k in range(1, order)):
            raise RelationViolated(f"f_{g} does not have order {order}")
    for lhs, rhs in (("f_2*f_1", "f_1*f_3"), ("f_3*f_1", "f_1*f_4"), ("f_4*f_1", "f_1*f_2*f_4")):
        if evaluate_word(G, gens, parse_word(lhs)) != evaluate_word(G, gens, parse_word(rhs)):
            raise RelationViolated(f"{lhs} != {rhs}")
    return G, gens


@dataclass(frozen=True)
class Example:
    id: str
    group: FiniteGroup
    S: GeneratingSet
    description: str


def _checked(ex_id: str, G: FiniteGroup, elements: list[int], expected: int, desc: str) -> Example:
    S = GeneratingSet(tuple(sorted(set(elements))))
    if len(S) != expected:
        raise RelationViolated(f"{ex_id}: expected {expected} distinct elements, got {len(S)}")
    if G.identity in S.elements or not is_inverse_closed(G, S):
        raise RelationViolated(f"{ex_id}: set is not inverse-closed and identity-free")
    return Example(ex_id, G, S, desc)


def load_example(ex_id: str) -> Example:
    data = _data()
    if ex_id == "ex1_alt4":
        d = data["ex1_alt4"]
        A = perm_group_closure(d["generating_set"], d["degree"])
        return _checked(ex_id, A, [A.index(p) for p in d["generating_set"]], 6, d["description"])
    if ex_id in EX3_IDS:
        d = data["ex3"]
        G, gens = realize_ag8()
        words = d["sets"][ex_id.split("_")[1]]
        elements = [evaluate_word(G, gens, parse_word(w)) for w in words]
        return _checked(ex_id, G, elements, 28, d["description"])
    raise KeyError(f"unknown example id {ex_id!r}; choose from {EXAMPLE_IDS}")


def example_words(ex_id: str) -> list[str]:
    return list(_data()["ex3"]["sets"][ex_id.split("_")[1]])
