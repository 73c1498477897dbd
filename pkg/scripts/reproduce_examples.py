"""Build the worked examples and print parameters and isomorphism classes.

    python scripts/reproduce_examples.py
"""

from dataclasses import dataclass

from ddcayley.checks import ddg_check, theorem2_params
from ddcayley.construction import build_generating_set, enumerate_star_permutations, lemma2_permutation
from ddcayley.corpus import EX3_IDS, load_example
from ddcayley.field import field_for
from ddcayley.graphs import cayley_graph
from ddcayley.groups import AffineGroup
from ddcayley.iso import are_isomorphic, classify


@dataclass(frozen=True)
class Case:
    q: int
    r: int
    normalize: bool = True


CASES = (Case(2, 2), Case(3, 2, normalize=False), Case(2, 3), Case(4, 2))


def constructed_graphs(case: Case):
    field = field_for(case.q, case.r)
    G = AffineGroup(field)
    for phi in enumerate_star_permutations(field, normalize=case.normalize):
        yield phi, cayley_graph(G, build_generating_set(phi, G))


def main():
    for case in CASES:
        built = list(constructed_graphs(case))
        print(f"q={case.q} r={case.r} expected {theorem2_params(case.q, case.r)}")
        for phi, g in built:
            print(f"  phi={phi}  {ddg_check(g).params}")
        print(f"  isomorphism classes: {classify([g for _, g in built])}")

    alt4 = load_example("ex1_alt4")
    f = field_for(2, 2)
    G = AffineGroup(f)
    g = cayley_graph(G, build_generating_set(lemma2_permutation(f.t, f).phi, G))
    print("Alt4 fixture isomorphic to q=2 r=2:", are_isomorphic(g, cayley_graph(alt4.group, alt4.S)).isomorphic)

    corpus = [cayley_graph(ex.group, ex.S) for ex in map(load_example, EX3_IDS)]
    built = [g for _, g in constructed_graphs(Case(2, 3))]
    print("corpus + constructed classes (0-4 corpus, 5-7 constructed):", classify(corpus + built))


if __name__ == "__main__":
    main()
