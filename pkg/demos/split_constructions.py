"""Split constructions: dense 3- and 4-graphs whose tight components stay small.

Run: python demos/split_constructions.py
"""

from tightham import has_tight_hamilton
from tightham.constructions import ck_witness, eg3_witness, gen_split_kgraph, split_component_profile


def main() -> None:
    print("Forbidding one class of edges splits the graph into two tight components:")
    for k, a, m in ((3, 1, 4), (4, 2, 4)):
        G = gen_split_kgraph(k, m, m, a)
        prof = split_component_profile(G, m, a)
        ham = has_tight_hamilton(G, time_limit=None)
        print(f"  k={k} |X|=|Y|={m}: {G.e} edges, components {prof.sizes}, tight Hamilton cycle: {ham.status}")

    print("\nEdge density of the 3-graph version creeps up to 5/8,")
    print("while the largest tight component keeps only about half of all triples:")
    for m in (5, 10, 20, 40, 80):
        w = ck_witness(3, m, m)
        print(f"  m={m:3d}  density={float(w.edge_density):.4f}  largest component={float(w.max_component_density):.4f}")

    w = eg3_witness(4, 4)
    print(f"\nLongest tight cycle in the 8-vertex split 3-graph: {w.longest} vertices {w.cycle}")
    print(f"ratio to n: {w.ratio}")

if __name__ == "__main__":
    main()
