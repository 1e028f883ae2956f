"""Show the representative maps, the digraph H and its suffixes on the 8-vertex example.

With ``--with-w1w2`` the edge w1-w2 is added, which yields the three drawn suffixes.
"""

import argparse

from lowrank_mso.bitset import bits_of, mask_of
from lowrank_mso.flips import build_h_digraph
from lowrank_mso.graph import FIGURE1_NAMES, ColoredGraph, generate
from lowrank_mso.lowrank import suffixes
from lowrank_mso.rank import cutrank


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--with-w1w2", action="store_true")
    args = ap.parse_args()
    g = generate("figure1")
    idx = {name: i for i, name in enumerate(FIGURE1_NAMES)}
    if args.with_w1w2:
        g = ColoredGraph.from_edges(g.n, g.edges() + [(idx["w1"], idx["w2"])], names=FIGURE1_NAMES)
    name = lambda v: "-" if v is None else FIGURE1_NAMES[v]  # noqa: E731
    h, reps, adm = build_h_digraph(g, mask_of([idx["a1p"], idx["a2p"]]), mask_of([idx["a1m"], idx["a2m"]]), 2)
    print(f"admissible: {adm}")
    for w in ("w1", "w2", "w3", "w4"):
        print(f"{w}: phi+ = {name(reps.phi_plus[idx[w]])}, phi- = {name(reps.phi_minus[idx[w]])}")
    print("arcs:", ", ".join(f"{name(u)}->{name(v)}" for u, v in h.arcs()))
    for x in suffixes(h).sets:
        print(f"suffix {{{', '.join(name(v) for v in bits_of(x))}}} cutrank {cutrank(g, x)}")


if __name__ == "__main__":
    main()
