"""The two block-triangular parabolics of SL_12 and what the classifier says about them."""

from chevparab.classify import example_1_2
from chevparab.parab import blocks_to_I, nonadj
from chevparab.ringspec import preset, ring_OS

for blocks in ((1, 5, 1, 5), (5, 1, 1, 5)):
    spec = blocks_to_I("A11", blocks)
    print(f"blocks {blocks}: I = {sorted(i + 1 for i in spec.I)}, nonAdj = {sorted(i + 1 for i in nonadj(spec))}")

for ring in (preset("Z_laurent"), ring_OS(0, 2)):
    p1, p2 = example_1_2(ring)
    print(f"\nover {ring.name}")
    for name, st in (("P1", p1), ("P2", p2)):
        print(f"  {name}: {st.verdict}")
        for r in st.reasons:
            print(f"      {r.rule} [{r.citation}]")
