"""Structure constants of G2 read off the adjoint model, then checked symbolically."""

from chevparab.chevmodel import AdjointModel, check_commutator, chevalley_basis, structure_constants
from chevparab.laurent import CoefficientRing
from chevparab.rootsys import build_root_system

rs = build_root_system("G2")
short, long_ = rs.simples
print(f"G2: {len(rs.roots)} roots, highest root {rs.highest_root}")

table = structure_constants(rs)
print("\n[x_a(r), x_b(s)] for a = short simple root, b positive:")
for b in rs.positive:
    terms = table.get((short, b), [])
    if terms:
        rhs = " ".join(f"x_{t.root}({t.C} r^{t.m} s^{t.n})" for t in terms)
        print(f"  b = {b.name():>8}:  {rhs}")

ring = CoefficientRing(0, (), ("r", "s"))
model = AdjointModel(chevalley_basis(rs), ring)
r, s = ring.var("r"), ring.var("s")
bad = [(a, b) for a in rs.roots for b in rs.roots if a != -b and not check_commutator(model, a, b, r, s).ok]
print(f"\nsymbolic check over all {len(rs.roots) * (len(rs.roots) - 1)} ordered pairs: {len(bad)} mismatches")
