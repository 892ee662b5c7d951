"""
Rank bookkeeping
================
"""

from polytrop import (
    AbelianProfile,
    DualGraph,
    IsogenyDecomposition,
    conjecture_status,
    curve_status,
    jacobian_torus_rank,
    product_profile,
)

E = AbelianProfile(1, {}, simple=True)              # elliptic, good reduction everywhere
S = AbelianProfile(2, {"p": 1}, simple=True)        # simple surface, bad at p
T = AbelianProfile(3, {"p": 3, "q": 1}, simple=True)

A = product_profile(E, S)
print("dim", A.dim, "torus rank at p", A.torus_rank_at("p"), "abelian rank at p", A.abelian_rank_at("p"))

for name, d in [("E x S", ((E, 1), (S, 1))), ("E^2 x T", ((E, 2), (T, 1))), ("S x T", ((S, 1), (T, 1)))]:
    st = conjecture_status(IsogenyDecomposition(d))
    print(f"{name:8s} ndr={st['ndr']}  {st['status']}")

# curves of genus 2 at two places
theta = DualGraph({"a": 0, "b": 0}, [("a", "b")] * 3)
tree = DualGraph({"a": 1, "b": 1}, [("a", "b")])
print("cycle ranks:", jacobian_torus_rank(theta), jacobian_torus_rank(tree))
print(curve_status({"p": tree, "q": theta}, 2))
print(curve_status({"p": tree}, 2))
