"""Finite abelian groups, characters and annihilators, step by step.

Run with:  python3 demos/01_groups_and_duality.py
"""

from groupcodes import (
    FiniteAbelianGroup,
    annihilator,
    element_order,
    height,
    howell_form,
    pairing,
    primary_decomposition,
    quotient_duality_check,
    residue_matrix,
    smith_invariants,
    socle,
    span_cardinality,
)
from groupcodes.duality import Character

print("=== A mixed group and its primary parts ===")
G = FiniteAbelianGroup((12, 2))
print(f"G = {G}, order {G.cardinality}, exponent {G.exponent}")
for p, comp in primary_decomposition(G).items():
    print(f"  {p}-part: {comp.group} (order {comp.group.cardinality})")
g = G.element((5, 1))
print(f"order of (5, 1): {element_order(g)}")
print(f"height of (5, 1) at 2: {height(g, 2)}")
print(f"height of 0 at 2: {height(G.zero(), 2)}  (divisible by every power)")

print()
print("=== Socles ===")
sub, dim = socle(G, 2)
print(f"G[2] has dimension {dim} over the two-element field:")
for row in sub.rows:
    print(f"  generator {row}")

print()
print("=== Pairing and annihilators ===")
Z4 = FiniteAbelianGroup((4,))
x = Z4.element((1,))
chi = Character(Z4.element((1,)))
print(f"pairing(1, 1) in Z/4 = {pairing(x, chi)}  (additive circle, exact)")
H = howell_form(residue_matrix([(2,)], (4,)))
perp = annihilator(H)
print(f"<2> in Z/4 has annihilator of order {span_cardinality(perp)}")
print(f"|H| * |H-perp| = {span_cardinality(H) * span_cardinality(perp)} = |G|")

print()
print("=== Quotient duality ===")
moduli = (4,)
S = howell_form(residue_matrix([(2,)], moduli))
R = howell_form(residue_matrix([(1,)], moduli))
report = quotient_duality_check(S, R, FiniteAbelianGroup(moduli))
print(report.render())

print()
print("=== Invariant factors from generators ===")
M = residue_matrix([(1, 1)], (2, 3))
print(f"subgroup spanned by (1,1) in Z/2 x Z/3 has type {smith_invariants(M)}")
