"""Decomposing codes into cyclic factors on finite windows.

Run with:  python3 demos/03_weak_rectangularity.py
"""

from groupcodes import (
    FiniteAbelianGroup,
    SequenceSpace,
    code_from_generators,
    coprime_rectangular,
    cyclic_product_decomposition,
    is_subdirect_product,
    verify_decomposition,
)


def show(decomposition):
    for i, g in enumerate(decomposition.generators, start=1):
        prime = f", prime {g.prime}" if g.prime is not None else ""
        print(f"  y_{i} = {g.word} on [{g.start},{g.stop}), order {g.order}{prime}")


print("=== Coprime symbols force rectangularity ===")
space = SequenceSpace((FiniteAbelianGroup((2,)), FiniteAbelianGroup((3,))))
diagonal = code_from_generators(space, [(1, 1)])
decomposition = coprime_rectangular(diagonal)
print(f"code order {diagonal.cardinality}; factors:")
show(decomposition)

print()
print("=== Shared primes: coprime route not applicable ===")
klein_space = SequenceSpace(tuple(FiniteAbelianGroup((2,)) for _ in range(2)))
diag2 = code_from_generators(klein_space, [(1, 1)])
print(f"coprime_rectangular returns: {coprime_rectangular(diag2)}")

print()
print("=== Cyclic product decomposition of the even-weight code ===")
space3 = SequenceSpace(tuple(FiniteAbelianGroup((2,)) for _ in range(3)))
even = code_from_generators(space3, [(1, 1, 0), (0, 1, 1)])
decomposition = cyclic_product_decomposition(even)
show(decomposition)
ok, cert = verify_decomposition(even, decomposition)
print("certificate:")
for line in cert.render().splitlines():
    print("  " + line)
print(f"subdirect product: {is_subdirect_product(even, decomposition)}")

print()
print("=== Mixed primes split through the primary parts ===")
space6 = SequenceSpace(tuple(FiniteAbelianGroup((6,)) for _ in range(2)))
diag6 = code_from_generators(space6, [(1, 1)])
decomposition = cyclic_product_decomposition(diag6)
show(decomposition)
print(f"orders multiply to {decomposition.order_product} = |code| = {diag6.cardinality}")
