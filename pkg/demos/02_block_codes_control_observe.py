"""Reachability, controller memory and observer memory of block codes.

The running example is the classic dual pair on three binary symbols: the
even-weight code and the repetition code.

Run with:  python3 demos/02_block_codes_control_observe.py
"""

from groupcodes import (
    FiniteAbelianGroup,
    SequenceSpace,
    check_control_observe_duality,
    chunk_decompose,
    code_from_generators,
    control_profile,
    dual_block_code,
    observable_supercode,
    observe_profile,
    order_profile,
    reachable_set,
)

space = SequenceSpace(tuple(FiniteAbelianGroup((2,)) for _ in range(3)))
even = code_from_generators(space, [(1, 1, 0), (0, 1, 1)])
rep = code_from_generators(space, [(1, 1, 1)])

print("=== The dual pair ===")
print(f"even-weight code: {sorted(even.words())}")
print(f"repetition code:  {sorted(rep.words())}")
print(f"dual of even-weight == repetition: {dual_block_code(even) == rep}")

print()
print("=== Reachable sets C_k(L) ===")
for code, name in ((even, "even-weight"), (rep, "repetition")):
    print(f"{name}:")
    for k in range(3):
        sets = [sorted(reachable_set(code, k, L).words()) for L in range(3)]
        print(f"  k={k}: L=0: {len(sets[0])} words, L=1: {len(sets[1])}, L=2: {len(sets[2])}")

print()
print("=== Profiles ===")
for code, name in ((even, "even-weight"), (rep, "repetition")):
    ctrl = control_profile(code)
    obs = observe_profile(code)
    order = order_profile(code)
    print(
        f"{name}: control {ctrl.lengths} (index {ctrl.index}), "
        f"observe {obs.lengths} (index {obs.index}), "
        f"order-split bounds {order.bounds}"
    )

print()
print("=== Chunking a codeword through its windows ===")
profile = control_profile(even)
for word in [(1, 1, 0), (1, 0, 1)]:
    chunks = chunk_decompose(even, word, profile)
    pieces = " + ".join(f"{c.word} on [{c.start},{c.stop})" for c in chunks)
    print(f"{word} = {pieces}")

print()
print("=== Observable supercodes shrink to the code ===")
for L in range(3):
    sup = observable_supercode(even, L)
    print(f"window length {L}: supercode order {sup.cardinality}")

print()
print("=== The full duality report ===")
print(check_control_observe_duality(even).render())
