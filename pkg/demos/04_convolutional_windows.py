"""Window systems of time-invariant codes and their verdicts.

Run with:  python3 demos/04_convolutional_windows.py
"""

from groupcodes import (
    ConvolutionalCode,
    FiniteAbelianGroup,
    dual_convolutional,
    local_window,
    strong_controllability_index,
    verify_window_duality,
    weak_controllability,
    weak_observability,
    window_code,
    zero_extension_window,
)

Z2 = FiniteAbelianGroup((2,))
accumulator = ConvolutionalCode(Z2, "image", (((1,), (1,)),), horizon=12)
constant = ConvolutionalCode(Z2, "kernel", (((1,), (1,)),), horizon=12)

print("=== Windows of the shift span of the tap (1, 1) ===")
for n in range(1, 5):
    full = window_code(accumulator, n)
    inner = zero_extension_window(accumulator, n)
    local = local_window(accumulator, n)
    print(
        f"n={n}: window order {full.cardinality}, "
        f"zero-extension order {inner.cardinality}, "
        f"fully-contained span order {local.cardinality}"
    )
print("(the one-sided boundary closes the window to the full product)")

print()
print("=== Windows of the constant code (kernel check (1, 1)) ===")
for n in range(1, 5):
    full = window_code(constant, n)
    inner = zero_extension_window(constant, n)
    print(f"n={n}: window order {full.cardinality}, zero-extension order {inner.cardinality}")

print()
print("=== Weak controllability ===")
print("accumulator:", weak_controllability(accumulator).render())
print("constant:   ", weak_controllability(constant).render())

print()
print("=== Strong controllability search ===")
print("accumulator:", strong_controllability_index(accumulator).render())
print("constant:   ", strong_controllability_index(constant).render())

print()
print("=== Duality: form swap, verified per window ===")
dual = dual_convolutional(accumulator)
print(f"dual of the accumulator: {dual.form} form, taps {dual.taps}")
for n in range(1, 5):
    print(f"  window [0,{n}): annihilator identity holds: {verify_window_duality(accumulator, n)}")
print("weak observability of the dual:", weak_observability(dual).render())
