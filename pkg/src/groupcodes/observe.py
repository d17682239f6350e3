"""Observability of block codes and the control/observe duality checks.

Observability windows are closed intervals [k, k+L] of L+1 symbols, kept in
the classical convention; controllability gaps stay half-open.  Reports
print both conventions to avoid misreading.

The observable supercode is implemented as the intersection of the
consistency sets: the union with the code collapses to that intersection at
block scale because the code is contained in every consistency set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import (
    BlockCode,
    ambient_code,
    code_from_generators,
    intersect,
    window_internal,
    window_projection,
)
from .control import control_profile, controllable_subcode, reachable_set
from .duality import dual_block_code
from .linalg import smith_invariants

__all__ = [
    "ObserveProfile",
    "consistency_set",
    "observable_supercode",
    "observe_profile",
    "check_control_observe_duality",
    "DualityReport",
]


@dataclass(frozen=True)
class ObserveProfile:
    """Per-position minimal closed-window lengths and the uniform index."""

    lengths: tuple[int, ...]
    index: int

    def is_l_observable(self, L: int) -> bool:
        return L >= self.index


def consistency_set(code: BlockCode, k: int, L: int) -> BlockCode:
    """Sequences agreeing with some codeword on the window [k, k+L].

    The preimage of the window projection of the code; a supergroup of the
    code in the same ambient space.  The closed window is clipped to the
    horizon.
    """
    N = code.space.horizon
    if not 0 <= k < N or L < 0:
        raise ValueError(f"bad consistency parameters k={k}, L={L}")
    b = min(k + L + 1, N)
    proj = window_projection(code, k, b)
    sl = code.space.flat_slice(k, b)
    moduli = code.space.flat_moduli
    width = len(moduli)
    rows = []
    for row in proj.basis.rows:
        padded = [0] * width
        padded[sl] = list(row)
        rows.append(padded)
    for j in range(width):
        if j < sl.start or j >= sl.stop:
            rows.append([1 if i == j else 0 for i in range(width)])
    return code_from_generators(code.space, rows)


def observable_supercode(code: BlockCode, L: int) -> BlockCode:
    """Intersection over all positions of the window-L consistency sets."""
    if L < 0:
        raise ValueError("window length must be nonnegative")
    result = ambient_code(code.space)
    for k in range(code.space.horizon):
        result = intersect(result, consistency_set(code, k, L))
    return result


def observe_profile(code: BlockCode) -> ObserveProfile:
    """Minimal uniform window with supercode equal to the code, plus
    per-position minima.

    The per-position lengths start from the uniform index and are then
    shrunk greedily left to right while the intersection of consistency
    sets still equals the code, so decreasing any entry strictly enlarges
    the intersection.
    """
    N = code.space.horizon
    index = 0
    while observable_supercode(code, index) != code:
        index += 1

    def meets_at(lengths: list[int]) -> BlockCode:
        result = ambient_code(code.space)
        for k, lk in enumerate(lengths):
            result = intersect(result, consistency_set(code, k, lk))
        return result

    lengths = [index] * N
    for k in range(N):
        while lengths[k] > 0:
            trial = list(lengths)
            trial[k] -= 1
            if meets_at(trial) != code:
                break
            lengths = trial
    return ObserveProfile(tuple(lengths), index)


@dataclass(frozen=True)
class WindowDualityCheck:
    """Annihilator identity for one internal window [a, b)."""

    start: int
    stop: int
    ok: bool


@dataclass(frozen=True)
class MatchedParameterCheck:
    """Dual of the gap-L controllable subcode against the window-L
    observable supercode of the dual code."""

    gap: int
    subcode_dual_factors: tuple[int, ...]
    supercode_factors: tuple[int, ...]
    equal_as_sets: bool

    @property
    def ok(self) -> bool:
        return (
            self.equal_as_sets
            and self.subcode_dual_factors == self.supercode_factors
        )


@dataclass(frozen=True)
class DualityReport:
    """Evidence that controllability of a code and observability of its dual
    are two views of one structure."""

    window_checks: tuple[WindowDualityCheck, ...]
    chain_ok: bool
    matched_checks: tuple[MatchedParameterCheck, ...]
    control_index: int
    dual_observe_index: int
    observe_index: int
    dual_control_index: int

    @property
    def ok(self) -> bool:
        return (
            self.chain_ok
            and all(w.ok for w in self.window_checks)
            and all(m.ok for m in self.matched_checks)
        )

    @property
    def indices_match(self) -> bool:
        """Diagnostic only: index equality is observed, not asserted."""
        return (
            self.control_index == self.dual_observe_index
            and self.observe_index == self.dual_control_index
        )

    def render(self) -> str:
        lines = [
            "control/observe duality report",
            f"  control index of code:        {self.control_index}"
            f"  (gaps [k, k+L), 0-based)",
            f"  observe index of dual code:   {self.dual_observe_index}"
            f"  (windows [k, k+L] closed, {self.dual_observe_index + 1} symbols)",
            f"  observe index of code:        {self.observe_index}",
            f"  control index of dual code:   {self.dual_control_index}",
            f"  reachability chains monotone: {'yes' if self.chain_ok else 'NO'}",
        ]
        for w in self.window_checks:
            one_based = f"[{w.start + 1},{w.stop}]"
            lines.append(
                f"  window [{w.start},{w.stop}) (1-based closed {one_based}): "
                f"dual of internal part equals dual-code consistency set: "
                f"{'yes' if w.ok else 'NO'}"
            )
        for m in self.matched_checks:
            lines.append(
                f"  gap {m.gap}: dual of controllable subcode vs observable "
                f"supercode of dual: factors {list(m.subcode_dual_factors)} / "
                f"{list(m.supercode_factors)}: "
                f"{'equal' if m.ok else 'MISMATCH'}"
            )
        lines.append(f"  verdict: {'pass' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def check_control_observe_duality(code: BlockCode) -> DualityReport:
    """Window-by-window duality evidence for a block code.

    Three families are verified exactly:
    - for every window [a, b), the dual of the internally supported part of
      the code equals the consistency set of the dual code on that window;
    - the reachable sets grow with L while the dual consistency sets shrink;
    - for every gap L, the dual of the gap-L controllable subcode equals the
      window-L observable supercode of the dual code, and their invariant
      factors agree.
    """
    dual = dual_block_code(code)
    N = code.space.horizon
    window_checks = []
    for a in range(N):
        for b in range(a + 1, N + 1):
            inner_dual = dual_block_code(window_internal(code, a, b))
            pulled = consistency_set(dual, a, b - 1 - a)
            window_checks.append(WindowDualityCheck(a, b, inner_dual == pulled))
    chain_ok = True
    for k in range(N):
        for L in range(N):
            if not reachable_set(code, k, L).is_subcode_of(
                reachable_set(code, k, L + 1)
            ):
                chain_ok = False
            if not consistency_set(dual, k, L + 1).is_subcode_of(
                consistency_set(dual, k, L)
            ):
                chain_ok = False
    matched = []
    for L in range(N):
        sub_dual = dual_block_code(controllable_subcode(code, L))
        sup = observable_supercode(dual, L)
        matched.append(
            MatchedParameterCheck(
                gap=L,
                subcode_dual_factors=smith_invariants(sub_dual.basis),
                supercode_factors=smith_invariants(sup.basis),
                equal_as_sets=sub_dual == sup,
            )
        )
    return DualityReport(
        window_checks=tuple(window_checks),
        chain_ok=chain_ok,
        matched_checks=tuple(matched),
        control_index=control_profile(code).index,
        dual_observe_index=observe_profile(dual).index,
        observe_index=observe_profile(code).index,
        dual_control_index=control_profile(dual).index,
    )
