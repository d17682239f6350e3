"""Sequence spaces and block group codes.

A sequence space is a finite product of symbol groups, one per time index;
a block code is a subgroup of that product held in canonical Howell form,
so membership, equality and the subgroup lattice are all decidable.

Index conventions are 0-based with half-open windows [a, b) throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .groups import FiniteAbelianGroup
from .linalg import (
    ResidueMatrix,
    contains_vector,
    coset_reduce,
    howell_form,
    intersect_rows,
    residue_matrix,
    smith_invariants,
    span_cardinality,
    stack,
)

__all__ = [
    "SequenceSpace",
    "BlockCode",
    "code_from_generators",
    "zero_code",
    "ambient_code",
    "intersect",
    "join",
    "window_projection",
    "window_internal",
    "invariant_factors_of_code",
]


@dataclass(frozen=True)
class SequenceSpace:
    """A product of symbol groups over time indices 0..N-1."""

    symbols: tuple[FiniteAbelianGroup, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("a sequence space needs at least one index")

    @property
    def horizon(self) -> int:
        return len(self.symbols)

    @property
    def flat_moduli(self) -> tuple[int, ...]:
        return tuple(m for g in self.symbols for m in g.moduli)

    @property
    def cardinality(self) -> int:
        return math.prod(self.flat_moduli)

    def offsets(self) -> tuple[int, ...]:
        """Start offset of each index in the flat coordinate vector."""
        out = [0]
        for g in self.symbols:
            out.append(out[-1] + len(g.moduli))
        return tuple(out)

    def window(self, a: int, b: int) -> "SequenceSpace":
        self.check_window(a, b)
        if a == b:
            raise ValueError("empty window has no ambient space")
        return SequenceSpace(self.symbols[a:b])

    def check_window(self, a: int, b: int) -> None:
        if not 0 <= a <= b <= self.horizon:
            raise ValueError(f"bad window [{a}, {b}) for horizon {self.horizon}")

    def flat_slice(self, a: int, b: int) -> slice:
        offs = self.offsets()
        return slice(offs[a], offs[b])

    def split(self, word: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """Per-index residue vectors of a flat word."""
        offs = self.offsets()
        return tuple(
            tuple(word[offs[i] : offs[i + 1]]) for i in range(self.horizon)
        )

    def __str__(self) -> str:
        return " x ".join(f"({g})" for g in self.symbols)


@dataclass(frozen=True)
class BlockCode:
    """A subgroup of a sequence space with a canonical generator matrix."""

    space: SequenceSpace
    basis: ResidueMatrix

    def __post_init__(self) -> None:
        if self.basis.moduli != self.space.flat_moduli:
            raise ValueError("basis moduli do not match the space")
        if howell_form(self.basis) != self.basis:
            raise ValueError("basis not in canonical form")

    @property
    def cardinality(self) -> int:
        return span_cardinality(self.basis)

    def contains(self, word: Sequence[int]) -> bool:
        return contains_vector(self.basis, word)

    def coset_representative(self, word: Sequence[int]) -> tuple[int, ...]:
        return coset_reduce(self.basis, word)

    def words(self) -> Iterator[tuple[int, ...]]:
        """All codewords, deterministically ordered by basis coefficients."""
        moduli = self.basis.moduli
        rows = self.basis.rows
        orders = []
        for row in rows:
            j = next(i for i, e in enumerate(row) if e)
            orders.append(moduli[j] // math.gcd(moduli[j], row[j]))
        for coeffs in itertools.product(*[range(o) for o in orders]):
            word = [0] * len(moduli)
            for c, row in zip(coeffs, rows):
                if c:
                    for i, e in enumerate(row):
                        word[i] = (word[i] + c * e) % moduli[i]
            yield tuple(word)

    def is_subcode_of(self, other: "BlockCode") -> bool:
        if other.space != self.space:
            raise ValueError("codes live in different spaces")
        return all(other.contains(row) for row in self.basis.rows)

    def __str__(self) -> str:
        return f"code of order {self.cardinality} in {self.space}"


def code_from_generators(
    space: SequenceSpace, generators: Iterable[Sequence[int]]
) -> BlockCode:
    """The subgroup spanned by flat generator words, canonicalized."""
    moduli = space.flat_moduli
    rows = []
    for gen in generators:
        if len(gen) != len(moduli):
            raise ValueError(
                f"generator width {len(gen)} != {len(moduli)} flat coordinates"
            )
        rows.append(tuple(int(e) for e in gen))
    return BlockCode(space, howell_form(residue_matrix(rows, moduli)))


def zero_code(space: SequenceSpace) -> BlockCode:
    return code_from_generators(space, [])


def ambient_code(space: SequenceSpace) -> BlockCode:
    n = len(space.flat_moduli)
    units = [[1 if k == j else 0 for k in range(n)] for j in range(n)]
    return code_from_generators(space, units)


def intersect(a: BlockCode, b: BlockCode) -> BlockCode:
    """Exact intersection, computed through annihilators."""
    if a.space != b.space:
        raise ValueError("codes live in different spaces")
    return BlockCode(a.space, howell_form(intersect_rows(a.basis, b.basis)))


def join(a: BlockCode, b: BlockCode) -> BlockCode:
    """The subgroup generated by both codes."""
    if a.space != b.space:
        raise ValueError("codes live in different spaces")
    return BlockCode(a.space, stack(a.basis, b.basis))


def window_projection(code: BlockCode, a: int, b: int) -> BlockCode:
    """Image of the code under deleting all coordinates outside [a, b)."""
    code.space.check_window(a, b)
    sub = code.space.window(a, b)
    sl = code.space.flat_slice(a, b)
    rows = [row[sl] for row in code.basis.rows]
    return code_from_generators(sub, rows)


def window_internal(code: BlockCode, a: int, b: int) -> BlockCode:
    """Subgroup of codewords supported inside [a, b), in the same space.

    Computed by reordering the complement coordinates first and reading the
    Howell rows whose leading entries fall inside the window; the Howell
    property makes those rows span exactly the internally supported part.
    """
    code.space.check_window(a, b)
    moduli = code.basis.moduli
    sl = code.space.flat_slice(a, b)
    inside = list(range(sl.start, sl.stop))
    outside = [j for j in range(len(moduli)) if j not in inside]
    perm = outside + inside
    permuted = residue_matrix(
        [[row[j] for j in perm] for row in code.basis.rows],
        tuple(moduli[j] for j in perm),
    )
    canon = howell_form(permuted)
    head = len(outside)
    kept = [row for row in canon.rows if not any(row[:head])]
    inverse = {pos: j for j, pos in enumerate(perm)}
    restored = [
        [row[inverse[j]] for j in range(len(moduli))] for row in kept
    ]
    return code_from_generators(code.space, restored)


def invariant_factors_of_code(code: BlockCode) -> tuple[int, ...]:
    """Isomorphism type of the code as invariant factors d_1 | d_2 | ..."""
    return smith_invariants(code.basis)
