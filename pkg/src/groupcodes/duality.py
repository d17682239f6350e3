"""Characters, pairings, annihilators and quotient duality.

The circle group is modeled additively by its rational torsion Q/Z with
exact arithmetic, so orthogonality of x and chi reads pairing(x, chi) = 0.
The dual of Z/m_1 + ... + Z/m_n is identified with the same group via the
standard pairing sum_j x_j chi_j / m_j; finite abelian groups are self-dual
and nothing downstream depends on the choice of identification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .codes import BlockCode
from .groups import FiniteAbelianGroup, GroupElement
from .linalg import (
    ResidueMatrix,
    annihilator_rows,
    contains_vector,
    howell_form,
    quotient_invariants,
)

__all__ = [
    "QmodZ",
    "Character",
    "pairing",
    "annihilator",
    "quotient_duality_check",
    "QuotientDualityReport",
    "dual_block_code",
]


@dataclass(frozen=True)
class QmodZ:
    """A rational residue modulo 1, kept reduced with 0 <= num < den."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise ValueError("denominator must be positive")
        g = gcd(self.numerator, self.denominator)
        if g != 1 or not 0 <= self.numerator < self.denominator:
            raise ValueError("not in canonical form; use QmodZ.of")

    @classmethod
    def of(cls, value: Fraction | int) -> "QmodZ":
        frac = Fraction(value) % 1
        return cls(frac.numerator, frac.denominator)

    @classmethod
    def zero(cls) -> "QmodZ":
        return cls(0, 1)

    def __add__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ.of(
            Fraction(self.numerator, self.denominator)
            + Fraction(other.numerator, other.denominator)
        )

    def __neg__(self) -> "QmodZ":
        return QmodZ.of(-Fraction(self.numerator, self.denominator))

    def __mul__(self, scalar: int) -> "QmodZ":
        return QmodZ.of(scalar * Fraction(self.numerator, self.denominator))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class Character:
    """A character of a finite abelian group, as a dual-group element."""

    coefficients: GroupElement

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.coefficients.group


def pairing(x: GroupElement, chi: Character | GroupElement) -> QmodZ:
    """The standard pairing sum_j x_j chi_j / m_j taken modulo 1."""
    coeffs = chi.coefficients if isinstance(chi, Character) else chi
    if coeffs.group.moduli != x.group.moduli:
        raise ValueError("element and character moduli mismatch")
    total = Fraction(0)
    for a, b, m in zip(x.residues, coeffs.residues, x.group.moduli):
        total += Fraction(a * b, m)
    return QmodZ.of(total)


def word_pairing(x: Sequence[int], chi: Sequence[int], moduli: Sequence[int]) -> QmodZ:
    """Pairing of flat residue vectors over explicit moduli."""
    total = Fraction(0)
    for a, b, m in zip(x, chi, moduli):
        total += Fraction(int(a) * int(b), m)
    return QmodZ.of(total)


def annihilator(subgroup: ResidueMatrix) -> ResidueMatrix:
    """All characters pairing to zero with every element of the subgroup.

    Satisfies |H| * |H-perp| = |G| and (H-perp)-perp = H.
    """
    return annihilator_rows(subgroup)


@dataclass(frozen=True)
class QuotientDualityReport:
    """Comparison of the invariant factors of R/S and of S-perp/R-perp."""

    quotient_factors: tuple[int, ...]
    annihilator_quotient_factors: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.quotient_factors == self.annihilator_quotient_factors

    def render(self) -> str:
        status = "match" if self.ok else "MISMATCH"
        return (
            f"quotient R/S factors:        {list(self.quotient_factors)}\n"
            f"annihilator quotient factors: {list(self.annihilator_quotient_factors)}\n"
            f"verdict: {status}"
        )


def quotient_duality_check(
    S: ResidueMatrix, R: ResidueMatrix, G: FiniteAbelianGroup
) -> QuotientDualityReport:
    """Check that R/S and S-perp/R-perp share their invariant factors.

    Requires S <= R <= G; a factor mismatch would signal a library bug, so
    the report is meant for cross-checking rather than discovery.
    """
    if S.moduli != G.moduli or R.moduli != G.moduli:
        raise ValueError("subgroups must be given over the group moduli")
    for row in S.rows:
        if not contains_vector(R, row):
            raise ValueError("S is not contained in R")
    quotient = quotient_invariants(R, S.rows)
    s_perp = annihilator(S)
    r_perp = annihilator(R)
    dual_quotient = quotient_invariants(s_perp, r_perp.rows)
    return QuotientDualityReport(quotient, dual_quotient)


def dual_block_code(code: BlockCode) -> BlockCode:
    """The annihilator of a block code inside the dual sequence space.

    At finite horizon the dual of a product is the product of the duals, so
    the dual code lives over the same symbol moduli; the construction is an
    inclusion-reversing involution.
    """
    rows = annihilator_rows(code.basis)
    return BlockCode(code.space, howell_form(rows))
