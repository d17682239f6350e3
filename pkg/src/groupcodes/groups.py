"""Finite abelian groups: elements, orders, primary parts, heights, socles.

A group is an ordered list of cyclic moduli; elements are residue vectors.
Trivial factors (modulus 1) are allowed and behave as always-zero
coordinates, which keeps index arithmetic uniform across sequence spaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterator, Sequence

from .linalg import ResidueMatrix, howell_form, residue_matrix

__all__ = [
    "FiniteAbelianGroup",
    "GroupElement",
    "PrimaryComponent",
    "element_order",
    "primary_decomposition",
    "height",
    "socle",
    "prime_factors",
]


def prime_factors(n: int) -> list[int]:
    """Ascending list of distinct primes dividing n."""
    primes = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return primes


def _is_prime(p: int) -> bool:
    return p >= 2 and prime_factors(p) == [p]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups Z/m_1 + ... + Z/m_n."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(m < 1 for m in self.moduli):
            raise ValueError("moduli must be >= 1")

    @property
    def cardinality(self) -> int:
        return math.prod(self.moduli)

    @property
    def exponent(self) -> int:
        return lcm(*self.moduli) if self.moduli else 1

    def element(self, residues: Sequence[int]) -> "GroupElement":
        if len(residues) != len(self.moduli):
            raise ValueError("residue vector length mismatch")
        return GroupElement(self, tuple(int(e) % m for e, m in zip(residues, self.moduli)))

    def zero(self) -> "GroupElement":
        return GroupElement(self, tuple(0 for _ in self.moduli))

    def elements(self) -> Iterator["GroupElement"]:
        """All elements, in lexicographic residue order."""
        import itertools

        for residues in itertools.product(*[range(m) for m in self.moduli]):
            yield GroupElement(self, residues)

    def primes(self) -> list[int]:
        """The primes dividing the group order."""
        return prime_factors(self.cardinality)

    def __str__(self) -> str:
        if not self.moduli:
            return "0"
        return " + ".join(f"Z/{m}" for m in self.moduli)


@dataclass(frozen=True)
class GroupElement:
    """A residue vector in its parent group."""

    group: FiniteAbelianGroup
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(not 0 <= e < m for e, m in zip(self.residues, self.group.moduli)):
            raise ValueError("residue out of range")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            tuple(
                (a + b) % m
                for a, b, m in zip(self.residues, other.residues, self.group.moduli)
            ),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple((-a) % m for a, m in zip(self.residues, self.group.moduli)),
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, scalar: int) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple((scalar * a) % m for a, m in zip(self.residues, self.group.moduli)),
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.residues)

    def _check(self, other: "GroupElement") -> None:
        if other.group.moduli != self.group.moduli:
            raise ValueError("elements from different groups")


def element_order(g: GroupElement) -> int:
    """Least n >= 1 with n*g = 0; equals lcm_j(m_j / gcd(m_j, g_j))."""
    orders = [m // gcd(m, e) for e, m in zip(g.residues, g.group.moduli)]
    return lcm(*orders) if orders else 1


@dataclass(frozen=True)
class PrimaryComponent:
    """One primary part (G)_p with its projection and embedding maps."""

    prime: int
    group: FiniteAbelianGroup
    parent: FiniteAbelianGroup
    # Per coordinate: (p-power part q, cofactor, CRT multiplier for embedding).
    _crt: tuple[tuple[int, int, int], ...] = field(repr=False)

    def project(self, g: GroupElement) -> GroupElement:
        if g.group != self.parent:
            raise ValueError("element not in the parent group")
        return self.group.element([e % q for e, (q, _, _) in zip(g.residues, self._crt)])

    def embed(self, c: GroupElement) -> GroupElement:
        if c.group != self.group:
            raise ValueError("element not in the component group")
        out = []
        for e, (q, cof, mult), m in zip(c.residues, self._crt, self.parent.moduli):
            out.append((e * mult) % m if q > 1 else 0)
        return self.parent.element(out)


def primary_decomposition(G: FiniteAbelianGroup) -> dict[int, PrimaryComponent]:
    """The primary parts (G)_p for each prime p dividing |G|.

    Projection and embedding are mutually inverse on each part, and summing
    the embeddings of all projections reconstructs the element.
    """
    components: dict[int, PrimaryComponent] = {}
    for p in G.primes():
        crt = []
        comp_moduli = []
        for m in G.moduli:
            q = 1
            rest = m
            while rest % p == 0:
                q *= p
                rest //= p
            comp_moduli.append(q)
            if q == 1:
                crt.append((1, m, 0))
            else:
                # CRT multiplier: 1 mod q, 0 mod cofactor.
                cof = rest
                mult = cof * pow(cof, -1, q) if q > 1 else 0
                crt.append((q, cof, mult % m if m > 1 else 0))
        components[p] = PrimaryComponent(
            prime=p,
            group=FiniteAbelianGroup(tuple(comp_moduli)),
            parent=G,
            _crt=tuple(crt),
        )
    return components


def height(g: GroupElement, p: int) -> int | float:
    """Largest h such that p^h * x = g is solvable; math.inf if all h work.

    Solvability of ``p^h x = g_j (mod m_j)`` per coordinate amounts to
    ``gcd(p^h, m_j)`` dividing ``g_j``, so the height is the minimum of
    ``v_p(g_j)`` over coordinates where that valuation is below ``v_p(m_j)``.
    The height is infinite exactly when the p-primary part of g vanishes;
    inside a p-group that means g = 0.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    bound = None
    for e, m in zip(g.residues, g.group.moduli):
        vm = 0
        while m % p == 0:
            vm += 1
            m //= p
        if vm == 0:
            continue
        ve = 0
        x = e
        while x and x % p == 0 and ve < vm:
            ve += 1
            x //= p
        if x == 0:
            ve = vm
        if ve < vm and (bound is None or ve < bound):
            bound = ve
    return math.inf if bound is None else bound


def socle(G: FiniteAbelianGroup, p: int) -> tuple[ResidueMatrix, int]:
    """G[p] = {g : p*g = 0} as a canonical subgroup, with its Z/p dimension."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    rows = []
    dim = 0
    n = len(G.moduli)
    for j, m in enumerate(G.moduli):
        if m % p == 0:
            dim += 1
            rows.append([m // p if k == j else 0 for k in range(n)])
    return howell_form(residue_matrix(rows, G.moduli)), dim
