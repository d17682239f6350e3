"""Exact linear algebra over products of residue rings Z/m_1 x ... x Z/m_n.

Everything here works with plain Python integers, so all results are exact.
The central object is the Howell form: the canonical echelon basis of a row
span over a residue ring.  Two generating sets span the same subgroup of
``Z/m_1 x ... x Z/m_n`` exactly when their Howell forms are identical, and
the Howell property (any span element with a zero prefix lies in the span of
the later rows) is what makes membership tests, coset reduction and kernel
computations by block elimination correct.

Mixed per-column moduli are handled by embedding column ``j`` into ``Z/L``
(``L`` the lcm of all moduli) via scaling by ``L/m_j``; the scaling is an
injective homomorphism, so canonical forms computed over the single ring
``Z/L`` map back uniquely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]

__all__ = [
    "ResidueMatrix",
    "residue_matrix",
    "howell_form",
    "span_cardinality",
    "contains_vector",
    "coset_reduce",
    "spans_equal",
    "scale_rows",
    "stack",
    "solve_congruence_system",
    "CongruenceSolution",
    "annihilator_rows",
    "homomorphism_kernel",
    "solve_homomorphism",
    "intersect_rows",
    "smith_invariants",
    "quotient_invariants",
    "subgroup_basis",
    "integer_smith_diagonal",
]


@dataclass(frozen=True)
class ResidueMatrix:
    """Rows over ``Z/m_1 x ... x Z/m_n`` with per-column moduli ``m_j >= 1``.

    Entries satisfy ``0 <= rows[i][j] < moduli[j]``.  Instances are immutable;
    all operations return new matrices.
    """

    moduli: Vector
    rows: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if any(m < 1 for m in self.moduli):
            raise ValueError(f"moduli must be >= 1, got {self.moduli}")
        width = len(self.moduli)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(f"row width {len(row)} != {width} columns")
            if any(not 0 <= e < m for e, m in zip(row, self.moduli)):
                raise ValueError(f"entry out of range in row {row}")

    @property
    def width(self) -> int:
        return len(self.moduli)

    def is_zero(self) -> bool:
        return not self.rows


def residue_matrix(rows: Iterable[Sequence[int]], moduli: Sequence[int]) -> ResidueMatrix:
    """Build a ResidueMatrix, reducing entries modulo the column moduli."""
    mods = tuple(int(m) for m in moduli)
    normalized = tuple(
        tuple(int(e) % m for e, m in zip(row, mods)) for row in rows
    )
    for row in normalized:
        if len(row) != len(mods):
            raise ValueError(f"row width {len(row)} != {len(mods)} columns")
    return ResidueMatrix(mods, normalized)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _unit_scaling_to_divisor(a: int, L: int) -> tuple[int, int]:
    """Return (u, d) with u a unit mod L, d = gcd(a, L) and u*a = d mod L."""
    d = gcd(a, L)
    cof = L // d
    if cof == 1:
        return 1, d
    u = pow((a // d) % cof, -1, cof)
    # Lift to a unit modulo L: u is invertible mod L/d already.
    while gcd(u, L) != 1:
        u += cof
    return u % L, d


def _first_nonzero(row: Sequence[int]) -> int:
    for j, e in enumerate(row):
        if e:
            return j
    return -1


def _howell_single(rows: Iterable[Sequence[int]], L: int, width: int) -> list[list[int]]:
    """Howell canonical basis of the span of ``rows`` inside ``(Z/L)^width``."""
    if L == 1:
        return []
    pivots: dict[int, list[int]] = {}
    stack: list[list[int]] = []
    for row in rows:
        v = [e % L for e in row]
        if any(v):
            stack.append(v)

    def push_annihilator(row: list[int], pivot_value: int) -> None:
        c = L // gcd(L, pivot_value)
        w = [(c * e) % L for e in row]
        if any(w):
            stack.append(w)

    while stack:
        v = stack.pop()
        j = _first_nonzero(v)
        while j >= 0:
            if j not in pivots:
                pivots[j] = v
                push_annihilator(v, v[j])
                break
            r = pivots[j]
            a, b = r[j], v[j]
            if b % a == 0:
                q = b // a
                v = [(x - q * y) % L for x, y in zip(v, r)]
            else:
                g, s, t = _egcd(a, b)
                # [[s, t], [-b/g, a/g]] has determinant 1: span preserved.
                new_r = [(s * x + t * y) % L for x, y in zip(r, v)]
                v = [(-(b // g) * x + (a // g) * y) % L for x, y in zip(r, v)]
                pivots[j] = new_r
                push_annihilator(new_r, g)
            j = _first_nonzero(v)

    # Normalize pivots to divisors of L and reduce entries above each pivot.
    order = sorted(pivots)
    basis = []
    for j in order:
        row = pivots[j]
        u, d = _unit_scaling_to_divisor(row[j], L)
        basis.append([(u * e) % L for e in row])
    for idx, j in enumerate(order):
        d = basis[idx][j]
        for above in range(idx):
            q = basis[above][j] // d
            if q:
                basis[above] = [
                    (x - q * y) % L for x, y in zip(basis[above], basis[idx])
                ]
    return basis


def _embed(row: Sequence[int], moduli: Vector, L: int) -> list[int]:
    return [(e * (L // m)) % L for e, m in zip(row, moduli)]


def _unembed(row: Sequence[int], moduli: Vector, L: int) -> Vector:
    return tuple(e // (L // m) for e, m in zip(row, moduli))


@lru_cache(maxsize=1 << 14)
def _howell_cached(rows: tuple[Vector, ...], moduli: Vector) -> tuple[Vector, ...]:
    if not moduli:
        return ()
    L = lcm(*moduli)
    if L == 1:
        return ()
    embedded = [_embed(r, moduli, L) for r in rows]
    basis = _howell_single(embedded, L, len(moduli))
    return tuple(_unembed(r, moduli, L) for r in basis)


def howell_form(matrix: ResidueMatrix) -> ResidueMatrix:
    """Canonical Howell basis of the row span.  Idempotent.

    The result has one row per pivot column, pivot columns strictly
    increasing, pivot entries normalized, entries above each pivot reduced,
    and the Howell property: every span element whose first k coordinates
    vanish lies in the span of the rows with pivot column >= k.
    """
    return ResidueMatrix(matrix.moduli, _howell_cached(matrix.rows, matrix.moduli))


def _pivot_order(entry: int, modulus: int) -> int:
    return modulus // gcd(modulus, entry)


def span_cardinality(matrix: ResidueMatrix) -> int:
    """Number of elements in the row span."""
    canon = howell_form(matrix)
    total = 1
    for row in canon.rows:
        j = _first_nonzero(row)
        total *= _pivot_order(row[j], canon.moduli[j])
    return total


def _reduce_vector(
    canon: ResidueMatrix, vector: Sequence[int], stop: Optional[int] = None
) -> tuple[Vector, Vector]:
    """Clear pivot-column entries of ``vector`` (up to column ``stop``).

    Returns (remainder, coefficients): remainder = vector - sum(c_i * row_i)
    with each touched pivot column reduced into ``[0, pivot)``.  By the
    Howell property the remainder is the canonical coset representative once
    ``stop`` covers all columns.
    """
    moduli = canon.moduli
    L = lcm(*moduli) if moduli else 1
    v = list(_embed(vector, moduli, L)) if L > 1 else [0] * len(moduli)
    coeffs = [0] * len(canon.rows)
    limit = len(moduli) if stop is None else stop
    embedded_rows = [_embed(r, moduli, L) for r in canon.rows] if L > 1 else []
    for idx, row in enumerate(embedded_rows):
        j = _first_nonzero(row)
        if j >= limit:
            break
        d = row[j]
        q = v[j] // d
        if q:
            v = [(x - q * y) % L for x, y in zip(v, row)]
            coeffs[idx] = q
    if L == 1:
        return tuple(0 for _ in moduli), tuple(coeffs)
    return _unembed(v, moduli, L), tuple(coeffs)


def coset_reduce(matrix: ResidueMatrix, vector: Sequence[int]) -> Vector:
    """Canonical representative of ``vector + span(matrix)``."""
    canon = howell_form(matrix)
    vec = tuple(int(e) % m for e, m in zip(vector, canon.moduli))
    remainder, _ = _reduce_vector(canon, vec)
    return remainder


def contains_vector(matrix: ResidueMatrix, vector: Sequence[int]) -> bool:
    """Membership of ``vector`` in the row span."""
    return not any(coset_reduce(matrix, vector))


def spans_equal(a: ResidueMatrix, b: ResidueMatrix) -> bool:
    return howell_form(a).rows == howell_form(b).rows


def scale_rows(matrix: ResidueMatrix, scalar: int) -> ResidueMatrix:
    """Generators of ``scalar * span``, which equals the span of scaled rows."""
    return residue_matrix(
        [[scalar * e for e in row] for row in matrix.rows], matrix.moduli
    )


def stack(a: ResidueMatrix, b: ResidueMatrix) -> ResidueMatrix:
    if a.moduli != b.moduli:
        raise ValueError("column moduli mismatch")
    return howell_form(ResidueMatrix(a.moduli, a.rows + b.rows))


# ---------------------------------------------------------------------------
# Homomorphism kernels and solving via the graph trick.
#
# For a homomorphism f from ⊕ Z/u_j (unknowns) to ⊕ Z/w_i (image), the span
# of the rows [f(e_j) | e_j] is the graph {(f(x), x)}.  In its Howell form,
# the rows whose image block vanishes span exactly {(0, x) : f(x) = 0}, and
# clearing the image block of (target | 0) decides solvability of f(x) =
# target while reading off a particular solution.
# ---------------------------------------------------------------------------


def homomorphism_kernel(
    images: Sequence[Sequence[int]],
    unknown_moduli: Sequence[int],
    image_moduli: Sequence[int],
) -> ResidueMatrix:
    """Kernel of ``x -> sum_j x_j * images[j]`` as a Howell basis.

    ``images[j]`` is the image of the j-th unit over ``image_moduli``; the
    map must be well defined, i.e. ``unknown_moduli[j] * images[j] == 0``.
    """
    unknowns = tuple(int(m) for m in unknown_moduli)
    imgmods = tuple(int(m) for m in image_moduli)
    for m, img in zip(unknowns, images):
        if any((m * e) % w for e, w in zip(img, imgmods)):
            raise ValueError("map not well defined on Z/%d" % m)
    graph = residue_matrix(
        [
            tuple(int(e) % w for e, w in zip(images[j], imgmods))
            + tuple(1 if k == j else 0 for k in range(len(unknowns)))
            for j in range(len(unknowns))
        ],
        imgmods + unknowns,
    )
    canon = howell_form(graph)
    head = len(imgmods)
    kernel_rows = [row[head:] for row in canon.rows if not any(row[:head])]
    return howell_form(residue_matrix(kernel_rows, unknowns))


def solve_homomorphism(
    images: Sequence[Sequence[int]],
    unknown_moduli: Sequence[int],
    image_moduli: Sequence[int],
    target: Sequence[int],
) -> Optional[Vector]:
    """A particular ``x`` with ``sum_j x_j * images[j] = target``, or None."""
    unknowns = tuple(int(m) for m in unknown_moduli)
    imgmods = tuple(int(m) for m in image_moduli)
    if len(target) != len(imgmods):
        raise ValueError("target length mismatch")
    graph = residue_matrix(
        [
            tuple(int(e) % w for e, w in zip(images[j], imgmods))
            + tuple(1 if k == j else 0 for k in range(len(unknowns)))
            for j in range(len(unknowns))
        ],
        imgmods + unknowns,
    )
    canon = howell_form(graph)
    head = len(imgmods)
    augmented = tuple(int(e) % w for e, w in zip(target, imgmods)) + tuple(
        0 for _ in unknowns
    )
    remainder, _ = _reduce_vector(canon, augmented, stop=head)
    if any(remainder[:head]):
        return None
    return tuple((-e) % m for e, m in zip(remainder[head:], unknowns))


@dataclass(frozen=True)
class CongruenceSolution:
    """One solution of ``y . A = b`` plus a Howell basis of the kernel."""

    particular: Vector
    kernel: ResidueMatrix


def solve_congruence_system(
    matrix: ResidueMatrix, target: Sequence[int]
) -> Optional[CongruenceSolution]:
    """Solve ``y . A = b`` over the column moduli of ``A``.

    The unknowns are integer row coefficients ``y_i``, one per row of ``A``;
    only their residues modulo the ambient exponent matter, so the kernel is
    reported over that modulus.  Returns None when ``b`` is not in the row
    span.
    """
    if len(target) != matrix.width:
        raise ValueError("right-hand side length mismatch")
    if not matrix.rows:
        if any(int(e) % m for e, m in zip(target, matrix.moduli)):
            return None
        return CongruenceSolution((), residue_matrix([], ()))
    exponent = lcm(*matrix.moduli)
    unknowns = tuple(exponent for _ in matrix.rows)
    particular = solve_homomorphism(matrix.rows, unknowns, matrix.moduli, target)
    if particular is None:
        return None
    kernel = homomorphism_kernel(matrix.rows, unknowns, matrix.moduli)
    return CongruenceSolution(particular, kernel)


def annihilator_rows(matrix: ResidueMatrix) -> ResidueMatrix:
    """Annihilator of the row span under the standard pairing.

    The pairing of x and chi over moduli m is ``sum_j x_j chi_j / m_j`` taken
    modulo 1; chi annihilates the span iff every generator pairs to zero,
    which over the common denominator ``L`` reads
    ``sum_j g_j (L/m_j) chi_j = 0 (mod L)`` per generator ``g``.
    """
    moduli = matrix.moduli
    if not moduli:
        return residue_matrix([], ())
    L = lcm(*moduli)
    if not matrix.rows or L == 1:
        # Annihilator of the zero subgroup: the whole dual group.
        units = [
            [1 if k == j else 0 for k in range(len(moduli))]
            for j, m in enumerate(moduli)
            if m > 1
        ]
        return howell_form(residue_matrix(units, moduli))
    images = [
        [(row[j] * (L // moduli[j])) % L for row in matrix.rows]
        for j in range(len(moduli))
    ]
    image_moduli = tuple(L for _ in matrix.rows)
    return homomorphism_kernel(images, moduli, image_moduli)


def intersect_rows(a: ResidueMatrix, b: ResidueMatrix) -> ResidueMatrix:
    """Intersection of two spans, computed as (A-perp + B-perp)-perp."""
    if a.moduli != b.moduli:
        raise ValueError("column moduli mismatch")
    joined = stack(annihilator_rows(a), annihilator_rows(b))
    return annihilator_rows(joined)


# ---------------------------------------------------------------------------
# Integer Smith normal form, used to extract cyclic bases of subgroups and
# invariant factors of quotients.
# ---------------------------------------------------------------------------


def integer_smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Entries are nonnegative with each dividing the next.  For a relation
    matrix this diagonal presents the cokernel.
    """
    mat = [list(map(int, row)) for row in rows]
    diag, _ = _smith_with_left_inverse(mat, track=False)
    return diag


def _smith_with_left_inverse(
    mat: list[list[int]], track: bool = True
) -> tuple[list[int], list[list[int]]]:
    """Diagonalize ``mat`` in place by unimodular row and column operations.

    Returns (diagonal, Uinv).  Row operations accumulate into a left
    transform U with U*mat*V diagonal; Uinv tracks U^{-1} columnwise so the
    caller can recover the adapted basis of the row index lattice.  The
    diagonal is nonnegative with each entry dividing the next.
    """
    n = len(mat)
    m = len(mat[0]) if mat else 0
    uinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_combine(i: int, k: int, s: int, t: int, u: int, v: int) -> None:
        # rows (i,k) <- (s*ri + t*rk, u*ri + v*rk), det(sv - tu) = 1;
        # Uinv picks up the inverse [[v,-t],[-u,s]] as a column operation.
        for j in range(m):
            a, b = mat[i][j], mat[k][j]
            mat[i][j] = s * a + t * b
            mat[k][j] = u * a + v * b
        if track:
            for r in range(n):
                a, b = uinv[r][i], uinv[r][k]
                uinv[r][i] = v * a - u * b
                uinv[r][k] = -t * a + s * b

    def col_combine(j: int, k: int, s: int, t: int, u: int, v: int) -> None:
        for i in range(n):
            a, b = mat[i][j], mat[i][k]
            mat[i][j] = s * a + t * b
            mat[i][k] = u * a + v * b

    size = min(n, m)
    for t in range(size):
        while True:
            pivot = None
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    e = abs(mat[i][j])
                    if e and (best is None or e < best):
                        best, pivot = e, (i, j)
            if pivot is None:
                break
            if pivot[0] != t:
                i = pivot[0]
                mat[t], mat[i] = mat[i], mat[t]
                if track:
                    for r in range(n):
                        uinv[r][t], uinv[r][i] = uinv[r][i], uinv[r][t]
            if pivot[1] != t:
                j = pivot[1]
                for i in range(n):
                    mat[i][t], mat[i][j] = mat[i][j], mat[i][t]
            for i in range(t + 1, n):
                if mat[i][t]:
                    a, b = mat[t][t], mat[i][t]
                    if b % a == 0:
                        # Plain subtraction keeps the pivot row fixed.
                        row_combine(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, s, tt = _egcd(a, b)
                        row_combine(t, i, s, tt, -(b // g), a // g)
            for j in range(t + 1, m):
                if mat[t][j]:
                    a, b = mat[t][t], mat[t][j]
                    if b % a == 0:
                        col_combine(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, s, tt = _egcd(a, b)
                        col_combine(t, j, s, tt, -(b // g), a // g)
            if any(mat[i][t] for i in range(t + 1, n)) or any(
                mat[t][j] for j in range(t + 1, m)
            ):
                continue
            offender = None
            for i in range(t + 1, n):
                if any(mat[i][j] % mat[t][t] for j in range(t + 1, m)):
                    offender = i
                    break
            if offender is None:
                break
            # Fold the offending row into row t; the next gcd pass strictly
            # shrinks the pivot, so this terminates.
            row_combine(t, offender, 1, 1, 0, 1)
        if t < size and mat[t][t] < 0:
            for j in range(m):
                mat[t][j] = -mat[t][j]
            if track:
                for r in range(n):
                    uinv[r][t] = -uinv[r][t]
    diag = [mat[i][i] for i in range(size)]
    return diag, uinv


def subgroup_basis(matrix: ResidueMatrix) -> list[tuple[Vector, int]]:
    """Elements y_i with span(matrix) the internal direct sum of the <y_i>.

    Returns (element, order) pairs with orders forming a divisibility chain;
    the orders are the invariant factors of the span.
    """
    canon = howell_form(matrix)
    gens = list(canon.rows)
    if not gens:
        return []
    moduli = canon.moduli
    exponent = lcm(*moduli)
    k = len(gens)
    unknowns = tuple(exponent for _ in gens)
    kernel = homomorphism_kernel(gens, unknowns, moduli)
    # Integer relation lattice: lifts of the kernel mod exponent, plus
    # exponent times the standard lattice.  Columns generate the lattice.
    cols: list[list[int]] = [list(row) for row in kernel.rows]
    cols.extend([exponent if i == j else 0 for i in range(k)] for j in range(k))
    lattice = [[cols[c][r] for c in range(len(cols))] for r in range(k)]
    diag, uinv = _smith_with_left_inverse(lattice, track=True)
    result: list[tuple[Vector, int]] = []
    for i in range(k):
        order = diag[i] if i < len(diag) else 0
        if order in (0, 1):
            continue
        combo = [uinv[j][i] for j in range(k)]
        element = tuple(
            sum(c * g[col] for c, g in zip(combo, gens)) % moduli[col]
            for col in range(len(moduli))
        )
        result.append((element, order))
    result.sort(key=lambda pair: pair[1])
    return result


def quotient_invariants(
    numerator: ResidueMatrix, denominator_rows: Sequence[Sequence[int]]
) -> tuple[int, ...]:
    """Invariant factors of (span(numerator) + D) / D, D = span(denominator).

    Ascending, each dividing the next, all >= 2; empty for a trivial
    quotient.
    """
    canon = howell_form(numerator)
    gens = list(canon.rows)
    if not gens:
        return ()
    moduli = canon.moduli
    den = [tuple(int(e) % m for e, m in zip(row, moduli)) for row in denominator_rows]
    exponent = lcm(*moduli)
    k = len(gens)
    combined = gens + den
    unknowns = tuple(exponent for _ in combined)
    kernel = homomorphism_kernel(combined, unknowns, moduli)
    # Relations among the numerator generators modulo the denominator are the
    # projections of the combined kernel onto the first k coefficients.
    cols: list[list[int]] = [list(row[:k]) for row in kernel.rows]
    cols.extend([exponent if i == j else 0 for i in range(k)] for j in range(k))
    lattice = [[cols[c][r] for c in range(len(cols))] for r in range(k)]
    diag, _ = _smith_with_left_inverse(lattice, track=False)
    factors = sorted(d for d in diag if d not in (0, 1))
    return tuple(factors)


def smith_invariants(matrix: ResidueMatrix) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of the subgroup spanned by the rows."""
    return quotient_invariants(matrix, [])
