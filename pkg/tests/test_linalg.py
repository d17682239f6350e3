"""Tests for exact residue-ring linear algebra.

Expected values were computed with the brute-force span enumerator below
(closure under addition), which is independent of the Howell machinery.
"""

import itertools
import random
from math import gcd, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupcodes.linalg import (
    ResidueMatrix,
    annihilator_rows,
    contains_vector,
    coset_reduce,
    howell_form,
    integer_smith_diagonal,
    intersect_rows,
    quotient_invariants,
    residue_matrix,
    smith_invariants,
    solve_congruence_system,
    span_cardinality,
    spans_equal,
    subgroup_basis,
)


def enumerate_span(rows, moduli):
    """All elements of the span, by closure under addition of generators."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    gens = [tuple(e % m for e, m in zip(r, moduli)) for r in rows]
    while frontier:
        base = frontier.pop()
        for g in gens:
            nxt = tuple((x + y) % m for x, y, m in zip(base, g, moduli))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def leading_zero_closure_holds(basis_rows, moduli, span):
    """Check the Howell property directly against an enumerated span."""
    width = len(moduli)
    for k in range(width + 1):
        tail_rows = [r for r in basis_rows if not any(r[:k])]
        tail_span = enumerate_span(tail_rows, moduli)
        for v in span:
            if not any(v[:k]) and v not in tail_span:
                return False
    return True


class TestHowellForm:
    def test_single_generator_mod4(self):
        m = residue_matrix([(2, 1)], (4, 4))
        assert howell_form(m).rows == ((2, 1), (0, 2))

    def test_empty_matrix(self):
        m = residue_matrix([], (4,))
        assert howell_form(m).rows == ()

    def test_full_group_mod2(self):
        m = residue_matrix([(1, 0), (1, 1)], (2, 2))
        assert howell_form(m).rows == ((1, 0), (0, 1))

    def test_idempotent(self):
        m = residue_matrix([(2, 1), (1, 3)], (4, 6))
        once = howell_form(m)
        assert howell_form(once) == once

    def test_howell_property_enumerated(self):
        rng = random.Random(7)
        for _ in range(60):
            width = rng.randint(1, 4)
            moduli = tuple(rng.choice([1, 2, 3, 4, 6, 8]) for _ in range(width))
            rows = [
                tuple(rng.randrange(m) for m in moduli)
                for _ in range(rng.randint(0, 3))
            ]
            canon = howell_form(residue_matrix(rows, moduli))
            span = enumerate_span(rows, moduli)
            assert enumerate_span(canon.rows, moduli) == span
            assert leading_zero_closure_holds(canon.rows, moduli, span)
            assert span_cardinality(canon) == len(span)

    def test_same_span_iff_same_howell(self):
        rng = random.Random(11)
        for _ in range(40):
            moduli = tuple(rng.choice([2, 3, 4]) for _ in range(3))
            rows_a = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            rows_b = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            a = residue_matrix(rows_a, moduli)
            b = residue_matrix(rows_b, moduli)
            same_enumerated = enumerate_span(rows_a, moduli) == enumerate_span(
                rows_b, moduli
            )
            assert spans_equal(a, b) == same_enumerated

    @given(
        st.lists(
            st.tuples(st.integers(0, 11), st.integers(0, 11), st.integers(0, 11)),
            max_size=4,
        )
    )
    @settings(max_examples=60, deadline=None, derandomize=True)
    def test_idempotence_property(self, rows):
        m = residue_matrix(rows, (12, 8, 9))
        once = howell_form(m)
        assert howell_form(once) == once

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ResidueMatrix((2, 2), ((2, 0),))

    def test_trivial_moduli_are_zero_columns(self):
        m = residue_matrix([(0, 1), (0, 1)], (1, 2))
        canon = howell_form(m)
        assert canon.rows == ((0, 1),)
        assert span_cardinality(canon) == 2


class TestMembership:
    def test_membership_matches_enumeration(self):
        rng = random.Random(13)
        for _ in range(30):
            moduli = tuple(rng.choice([2, 4, 6]) for _ in range(3))
            rows = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            span = enumerate_span(rows, moduli)
            m = residue_matrix(rows, moduli)
            for _ in range(10):
                v = tuple(rng.randrange(mm) for mm in moduli)
                assert contains_vector(m, v) == (v in span)

    def test_coset_reduce_is_constant_on_cosets(self):
        moduli = (4, 4)
        m = residue_matrix([(2, 1)], moduli)
        span = enumerate_span(m.rows, moduli)
        reps = {
            tuple(coset_reduce(m, (a, b)))
            for a in range(4)
            for b in range(4)
        }
        assert len(reps) == 16 // len(span)
        for a in range(4):
            for b in range(4):
                base = coset_reduce(m, (a, b))
                for s in span:
                    shifted = ((a + s[0]) % 4, (b + s[1]) % 4)
                    assert coset_reduce(m, shifted) == base


class TestSmithInvariants:
    def test_relation_matrix_already_diagonal(self):
        assert integer_smith_diagonal([[2, 0], [0, 4]]) == [2, 4]

    def test_relation_matrix_reduction(self):
        assert integer_smith_diagonal([[1, 1], [1, 3]]) == [1, 2]

    def test_span_in_mixed_moduli(self):
        m = residue_matrix([(1, 1)], (2, 3))
        assert smith_invariants(m) == (6,)

    def test_product_equals_cardinality(self):
        rng = random.Random(17)
        for _ in range(40):
            moduli = tuple(rng.choice([2, 3, 4, 8, 9]) for _ in range(3))
            rows = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            mat = residue_matrix(rows, moduli)
            factors = smith_invariants(mat)
            prod = 1
            for d in factors:
                prod *= d
            assert prod == len(enumerate_span(rows, moduli))
            for small, big in zip(factors, factors[1:]):
                assert big % small == 0

    def test_matches_order_statistics(self):
        # The multiset {x : d*x = 0} determines the isomorphism type; check
        # smith_invariants against a reconstruction from order counts.
        moduli = (4, 2, 3)
        rows = [(2, 1, 0), (0, 0, 1)]
        span = enumerate_span(rows, moduli)
        factors = smith_invariants(residue_matrix(rows, moduli))
        exponent = lcm(*(f for f in factors)) if factors else 1
        for d in range(1, exponent + 1):
            killed = sum(
                1
                for v in span
                if all((d * e) % m == 0 for e, m in zip(v, moduli))
            )
            expected = 1
            for f in factors:
                expected *= gcd(d, f)
            assert killed == expected


class TestSolveCongruence:
    def test_two_x_equals_two_mod_four(self):
        a = residue_matrix([(2,)], (4,))
        sol = solve_congruence_system(a, (2,))
        assert sol is not None
        assert sol.particular == (1,)
        assert enumerate_span(sol.kernel.rows, (4,)) == {(0,), (2,)}

    def test_two_x_equals_one_mod_four(self):
        a = residue_matrix([(2,)], (4,))
        assert solve_congruence_system(a, (1,)) is None

    def test_degenerate_zero_system(self):
        a = residue_matrix([(0,)], (7,))
        sol = solve_congruence_system(a, (0,))
        assert sol is not None
        assert sol.particular == (0,)
        assert span_cardinality(sol.kernel) == 7

    def test_dimension_mismatch(self):
        a = residue_matrix([(2,)], (4,))
        with pytest.raises(ValueError):
            solve_congruence_system(a, (1, 2))

    def test_solutions_verify(self):
        rng = random.Random(23)
        for _ in range(40):
            moduli = tuple(rng.choice([2, 4, 5, 6]) for _ in range(3))
            rows = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            a = residue_matrix(rows, moduli)
            target = tuple(rng.randrange(m) for m in moduli)
            sol = solve_congruence_system(a, target)
            in_span = target in enumerate_span(rows, moduli)
            assert (sol is not None) == in_span
            if sol is not None:
                combo = tuple(
                    sum(c * r[j] for c, r in zip(sol.particular, rows)) % moduli[j]
                    for j in range(len(moduli))
                )
                assert combo == target


class TestAnnihilator:
    def pairing_is_zero(self, x, chi, moduli):
        L = lcm(*moduli)
        return sum(a * b * (L // m) for a, b, m in zip(x, chi, moduli)) % L == 0

    def test_annihilator_by_enumeration(self):
        rng = random.Random(29)
        for _ in range(40):
            moduli = tuple(rng.choice([2, 3, 4, 6]) for _ in range(3))
            rows = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            mat = residue_matrix(rows, moduli)
            ann = annihilator_rows(mat)
            span = enumerate_span(rows, moduli)
            expected = {
                chi
                for chi in itertools.product(*[range(m) for m in moduli])
                if all(self.pairing_is_zero(x, chi, moduli) for x in span)
            }
            assert enumerate_span(ann.rows, moduli) == expected

    def test_cardinality_identity(self):
        moduli = (4, 4)
        mat = residue_matrix([(2, 1)], moduli)
        ann = annihilator_rows(mat)
        assert span_cardinality(mat) * span_cardinality(ann) == 16

    def test_double_annihilator(self):
        moduli = (4, 6, 2)
        mat = howell_form(residue_matrix([(2, 3, 1), (0, 2, 0)], moduli))
        assert annihilator_rows(annihilator_rows(mat)) == mat


class TestIntersection:
    def test_intersection_matches_enumeration(self):
        rng = random.Random(31)
        for _ in range(30):
            moduli = tuple(rng.choice([2, 4, 3]) for _ in range(3))
            rows_a = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            rows_b = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            a = residue_matrix(rows_a, moduli)
            b = residue_matrix(rows_b, moduli)
            meet = intersect_rows(a, b)
            expected = enumerate_span(rows_a, moduli) & enumerate_span(
                rows_b, moduli
            )
            assert enumerate_span(meet.rows, moduli) == expected


class TestSubgroupBasis:
    def test_orders_are_invariant_factors(self):
        rng = random.Random(37)
        for _ in range(40):
            moduli = tuple(rng.choice([2, 4, 8, 3, 9]) for _ in range(3))
            rows = [tuple(rng.randrange(m) for m in moduli) for _ in range(2)]
            mat = residue_matrix(rows, moduli)
            basis = subgroup_basis(mat)
            assert tuple(o for _, o in basis) == smith_invariants(mat)
            span = enumerate_span(rows, moduli)
            for y, order in basis:
                assert y in span
                multiples = enumerate_span([y], moduli)
                assert len(multiples) == order
            # Internal directness: the partial spans meet each <y> trivially.
            total = 1
            for _, order in basis:
                total *= order
            accumulated = enumerate_span([y for y, _ in basis], moduli)
            assert len(accumulated) == total == len(span)


class TestQuotientInvariants:
    def test_quotient_by_zero(self):
        mat = residue_matrix([(1, 1)], (2, 3))
        assert quotient_invariants(mat, []) == (6,)

    def test_quotient_collapses(self):
        mat = residue_matrix([(1,)], (4,))
        assert quotient_invariants(mat, [(2,)]) == (2,)

    def test_quotient_of_even_weight(self):
        moduli = (2, 2, 2)
        full = residue_matrix([(1, 0, 0), (0, 1, 0), (0, 0, 1)], moduli)
        even = [(1, 1, 0), (0, 1, 1)]
        assert quotient_invariants(full, even) == (2,)
