"""Tests for the brute-force oracle itself."""

import pytest

from groupcodes.codes import SequenceSpace, code_from_generators
from groupcodes.groups import FiniteAbelianGroup
from groupcodes.oracle import (
    OracleBoundExceeded,
    brute,
    enumerate_code,
)


def space(*symbol_moduli):
    return SequenceSpace(tuple(FiniteAbelianGroup(m) for m in symbol_moduli))


def binary_space(n):
    return space(*[(2,)] * n)


@pytest.fixture
def even_weight():
    return code_from_generators(binary_space(3), [(1, 1, 0), (0, 1, 1)])


@pytest.fixture
def repetition():
    return code_from_generators(binary_space(3), [(1, 1, 1)])


class TestEnumerate:
    def test_diagonal(self):
        code = code_from_generators(binary_space(2), [(1, 1)])
        assert enumerate_code(code).words == ((0, 0), (1, 1))

    def test_even_weight_has_four(self, even_weight):
        assert len(enumerate_code(even_weight).words) == 4

    def test_zero_code(self):
        code = code_from_generators(binary_space(2), [])
        assert enumerate_code(code).words == ((0, 0),)

    def test_bound_enforced(self):
        sp = space((16,), (16,), (16,))
        full = code_from_generators(
            sp, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        )
        with pytest.raises(OracleBoundExceeded):
            enumerate_code(full, bound=100)


class TestBruteDispatch:
    def test_reachable_repetition(self, repetition):
        got = set(brute("reachable_set", repetition, 1, 1))
        assert got == {(0, 0, 0)}

    def test_annihilator_of_two_in_z4(self):
        code = code_from_generators(space((4,)), [(2,)])
        assert set(brute("annihilator", code)) == {(0,), (2,)}

    def test_order_profile_zero_code(self):
        code = code_from_generators(binary_space(3), [])
        assert brute("order_profile", code) == (0, 1, 2, 3)

    def test_smith_invariants(self, even_weight):
        assert brute("smith_invariants", even_weight) == (2, 2)
        mixed = code_from_generators(space((2,), (3,)), [(1, 1)])
        assert brute("smith_invariants", mixed) == (6,)
        cyc8 = code_from_generators(space((8,), (4,)), [(1, 1)])
        assert brute("smith_invariants", cyc8) == (8,)

    def test_unknown_predicate(self, even_weight):
        with pytest.raises(ValueError):
            brute("no_such_thing", even_weight)
