from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sbk.errors import ContextError, SbkError
from sbk.presentations import artin_presentation, verify_hom
from sbk.reps import (
    FreeEndo,
    GroupRingElement,
    RepMatrix,
    artin_endo,
    burau_hom,
    burau_reduced,
    burau_unreduced,
    fox_derivative,
    fox_identity_holds,
    gassner,
    gassner_to_burau,
    is_artin_pair_inverse,
    permutation_matrix,
    sigma_endo,
    specialize,
)
from sbk.words import GroupContext, random_word

FREE = GroupContext.free(3)


def free_words(max_size=15):
    return st.lists(st.tuples(st.integers(1, 3), st.sampled_from((1, -1))), max_size=max_size).map(
        lambda ls: FREE.word(" ".join(f"x{i}^{e}" for i, e in ls))
    )


def braids(n, max_size=8):
    return st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))), max_size=max_size).map(
        lambda ls: GroupContext.artin(n).word(" ".join(f"s{i}^{e}" for i, e in ls))
    )


def _numeric_burau(b, t: Fraction) -> list[list[Fraction]]:
    """Product of the explicit 2x2-block matrices, evaluated at t."""
    n = b.context.params[0]
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for lt in b.letters:
        i = lt.gen.index - 1
        S = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
        block = [[1 - t, t], [Fraction(1), Fraction(0)]] if lt.exp == 1 else [[Fraction(0), Fraction(1)], [1 / t, 1 - 1 / t]]
        for r in range(2):
            for c in range(2):
                S[i + r][i + c] = block[r][c]
        M = [[sum(M[r][k] * S[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    return M


@given(braids(4), st.sampled_from([Fraction(2), Fraction(-1, 3), Fraction(5)]))
def test_burau_matches_explicit_matrices(b, t):
    assert specialize(burau_unreduced(b), {"t": t}) == _numeric_burau(b, t)


@given(braids(4), braids(4))
def test_burau_is_multiplicative(u, v):
    assert burau_unreduced(u * v) == burau_unreduced(u) @ burau_unreduced(v)
    assert burau_reduced(u * v) == burau_reduced(u) @ burau_reduced(v)


@given(free_words())
def test_fox_fundamental_identity(w):
    assert fox_identity_holds(w)


@given(free_words(), free_words())
def test_fox_product_rule(u, v):
    for j in (1, 2, 3):
        assert fox_derivative(u * v, j) == fox_derivative(u, j) + GroupRingElement.of(u) * fox_derivative(v, j)


@given(braids(4), braids(4))
def test_artin_endomorphisms_compose(u, v):
    assert artin_endo(u * v) == artin_endo(v).after(artin_endo(u))
    assert artin_endo(u * u.inverse()).is_identity()


def test_sigma_endo_inverse():
    for n in (3, 5):
        for i in range(1, n):
            assert sigma_endo(n, i, 1).after(sigma_endo(n, i, -1)).is_identity()
            assert is_artin_pair_inverse(n, i)
    assert FreeEndo.identity(3).is_identity()


def test_burau_golden_values():
    B3 = GroupContext.artin(3)
    assert str(burau_unreduced(B3.word("s1"))) == "[1 - t, t, 0]\n[1, 0, 0]\n[0, 0, 1]"
    assert str(burau_reduced(B3.word("s1"))) == "[1 - t, t]\n[1, 0]"
    assert specialize(burau_reduced(B3.word("s1")), {"t": 2}) == [[-1, 2], [1, 0]]
    assert str(fox_derivative(GroupContext.free(2).word("x1 x2 x1^-1"), 1)) == "1 - x1*x2*x1^-1"


def test_gassner_golden_value_and_specialisation():
    b = GroupContext.artin(2).word("s1^2")
    G = gassner(b)
    assert str(G) == "[1 - t1 + t1*t2, t1 - t1^2]\n[1 - t2, t1]"
    assert gassner_to_burau(G) == burau_unreduced(b)


def test_gassner_needs_pure_braid():
    with pytest.raises(SbkError):
        gassner(GroupContext.artin(3).word("s1"))


def test_burau_at_one_is_permutation(rng):
    for n in (3, 5):
        b = random_word(GroupContext.artin(n), 12, rng)
        assert specialize(burau_unreduced(b), {"t": 1}) == permutation_matrix(b)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_burau_carrier_hom(n):
    assert verify_hom(burau_hom(n), artin_presentation(n)).passed


def test_specialize_requires_all_variables():
    with pytest.raises(SbkError):
        specialize(gassner(GroupContext.artin(2).word("s1^2")), {"t1": 2})


def test_identity_matrix():
    assert RepMatrix.identity(3, ("t",)).is_identity()
    assert burau_unreduced(GroupContext.artin(3).identity()).is_identity()


def test_fox_requires_free_group():
    with pytest.raises(ContextError):
        fox_derivative(GroupContext.artin(3).word("s1"), 1)
