from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sbk.errors import ContextError
from sbk.nilquot import (
    c2_abelianization,
    c2_collect_naive,
    c2_commutator,
    c2_project,
    derived_subgroup,
    make_group,
    parse_element,
)
from sbk.presentations import gamma3_presentation
from sbk.words import Letter, Word, gen

GROUPS = [make_group(w, g) for w in ("Gg", "Hg", "Kg") for g in (1, 2)]


def words_in(G, max_size=25):
    ctx = G.context
    return st.lists(st.tuples(st.sampled_from(ctx.alphabet), st.sampled_from((1, -1))), max_size=max_size).map(
        lambda ls: Word(ctx, tuple(Letter(x, e) for x, e in ls))
    )


def group_and_words(count):
    return st.sampled_from(GROUPS).flatmap(lambda G: st.tuples(st.just(G), *[words_in(G)] * count))


@given(group_and_words(3))
def test_group_axioms(args):
    G, u, v, w = args
    x, y, z = (c2_project(t, G) for t in (u, v, w))
    assert (x * y) * z == x * (y * z)
    assert (x * x.inverse()).is_identity() and (x.inverse() * x).is_identity()
    assert x * G.identity() == x


@given(group_and_words(2))
def test_projection_is_multiplicative(args):
    G, u, v = args
    assert c2_project(u * v, G) == c2_project(u, G) * c2_project(v, G)
    assert c2_project(u.inverse(), G) == c2_project(u, G).inverse()


@given(group_and_words(1))
def test_naive_collection_agrees(args):
    G, w = args
    assert c2_collect_naive(w, G) == c2_project(w, G)


@given(group_and_words(3))
def test_class_two(args):
    G, u, v, w = args
    x, y, z = (c2_project(t, G) for t in (u, v, w))
    c = c2_commutator(x, y)
    assert c.is_central()
    assert c * z == z * c
    # commutators are bilinear in class 2
    assert c2_commutator(x * z, y) == c * c2_commutator(z, y)


@given(group_and_words(1))
def test_text_roundtrip(args):
    G, w = args
    x = c2_project(w, G)
    assert G.parse(str(x)) == x
    assert parse_element(str(x), G) == x


@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_presentation_relators_vanish(G):
    for r in gamma3_presentation(G.which, G.g).relators:
        assert c2_project(r, G).is_identity()
        assert c2_collect_naive(r, G).is_identity()


def test_commutator_table():
    H = make_group("Hg", 1)
    assert str(H.parse("[a1, b1]")) == "s^2"
    assert str(H.parse("[A1, B1]")) == "S^2"
    assert str(H.parse("[A1, b1]")) == "z^-1"
    assert str(H.parse("[a1, B1]")) == "z^-1"
    assert str(H.parse("B1 a1")) == "z * a1 * B1"
    G = make_group("Gg", 2)
    assert str(G.parse("b1 a1")) == "s^-2 * a1 * b1"
    assert G.parse("[a1, b2]").is_identity()


def test_invariants():
    for g in (1, 2, 3):
        assert str(derived_subgroup(make_group("Gg", g))) == "Z"
        assert str(derived_subgroup(make_group("Hg", g))) == "Z^3"
        assert str(derived_subgroup(make_group("Kg", g))) == "Z"
        assert c2_abelianization(make_group("Gg", g)).free_rank == 2 * g
        assert c2_abelianization(make_group("Hg", g)).torsion == (2, 2)
        assert c2_abelianization(make_group("Kg", g)).free_rank == 2 * g + 1


def test_json_form():
    K = make_group("Kg", 1)
    doc = json.loads(K.parse("z^2 a1 b1").dumps())
    assert doc["normal_form"] == "z^2 * a1 * b1"
    assert doc["central"] == {"s": 0, "z": 2}


def test_mixing_groups_is_an_error():
    with pytest.raises(ContextError):
        make_group("Gg", 1).identity() * make_group("Gg", 2).identity()
    with pytest.raises(ContextError):
        make_group("Gg", 1).element(gen("z"))
