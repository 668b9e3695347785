from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import leftmost_reduce
from sbk.errors import ContextError, ParseError
from sbk.words import (
    Generator,
    GroupContext,
    Kind,
    Letter,
    Word,
    commutator,
    conjugate,
    format_word,
    free_reduce,
    gen,
    parse_word,
    random_word,
)

CTX = GroupContext.mixed(3, 3, 1)
FREE = GroupContext.free(3)


def raw_letters(ctx):
    return st.lists(st.tuples(st.sampled_from(ctx.alphabet), st.sampled_from((1, -1))), max_size=40)


def words(ctx):
    return raw_letters(ctx).map(lambda ls: Word(ctx, tuple(Letter(g, e) for g, e in ls)))


@given(raw_letters(CTX))
def test_free_reduce_matches_leftmost_oracle(ls):
    got = [(lt.gen, lt.exp) for lt in free_reduce(Letter(g, e) for g, e in ls)]
    assert got == leftmost_reduce(ls)


@given(words(CTX))
def test_reduced_words_have_no_cancelling_pair(w):
    for x, y in zip(w.letters, w.letters[1:]):
        assert not (x.gen == y.gen and x.exp == -y.exp)


@given(words(FREE), words(FREE), words(FREE))
def test_group_axioms(u, v, w):
    e = FREE.identity()
    assert (u * v) * w == u * (v * w)
    assert u * e == u == e * u
    assert (u * u.inverse()).is_identity()
    assert (u * v).inverse() == v.inverse() * u.inverse()


@given(words(CTX))
def test_format_parse_roundtrip(w):
    assert parse_word(format_word(w), CTX) == w
    assert CTX.word(str(w)) == w


@given(words(FREE), st.integers(-4, 4))
def test_power(w, e):
    expected = FREE.identity()
    for _ in range(abs(e)):
        expected = expected * (w if e > 0 else w.inverse())
    assert w**e == expected


def test_commutator_and_conjugate_conventions():
    x, y = FREE.word("x1"), FREE.word("x2")
    assert str(commutator(x, y)) == "x1 * x2 * x1^-1 * x2^-1"
    assert str(conjugate(x, y)) == "x2^-1 * x1 * x2"
    assert FREE.word("[x1, x2]") == commutator(x, y)


def test_parser_syntax():
    assert str(CTX.word("s1^3 s1^-1")) == "s1^2"
    assert str(CTX.word("(s1 A1)^-1")) == "A1^-1 * s1^-1"
    assert CTX.word("").is_identity() and CTX.word("1").is_identity()
    assert str(CTX.word("z1*S2*B1")) == "z1 * S2 * B1"
    assert format_word(CTX.identity()) == "1"


def test_parse_error_reports_offset():
    with pytest.raises(ParseError) as err:
        CTX.word("s1 * (a1")
    assert err.value.offset is not None
    assert "byte" in str(err.value)


@pytest.mark.parametrize("text", ["s3", "z4", "a2", "x1", "S3"])
def test_out_of_alphabet_letters_rejected(text):
    with pytest.raises(ContextError):
        CTX.word(text)


def test_context_alphabets():
    assert GroupContext.artin(4).alphabet == (gen("s", 1), gen("s", 2), gen("s", 3))
    assert [str(x) for x in GroupContext.surface(1, 3).alphabet] == ["a1", "b1", "s1", "s2"]
    assert [str(x) for x in GroupContext.fiber(2, 1, 2).alphabet] == ["s1", "a1", "b1", "z1", "z2"]
    assert [str(x) for x in GroupContext.gamma3("Kg", 1).alphabet] == ["s", "z", "a1", "b1"]
    assert GroupContext.parse("MixedB(3,3,1)") == CTX
    assert Generator.parse("B2") == Generator(Kind.B_TILDE, 2)


@pytest.mark.parametrize("bad", [("ArtinB", (0,)), ("SurfaceB", (1,)), ("Gamma3", ("Xg", 1)), ("Nope", ())])
def test_invalid_contexts(bad):
    with pytest.raises(ContextError):
        GroupContext(*bad)


def test_context_mismatch():
    with pytest.raises(ContextError):
        FREE.word("x1") * GroupContext.free(2).word("x1")


def test_random_word_is_reproducible(rng):
    import random

    a = random_word(CTX, 25, random.Random(5))
    b = random_word(CTX, 25, random.Random(5))
    assert a == b and len(a) <= 25
    only = random_word(CTX, 30, rng, generators=[gen("s", 1)])
    assert only.generators() <= {gen("s", 1)}


def test_substitute_and_relabel():
    images = {x: FREE.word("x2 x1") for x in FREE.alphabet}
    assert str(FREE.word("x1 x3^-1").substitute(images, FREE)) == "1"
    with pytest.raises(ContextError):
        CTX.word("S1").relabel(GroupContext.fiber(3, 1, 3))
