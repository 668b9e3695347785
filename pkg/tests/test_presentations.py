from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import mixed_action_relator_count, system_relator_count
from sbk.errors import ContextError, EqualityUnavailable
from sbk.homs import make_rn
from sbk.presentations import (
    FreeAbelianGroup,
    Hom,
    Permutation,
    Presentation,
    SymmetricGroup,
    artin_presentation,
    gamma3_presentation,
    mixed_action_images,
    mixed_presentation,
    sbgs_presentation,
    surface_presentation,
    underlying_permutation,
    verify_hom,
)
from sbk.words import GroupContext, Kind, gen


@pytest.mark.parametrize("n,count", [(2, 0), (3, 1), (4, 3), (5, 6), (6, 10)])
def test_artin_relator_counts(n, count):
    assert len(artin_presentation(n)) == count


def test_artin_relators_in_family_order():
    assert [str(r) for r in artin_presentation(4).relators] == [
        "s1 * s3 * s1^-1 * s3^-1",
        "s1 * s2 * s1 * s2^-1 * s1^-1 * s2^-1",
        "s2 * s3 * s2 * s3^-1 * s2^-1 * s3^-1",
    ]


def test_surface_handle_relators():
    P = surface_presentation(2, 3)
    assert "a1 * s1 * b1 * s1^-1 * a1^-1 * s1^-1 * b1^-1 * s1^-1" in map(str, P.family("abbag"))
    assert "a2 * s1^-1 * b1 * s1 * a2^-1 * s1^-1 * b1^-1 * s1" in map(str, P.family("cddcg"))
    assert len(P.family("cddcg")) == 4


def test_fiber_puncture_relator():
    P = sbgs_presentation(3, 1, 2)
    assert "z1 * s2 * z1^-1 * s2^-1" in map(str, P.relators)


@pytest.mark.parametrize("k,g,n", [(1, 1, 2), (2, 1, 1), (3, 1, 2), (3, 2, 0), (4, 2, 3), (5, 3, 4), (2, 0, 3)])
def test_fiber_relator_count_oracle(k, g, n):
    assert len(sbgs_presentation(k, g, n)) == system_relator_count(k, g, n)


@pytest.mark.parametrize("k,n,g", [(2, 2, 1), (3, 3, 1), (3, 3, 2), (4, 2, 3), (3, 4, 2)])
def test_mixed_relator_counts(k, n, g):
    M = mixed_presentation(k, n, g)
    labels = [lab for lab, _ in M.labelled()]
    assert sum(lab.startswith("c") for lab in labels) == mixed_action_relator_count(k, n, g)
    assert sum(lab.startswith("a:") for lab in labels) == system_relator_count(k, g, n)
    assert sum(lab.startswith("b:") for lab in labels) == len(surface_presentation(g, n))
    assert len(mixed_action_images(k, n, g)) == mixed_action_relator_count(k, n, g)


def test_mixed_action_relators():
    rels = set(map(str, mixed_presentation(3, 3, 1).relators))
    assert "A1 * b1 * A1^-1 * z1^-1 * b1^-1" in rels
    assert "S1 * z2 * S1^-1 * z1^-1" in rels


def test_underlying_permutation():
    ctx = GroupContext.mixed(2, 2, 1)
    assert str(underlying_permutation(ctx.word("s1 S1"))) == "(1 2)(3 4)"
    assert underlying_permutation(ctx.word("s1^2 A1 z1")).is_identity()
    assert str(underlying_permutation(GroupContext.artin(4).word("s1 s2"))) == "(1 3 2)"


@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_permutation_group_laws(p, q):
    p, q = Permutation(tuple(p)), Permutation(tuple(q))
    assert (p * p.inverse()).is_identity()
    for i in range(1, 6):
        assert (p * q)(i) == q(p(i))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_symmetric_quotient_is_a_hom(n):
    S = SymmetricGroup(n)
    ctx = GroupContext.artin(n)
    h = Hom(ctx, S, {x: Permutation.transposition(n, x.index, x.index + 1) for x in ctx.alphabet})
    assert verify_hom(h, artin_presentation(n)).passed and h.verified


def test_corrupted_map_is_caught_on_the_handle_relator():
    good = make_rn(1, 3).hom
    images = dict(good.images)
    images[gen("b", 1)] = images[gen("a", 1)]
    report = verify_hom(Hom(good.source, good.target, images, "bad"), surface_presentation(1, 3))
    assert not report.passed
    assert {c.label for c in report.failures} == {"abbag"}


def test_verify_requires_decidable_equality():
    class Opaque:
        def identity(self):
            return 0

        def mul(self, x, y):
            return x + y

        def inv(self, x):
            return -x

    ctx = GroupContext.artin(3)
    h = Hom(ctx, Opaque(), {x: 1 for x in ctx.alphabet})
    with pytest.raises(EqualityUnavailable):
        verify_hom(h, artin_presentation(3))


def test_missing_image_rejected():
    ctx = GroupContext.artin(4)
    h = Hom(ctx, FreeAbelianGroup(("t",)), {gen("s", 1): (1,)})
    with pytest.raises(ContextError):
        verify_hom(h, artin_presentation(4))


def test_abelian_carrier_hom():
    Z = FreeAbelianGroup(("t",))
    ctx = GroupContext.surface(1, 3)
    images = {x: (1,) if x.kind == Kind.SIGMA else (0,) for x in ctx.alphabet}
    # the handle relations force 2 sigma = 0 in the abelianization, so this fails
    report = verify_hom(Hom(ctx, Z, images), surface_presentation(1, 3))
    assert not report.passed


def test_gamma3_counts_and_commuting_b_relators():
    assert [len(gamma3_presentation(w, 2)) for w in ("Gg", "Hg", "Kg")] == [10, 59, 17]
    assert "b1 * b2 * b1^-1 * b2^-1" in map(str, gamma3_presentation("Hg", 2).relators)


def test_json_roundtrip():
    P = sbgs_presentation(3, 1, 2)
    doc = json.loads(P.dumps())
    Q = Presentation.from_json(doc)
    assert Q.relators == P.relators and Q.generators == P.generators


def test_relator_outside_context_rejected():
    ctx = GroupContext.artin(3)
    with pytest.raises(ContextError):
        Presentation(ctx, (gen("s", 1),), (GroupContext.artin(4).word("s1"),))
    with pytest.raises(ContextError):
        Presentation(ctx, (gen("s", 1),), (ctx.word("s2"),))
