"""Finite presentations, homomorphisms by generator images, permutations.

Equalities ``lhs = rhs`` are stored as relators ``lhs * rhs^-1`` (freely
reduced).  Relator order is family order, then lexicographic in the indices,
so every factory is a pure function of its parameters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping

from .errors import ContextError, EqualityUnavailable
from .words import Generator, GroupContext, Kind, Word, commutator, conjugate, gen


@dataclass(frozen=True)
class Presentation:
    context: GroupContext
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    labels: tuple[str, ...] = ()  # family tag per relator, for reports

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            if r.context != self.context:
                raise ContextError(f"relator {r} is not in {self.context}")
            stray = r.generators() - gens
            if stray:
                raise ContextError(f"relator {r} uses undeclared generators {sorted(map(str, stray))}")
        if self.labels and len(self.labels) != len(self.relators):
            raise ValueError("one label per relator")

    def __len__(self) -> int:
        return len(self.relators)

    def labelled(self) -> Iterator[tuple[str, Word]]:
        labels = self.labels or ("",) * len(self.relators)
        return zip(labels, self.relators)

    def family(self, label: str) -> list[Word]:
        return [r for lab, r in self.labelled() if lab == label]

    def to_json(self) -> dict:
        return {
            "context": str(self.context),
            "generators": [str(g) for g in self.generators],
            "relators": [str(r) for r in self.relators],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, doc: Mapping) -> "Presentation":
        ctx = GroupContext.parse(doc["context"])
        return cls(
            ctx,
            tuple(Generator.parse(g) for g in doc["generators"]),
            tuple(ctx.word(r) for r in doc["relators"]),
        )


class _Builder:
    """Collects labelled relators ``lhs * rhs^-1`` from word text."""

    def __init__(self, context: GroupContext):
        self.ctx = context
        self.relators: list[Word] = []
        self.labels: list[str] = []

    def w(self, text: str) -> Word:
        return self.ctx.word(text)

    def eq(self, label: str, lhs: Word | str, rhs: Word | str = "") -> None:
        lhs = self.w(lhs) if isinstance(lhs, str) else lhs
        rhs = self.w(rhs) if isinstance(rhs, str) else rhs
        self.relators.append(lhs * rhs.inverse())
        self.labels.append(label)

    def build(self, generators: Iterable[Generator] | None = None) -> Presentation:
        gens = tuple(generators) if generators is not None else self.ctx.alphabet
        return Presentation(self.ctx, gens, tuple(self.relators), tuple(self.labels))


# ---------------------------------------------------------------------------
# factories


def artin_presentation(n: int) -> Presentation:
    """B_n on sigma_1..sigma_{n-1} with the far-commutation and braid relations."""
    b = _Builder(GroupContext.artin(n))
    _braid_families(b, "s", n, ("artin1", "artin2"))
    return b.build()


def _braid_families(b: _Builder, s: str, strands: int, labels: tuple[str, str]) -> None:
    for i in range(1, strands):
        for j in range(i + 2, strands):
            b.eq(labels[0], f"{s}{i} {s}{j}", f"{s}{j} {s}{i}")
    for i in range(1, strands - 1):
        b.eq(labels[1], f"{s}{i} {s}{i+1} {s}{i}", f"{s}{i+1} {s}{i} {s}{i+1}")


def _handle_families(b: _Builder, s: str, a: str, bb: str, strands: int, g: int, labels) -> None:
    """The four families linking the handle generators to the sigmas.

    Families that mention sigma_1 are dropped when there is a single strand.
    """
    asjg, bsbg, abbag, cddcg = labels
    for i in range(1, g + 1):
        for c in (a, bb):
            for j in range(2, strands):
                b.eq(asjg, f"{c}{i} {s}{j}", f"{s}{j} {c}{i}")
    if strands < 2:
        return
    for i in range(1, g + 1):
        for c in (a, bb):
            b.eq(bsbg, f"{c}{i} {s}1 {c}{i} {s}1", f"{s}1 {c}{i} {s}1 {c}{i}")
    for i in range(1, g + 1):
        b.eq(abbag, f"{a}{i} {s}1 {bb}{i}", f"{s}1 {bb}{i} {s}1 {a}{i} {s}1")
    for i in range(1, g + 1):
        for j in range(1, i):
            for ci in (a, bb):
                for cj in (a, bb):
                    b.eq(cddcg, f"{ci}{i} {s}1^-1 {cj}{j} {s}1", f"{s}1^-1 {cj}{j} {s}1 {ci}{i}")


def surface_presentation(g: int, n: int) -> Presentation:
    """B_n(Sigma_g), Sigma_g with one boundary component: the six relation families."""
    b = _Builder(GroupContext.surface(g, n))
    _braid_families(b, "s", n, ("artin1", "artin2"))
    _handle_families(b, "s", "a", "b", n, g, ("asjg", "bsbg", "abbag", "cddcg"))
    return b.build()


def _system(b: _Builder, s: str, a: str, bb: str, strands: int, g: int, punctures: int) -> None:
    _braid_families(b, s, strands, ("sys1", "sys2"))
    _handle_families(b, s, a, bb, strands, g, ("sys3", "sys4", "sys5", "sys6"))
    for i in range(2, strands):
        for j in range(1, punctures + 1):
            b.eq("sys7", f"z{j} {s}{i}", f"{s}{i} z{j}")
    if strands < 2:
        return
    for label, c in (("sys8", a), ("sys9", bb)):
        for j in range(1, punctures + 1):
            for l in range(1, g + 1):
                b.eq(label, f"({s}1^-1 z{j} {s}1) {c}{l}", f"{c}{l} ({s}1^-1 z{j} {s}1)")
    for j in range(1, punctures + 1):
        for l in range(j + 1, punctures + 1):
            b.eq("sys10", f"({s}1^-1 z{j} {s}1) z{l}", f"z{l} ({s}1^-1 z{j} {s}1)")
    for j in range(1, punctures + 1):
        b.eq("sys11", f"({s}1 z{j} {s}1) z{j}", f"z{j} ({s}1 z{j} {s}1)")


def sbgs_presentation(k: int, g: int, n: int) -> Presentation:
    """The surface braid group system presenting the fiber group B_k(Sigma_{g,n})."""
    b = _Builder(GroupContext.fiber(k, g, n))
    _system(b, "s", "a", "b", k, g, n)
    return b.build()


def mixed_action_images(k: int, n: int, g: int) -> list[tuple[str, Generator, Generator, Word]]:
    """The conjugation action of B_n(Sigma_g) on the fiber, as ``(label, beta, x, beta x beta^-1)``.

    Only positive acting letters are listed; words are over ``MixedB(k, n, g)``.
    """
    ctx = GroupContext.mixed(k, n, g)
    w = ctx.word
    sig = [gen("s", j) for j in range(1, k)]
    out: list[tuple[str, Generator, Generator, Word]] = []

    def put(label, beta, x, image):
        out.append((label, beta, x, image if isinstance(image, Word) else w(image)))

    tildes = [gen("S", i) for i in range(1, n)]
    handles = [gen(c, i) for i in range(1, g + 1) for c in ("A", "B")]
    for beta in tildes + handles:  # (i)
        for x in sig:
            put("c1", beta, x, str(x))
    for beta in tildes:  # (ii)
        for i in range(1, g + 1):
            put("c2", beta, gen("a", i), f"a{i}")
            put("c2", beta, gen("b", i), f"b{i}")
    for beta in tildes:  # (iii), sigma~ part
        i = beta.index
        for j in range(1, n + 1):
            if j == i + 1:
                put("c3", beta, gen("z", j), f"z{i}")
            elif j == i:
                put("c3", beta, gen("z", j), f"z{i}^-1 z{i+1} z{i}")
            else:
                put("c3", beta, gen("z", j), f"z{j}")
    for beta in handles:  # (iii), a~/b~ part
        c = "a" if beta.kind == Kind.A_TILDE else "b"
        i = beta.index
        twist = commutator(w(f"{c}{i}^-1"), w("z1^-1"))
        put("c3", beta, gen("z", 1), conjugate(w("z1"), w(f"{c}{i} z1")))
        for j in range(2, n + 1):
            put("c3", beta, gen("z", j), conjugate(w(f"z{j}"), twist))
    for beta in handles:  # (iv): a~ on the a's, b~ on the b's
        c = "a" if beta.kind == Kind.A_TILDE else "b"
        i = beta.index
        twist = commutator(w(f"{c}{i}^-1"), w("z1^-1"))
        for j in range(1, g + 1):
            if j == i:
                put("c4", beta, gen(c, j), f"z1^-1 {c}{i} z1")
            elif j < i:
                put("c4", beta, gen(c, j), conjugate(w(f"{c}{j}"), twist))
            else:
                put("c4", beta, gen(c, j), f"{c}{j}")
    for beta in handles:  # (v): a~ on the b's, b~ on the a's
        c, other = ("a", "b") if beta.kind == Kind.A_TILDE else ("b", "a")
        i = beta.index
        twist = commutator(w(f"{c}{i}^-1"), w("z1^-1"))
        for j in range(1, g + 1):
            if j == i:
                image = f"b{i} z1" if c == "a" else w(f"z1^-1 a{i}") * twist
                put("c5", beta, gen(other, j), image)
            elif j < i:
                put("c5", beta, gen(other, j), conjugate(w(f"{other}{j}"), twist))
            else:
                put("c5", beta, gen(other, j), f"{other}{j}")
    return out


def mixed_presentation(k: int, n: int, g: int) -> Presentation:
    """B_{k,n}(Sigma_g) = B_n(Sigma_g) |x B_k(Sigma_{g,n}): fiber system, base system, action."""
    if g < 1:
        raise ContextError("mixed presentation needs g >= 1")
    ctx = GroupContext.mixed(k, n, g)
    b = _Builder(ctx)
    _system(b, "s", "a", "b", k, g, n)
    fiber_part = list(zip(b.labels, b.relators))
    b.labels = ["a:" + lab for lab, _ in fiber_part]
    _system(b, "S", "A", "B", n, g, 0)
    b.labels[len(fiber_part):] = ["b:" + lab for lab in b.labels[len(fiber_part):]]
    for label, beta, x, image in mixed_action_images(k, n, g):
        b.eq(label, ctx.letter(beta) * ctx.letter(x) * ctx.letter(beta, -1), image)
    return b.build()


def gamma3_presentation(which: str, g: int) -> Presentation:
    """Abstract presentations of the class-2 quotients G_g, H_g and K_g.

    Besides the defining commutator table, ``[b_i, b_j] = 1`` and its tilde
    analogue are included for ``i != j`` so the presented group is the
    class-2 group with the unique normal form.
    """
    ctx = GroupContext.gamma3(which, g)
    b = _Builder(ctx)
    rng = range(1, g + 1)
    if which == "Gg":
        gens = ctx.alphabet
        for x in range(len(gens)):
            for y in range(x + 1, len(gens)):
                p, q = gens[x], gens[y]
                if p.kind == Kind.A and q.kind == Kind.B and p.index == q.index:
                    b.eq("2", f"[{p},{q}]", "s^2")
                else:
                    b.eq("1", f"[{p},{q}]")
        return b.build()

    b.eq  # noqa: B018 - readability of the literal transcription below
    if which == "Hg":
        for i in rng:
            for pair in (("s", "a"), ("s", "b"), ("S", "A"), ("S", "B"), ("S", "a"), ("S", "b"), ("s", "A"), ("s", "B")):
                x, y = pair
                b.eq("1", f"[{x},{y}{i}]")
        b.eq("1", "[s,S]")
    else:
        for i in rng:
            b.eq("1", f"[s,a{i}]")
            b.eq("1", f"[s,b{i}]")
    for i in rng:
        for j in rng:
            if i != j:
                b.eq("2", f"[a{i},a{j}]")
                b.eq("2", f"[a{i},b{j}]")
                b.eq("2+", f"[b{i},b{j}]")
    for j in rng:
        b.eq("2", f"[a{j},b{j}]", "s^2")
    if which == "Hg":
        for i in rng:
            for j in rng:
                if i != j:
                    b.eq("3", f"[A{i},A{j}]")
                    b.eq("3", f"[A{i},B{j}]")
                    b.eq("3+", f"[B{i},B{j}]")
        for j in rng:
            b.eq("3", f"[A{j},B{j}]", "S^2")
        for i in rng:
            for j in rng:
                b.eq("4", f"[a{i},A{j}]")
                b.eq("4", f"[b{i},B{j}]")
        for i in rng:
            for j in rng:
                if i != j:
                    b.eq("5", f"[b{i},A{j}]")
                    b.eq("5", f"[B{j},a{i}]")
        for i in rng:
            b.eq("5", f"[b{i},A{i}]", "z")
            b.eq("5", f"[B{i},a{i}]", "z")
        for i in rng:
            for y in ("a", "b", "A", "B"):
                b.eq("6", f"[z,{y}{i}]")
        b.eq("6", "[z,s]")
        b.eq("6", "[z,S]")
    else:
        for i in rng:
            b.eq("3", f"[z,a{i}]")
            b.eq("3", f"[z,b{i}]")
        b.eq("3", "[z,s]")
    return b.build()


# ---------------------------------------------------------------------------
# carriers with decidable equality


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the tuple of images of 1..n.

    The product ``p * q`` applies ``p`` first, then ``q`` -- the order in
    which a braid word is read along the strands.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        img = list(range(1, n + 1))
        img[i - 1], img[j - 1] = j, i
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(other(self(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(1, self.n + 1):
            if i in seen or self(i) == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) if cyc else "()"

    def matrix(self) -> list[list[int]]:
        """Row i has its 1 in column p(i)."""
        return [[1 if self(i) == j else 0 for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]


class SymmetricGroup:
    def __init__(self, n: int):
        self.n = n

    def __repr__(self) -> str:
        return f"S_{self.n}"

    def identity(self) -> Permutation:
        return Permutation.identity(self.n)

    def mul(self, x: Permutation, y: Permutation) -> Permutation:
        return x * y

    def inv(self, x: Permutation) -> Permutation:
        return x.inverse()

    def is_identity(self, x: Permutation) -> bool:
        return x.is_identity()

    def format(self, x: Permutation) -> str:
        return str(x)


class FreeAbelianGroup:
    """Z^r with named basis; elements are integer tuples."""

    def __init__(self, names: tuple[str, ...]):
        self.names = tuple(names)

    def __repr__(self) -> str:
        return "Z<" + ",".join(self.names) + ">"

    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def basis(self, name: str) -> tuple[int, ...]:
        return tuple(int(n == name) for n in self.names)

    def mul(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, x):
        return tuple(-a for a in x)

    def is_identity(self, x) -> bool:
        return not any(x)

    def format(self, x) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, x) if e]
        return " * ".join(parts) or "1"


def _strand_offset(context: GroupContext) -> tuple[int, dict[Kind, int]]:
    f = context.family
    if f == "ArtinB":
        return context.params[0], {Kind.SIGMA: 0}
    if f == "SurfaceB":
        return context.param("n"), {Kind.SIGMA: 0}
    if f == "FiberB":
        return context.param("k"), {Kind.SIGMA: 0}
    if f == "MixedB":
        k, n = context.param("k"), context.param("n")
        return k + n, {Kind.SIGMA: 0, Kind.SIGMA_TILDE: k}
    raise ContextError(f"no underlying permutation for {context}")


def underlying_permutation(w: Word) -> Permutation:
    """sigma_i -> (i i+1); sigma~_i -> (k+i k+i+1) in the mixed case; pure letters -> 1."""
    strands, offsets = _strand_offset(w.context)
    p = Permutation.identity(strands)
    for lt in w.letters:
        off = offsets.get(lt.gen.kind)
        if off is None:
            continue
        i = lt.gen.index + off
        p = p * Permutation.transposition(strands, i, i + 1)
    return p


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class Hom:
    """A homomorphism out of a free group, given by generator images.

    ``target`` is a carrier object providing ``identity``, ``mul``, ``inv``
    and (for verification) ``is_identity``.
    """

    source: GroupContext
    target: Any
    images: dict[Generator, Any]
    name: str = ""
    inverse_images: dict[Generator, Any] | None = None
    verified: bool = False

    def __post_init__(self):
        for g in self.images:
            if g not in self.source:
                raise ContextError(f"{g} is not a generator of {self.source}")
        if self.inverse_images is None:
            self.inverse_images = {g: self.target.inv(x) for g, x in self.images.items()}

    def __call__(self, w: Word):
        return apply_hom(self, w)


def apply_hom(h: Hom, w: Word):
    if w.context != h.source:
        raise ContextError(f"{h.name or 'hom'} expects words of {h.source}, got {w.context}")
    acc = h.target.identity()
    for lt in w.letters:
        table = h.images if lt.exp == 1 else h.inverse_images
        try:
            img = table[lt.gen]
        except KeyError:
            raise ContextError(f"{h.name or 'hom'}: no image declared for {lt.gen}") from None
        acc = h.target.mul(acc, img)
    return acc


@dataclass
class RelatorCheck:
    label: str
    relator: str
    passed: bool
    image: str


@dataclass
class HomReport:
    name: str
    source: str
    checks: list[RelatorCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[RelatorCheck]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source,
            "passed": self.passed,
            "relators": len(self.checks),
            "failures": [c.__dict__ for c in self.failures],
        }


def verify_hom(h: Hom, presentation: Presentation) -> HomReport:
    """Evaluate every relator in the target; mark ``h`` verified iff all vanish."""
    if not hasattr(h.target, "is_identity"):
        raise EqualityUnavailable(f"target {h.target!r} has no decidable equality")
    if presentation.context != h.source:
        raise ContextError(f"presentation of {presentation.context} does not match {h.source}")
    missing = [g for g in presentation.generators if g not in h.images]
    if missing:
        raise ContextError(f"{h.name or 'hom'}: no image for {', '.join(map(str, missing))}")
    fmt = getattr(h.target, "format", str)
    report = HomReport(h.name, str(h.source))
    for label, r in presentation.labelled():
        img = apply_hom(h, r)
        ok = h.target.is_identity(img)
        report.checks.append(RelatorCheck(label, str(r), ok, fmt(img)))
    h.verified = report.passed
    return report


@dataclass(frozen=True)
class WordMap:
    """A word-level substitution between contexts (no well-definedness claim)."""

    source: GroupContext
    target: GroupContext
    images: Mapping[Generator, Word]
    name: str = ""

    def __call__(self, w: Word) -> Word:
        if w.context != self.source:
            raise ContextError(f"{self.name or 'map'} expects words of {self.source}, got {w.context}")
        return w.substitute(self.images, self.target)
