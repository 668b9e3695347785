"""Conjugation action of B_n(Sigma_g) on the fiber B_k(Sigma_{g,n}).

Acting letters are the tilde generators of the mixed group; fiber words live
in ``FiberB(k, g, n)``.  The table for a positive letter is the one used by
the mixed presentation.  Inverse letters use tables obtained by solving
those formulas; they happen to be exact inverses as automorphisms of the
free group, and the tests check this.

Well-definedness is never assumed: it is certified in K_g (through P_k) and
in the abelianization of the fiber.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .errors import ContextError, UnsupportedError, VerificationError
from .exactalg import SNFResult, det, exponent_vector, in_row_lattice, matmul, relator_matrix, smith_normal_form
from .homs import make_anko_projection
from .nilquot import Class2Element, make_group
from .presentations import Hom, gamma3_presentation, mixed_action_images, sbgs_presentation, verify_hom
from .words import Generator, GroupContext, Kind, Letter, Word, commutator, gen, random_word

TILDE = {Kind.SIGMA: Kind.SIGMA_TILDE, Kind.A: Kind.A_TILDE, Kind.B: Kind.B_TILDE}


@dataclass(frozen=True)
class ActionTable:
    """``images[(beta, e)][x]`` is the fiber word beta^e x beta^-e."""

    k: int
    n: int
    g: int
    images: Mapping[tuple[Generator, int], Mapping[Generator, Word]] = field(hash=False, compare=False)

    @property
    def fiber(self) -> GroupContext:
        return GroupContext.fiber(self.k, self.g, self.n)

    @property
    def acting(self) -> tuple[Generator, ...]:
        return tuple(beta for beta, e in self.images if e == 1)

    def image(self, beta: Generator, exp: int, x: Generator) -> Word:
        try:
            return self.images[beta, exp][x]
        except KeyError:
            raise ContextError(f"no action of {beta}^{exp} on {x}") from None


def _inverse_images(k: int, n: int, g: int, beta: Generator) -> dict[Generator, Word]:
    F = GroupContext.fiber(k, g, n)
    w = F.word
    out = {x: F.letter(x) for x in F.alphabet}
    i = beta.index
    if beta.kind == Kind.SIGMA_TILDE:
        out[gen("z", i)] = w(f"z{i+1}")
        out[gen("z", i + 1)] = w(f"z{i+1} z{i} z{i+1}^-1")
        return out
    c, other = ("a", "b") if beta.kind == Kind.A_TILDE else ("b", "a")
    X, Z = w(f"{c}{i}"), w("z1")
    inv_z = X * Z * X.inverse()
    twist = commutator(X.inverse(), Z.inverse())
    d = twist.substitute({**out, gen(c, i): (X * Z) * X * (X * Z).inverse(), gen("z", 1): inv_z}, F)
    out[gen("z", 1)] = inv_z
    out[gen(c, i)] = (X * Z) * X * (X * Z).inverse()
    for j in range(2, n + 1):
        out[gen("z", j)] = d * w(f"z{j}") * d.inverse()
    for j in range(1, i):
        out[gen(c, j)] = d * w(f"{c}{j}") * d.inverse()
        out[gen(other, j)] = d * w(f"{other}{j}") * d.inverse()
    if c == "a":
        out[gen("b", i)] = w(f"b{i}") * inv_z.inverse()
    else:
        out[gen("a", i)] = inv_z * w(f"a{i}") * d.inverse()
    return out


@lru_cache(maxsize=None)
def action_table(k: int, n: int, g: int) -> ActionTable:
    F = GroupContext.fiber(k, g, n)
    fwd: dict[Generator, dict[Generator, Word]] = {}
    for _, beta, x, image in mixed_action_images(k, n, g):
        fwd.setdefault(beta, {})[x] = image.relabel(F)
    images: dict[tuple[Generator, int], Mapping[Generator, Word]] = {}
    for beta, table in fwd.items():
        missing = set(F.alphabet) - set(table)
        if missing:
            raise VerificationError(f"action of {beta} leaves {sorted(map(str, missing))} undefined")
        images[beta, 1] = table
        images[beta, -1] = _inverse_images(k, n, g, beta)
    return ActionTable(k, n, g, images)


def _beta_letter(beta) -> tuple[Generator, int]:
    if isinstance(beta, Letter):
        return beta.gen, beta.exp
    if isinstance(beta, str):
        text = beta.strip()
        exp = -1 if text.endswith("^-1") else 1
        return Generator.parse(text.removesuffix("^-1")), exp
    return beta


def _table_for(w: Word) -> ActionTable:
    ctx = w.context
    if ctx.family != "FiberB":
        raise ContextError(f"the action is on fiber words, got {ctx}")
    return action_table(ctx.param("k"), ctx.param("n"), ctx.param("g"))


def act(beta, w: Word) -> Word:
    """beta w beta^-1 for one acting letter, computed letterwise and freely reduced."""
    b, e = _beta_letter(beta)
    table = _table_for(w)
    if (b, e) not in table.images:
        raise ContextError(f"{b} is not an acting generator for {w.context}")
    return w.substitute(table.images[b, e], w.context)


def acting_letters(beta_word: Word) -> list[tuple[Generator, int]]:
    """Letters of a base word as tilde letters; SurfaceB words are read through s->S, a->A, b->B."""
    out = []
    for lt in beta_word.letters:
        kind = lt.gen.kind
        if beta_word.context.family == "SurfaceB":
            kind = TILDE[kind]
        elif kind not in TILDE.values():
            raise ContextError(f"{lt.gen} is not an acting letter")
        out.append((Generator(kind, lt.gen.index), lt.exp))
    return out


def act_word(beta_word: Word, w: Word) -> Word:
    """Action of a word: the rightmost letter acts first."""
    for b, e in reversed(acting_letters(beta_word)):
        w = act((b, e), w)
    return w


# ---------------------------------------------------------------------------
# induced maps on K_g


@dataclass
class InducedCentralMap:
    beta: str
    k: int
    n: int
    g: int
    images: dict[Generator, Class2Element]
    certificate: dict = field(default_factory=dict)

    @property
    def group(self):
        return make_group("Kg", self.g)

    def __call__(self, x: Class2Element) -> Class2Element:
        K = self.group
        out = K.identity()
        for y in K.generators:
            e = x.exponent(y)
            if e:
                out = out * self.images[y] ** e
        return out

    def compose(self, other: "InducedCentralMap") -> "InducedCentralMap":
        """self after other."""
        images = {y: self(img) for y, img in other.images.items()}
        return InducedCentralMap(f"{self.beta}.{other.beta}", self.k, self.n, self.g, images)

    def matrix(self) -> list[list[int]]:
        """Rows: exponent vectors of the generator images."""
        return [list(img.central + img.a + img.b) for img in (self.images[y] for y in self.group.generators)]

    def is_identity(self) -> bool:
        return all(self.images[y] == self.group.element(y) for y in self.group.generators)

    def fixes_center(self) -> bool:
        return all(self.images[y] == self.group.element(y) for y in self.group.central)

    def is_unimodular(self) -> bool:
        return abs(det(self.matrix())) == 1

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "images": {str(y): str(v) for y, v in self.images.items()},
            "certificate": self.certificate,
        }


def _beta_name(b: Generator, e: int) -> str:
    return str(b) if e == 1 else f"{b}^-1"


@lru_cache(maxsize=None)
def _induced(k: int, n: int, g: int, b: Generator, e: int) -> InducedCentralMap:
    Pk = make_anko_projection(g, k, n)
    K = make_group("Kg", g)
    F = GroupContext.fiber(k, g, n)
    table = action_table(k, n, g)
    name = _beta_name(b, e)
    # generator compatibility: fiber letters with the same image in K_g must have the same induced image
    images: dict[Generator, Class2Element] = {}
    for x in F.alphabet:
        y = gen("s") if x.kind == Kind.SIGMA else gen("z") if x.kind == Kind.ZETA else x
        img = Pk(table.image(b, e, x))
        if y in images and images[y] != img:
            raise VerificationError(f"{name}: {x} and another lift of {y} have different images")
        images[y] = img
    for y in K.generators:  # k = 1 or n = 0 never reach here (P_k needs k, n >= 3)
        images.setdefault(y, K.element(y))
    relators = sbgs_presentation(k, g, n)
    for r in relators.relators:
        if not Pk(r.substitute(table.images[b, e], F)).is_identity():
            raise VerificationError(f"{name}: fiber relator {r} survives in K_g")
    hom = Hom(K.context, K, images, f"induced {name}")
    report = verify_hom(hom, _kg_presentation(g))
    if not report.passed:
        raise VerificationError(f"{name}: induced map is not a homomorphism of K_g")
    cert = {"fiber_relators": len(relators), "kg_relators": len(report.checks), "result": "pass"}
    return InducedCentralMap(name, k, n, g, images, cert)


@lru_cache(maxsize=None)
def _kg_presentation(g: int):
    return gamma3_presentation("Kg", g)


def induced_on_K(beta, k: int, n: int, g: int) -> InducedCentralMap:
    """The automorphism of K_g induced by an acting letter, with its certificate."""
    b, e = _beta_letter(beta)
    if (b, e) not in action_table(k, n, g).images:
        raise ContextError(f"{b} is not an acting generator")
    return _induced(k, n, g, b, e)


# ---------------------------------------------------------------------------
# certification and obstruction


@dataclass
class CertificateRecord:
    beta: str
    generator: str
    image_normal_form: str
    certificate: str
    witness: str | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__)


@lru_cache(maxsize=None)
def fiber_lattice(k: int, g: int, n: int) -> SNFResult:
    P = sbgs_presentation(k, g, n)
    return smith_normal_form(relator_matrix(P), len(P.generators))


def certify_action(k: int, n: int, g: int) -> list[CertificateRecord]:
    """For every acting letter (both signs) and fiber relator: P_k kills the image, and so does H_1."""
    Pk = make_anko_projection(g, k, n)
    F = GroupContext.fiber(k, g, n)
    P = sbgs_presentation(k, g, n)
    snf = fiber_lattice(k, g, n)
    table = action_table(k, n, g)
    out = []
    for (b, e), images in table.images.items():
        for r in P.relators:
            image = r.substitute(images, F)
            nf = Pk(image)
            in_k = nf.is_identity()
            in_ab = in_row_lattice(exponent_vector(image, P.generators), snf)
            ok = in_k and in_ab
            witness = None if ok else ("K_g" if not in_k else "abelianization") + f": {image}"
            out.append(CertificateRecord(_beta_name(b, e), str(r), str(nf), "pass" if ok else "fail", witness))
    return out


@dataclass
class ObstructionReport:
    g: int
    k: int
    n: int
    beta: str
    generator: str
    image_normal_form: str
    zeta_exponent: int
    zeta_infinite_order: bool
    induced_is_identity: bool
    certificate: str
    witness: str
    sign_note: str

    @property
    def obstructed(self) -> bool:
        return self.zeta_exponent != 0 and self.zeta_infinite_order and not self.induced_is_identity

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["obstructed"] = self.obstructed
        return d


def zeta_has_infinite_order(g: int, bound: int = 64) -> bool:
    """zeta^m has normal form with zeta-exponent m, so zeta^m = 1 forces m = 0; checked for |m| <= bound."""
    K = make_group("Kg", g)
    z = K.element(gen("z"))
    return all(not (z**m).is_identity() for m in range(-bound, bound + 1) if m)


def linear_extension_obstruction(g: int, k: int, n: int) -> ObstructionReport:
    """The induced map of b~_1 moves a_1 by a power of zeta, so it cannot be the identity.

    A linear lifting extension would force every induced map to be the
    identity, hence the zeta-power to vanish; zeta has infinite order in K_g.
    """
    induced = induced_on_K(Letter(gen("B", 1), 1), k, n, g)
    image = induced.images[gen("a", 1)]
    eps = image.exponent(gen("z"))
    rest_is_a1 = image * make_group("Kg", g).element(gen("z"), -eps) == make_group("Kg", g).element(gen("a", 1))
    inf = zeta_has_infinite_order(g)
    ok = eps != 0 and rest_is_a1 and inf and not induced.is_identity()
    note = f"computed image is a1 * z^{eps}; the sign of the exponent depends on the commutator convention"
    return ObstructionReport(
        g, k, n, "B1", "a1", str(image), eps, inf, induced.is_identity(),
        "pass" if ok else "fail", f"induced(B1)(a1) = {image} != a1", note,
    )


# ---------------------------------------------------------------------------
# abelianized action on the fiber


@dataclass
class FiberAbelianAction:
    beta: str
    k: int
    n: int
    g: int
    generators: tuple[Generator, ...]
    matrix: list[list[int]]  # row x = abelianized image of x
    free_matrix: list[list[int]]
    torsion: tuple[int, ...]
    moved: dict[str, str]

    @property
    def is_identity(self) -> bool:
        return not self.moved

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "generators": [str(x) for x in self.generators],
            "free_matrix": self.free_matrix,
            "torsion": list(self.torsion),
            "is_identity": self.is_identity,
            "moved": self.moved,
        }


def _abelian_matrix(images: Mapping[Generator, Word], gens) -> list[list[int]]:
    return [exponent_vector(images[x], gens) for x in gens]


def _moved(matrix, gens, snf: SNFResult) -> dict[str, str]:
    out = {}
    for i, x in enumerate(gens):
        diff = [v - int(i == j) for j, v in enumerate(matrix[i])]
        if not in_row_lattice(diff, snf):
            out[str(x)] = _linear_text(matrix[i], gens)
    return out


def _linear_text(vec, gens) -> str:
    """Additive notation, e.g. ``a1 - z1``."""
    text = ""
    for y, v in zip(gens, vec):
        if not v:
            continue
        mag = "" if abs(v) == 1 else f"{abs(v)}*"
        if not text:
            text = ("-" if v < 0 else "") + f"{mag}{y}"
        else:
            text += (" - " if v < 0 else " + ") + f"{mag}{y}"
    return text or "0"


def fiber_abelian_action(beta, k: int, n: int, g: int) -> FiberAbelianAction:
    """Induced map on H_1 of the fiber; the free-part matrix is in Smith coordinates."""
    if n < 2:
        raise UnsupportedError("the one-puncture case is outside the scope of this check")
    b, e = _beta_letter(beta)
    table = action_table(k, n, g)
    if (b, e) not in table.images:
        raise ContextError(f"{b} is not an acting generator")
    P = sbgs_presentation(k, g, n)
    gens = P.generators
    snf = fiber_lattice(k, g, n)
    T = _abelian_matrix(table.images[b, e], gens)
    M = matmul(matmul(snf.Vinv.tolist(), T), snf.V.tolist())
    r = snf.rank
    free = [row[r:] for row in M[r:]]
    return FiberAbelianAction(_beta_name(b, e), k, n, g, gens, T, free, snf.invariant_factors, _moved(T, gens, snf))


# ---------------------------------------------------------------------------
# section independence


@dataclass
class SectionReport:
    extension: str
    trials: int
    passed: bool
    trivial_via_s: bool
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _perturbed_matrix(images, perturb: Word, gens) -> list[list[int]]:
    """Abelianized action of s'(q) = k' s(q): x -> k' (s(q) x s(q)^-1) k'^-1."""
    return [exponent_vector(perturb * images[x] * perturb.inverse(), gens) for x in gens]


def _same_mod(m1, m2, snf) -> bool:
    return all(in_row_lattice([a - b for a, b in zip(r1, r2)], snf) for r1, r2 in zip(m1, m2))


def section_independence_test(k: int = 3, n: int = 3, g: int = 1, trials: int = 100, rng: random.Random | None = None) -> SectionReport:
    """Perturb the natural section by random fiber words and compare abelianized actions."""
    rng = rng or random.Random(0)
    table = action_table(k, n, g)
    P = sbgs_presentation(k, g, n)
    gens, F = P.generators, GroupContext.fiber(k, g, n)
    snf = fiber_lattice(k, g, n)
    base = {b: _abelian_matrix(table.images[b, 1], gens) for b in table.acting}
    ident = [[int(i == j) for j in range(len(gens))] for i in range(len(gens))]
    trivial = all(_same_mod(m, ident, snf) for m in base.values())
    failures = []
    for t in range(trials):
        for b in table.acting:
            kp = random_word(F, rng.randint(0, 12), rng)
            m2 = _perturbed_matrix(table.images[b, 1], kp, gens)
            if not _same_mod(base[b], m2, snf):
                failures.append(f"trial {t}: {b} perturbed by {kp}")
            if (trivial and not _same_mod(m2, ident, snf)) or (not trivial and _same_mod(m2, ident, snf)):
                failures.append(f"trial {t}: triviality changed for {b}")
    return SectionReport(f"MixedB({k},{n},{g})", trials, not failures, trivial, failures)


def toy_direct_product_test(rank: int = 2, trials: int = 100, rng: random.Random | None = None) -> SectionReport:
    """F_rank x Z with trivial action: every perturbed section still acts trivially on Z^rank."""
    rng = rng or random.Random(0)
    F = GroupContext.free(rank)
    gens = F.alphabet
    images = {x: F.letter(x) for x in gens}
    snf = smith_normal_form([], len(gens))
    ident = [[int(i == j) for j in range(len(gens))] for i in range(len(gens))]
    failures = []
    for t in range(trials):
        kp = random_word(F, rng.randint(0, 12), rng)
        if not _same_mod(_perturbed_matrix(images, kp, gens), ident, snf):
            failures.append(f"trial {t}: perturbed by {kp}")
    return SectionReport(f"F{rank} x Z", trials, not failures, True, failures)
