"""The named projections onto the class-2 quotients and the lifting-extension square.

Every :class:`NamedHom` is checked against its source presentation when it
is built; construction raises :class:`VerificationError` otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ContextError, OpenCaseError, VerificationError
from .nilquot import Class2Element, Class2Group, make_group
from .presentations import (
    FreeAbelianGroup,
    Hom,
    HomReport,
    WordMap,
    gamma3_presentation,
    mixed_presentation,
    sbgs_presentation,
    surface_presentation,
    verify_hom,
)
from .words import Generator, GroupContext, Kind, Word, gen, random_word

NAMES = ("r_n", "r_kn", "psi_bar", "P_k", "p_k", "iota", "lambda_ext")
CLI_NAMES = {"rn": "r_n", "rkn": "r_kn", "psibar": "psi_bar", "Pk": "P_k", "pk": "p_k", "iota": "iota", "lambda": "lambda_ext"}


@dataclass(frozen=True)
class NamedHom:
    name: str
    params: dict = field(hash=False)
    hom: Hom = field(hash=False)
    report: HomReport = field(hash=False, repr=False)

    @property
    def source(self) -> GroupContext:
        return self.hom.source

    @property
    def target(self):
        return self.hom.target

    def __call__(self, w: Word | Class2Element):
        if isinstance(w, Class2Element):  # maps out of a class-2 group act on the normal-form word
            w = w.group.context.word(str(w))
        return self.hom(w)


def _certified(name: str, params: dict, hom: Hom, presentation) -> NamedHom:
    report = verify_hom(hom, presentation)
    if not report.passed:
        bad = report.failures[0]
        raise VerificationError(f"{name}{params}: relator {bad.relator} maps to {bad.image}")
    return NamedHom(name, params, hom, report)


def _need_three(**values: int) -> None:
    low = [f"{k}={v}" for k, v in values.items() if v < 3]
    if low:
        raise OpenCaseError(f"the class-2 quotient is only described for k, n >= 3 (got {', '.join(low)})")


def _images(G: Class2Group, ctx: GroupContext, rule) -> dict[Generator, Class2Element]:
    out = {}
    for x in ctx.alphabet:
        target, exp = rule(x)
        out[x] = G.element(target, exp) if target is not None else G.identity()
    return out


@lru_cache(maxsize=None)
def make_rn(g: int, n: int) -> NamedHom:
    """r_n: B_n(Sigma_g) -> G_g, sigma_i -> sigma, a_i -> a_i, b_i -> b_i."""
    _need_three(n=n)
    G = make_group("Gg", g)
    ctx = GroupContext.surface(g, n)
    images = _images(G, ctx, lambda x: (gen("s"), 1) if x.kind == Kind.SIGMA else (x, 1))
    return _certified("r_n", {"g": g, "n": n}, Hom(ctx, G, images, "r_n"), surface_presentation(g, n))


@lru_cache(maxsize=None)
def make_rkn(g: int, k: int, n: int) -> NamedHom:
    """r_kn: B_{k,n}(Sigma_g) -> H_g.

    Every zeta_j goes to zeta^-1: with the commutator table of H_g this is
    the sign the action relations force (the positive sign fails them).
    """
    _need_three(k=k, n=n)
    H = make_group("Hg", g)
    ctx = GroupContext.mixed(k, n, g)

    def rule(x: Generator):
        if x.kind == Kind.SIGMA:
            return gen("s"), 1
        if x.kind == Kind.SIGMA_TILDE:
            return gen("S"), 1
        if x.kind == Kind.ZETA:
            return gen("z"), -1
        return x, 1

    hom = Hom(ctx, H, _images(H, ctx, rule), "r_kn")
    return _certified("r_kn", {"g": g, "k": k, "n": n}, hom, mixed_presentation(k, n, g))


def make_gamma3_projection(family: str, g: int, k: int | None = None, n: int = 3) -> NamedHom:
    if family in ("rn", "r_n"):
        return make_rn(g, n)
    if family in ("rkn", "r_kn"):
        if k is None:
            raise ContextError("r_kn needs k")
        return make_rkn(g, k, n)
    raise ContextError(f"unknown projection {family!r}")


@lru_cache(maxsize=None)
def make_psi_bar(g: int) -> NamedHom:
    """psi_bar: H_g -> G_g forgetting the fiber: S -> s, A_i -> a_i, B_i -> b_i, the rest -> 1."""
    H, G = make_group("Hg", g), make_group("Gg", g)
    forget = {Kind.SIGMA_TILDE: Kind.SIGMA, Kind.A_TILDE: Kind.A, Kind.B_TILDE: Kind.B}

    def rule(x: Generator):
        if x.kind in forget:
            return Generator(forget[x.kind], x.index), 1
        return None, 0

    hom = Hom(H.context, G, _images(G, H.context, rule), "psi_bar")
    return _certified("psi_bar", {"g": g}, hom, gamma3_presentation("Hg", g))


def in_kernel_psi_bar(x: Class2Element) -> bool:
    """Normal-form test: the S-, A- and B-exponents all vanish."""
    H = x.group
    if H.which != "Hg":
        raise ContextError("kernel test is for elements of H_g")
    return all(
        x.exponent(y) == 0 for y in H.generators if y.kind in (Kind.SIGMA_TILDE, Kind.A_TILDE, Kind.B_TILDE)
    )


def k_into_h(x: Class2Element) -> Class2Element:
    """The inclusion K_g -> H_g on normal forms."""
    H = make_group("Hg", x.group.g)
    out = H.identity()
    for y in x.group.generators:
        e = x.exponent(y)
        if e:
            out = out * H.element(y, e)
    return out


@lru_cache(maxsize=None)
def make_anko_projection(g: int, k: int, n: int) -> NamedHom:
    """P_k: B_k(Sigma_{g,n}) -> K_g, sigma_j -> sigma, zeta_l -> zeta."""
    _need_three(k=k, n=n)
    K = make_group("Kg", g)
    ctx = GroupContext.fiber(k, g, n)

    def rule(x: Generator):
        if x.kind == Kind.SIGMA:
            return gen("s"), 1
        if x.kind == Kind.ZETA:
            return gen("z"), 1
        return x, 1

    hom = Hom(ctx, K, _images(K, ctx, rule), "P_k")
    return _certified("P_k", {"g": g, "k": k, "n": n}, hom, sbgs_presentation(k, g, n))


def disc_carrier(k: int) -> FreeAbelianGroup:
    return FreeAbelianGroup(("q", "t") if k > 1 else ("t",))


@lru_cache(maxsize=None)
def make_disc_projection(k: int, n: int) -> NamedHom:
    """p_k: B_k(D_n) -> Z^2 = <q, t> (sigma_i -> q, zeta_j -> t); Z = <t> when k = 1."""
    ctx = GroupContext.fiber(k, 0, n)
    Z = disc_carrier(k)
    images = {x: Z.basis("q" if x.kind == Kind.SIGMA else "t") for x in ctx.alphabet}
    return _certified("p_k", {"k": k, "n": n}, Hom(ctx, Z, images, "p_k"), sbgs_presentation(k, 0, n))


def iota_bar(g: int, v: tuple[int, ...]) -> Class2Element:
    """Z^2 = <q, t> -> K_g, q -> sigma, t -> zeta."""
    K = make_group("Kg", g)
    q, t = v if len(v) == 2 else (0, v[0])
    return K.element(gen("s"), q) * K.element(gen("z"), t)


def iota_bar_injective_on(v: tuple[int, ...], g: int) -> bool:
    """sigma^q zeta^t is trivial only for q = t = 0 (read off the normal form)."""
    return iota_bar(g, v).is_identity() == (not any(v))


def embed_disc(w: Word, g: int) -> Word:
    """The inclusion B_k(D_n) -> B_k(Sigma_{g,n}) on words."""
    ctx = w.context
    if ctx.family != "FiberB" or ctx.param("g") != 0:
        raise ContextError(f"expected a disc braid word, got {ctx}")
    for lt in w.letters:
        if lt.gen.kind not in (Kind.SIGMA, Kind.ZETA):
            raise ContextError(f"letter {lt.gen} is not a disc generator")
    return w.relabel(GroupContext.fiber(ctx.param("k"), g, ctx.param("n")))


def make_iota(g: int, k: int, n: int) -> WordMap:
    src, dst = GroupContext.fiber(k, 0, n), GroupContext.fiber(k, g, n)
    return WordMap(src, dst, {x: dst.letter(x) for x in src.alphabet}, "iota")


def psi_word_map(k: int, n: int, g: int) -> WordMap:
    """psi_k on words: B_{k,n}(Sigma_g) -> B_n(Sigma_g), forgetting the fiber letters."""
    src, dst = GroupContext.mixed(k, n, g), GroupContext.surface(g, n)
    forget = {Kind.SIGMA_TILDE: Kind.SIGMA, Kind.A_TILDE: Kind.A, Kind.B_TILDE: Kind.B}
    images = {}
    for x in src.alphabet:
        if x.kind in forget:
            images[x] = dst.letter(Generator(forget[x.kind], x.index))
        else:
            images[x] = dst.identity()
    return WordMap(src, dst, images, "psi")


@dataclass
class DiagramReport:
    g: int
    k: int
    n: int
    samples: int
    passed: bool
    counterexample: str | None = None
    detail: str | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__)


def check_lifting_diagram(g: int, k: int, n: int, samples=1000, rng: random.Random | None = None) -> DiagramReport:
    """Check P_k(iota(w)) = iota_bar(p_k(w)) on disc words.

    ``samples`` is either a count of random words or an explicit list of words.
    """
    _need_three(k=k, n=n)
    Pk = make_anko_projection(g, k, n)
    pk = make_disc_projection(k, n)
    disc = GroupContext.fiber(k, 0, n)
    if isinstance(samples, int):
        rng = rng or random.Random(0)
        words = [random_word(disc, rng.randint(0, 30), rng) for _ in range(samples)]
    else:
        words = list(samples)
    for w in words:
        left = Pk(embed_disc(w, g))
        right = iota_bar(g, pk(w))
        if left != right:
            return DiagramReport(g, k, n, len(words), False, str(w), f"{left} != {right}")
    return DiagramReport(g, k, n, len(words), True)


def length_extension(g: int, n: int, w: Word) -> Class2Element:
    """The length-function extension B_n(Sigma_g) -> G_g; it coincides with r_n."""
    if w.context != GroupContext.surface(g, n):
        raise ContextError(f"expected a word of SurfaceB({g},{n}), got {w.context}")
    return make_rn(g, n)(w)


def classical_length(w: Word) -> int:
    """Signed count of sigma letters."""
    return sum(lt.exp for lt in w.letters if lt.gen.kind == Kind.SIGMA)


def named_hom(cli_name: str, g: int | None = None, k: int | None = None, n: int | None = None):
    """Resolve a CLI map name; returns a NamedHom or (for iota) a WordMap."""
    name = CLI_NAMES.get(cli_name, cli_name)
    if name not in NAMES:
        raise ContextError(f"unknown map {cli_name!r}")

    def need(**vals):
        missing = [key for key, v in vals.items() if v is None]
        if missing:
            raise ContextError(f"map {cli_name} needs --{' --'.join(missing)}")

    if name in ("r_n", "lambda_ext"):
        need(g=g, n=n)
        return make_rn(g, n)
    if name == "r_kn":
        need(g=g, k=k, n=n)
        return make_rkn(g, k, n)
    if name == "psi_bar":
        need(g=g)
        return make_psi_bar(g)
    if name == "P_k":
        need(g=g, k=k, n=n)
        return make_anko_projection(g, k, n)
    if name == "p_k":
        need(k=k, n=n)
        return make_disc_projection(k, n)
    need(g=g, k=k, n=n)
    return make_iota(g, k, n)
