"""Artin action on F_n, Fox calculus, Burau and Gassner matrices.

Conventions:

* sigma_i acts by x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i.
* A braid word is read left to right and each letter's substitution is
  applied to the current images, so ``artin_endo(uv) = artin_endo(v) o
  artin_endo(u)``.
* The Magnus matrix has entry (i, j) = abelianized d(image of x_i)/dx_j.
  With the two conventions above it is multiplicative: M(uv) = M(u) M(v).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ContextError, SbkError
from .exactalg import LaurentPoly
from .presentations import Hom, underlying_permutation
from .words import Generator, GroupContext, Letter, Word, format_word, gen


# ---------------------------------------------------------------------------
# free endomorphisms


@dataclass(frozen=True)
class FreeEndo:
    n: int
    images: tuple[Word, ...]

    @property
    def context(self) -> GroupContext:
        return GroupContext.free(self.n)

    @classmethod
    def identity(cls, n: int) -> "FreeEndo":
        F = GroupContext.free(n)
        return cls(n, tuple(F.letter(gen("x", i)) for i in range(1, n + 1)))

    def _table(self) -> dict[Generator, Word]:
        return {gen("x", i + 1): w for i, w in enumerate(self.images)}

    def __call__(self, w: Word) -> Word:
        return w.substitute(self._table(), self.context)

    def after(self, other: "FreeEndo") -> "FreeEndo":
        """self o other: x -> self(other(x))."""
        return FreeEndo(self.n, tuple(self(w) for w in other.images))

    def is_identity(self) -> bool:
        return self == FreeEndo.identity(self.n)

    def __str__(self) -> str:
        return ", ".join(f"x{i} -> {w}" for i, w in enumerate(self.images, start=1))


def sigma_endo(n: int, i: int, exp: int) -> FreeEndo:
    F = GroupContext.free(n)
    imgs = list(FreeEndo.identity(n).images)
    xi, xj = F.letter(gen("x", i)), F.letter(gen("x", i + 1))
    if exp == 1:
        imgs[i - 1], imgs[i] = xi * xj * xi.inverse(), xi
    else:
        imgs[i - 1], imgs[i] = xj, xj.inverse() * xi * xj
    return FreeEndo(n, tuple(imgs))


def artin_endo(b: Word) -> FreeEndo:
    if b.context.family != "ArtinB":
        raise ContextError(f"expected a word of an Artin braid group, got {b.context}")
    n = b.context.params[0]
    out = FreeEndo.identity(n)
    for lt in b.letters:
        out = sigma_endo(n, lt.gen.index, lt.exp).after(out)
    return out


# ---------------------------------------------------------------------------
# group ring and Fox calculus


class GroupRingElement:
    """Finite Z-combination of reduced free words."""

    __slots__ = ("context", "terms")

    def __init__(self, context: GroupContext, terms: Mapping[Word, int] | None = None):
        self.context = context
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, w: Word, coeff: int = 1) -> "GroupRingElement":
        return cls(w.context, {w: coeff})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(self.context, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.context, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        out: dict[Word, int] = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + c * d
        return GroupRingElement(self.context, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def abelianize(self, variables: Mapping[Generator, str], order: Sequence[str] | None = None) -> LaurentPoly:
        """Send each free letter to a Laurent variable (several letters may share one)."""
        order = tuple(order) if order is not None else tuple(dict.fromkeys(variables.values()))
        pos = {name: i for i, name in enumerate(order)}
        out: dict[tuple[int, ...], int] = {}
        for w, c in self.terms.items():
            exps = [0] * len(order)
            for lt in w.letters:
                exps[pos[variables[lt.gen]]] += lt.exp
            key = tuple(exps)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(order, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), str(kv[0])))
        text = ""
        for w, c in items:
            body = format_word(w).replace(" * ", "*")
            mag = abs(c)
            term = body if mag == 1 and body != "1" else (f"{mag}*{body}" if body != "1" else str(mag))
            if not text:
                text = term if c > 0 else "-" + term
            else:
                text += (" + " if c > 0 else " - ") + term
        return text


def fox_derivative(w: Word, j: int) -> GroupRingElement:
    """d w / d x_j with d(uv) = du + u dv and d(x^-1) = -x^-1 dx."""
    if w.context.family != "FreeF":
        raise ContextError(f"Fox derivatives are taken in a free group, got {w.context}")
    target = gen("x", j)
    F = w.context
    out: dict[Word, int] = {}
    prefix: list[Letter] = []
    for lt in w.letters:
        if lt.gen == target and lt.exp == 1:
            key = Word(F, tuple(prefix))
            out[key] = out.get(key, 0) + 1
        prefix.append(lt)
        if lt.gen == target and lt.exp == -1:
            key = Word(F, tuple(prefix))
            out[key] = out.get(key, 0) - 1
    return GroupRingElement(F, out)


def fox_identity_holds(w: Word) -> bool:
    """sum_j (dw/dx_j)(x_j - 1) = w - 1 in Z[F_n], before abelianizing."""
    F = w.context
    one = GroupRingElement.of(F.identity())
    total = GroupRingElement(F)
    for j in range(1, F.params[0] + 1):
        total = total + fox_derivative(w, j) * (GroupRingElement.of(F.letter(gen("x", j))) - one)
    return total == GroupRingElement.of(w) - one


# ---------------------------------------------------------------------------
# Laurent matrices


@dataclass(frozen=True)
class RepMatrix:
    variables: tuple[str, ...]
    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int, variables: Iterable[str]) -> "RepMatrix":
        variables = tuple(variables)
        return cls(variables, tuple(
            tuple(LaurentPoly.const(int(i == j), variables) for j in range(n)) for i in range(n)
        ))

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = LaurentPoly(self.variables)
                for k in range(n):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return RepMatrix(self.variables, tuple(rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, RepMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def is_identity(self) -> bool:
        return all(self.entries[i][j] == int(i == j) for i in range(self.n) for j in range(self.n))

    def rename(self, mapping: Mapping[str, str], variables: Sequence[str]) -> "RepMatrix":
        variables = tuple(variables)
        return RepMatrix(variables, tuple(tuple(p.rename(mapping, variables) for p in row) for row in self.entries))

    def block(self, size: int) -> "RepMatrix":
        return RepMatrix(self.variables, tuple(row[:size] for row in self.entries[:size]))

    def to_json(self) -> dict:
        return {"n": self.n, "variables": list(self.variables), "entries": [[str(p) for p in row] for row in self.entries]}

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(p) for p in row) + "]" for row in self.entries)


def magnus_matrix(phi: FreeEndo, variables: Mapping[Generator, str], order: Sequence[str]) -> RepMatrix:
    rows = []
    for img in phi.images:
        rows.append(tuple(fox_derivative(img, j).abelianize(variables, order) for j in range(1, phi.n + 1)))
    return RepMatrix(tuple(order), tuple(rows))


def burau_unreduced(b: Word) -> RepMatrix:
    n = b.context.params[0]
    phi = artin_endo(b)
    return magnus_matrix(phi, {gen("x", i): "t" for i in range(1, n + 1)}, ("t",))


def burau_reduced(b: Word) -> RepMatrix:
    """Experimental: top-left (n-1) block of C^-1 M C, where C's last column is all ones.

    Rows of the unreduced matrix sum to 1, so the all-ones vector is fixed
    and the block is itself a representation.
    """
    n = b.context.params[0]
    M = burau_unreduced(b)
    one = LaurentPoly.const(1, ("t",))
    zero = LaurentPoly(("t",))
    C = RepMatrix(("t",), tuple(
        tuple(one if (i == j or j == n - 1) else zero for j in range(n)) for i in range(n)
    ))
    Cinv = RepMatrix(("t",), tuple(
        tuple(one if i == j else (-one if (j == n - 1 and i != n - 1) else zero) for j in range(n)) for i in range(n)
    ))
    return (Cinv @ M @ C).block(n - 1)


def gassner_variables(n: int) -> tuple[str, ...]:
    return tuple(f"t{i}" for i in range(1, n + 1))


def gassner(b: Word) -> RepMatrix:
    if not underlying_permutation(b).is_identity():
        raise SbkError(f"the Gassner representation needs a pure braid; {b} permutes the strands")
    n = b.context.params[0]
    names = gassner_variables(n)
    return magnus_matrix(artin_endo(b), {gen("x", i): names[i - 1] for i in range(1, n + 1)}, names)


def gassner_to_burau(M: RepMatrix) -> RepMatrix:
    return M.rename({v: "t" for v in M.variables}, ("t",))


def specialize(M: RepMatrix, assignment: Mapping[str, int | Fraction]) -> list[list[Fraction]]:
    used = {name for row in M.entries for p in row for mono, _ in p.canonical() for name, _ in mono}
    missing = sorted(used - set(assignment))
    if missing:
        raise SbkError(f"no value for {', '.join(missing)}")
    return [[p.eval(assignment) for p in row] for row in M.entries]


def fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Burau as a verified homomorphism


class LaurentMatrixGroup:
    """GL_n over Z[t^+-1] restricted to what a Hom needs."""

    def __init__(self, n: int, variables: Sequence[str]):
        self.n, self.variables = n, tuple(variables)

    def identity(self) -> RepMatrix:
        return RepMatrix.identity(self.n, self.variables)

    def mul(self, x: RepMatrix, y: RepMatrix) -> RepMatrix:
        return x @ y

    def is_identity(self, x: RepMatrix) -> bool:
        return x.is_identity()

    def format(self, x: RepMatrix) -> str:
        return str(x)


def burau_hom(n: int) -> Hom:
    A = GroupContext.artin(n)
    target = LaurentMatrixGroup(n, ("t",))
    images = {x: burau_unreduced(A.letter(x)) for x in A.alphabet}
    inverses = {x: burau_unreduced(A.letter(x, -1)) for x in A.alphabet}
    return Hom(A, target, images, "burau", inverse_images=inverses)


def is_artin_pair_inverse(n: int, i: int) -> bool:
    """sigma_i o sigma_i^-1 is the identity on generators, as free words."""
    return sigma_endo(n, i, 1).after(sigma_endo(n, i, -1)).is_identity() and sigma_endo(n, i, -1).after(
        sigma_endo(n, i, 1)
    ).is_identity()


def permutation_matrix(b: Word) -> list[list[int]]:
    return underlying_permutation(b).matrix()
