"""Exact integer linear algebra and multivariate Laurent polynomials.

Everything here runs on Python ints and :class:`fractions.Fraction`; there
is no floating point anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import EvaluationError, ParseError, SbkError
from .words import Generator, Word

Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.of(identity(n), n)

    def tolist(self) -> Matrix:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return IntMatrix.of(matmul(self.tolist(), other.tolist(), self.cols), other.cols)

    def det(self) -> int:
        return det(self.tolist())

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.tolist()}


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def det(a: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == D``; ``Vinv`` is kept for change of coordinates."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Vinv: IntMatrix
    invariant_factors: tuple[int, ...]
    free_rank: int

    @property
    def rank(self) -> int:
        return self.D.cols - self.free_rank

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D.entries[i][i] for i in range(min(self.D.rows, self.D.cols)))


def smith_normal_form(a: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> SNFResult:
    """Smith normal form by unimodular row/column operations.

    The pivot at each stage is the entry of least absolute value, which keeps
    intermediate coefficients small on relator matrices.
    """
    if not isinstance(a, IntMatrix):
        a = IntMatrix.of(a, cols)
    m, n = a.rows, a.cols
    d = a.tolist()
    u, v, vinv = identity(m), identity(n), identity(n)

    def row_add(i, j, q):  # row_i += q row_j
        d[i] = [x + q * y for x, y in zip(d[i], d[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def col_add(i, j, q):  # col_i += q col_j
        for r in d:
            r[i] += q * r[j]
        for r in v:
            r[i] += q * r[j]
        vinv[j] = [x - q * y for x, y in zip(vinv[j], vinv[i])]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    t = 0
    while t < min(m, n):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = d[i][j]
                    if x and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            row_swap(t, best[0])
            col_swap(t, best[1])
            p = d[t][t]
            for i in range(t + 1, m):
                if d[i][t]:
                    row_add(i, t, -(d[i][t] // p))
            for j in range(t + 1, n):
                if d[t][j]:
                    col_add(j, t, -(d[t][j] // p))
            if any(d[i][t] for i in range(t + 1, m)) or any(d[t][j] for j in range(t + 1, n)):
                continue  # a smaller remainder appeared; re-pivot
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if best is None:
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    res_u, res_d, res_v = IntMatrix.of(u, m), IntMatrix.of(d, n), IntMatrix.of(v, n)
    if (res_u @ a) @ res_v != res_d or matmul(v, vinv) != identity(n):
        raise SbkError("Smith normal form self-check failed")
    diag = [d[i][i] for i in range(min(m, n))]
    rank = sum(1 for x in diag if x)
    return SNFResult(
        res_u,
        res_d,
        res_v,
        IntMatrix.of(vinv, n),
        tuple(x for x in diag if x > 1),
        n - rank,
    )


def in_row_lattice(vector: Sequence[int], snf: SNFResult) -> bool:
    """Is ``vector`` an integer combination of the rows of the matrix ``snf`` was computed for?"""
    w = matmul([list(vector)], snf.V.tolist())[0] if snf.V.rows else []
    diag = snf.diagonal
    for j, x in enumerate(w):
        dj = diag[j] if j < len(diag) else 0
        if dj == 0:
            if x:
                return False
        elif x % dj:
            return False
    return True


# ---------------------------------------------------------------------------
# abelianization


@dataclass(frozen=True)
class AbelianDescriptor:
    """The abelian group Z^free_rank + Z/t1 + ... with t1 | t2 | ..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}" if self.free_rank > 1 else "Z"] if self.free_rank else []
        parts += [f"Z{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def exponent_vector(w: Word, generators: Sequence[Generator]) -> list[int]:
    pos = {g: i for i, g in enumerate(generators)}
    vec = [0] * len(generators)
    for lt in w.letters:
        vec[pos[lt.gen]] += lt.exp
    return vec


def relator_matrix(presentation) -> Matrix:
    return [exponent_vector(r, presentation.generators) for r in presentation.relators]


def abelian_invariants(presentation) -> AbelianDescriptor:
    """Invariants of the abelianization of a finite presentation."""
    snf = smith_normal_form(relator_matrix(presentation), len(presentation.generators))
    return AbelianDescriptor(snf.free_rank, snf.invariant_factors)


def lattice_invariants(rows: Sequence[Sequence[int]], dim: int) -> AbelianDescriptor:
    """Invariants of the subgroup of Z^dim spanned by ``rows``, as an abstract group."""
    snf = smith_normal_form(rows, dim)
    return AbelianDescriptor(snf.rank, ())


# ---------------------------------------------------------------------------
# Laurent polynomials

Monomial = tuple[int, ...]


class LaurentPoly:
    """A Laurent polynomial over Z in an ordered list of variables.

    Terms print in ascending lexicographic order of their exponent vectors,
    e.g. ``t^-1 - 1`` or ``1 - t1 + t1*t2``.  Equality ignores variables
    that do not occur.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Monomial, int] | None = None):
        self.vars = tuple(variables)
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        for m in self.terms:
            if len(m) != len(self.vars):
                raise ValueError("monomial length does not match variables")

    # constructors
    @classmethod
    def const(cls, c: int, variables: Iterable[str] = ()) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None, exp: int = 1) -> "LaurentPoly":
        variables = tuple(variables) if variables is not None else (name,)
        return cls(variables, {tuple(exp if v == name else 0 for v in variables): 1})

    @classmethod
    def monomial(cls, variables: Iterable[str], exps: Mapping[str, int], coeff: int = 1) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {tuple(exps.get(v, 0) for v in variables): coeff})

    # alignment
    def _extend(self, variables: tuple[str, ...]) -> dict[Monomial, int]:
        if variables == self.vars:
            return self.terms
        idx = [self.vars.index(v) if v in self.vars else None for v in variables]
        return {tuple(m[i] if i is not None else 0 for i in idx): c for m, c in self.terms.items()}

    def _common(self, other: "LaurentPoly") -> tuple[tuple[str, ...], dict, dict]:
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(int(other), self.vars)
        variables = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return variables, self._extend(variables), other._extend(variables)

    # ring operations
    def __add__(self, other) -> "LaurentPoly":
        variables, a, b = self._common(other)
        out = dict(a)
        for m, c in b.items():
            out[m] = out.get(m, 0) + c
        return LaurentPoly(variables, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        variables, a, b = self._common(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly(variables, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible")
            (m, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly(self.vars, {tuple(-x for x in m): c}) ** (-e)
        out = LaurentPoly.const(1, self.vars)
        for _ in range(e):
            out = out * self
        return out

    # comparison
    def canonical(self) -> frozenset:
        return frozenset(
            (tuple((v, e) for v, e in zip(self.vars, m) if e), c) for m, c in self.terms.items()
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def is_zero(self) -> bool:
        return not self.terms

    # substitution
    def eval(self, assignment: Mapping[str, int | Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            term = Fraction(c)
            for v, e in zip(self.vars, m):
                if not e:
                    continue
                if v not in assignment:
                    raise SbkError(f"no value given for variable {v}")
                x = Fraction(assignment[v])
                if x == 0 and e < 0:
                    raise EvaluationError(f"{v} = 0 with negative exponent {e}")
                term *= x**e
            total += term
        return total

    def rename(self, mapping: Mapping[str, str], variables: Iterable[str] | None = None) -> "LaurentPoly":
        """Substitute variables by variables; identifying several is allowed."""
        targets = [mapping.get(v, v) for v in self.vars]
        if variables is None:
            variables = tuple(dict.fromkeys(targets))
        variables = tuple(variables)
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            new = [0] * len(variables)
            for t, e in zip(targets, m):
                new[variables.index(t)] += e
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(variables, out)

    # text form
    def _monomial_text(self, m: Monomial) -> str:
        parts = []
        for v, e in zip(self.vars, m):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = self._monomial_text(m)
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str, variables: Iterable[str] | None = None) -> "LaurentPoly":
        """Parse the canonical text form (also accepts any term order and spacing)."""
        src = text.replace(" ", "")
        if not src:
            raise ParseError("empty polynomial", 0)
        # split on signs that are not exponent signs
        pieces, buf = [], ""
        for i, ch in enumerate(src):
            if ch in "+-" and buf and src[i - 1] != "^":
                pieces.append(buf)
                buf = ""
            buf += ch
        pieces.append(buf)
        parsed: list[tuple[int, dict[str, int]]] = []
        names: list[str] = []
        offset = 0
        for piece in pieces:
            sign = -1 if piece.startswith("-") else 1
            body = piece.lstrip("+-")
            if not body:
                raise ParseError("dangling sign", offset)
            coeff, exps = sign, {}
            for factor in body.split("*"):
                mt = re.fullmatch(r"(\d+)|([A-Za-z]\w*)(?:\^(-?\d+))?", factor)
                if not mt:
                    raise ParseError(f"bad factor {factor!r}", offset)
                if mt.group(1):
                    coeff *= int(mt.group(1))
                else:
                    name = mt.group(2)
                    exps[name] = exps.get(name, 0) + int(mt.group(3) or 1)
                    if name not in names:
                        names.append(name)
            parsed.append((coeff, exps))
            offset += len(piece)
        if variables is None:
            variables = sorted(names)
        variables = tuple(variables)
        out = LaurentPoly(variables)
        for coeff, exps in parsed:
            unknown = set(exps) - set(variables)
            if unknown:
                raise ParseError(f"unknown variables {sorted(unknown)}", 0)
            out = out + LaurentPoly.monomial(variables, exps, coeff)
        return out


def laurent_arith(op: str, *operands):
    """Dispatch helper: ``add``, ``mul``, ``neg`` or ``eval`` (last operand is the assignment)."""
    if op == "add":
        return operands[0] + operands[1]
    if op == "mul":
        return operands[0] * operands[1]
    if op == "neg":
        return -operands[0]
    if op == "eval":
        return operands[0].eval(operands[1])
    raise ValueError(f"unknown operation {op!r}")
