"""Class-2 nilpotent groups G_g, H_g, K_g with unique exponent normal forms.

An element is stored as three integer vectors ``(c, m, n)`` standing for

    prod(central^c) * prod(a-block^m) * prod(b-block^n)

The commutator table gives ``[a, b]`` (central) for each a-block/b-block
pair; every other pair of generators commutes.  Since ``b a = [a,b]^-1 a b``
the product of two normal forms is

    central(xy) = c_x + c_y - sum n_x[beta] * m_y[alpha] * T[alpha, beta]

and the a- and b-blocks simply add.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .errors import ContextError
from .exactalg import AbelianDescriptor, smith_normal_form
from .presentations import Presentation, gamma3_presentation
from .words import Generator, GroupContext, Letter, Word, gen

Vec = tuple[int, ...]


@dataclass(frozen=True)
class Class2Group:
    which: str
    g: int
    central: tuple[Generator, ...] = field(compare=False)
    a_block: tuple[Generator, ...] = field(compare=False)
    b_block: tuple[Generator, ...] = field(compare=False)
    table: Mapping[tuple[Generator, Generator], Vec] = field(compare=False, hash=False)

    def __post_init__(self):
        for (a, b), val in self.table.items():
            if a not in self.a_block or b not in self.b_block or len(val) != len(self.central):
                raise ValueError(f"bad table entry [{a},{b}]")
        a_pos = {x: i for i, x in enumerate(self.a_block)}
        b_pos = {x: i for i, x in enumerate(self.b_block)}
        # pairing[beta] = [(alpha_index, value), ...] for moving b past a
        pairing: dict[int, list[tuple[int, Vec]]] = {}
        for (a, b), val in self.table.items():
            if any(val):
                pairing.setdefault(b_pos[b], []).append((a_pos[a], val))
        object.__setattr__(self, "_pairing", pairing)
        slots = {}
        for i, x in enumerate(self.central):
            slots[x] = (0, i)
        for i, x in enumerate(self.a_block):
            slots[x] = (1, i)
        for i, x in enumerate(self.b_block):
            slots[x] = (2, i)
        object.__setattr__(self, "_slots", slots)

    def __str__(self) -> str:
        return f"{self.which}({self.g})"

    @cached_property
    def context(self) -> GroupContext:
        return GroupContext.gamma3(self.which, self.g)

    @cached_property
    def letters(self) -> dict[Generator, "Class2Element"]:
        return {x: self.element(x) for x in self.generators}

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.central + self.a_block + self.b_block

    def slot(self, x: Generator) -> tuple[int, int]:
        try:
            return self._slots[x]
        except KeyError:
            raise ContextError(f"{x} is not a generator of {self}") from None

    def commutator_value(self, a: Generator, b: Generator) -> Vec:
        return self.table.get((a, b), (0,) * len(self.central))

    # carrier protocol
    def identity(self) -> "Class2Element":
        return Class2Element(self, (0,) * len(self.central), (0,) * len(self.a_block), (0,) * len(self.b_block))

    def element(self, x: Generator, exp: int = 1) -> "Class2Element":
        block, i = self.slot(x)
        vecs = [list(v) for v in (self.identity().central, self.identity().a, self.identity().b)]
        vecs[block][i] = exp
        return Class2Element(self, *(tuple(v) for v in vecs))

    def mul(self, x, y):
        return c2_multiply(x, y)

    def inv(self, x):
        return x.inverse()

    def is_identity(self, x) -> bool:
        return x.is_identity()

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str) -> "Class2Element":
        return c2_project(self.context.word(text), self)


@dataclass(frozen=True)
class Class2Element:
    group: Class2Group
    central: Vec
    a: Vec
    b: Vec

    def __mul__(self, other: "Class2Element") -> "Class2Element":
        return c2_multiply(self, other)

    def inverse(self) -> "Class2Element":
        corr = _pairing_sum(self.group, self.b, self.a)
        return Class2Element(
            self.group,
            tuple(-c - d for c, d in zip(self.central, corr)),
            tuple(-x for x in self.a),
            tuple(-x for x in self.b),
        )

    def __pow__(self, e: int) -> "Class2Element":
        base = self if e >= 0 else self.inverse()
        out = self.group.identity()
        for _ in range(abs(e)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not (any(self.central) or any(self.a) or any(self.b))

    def is_central(self) -> bool:
        return not (any(self.a) or any(self.b))

    def exponent(self, x: Generator) -> int:
        block, i = self.group.slot(x)
        return (self.central, self.a, self.b)[block][i]

    def __str__(self) -> str:
        G = self.group
        parts = []
        for gens, vec in ((G.central, self.central), (G.a_block, self.a), (G.b_block, self.b)):
            for x, e in zip(gens, vec):
                if e == 1:
                    parts.append(str(x))
                elif e:
                    parts.append(f"{x}^{e}")
        return " * ".join(parts) or "1"

    def to_json(self) -> dict:
        G = self.group
        return {
            "group": str(G),
            "normal_form": str(self),
            "central": dict(zip(map(str, G.central), self.central)),
            "a": dict(zip(map(str, G.a_block), self.a)),
            "b": dict(zip(map(str, G.b_block), self.b)),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _pairing_sum(G: Class2Group, n: Vec, m: Vec) -> list[int]:
    """sum_{alpha, beta} n[beta] m[alpha] T[alpha, beta]."""
    out = [0] * len(G.central)
    for beta, entries in G._pairing.items():
        nb = n[beta]
        if not nb:
            continue
        for alpha, val in entries:
            k = nb * m[alpha]
            if k:
                for i, v in enumerate(val):
                    out[i] += k * v
    return out


def c2_multiply(x: Class2Element, y: Class2Element) -> Class2Element:
    if x.group is not y.group and x.group != y.group:
        raise ContextError(f"cannot multiply elements of {x.group} and {y.group}")
    corr = _pairing_sum(x.group, x.b, y.a)
    return Class2Element(
        x.group,
        tuple(p + q - r for p, q, r in zip(x.central, y.central, corr)),
        tuple(p + q for p, q in zip(x.a, y.a)),
        tuple(p + q for p, q in zip(x.b, y.b)),
    )


def c2_commutator(x: Class2Element, y: Class2Element) -> Class2Element:
    return x * y * x.inverse() * y.inverse()


@lru_cache(maxsize=None)
def make_group(which: str, g: int) -> Class2Group:
    """The class-2 group ``which`` in {Gg, Hg, Kg} of genus ``g``."""
    GroupContext.gamma3(which, g)  # validates
    a = tuple(gen("a", i) for i in range(1, g + 1))
    b = tuple(gen("b", i) for i in range(1, g + 1))
    s, S, z = gen("s"), gen("S"), gen("z")
    table: dict[tuple[Generator, Generator], Vec] = {}
    if which == "Gg":
        for j in range(g):
            table[a[j], b[j]] = (2,)
        return Class2Group(which, g, (s,), a, b, table)
    if which == "Kg":
        for j in range(g):
            table[a[j], b[j]] = (2, 0)
        return Class2Group(which, g, (s, z), a, b, table)
    A = tuple(gen("A", i) for i in range(1, g + 1))
    B = tuple(gen("B", i) for i in range(1, g + 1))
    for j in range(g):
        table[a[j], b[j]] = (2, 0, 0)
        table[A[j], B[j]] = (0, 2, 0)
        table[A[j], b[j]] = (0, 0, -1)  # [b_j, A_j] = z
        table[a[j], B[j]] = (0, 0, -1)  # [B_j, a_j] = z
    return Class2Group(which, g, (s, S, z), a + A, b + B, table)


ImageTable = Mapping[Generator, Class2Element]


def tautological_table(G: Class2Group) -> dict[Generator, Class2Element]:
    return dict(G.letters)


def c2_project(w: Word, G: Class2Group, image_table: ImageTable | None = None) -> Class2Element:
    """Fold ``w`` left to right through ``image_table`` (default: the identity on G's letters)."""
    if image_table is None:
        if w.context != G.context:
            raise ContextError(f"word of {w.context} needs an image table to reach {G}")
        image_table = G.letters
    inverses: dict[Generator, Class2Element] = {}
    acc = G.identity()
    for lt in w.letters:
        try:
            img = image_table[lt.gen]
        except KeyError:
            raise ContextError(f"no image declared for {lt.gen}") from None
        if lt.exp < 0:
            img = inverses.get(lt.gen) or inverses.setdefault(lt.gen, img.inverse())
        acc = c2_multiply(acc, img)
    return acc


def image_letters(w: Word, table: Mapping[Generator, tuple[Generator, int]]) -> list[tuple[Generator, int]]:
    """Letterwise images when every generator maps to a single generator or its inverse."""
    out = []
    for lt in w.letters:
        try:
            x, e = table[lt.gen]
        except KeyError:
            raise ContextError(f"no image declared for {lt.gen}") from None
        if e:
            out.append((x, e * lt.exp))
    return out


# ---------------------------------------------------------------------------
# naive collection oracle


class NaiveCollector:
    """Literal collection driven only by the presentation's relators.

    Each relator ``[x, y] w^-1`` with ``w`` a word in central letters gives
    the swap rule ``x^e y^f = w^(ef) y^f x^e``.  The table of
    :class:`Class2Group` is never consulted.
    """

    def __init__(self, presentation: Presentation, G: Class2Group):
        self.G = G
        ncentral = len(G.central)
        self.rules: dict[tuple[Generator, Generator], list[int]] = {}
        cpos = {x: i for i, x in enumerate(G.central)}
        for r in presentation.relators:
            lts = r.letters
            if len(lts) < 4:
                raise ValueError(f"relator {r} is not of the form [x,y] w^-1")
            x, y = lts[0].gen, lts[1].gen
            if lts[0].exp != 1 or lts[1].exp != 1 or lts[2] != Letter(x, -1) or lts[3] != Letter(y, -1):
                raise ValueError(f"relator {r} is not of the form [x,y] w^-1")
            w = [0] * ncentral
            for lt in lts[4:]:
                if lt.gen not in cpos:
                    raise ValueError(f"relator {r} has a non-central right-hand side")
                w[cpos[lt.gen]] -= lt.exp  # the tail is w^-1
            self.rules[x, y] = w
            self.rules[y, x] = [-v for v in w]
        self.rank = {x: i for i, x in enumerate(G.generators)}
        self._cpos = cpos
        for c in G.central:
            for x in G.generators:
                if x != c and any(self.rule(c, x)):
                    raise ValueError(f"central letter {c} has a non-trivial swap with {x}")

    def rule(self, x: Generator, y: Generator) -> list[int]:
        try:
            return self.rules[x, y]
        except KeyError:
            raise ValueError(f"the presentation gives no swap rule for {x}, {y}") from None

    def collect(self, letters: Sequence[tuple[Generator, int]]) -> Class2Element:
        G = self.G
        central = [0] * len(G.central)
        rest: list[tuple[Generator, int]] = []
        for x, e in letters:
            if x in self._cpos:
                # central letters move to the front; every swap rule they use is trivial
                central[self._cpos[x]] += e
            else:
                rest.append((x, e))
        # insertion sort, one adjacent swap at a time
        for i in range(1, len(rest)):
            j = i
            while j > 0 and self.rank[rest[j - 1][0]] > self.rank[rest[j][0]]:
                (x, e), (y, f) = rest[j - 1], rest[j]
                w = self.rule(x, y)
                for k, v in enumerate(w):
                    central[k] += e * f * v
                rest[j - 1], rest[j] = rest[j], rest[j - 1]
                j -= 1
        a = [0] * len(G.a_block)
        b = [0] * len(G.b_block)
        for x, e in rest:
            block, i = G.slot(x)
            (a if block == 1 else b)[i] += e
        return Class2Element(G, tuple(central), tuple(a), tuple(b))


@lru_cache(maxsize=None)
def naive_collector(which: str, g: int) -> NaiveCollector:
    return NaiveCollector(gamma3_presentation(which, g), make_group(which, g))


def c2_collect_naive(letters: Sequence[tuple[Generator, int]] | Word, G: Class2Group) -> Class2Element:
    if isinstance(letters, Word):
        letters = [(lt.gen, lt.exp) for lt in letters.letters]
    return naive_collector(G.which, G.g).collect(letters)


# ---------------------------------------------------------------------------
# lower central series data


def derived_subgroup(G: Class2Group) -> AbelianDescriptor:
    """The commutator subgroup, spanned inside the centre by the table values."""
    rows = [list(v) for v in G.table.values() if any(v)]
    snf = smith_normal_form(rows, len(G.central))
    return AbelianDescriptor(snf.rank, ())


def c2_abelianization(G: Class2Group) -> AbelianDescriptor:
    dim = len(G.generators)
    rows = [list(v) + [0] * (dim - len(v)) for v in G.table.values() if any(v)]
    snf = smith_normal_form(rows, dim)
    return AbelianDescriptor(snf.free_rank, snf.invariant_factors)


def parse_element(text: str, G: Class2Group) -> Class2Element:
    return G.parse(text)
