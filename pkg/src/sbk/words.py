"""Typed braid-word alphabet, freely reduced words, parsing and printing.

Words here are elements of a *free* group on the context's alphabet: only
free reduction is ever applied.  Relators live in :mod:`sbk.presentations`.

Concrete syntax::

    s<i>  sigma_i          S<i>  sigma~_i
    a<i>  a_i              A<i>  a~_i
    b<i>  b_i              B<i>  b~_i
    z<j>  zeta_j           x<i>  free generator x_i

Letters are separated by ``*`` or whitespace, ``^<int>`` raises to a power,
``[u,v]`` is the commutator ``u v u^-1 v^-1``, parentheses group, and the
empty string or ``1`` is the identity.  In the class-2 quotient contexts the
central generators carry no index (``s``, ``S``, ``z``).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import ContextError, ParseError

MAX_EXPONENT = 10_000


class Kind(str, enum.Enum):
    SIGMA = "s"
    A = "a"
    B = "b"
    ZETA = "z"
    SIGMA_TILDE = "S"
    A_TILDE = "A"
    B_TILDE = "B"
    X = "x"


class Generator(NamedTuple):
    kind: Kind
    index: int  # 1-based; 0 only for the unindexed central generators of Gamma3 contexts

    def __str__(self) -> str:
        return self.kind.value + (str(self.index) if self.index else "")

    @classmethod
    def parse(cls, text: str) -> "Generator":
        m = re.fullmatch(r"([sabzSABx])(\d*)", text.strip())
        if not m:
            raise ContextError(f"not a generator: {text!r}")
        return cls(Kind(m.group(1)), int(m.group(2)) if m.group(2) else 0)


class Letter(NamedTuple):
    gen: Generator
    exp: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.exp)

    def __str__(self) -> str:
        return str(self.gen) if self.exp == 1 else f"{self.gen}^-1"


def gen(kind: str, index: int = 0) -> Generator:
    return Generator(Kind(kind), index)


# ---------------------------------------------------------------------------
# contexts


_FAMILIES = {
    "ArtinB": ("n",),
    "SurfaceB": ("g", "n"),
    "FiberB": ("k", "g", "n"),
    "MixedB": ("k", "n", "g"),
    "FreeF": ("n",),
    "Gamma3": ("which", "g"),
}


@dataclass(frozen=True)
class GroupContext:
    """Which group a word lives in; determines the legal alphabet.

    ``MixedB`` takes ``(k, n, g)`` and ``FiberB`` takes ``(k, g, n)``,
    mirroring B_{k,n}(Sigma_g) and B_k(Sigma_{g,n}).
    """

    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ContextError(f"unknown group family {self.family!r}")
        names = _FAMILIES[self.family]
        if len(self.params) != len(names):
            raise ContextError(f"{self.family} takes parameters {names}")
        p = dict(zip(names, self.params))
        if self.family == "Gamma3":
            if p["which"] not in ("Gg", "Hg", "Kg"):
                raise ContextError(f"unknown quotient {p['which']!r}")
            _check_int(p["g"], 1, "g")
            return
        for name, value in p.items():
            lo = 0 if (self.family == "FiberB" and name in ("g", "n")) else 1
            _check_int(value, lo, name)

    # factories -------------------------------------------------------------

    @classmethod
    def artin(cls, n: int) -> "GroupContext":
        return cls("ArtinB", (n,))

    @classmethod
    def surface(cls, g: int, n: int) -> "GroupContext":
        return cls("SurfaceB", (g, n))

    @classmethod
    def fiber(cls, k: int, g: int, n: int) -> "GroupContext":
        return cls("FiberB", (k, g, n))

    @classmethod
    def mixed(cls, k: int, n: int, g: int) -> "GroupContext":
        return cls("MixedB", (k, n, g))

    @classmethod
    def free(cls, n: int) -> "GroupContext":
        return cls("FreeF", (n,))

    @classmethod
    def gamma3(cls, which: str, g: int) -> "GroupContext":
        return cls("Gamma3", (which, g))

    @classmethod
    def parse(cls, text: str) -> "GroupContext":
        m = re.fullmatch(r"\s*(\w+)\s*\(([^)]*)\)\s*", text)
        if not m:
            raise ContextError(f"cannot parse group context {text!r}")
        args = [a.strip() for a in m.group(2).split(",") if a.strip()]
        params = tuple(a if not a.lstrip("-").isdigit() else int(a) for a in args)
        return cls(m.group(1), params)

    def __str__(self) -> str:
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    def param(self, name: str):
        return self.params[_FAMILIES[self.family].index(name)]

    # alphabet --------------------------------------------------------------

    @cached_property
    def alphabet(self) -> tuple[Generator, ...]:
        """Generators in presentation order."""
        f = self.family
        s = lambda m: [gen("s", i) for i in range(1, m)]
        if f == "ArtinB":
            return tuple(s(self.params[0]))
        if f == "FreeF":
            return tuple(gen("x", i) for i in range(1, self.params[0] + 1))
        if f == "SurfaceB":
            g, n = self.params
            return tuple(_ab(g, "a", "b") + s(n))
        if f == "FiberB":
            k, g, n = self.params
            return tuple(s(k) + _ab(g, "a", "b") + _zetas(n))
        if f == "MixedB":
            k, n, g = self.params
            tilde = [gen("S", i) for i in range(1, n)]
            return tuple(s(k) + tilde + _ab(g, "a", "b") + _ab(g, "A", "B") + _zetas(n))
        which, g = self.params
        if which == "Gg":
            return tuple(_ab(g, "a", "b") + [gen("s")])
        if which == "Kg":
            return tuple([gen("s"), gen("z")] + _ab(g, "a", "b"))
        return tuple([gen("s"), gen("S"), gen("z")] + _ab(g, "a", "b") + _ab(g, "A", "B"))

    @cached_property
    def _alphabet_set(self) -> frozenset:
        return frozenset(self.alphabet)

    def __contains__(self, generator: Generator) -> bool:
        return generator in self._alphabet_set

    def word(self, text: str = "") -> "Word":
        return parse_word(text, self)

    def identity(self) -> "Word":
        return Word(self, ())

    def letter(self, generator: Generator | str, exp: int = 1) -> "Word":
        if isinstance(generator, str):
            generator = Generator.parse(generator)
        return Word(self, (Letter(generator, exp),))


def _check_int(value, lo: int, name: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < lo:
        raise ContextError(f"parameter {name} must be an integer >= {lo}, got {value!r}")


def _ab(g: int, a: str, b: str) -> list[Generator]:
    out = []
    for i in range(1, g + 1):
        out += [gen(a, i), gen(b, i)]
    return out


def _zetas(n: int) -> list[Generator]:
    return [gen("z", j) for j in range(1, n + 1)]


# ---------------------------------------------------------------------------
# words


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Cancel adjacent ``x x^-1`` pairs (stack-based, single pass)."""
    out: list[Letter] = []
    for lt in letters:
        if out and out[-1].gen == lt.gen and out[-1].exp == -lt.exp:
            out.pop()
        else:
            out.append(lt)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word over the alphabet of ``context``."""

    context: GroupContext
    letters: tuple[Letter, ...] = field(default=())

    def __post_init__(self):
        letters = tuple(Letter(*lt) for lt in self.letters)
        for lt in letters:
            if lt.exp not in (1, -1):
                raise ContextError(f"letter exponent must be +-1, got {lt.exp}")
            if lt.gen not in self.context:
                raise ContextError(f"generator {lt.gen} does not exist in {self.context}")
        object.__setattr__(self, "letters", free_reduce(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({self.context}, {format_word(self)!r})"

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        return concat_reduce(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def __pow__(self, e: int) -> "Word":
        base = self if e >= 0 else self.inverse()
        return Word(self.context, base.letters * abs(e))

    def generators(self) -> set[Generator]:
        return {lt.gen for lt in self.letters}

    def relabel(self, context: GroupContext) -> "Word":
        """Same letters, read in another context (validated there)."""
        return Word(context, self.letters)

    def substitute(self, images: Mapping[Generator, "Word"], context: GroupContext) -> "Word":
        """Image under the word map ``x -> images[x]`` into ``context``."""
        out: list[Letter] = []
        inverses: dict[Generator, Word] = {}
        for lt in self.letters:
            try:
                img = images[lt.gen]
            except KeyError:
                raise ContextError(f"no image declared for {lt.gen}") from None
            if lt.exp == -1:
                img = inverses.get(lt.gen) or inverses.setdefault(lt.gen, img.inverse())
            out.extend(img.letters)
        return Word(context, tuple(out))


def concat_reduce(u: Word, v: Word) -> Word:
    if u.context != v.context:
        raise ContextError(f"context mismatch: {u.context} vs {v.context}")
    return Word(u.context, u.letters + v.letters)


def invert(w: Word) -> Word:
    return Word(w.context, tuple(lt.inverse() for lt in reversed(w.letters)))


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * invert(x) * invert(y)


def conjugate(a: Word, b: Word) -> Word:
    """``a^b = b^-1 a b``."""
    return invert(b) * a * b


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        power = (j - i) * letters[i].exp
        parts.append(str(letters[i].gen) if power == 1 else f"{letters[i].gen}^{power}")
        i = j
    return " * ".join(parts)


# ---------------------------------------------------------------------------
# parsing


class _RawLetter(NamedTuple):
    kind: str
    index: int | None
    exp: int
    offset: int


def _invert_raw(items: list[_RawLetter]) -> list[_RawLetter]:
    return [r._replace(exp=-r.exp) for r in reversed(items)]


class _Parser:
    LETTERS = "sabzSABx"

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        pos = self.pos if pos is None else pos
        raise ParseError(message, len(self.text[:pos].encode("utf-8")))

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.peek().isspace():
            self.pos += 1

    def parse(self) -> list[_RawLetter]:
        items = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected character {self.peek()!r}")
        return items

    def expr(self) -> list[_RawLetter]:
        out: list[_RawLetter] = []
        seen_term = expect_term = False
        while True:
            self.skip_ws()
            c = self.peek()
            if c == "" or c in ")],":
                if expect_term:
                    self.error("expected a term after '*'")
                return out
            if c == "*":
                if not seen_term or expect_term:
                    self.error("unexpected '*'")
                self.pos += 1
                expect_term = True
                continue
            out.extend(self.term())
            seen_term, expect_term = True, False

    def term(self) -> list[_RawLetter]:
        items = self.atom()
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
            if not m:
                self.error("expected an integer exponent")
            power = int(m.group(0))
            if abs(power) > MAX_EXPONENT:
                self.error(f"exponent {power} exceeds {MAX_EXPONENT}")
            self.pos = m.end()
            base = items if power >= 0 else _invert_raw(items)
            items = base * abs(power)
        return items

    def atom(self) -> list[_RawLetter]:
        c = self.peek()
        start = self.pos
        if c and c in self.LETTERS:
            self.pos += 1
            m = re.compile(r"\d+").match(self.text, self.pos)
            index = None
            if m:
                index = int(m.group(0))
                self.pos = m.end()
            return [_RawLetter(c, index, 1, start)]
        if c == "1":
            self.pos += 1
            if self.peek().isdigit():
                self.error("a bare integer is not a group element", start)
            return []
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if c == "[":
            self.pos += 1
            u = self.expr()
            if self.peek() != ",":
                self.error("expected ',' in commutator")
            self.pos += 1
            v = self.expr()
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            return u + v + _invert_raw(u) + _invert_raw(v)
        if c == "":
            self.error("unexpected end of input")
        self.error(f"unknown letter {c!r}")


def parse_letters(text: str) -> list[_RawLetter]:
    """Parse text into raw (kind, index, exponent, offset) letters; no context checks."""
    return _Parser(text).parse()


def parse_word(text: str, context: GroupContext) -> Word:
    """Parse ``text`` into a freely reduced :class:`Word` of ``context``."""
    letters = []
    for raw in parse_letters(text):
        g = Generator(Kind(raw.kind), raw.index or 0)
        if g not in context:
            by_kind = [a for a in context.alphabet if a.kind.value == raw.kind]
            if not by_kind:
                raise ContextError(
                    f"letter kind {raw.kind!r} does not exist in {context} "
                    f"(byte {raw.offset})"
                )
            if raw.index is None:
                raise ContextError(f"letter {raw.kind!r} needs an index in {context} (byte {raw.offset})")
            raise ContextError(
                f"index {raw.index} out of range for {raw.kind!r} in {context} (byte {raw.offset})"
            )
        letters.append(Letter(g, raw.exp))
    return Word(context, tuple(letters))


# ---------------------------------------------------------------------------
# sampling


def random_word(
    context: GroupContext,
    length: int,
    rng,
    generators: Sequence[Generator] | None = None,
) -> Word:
    """A uniformly random letter sequence of the given length, then freely reduced."""
    pool = list(generators if generators is not None else context.alphabet)
    if not pool:
        return context.identity()
    letters = [Letter(rng.choice(pool), rng.choice((1, -1))) for _ in range(length)]
    return Word(context, tuple(letters))
