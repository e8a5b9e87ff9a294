"""Words in the free group on c, l, k and the knot/surgery presentations.

Words are stored run-length: a tuple of ``(generator, exponent)`` blocks
with nonzero exponents and no two neighbouring blocks on the same
generator. Construction always freely reduces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable

GENERATORS = ("c", "l", "k")

Block = tuple[str, int]


def _reduce(blocks: Iterable[Block]) -> tuple[Block, ...]:
    stack: list[list] = []
    for gen, exp in blocks:
        if gen not in GENERATORS:
            raise ValueError(f"unknown generator {gen!r}")
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True, order=True)
class Word:
    blocks: tuple[Block, ...] = ()

    def __init__(self, blocks: Iterable[Block] = ()):
        object.__setattr__(self, "blocks", _reduce(blocks))

    @classmethod
    def gen(cls, g: str, n: int = 1) -> Word:
        return cls(((g, n),))

    @classmethod
    def from_letters(cls, letters: Iterable[Block]) -> Word:
        return cls(letters)

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.blocks)

    def __len__(self) -> int:
        return self.length

    def is_identity(self) -> bool:
        return not self.blocks

    def letters(self) -> list[Block]:
        """Letter-by-letter expansion as ``(gen, +-1)`` pairs."""
        out = []
        for g, e in self.blocks:
            step = 1 if e > 0 else -1
            out.extend([(g, step)] * abs(e))
        return out

    def __mul__(self, other: Word) -> Word:
        return Word(self.blocks + other.blocks)

    def inverse(self) -> Word:
        return Word((g, -e) for g, e in reversed(self.blocks))

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, n: int) -> Word:
        if len(self.blocks) == 1:
            g, e = self.blocks[0]
            return Word(((g, e * n),))
        base = self if n >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    def generators(self) -> set[str]:
        return {g for g, _ in self.blocks}

    def shortlex_key(self) -> tuple:
        order = {("c", 1): 0, ("c", -1): 1, ("l", 1): 2, ("l", -1): 3, ("k", 1): 4, ("k", -1): 5}
        return (self.length, tuple(order[x] for x in self.letters()))

    def __str__(self) -> str:
        if not self.blocks:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.blocks)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


IDENTITY = Word()
C = Word.gen("c")
L_GEN = Word.gen("l")
K = Word.gen("k")


def free_reduce(w: Word | Iterable[Block]) -> Word:
    return Word(w.blocks if isinstance(w, Word) else w)


def invert(w: Word) -> Word:
    return w.inverse()


def concat(u: Word, v: Word) -> Word:
    return u * v


# --- word literal syntax ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<gen>[clk])|(?P<one>1)|(?P<lp>\()|(?P<rp>\)))(?:\^(?P<exp>-?\d+))?")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


def parse_word(text: str) -> Word:
    """Parse ``c l^-3 (l c l)^-1``-style literals. ``1`` is the identity."""
    stack: list[list[Block]] = [[]]
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected {text[pos:].strip()[:1]!r}", pos + 1)
        exp = int(m.group("exp")) if m.group("exp") is not None else 1
        if m.group("gen"):
            stack[-1].append((m.group("gen"), exp))
        elif m.group("one"):
            pass
        elif m.group("lp"):
            if m.group("exp") is not None:
                raise WordSyntaxError("exponent on '('", m.start("lp") + 1)
            stack.append([])
        else:
            if len(stack) == 1:
                raise WordSyntaxError("unbalanced ')'", m.start("rp") + 1)
            inner = Word(stack.pop()) ** exp
            stack[-1].extend(inner.blocks)
        pos = m.end()
    if len(stack) != 1:
        raise WordSyntaxError("unclosed '('", len(text) + 1)
    return Word(stack[0])


# --- the knot group ------------------------------------------------------------


def _check_s(s: int) -> None:
    if s < 3:
        raise ValueError(f"s must be >= 3, got {s}")


def relator(s: int) -> Word:
    """c l c l^-1 c^-1 l^-s c^-1 l^-1 c l c l^(s-1)."""
    _check_s(s)
    return Word([("c", 1), ("l", 1), ("c", 1), ("l", -1), ("c", -1), ("l", -s),
                 ("c", -1), ("l", -1), ("c", 1), ("l", 1), ("c", 1), ("l", s - 1)])


def longitude(s: int) -> Word:
    """c^-(2s-2) l c l^s c l^s c l c^-(2s+9)."""
    _check_s(s)
    return Word([("c", -(2 * s - 2)), ("l", 1), ("c", 1), ("l", s), ("c", 1),
                 ("l", s), ("c", 1), ("l", 1), ("c", -(2 * s + 9))])


def meridian() -> Word:
    return C


def exponent_sums(w: Word) -> tuple[int, int]:
    if "k" in w.generators():
        raise ValueError("exponent_sums is defined on words in c and l only")
    ec = sum(e for g, e in w.blocks if g == "c")
    el = sum(e for g, e in w.blocks if g == "l")
    return ec, el


def homology_class(w: Word, s: int | None = None) -> int:
    """Image in H_1 = Z with [c] -> 1 and [l] -> 2."""
    ec, el = exponent_sums(w)
    return ec + 2 * el


@dataclass(frozen=True)
class SurgeryContext:
    s: int
    p: int
    q: int

    def __post_init__(self):
        _check_s(self.s)
        if self.p < 1 or self.q < 1:
            raise ValueError(f"p and q must be positive, got p={self.p}, q={self.q}")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"p and q must be coprime, got p={self.p}, q={self.q}")

    @property
    def slope_ok(self) -> bool:
        """p/q >= 2s+3, compared in integers."""
        return self.p >= (2 * self.s + 3) * self.q


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        for r in self.relators:
            if r.is_identity():
                raise ValueError("relators must be nonempty")


def knot_presentation(s: int) -> Presentation:
    return Presentation(("c", "l"), (relator(s),))


def surgery_presentation(ctx: SurgeryContext) -> Presentation:
    second = meridian() ** ctx.p * longitude(ctx.s) ** ctx.q
    return Presentation(("c", "l"), (relator(ctx.s), second))


def h1_order(ctx: SurgeryContext) -> int:
    """|det| of the abelianized relation matrix of the surgery presentation."""
    a, b = exponent_sums(relator(ctx.s))
    lc, ll = exponent_sums(longitude(ctx.s))
    c2, d2 = ctx.p + lc * ctx.q, ll * ctx.q
    return abs(a * d2 - b * c2)


def insert_relator(w: Word, rel: Word, position: int, cyclic_shift: int = 0,
                   direction: int = 1) -> Word:
    """Insert a cyclic permutation of ``rel**direction`` into ``w`` and reduce.

    ``position`` counts letters of ``w`` (0..len(w)); ``cyclic_shift``
    rotates the relator letter-wise.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    letters = w.letters()
    if not 0 <= position <= len(letters):
        raise ValueError(f"position {position} outside 0..{len(letters)}")
    r = (rel ** direction).letters()
    if not 0 <= cyclic_shift < len(r):
        raise ValueError(f"cyclic shift {cyclic_shift} outside 0..{len(r) - 1}")
    rotated = r[cyclic_shift:] + r[:cyclic_shift]
    return Word(letters[:position] + rotated + letters[position:])


def rewrite_with_relator(w: Word, s: int, position: int, cyclic_shift: int = 0,
                         direction: int = 1) -> Word:
    """Insert a conjugate of relator(s)^direction; equal to w in the knot group."""
    return insert_relator(w, relator(s), position, cyclic_shift, direction)
