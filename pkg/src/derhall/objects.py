"""Isomorphism classes in D^b(rep Q) and the object literal grammar.

An object is a finite multiset of shifted intervals.  The literal syntax is::

    object   := "0" | term ( "+" term )*
    term     := "I[" INT "," INT "]" ( "@" SINT )? ( "*" INT )?
    SINT     := "-"? INT

Whitespace is allowed between tokens.  ``@s`` defaults to ``@0`` and ``*k``
to ``*1``; repeated terms add their multiplicities.  Example::

    I[1,1]@0*2 + I[2,2]@-1

The printed form lists terms sorted by (a, b, shift), always with ``@s`` and
with ``*k`` only when k > 1; the zero object prints as ``0``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .quiver import IndecId, Quiver


class ParseError(ValueError):
    """Malformed object literal; ``offset`` is a 0-based index into the text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


Summand = tuple[IndecId, int]


@dataclass(frozen=True, order=True)
class DObject:
    """Sorted ``((IndecId, shift, multiplicity), ...)``; empty means zero."""

    summands: tuple[tuple[IndecId, int, int], ...] = ()

    @classmethod
    def from_summands(cls, items: Iterable[Summand]) -> "DObject":
        c = Counter((IndecId(*ind), int(s)) for ind, s in items)
        return cls(tuple(sorted((ind, s, m) for (ind, s), m in c.items() if m > 0)))

    @classmethod
    def single(cls, a: int, b: int, shift: int = 0, mult: int = 1) -> "DObject":
        return cls.from_summands([(IndecId(a, b), shift)] * mult)

    def expanded(self) -> list[Summand]:
        """Summands listed with multiplicity, in canonical order."""
        return [(ind, s) for ind, s, m in self.summands for _ in range(m)]

    @cached_property
    def weight(self) -> int:
        return sum(m for _, _, m in self.summands)

    def is_zero(self) -> bool:
        return not self.summands

    def shift(self, n: int) -> "DObject":
        return DObject(tuple(sorted((ind, s + n, m) for ind, s, m in self.summands)))

    def __add__(self, other: "DObject") -> "DObject":
        return DObject.from_summands(self.expanded() + other.expanded())

    def __sub__(self, other: "DObject") -> "DObject":
        c = Counter(self.expanded())
        c.subtract(other.expanded())
        if any(v < 0 for v in c.values()):
            raise ValueError(f"{other} is not a summand of {self}")
        return DObject.from_summands(c.elements())

    def multiplicities(self) -> dict[Summand, int]:
        return {(ind, s): m for ind, s, m in self.summands}

    def check(self, Q: Quiver) -> "DObject":
        for ind, _, _ in self.summands:
            if not (1 <= ind.a <= ind.b <= Q.n):
                raise ValueError(f"{ind} is not an interval of A_{Q.n}")
        return self

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        for ind, s, m in self.summands:
            t = f"I[{ind.a},{ind.b}]@{s}"
            parts.append(t + (f"*{m}" if m > 1 else ""))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DObject({str(self)!r})"


ZERO = DObject()


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            got = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            raise ParseError(f"expected {ch!r}, got {got}", self.pos)
        self.pos += 1

    def integer(self, signed: bool = False) -> int:
        self.skip()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ParseError("expected an integer", digits)
        return int(self.text[start : self.pos])


def parse_object(text: str, Q: Quiver | None = None) -> DObject:
    """Parse an object literal; raises ParseError with a byte offset."""
    lx = _Lexer(text)
    if lx.peek() == "0":
        lx.pos += 1
        if lx.peek() != "":
            raise ParseError("unexpected text after zero object", lx.pos)
        return ZERO
    items: list[Summand] = []
    while True:
        start = lx.pos
        lx.skip()
        start = lx.pos
        lx.expect("I")
        lx.expect("[")
        a = lx.integer()
        lx.expect(",")
        b = lx.integer()
        lx.expect("]")
        shift = 0
        if lx.peek() == "@":
            lx.pos += 1
            shift = lx.integer(signed=True)
        mult = 1
        if lx.peek() == "*":
            lx.pos += 1
            mult = lx.integer()
        if not (1 <= a <= b):
            raise ParseError(f"invalid interval [{a},{b}]", start)
        if Q is not None and b > Q.n:
            raise ParseError(f"interval [{a},{b}] exceeds {Q.n} vertices", start)
        items.extend([(IndecId(a, b), shift)] * mult)
        nxt = lx.peek()
        if nxt == "":
            break
        if nxt != "+":
            raise ParseError(f"expected '+' or end of input, got {nxt!r}", lx.pos)
        lx.pos += 1
    return DObject.from_summands(items)


def universe(Q: Quiver, window: int, weight_cap: int) -> list[DObject]:
    """All objects with summand shifts in [-window, window] and total
    multiplicity at most ``weight_cap``, in a fixed order (by weight, then
    canonical form)."""
    from itertools import combinations_with_replacement

    atoms = [
        (IndecId(a, b), s)
        for a in range(1, Q.n + 1)
        for b in range(a, Q.n + 1)
        for s in range(-window, window + 1)
    ]
    out = []
    for w in range(weight_cap + 1):
        for combo in combinations_with_replacement(atoms, w):
            out.append(DObject.from_summands(combo))
    return out
