"""The free quandle on a set of generator symbols.

Elements are conjugates a^g = g^{-1} a g of generators inside the free group
on the same symbols, stored as (base, conjugator word).  The quandle operation
is a^g * b^h = a^{g h^{-1} b h}; its inverse replaces b by b^{-1}.

Canonical form: the conjugator is freely reduced and does not begin with a
power of the base, since a^{a^k g} = a^g.  With that normalization, equality
of canonical forms is equality in the free quandle.
"""

from __future__ import annotations

#: a group word is a tuple of (symbol, exponent) letters with exponent +1/-1
Letter = tuple[str, int]
Word = tuple[Letter, ...]


def reduce_word(letters) -> Word:
    """Freely reduce a sequence of letters."""
    out: list[Letter] = []
    for sym, exp in letters:
        if exp not in (1, -1):
            raise ValueError("letter exponents must be +1 or -1")
        if out and out[-1][0] == sym and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((sym, exp))
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple((sym, -exp) for sym, exp in reversed(word))


class FreeQuandleElement:
    """A canonical conjugate base^conjugator in the free quandle."""

    __slots__ = ("base", "conjugator")

    def __init__(self, base: str, conjugator=()) -> None:
        word = reduce_word(conjugator)
        while word and word[0][0] == base:
            word = word[1:]
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "conjugator", word)

    def __setattr__(self, name, value):
        raise AttributeError("FreeQuandleElement is immutable")

    def op(self, other: "FreeQuandleElement") -> "FreeQuandleElement":
        """self * other = base^{g h^{-1} b h}."""
        g, b, h = self.conjugator, other.base, other.conjugator
        return FreeQuandleElement(
            self.base, g + invert_word(h) + ((b, 1),) + h
        )

    def inv_op(self, other: "FreeQuandleElement") -> "FreeQuandleElement":
        """self *^{-1} other = base^{g h^{-1} b^{-1} h}."""
        g, b, h = self.conjugator, other.base, other.conjugator
        return FreeQuandleElement(
            self.base, g + invert_word(h) + ((b, -1),) + h
        )

    def extend(self, letters) -> "FreeQuandleElement":
        """Right-multiply the conjugator by extra letters (a consequence move)."""
        return FreeQuandleElement(self.base, self.conjugator + tuple(letters))

    @property
    def length(self) -> int:
        return len(self.conjugator)

    def negative_letters(self) -> int:
        return sum(1 for _, exp in self.conjugator if exp < 0)

    def sort_key(self):
        return (
            len(self.conjugator),
            self.base,
            tuple((sym, 0 if exp > 0 else 1) for sym, exp in self.conjugator),
        )

    def __eq__(self, other):
        if not isinstance(other, FreeQuandleElement):
            return NotImplemented
        return self.base == other.base and self.conjugator == other.conjugator

    def __hash__(self):
        return hash((self.base, self.conjugator))

    def __str__(self):
        if not self.conjugator:
            return self.base
        word = "".join(
            sym if exp > 0 else f"{sym}^-1" for sym, exp in self.conjugator
        )
        return f"{self.base}^({word})"

    def __repr__(self):
        return f"FreeQuandleElement({self.base!r}, {self.conjugator!r})"


def generator(name: str) -> FreeQuandleElement:
    return FreeQuandleElement(name)


def fq_multiply(x: FreeQuandleElement, y: FreeQuandleElement) -> FreeQuandleElement:
    return x.op(y)


def fq_multiply_inv(x: FreeQuandleElement, y: FreeQuandleElement) -> FreeQuandleElement:
    return x.inv_op(y)
