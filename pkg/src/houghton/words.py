"""Free words over the loop basis ``a^i_j`` of the graph with r rays.

A generator ``a^i_j`` is the j-th loop on the i-th ray; both indices are
1-based.  Words are freely reduced as soon as they are built, so two words are
equal exactly when their letter tuples are equal.

Text form (one token per letter, whitespace separated)::

    a<ray>_<pos>      positive letter
    a<ray>_<pos>'     inverse letter
"""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple


class WordSyntaxError(ValueError):
    """Malformed word text; ``position`` is the character offset of the bad token."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class GeneratorIndex(NamedTuple):
    ray: int
    position: int

    def __str__(self) -> str:
        return f"a{self.ray}_{self.position}"

    def check(self, r: int) -> None:
        if not 1 <= self.ray <= r:
            raise ValueError(f"ray {self.ray} of {self} outside 1..{r}")
        if self.position < 1:
            raise ValueError(f"position of {self} must be >= 1")


class Letter(NamedTuple):
    index: GeneratorIndex
    sign: int = 1

    def inverse(self) -> Letter:
        return Letter(self.index, -self.sign)

    def __str__(self) -> str:
        return str(self.index) + ("'" if self.sign < 0 else "")


def gen(ray: int, position: int) -> GeneratorIndex:
    return GeneratorIndex(ray, position)


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for x in letters:
        if x.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {x.sign}")
        if out and out[-1].index == x.index and out[-1].sign == -x.sign:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word:
    """A freely reduced word; the empty word is the identity."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = _reduce(letters)
        self._hash = None

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> Word:
        # caller guarantees the tuple is already reduced
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    @classmethod
    def letter(cls, index: GeneratorIndex, sign: int = 1) -> Word:
        return cls._trusted((Letter(index, sign),))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: Word) -> Word:
        return word_concat(self, other)

    def inverse(self) -> Word:
        return invert_word(self)

    def generators(self) -> set[GeneratorIndex]:
        return {x.index for x in self.letters}

    def is_basis_letter(self) -> bool:
        """True for a single positive letter."""
        return len(self.letters) == 1 and self.letters[0].sign == 1

    def __str__(self) -> str:
        return format_basis_word(self)

    def __repr__(self) -> str:
        return f"Word({format_basis_word(self)!r})"


EMPTY = Word()


def free_reduce(letters: Iterable[Letter]) -> Word:
    return Word(letters)


def word_concat(u: Word, v: Word) -> Word:
    a, b = u.letters, v.letters
    if not a:
        return v
    if not b:
        return u
    # cancellation only happens across the seam
    k = 0
    n = min(len(a), len(b))
    while k < n:
        x, y = a[-1 - k], b[k]
        if x.index != y.index or x.sign != -y.sign:
            break
        k += 1
    return Word._trusted(a[: len(a) - k] + b[k:])


def invert_word(u: Word) -> Word:
    return Word._trusted(tuple(Letter(x.index, -x.sign) for x in reversed(u.letters)))


_TOKEN = re.compile(r"a(\d+)_(\d+)(')?")


def parse_basis_word(text: str, r: int | None = None) -> Word:
    """Parse whitespace-separated ``a<ray>_<pos>['']`` tokens.

    When ``r`` is given, every ray must lie in ``1..r``.
    """
    letters = []
    for m in re.finditer(r"\S+", text):
        tok = _TOKEN.fullmatch(m.group())
        if tok is None:
            raise WordSyntaxError(f"bad basis token {m.group()!r}", m.start())
        ray, pos = int(tok.group(1)), int(tok.group(2))
        if pos < 1:
            raise WordSyntaxError(f"position must be >= 1 in {m.group()!r}", m.start())
        if ray < 1 or (r is not None and ray > r):
            raise WordSyntaxError(f"ray {ray} outside 1..{r} in {m.group()!r}", m.start())
        letters.append(Letter(GeneratorIndex(ray, pos), -1 if tok.group(3) else 1))
    return Word(letters)


def format_basis_word(w: Word) -> str:
    return " ".join(str(x) for x in w.letters)
