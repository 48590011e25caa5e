"""Words in the abstract generators of B_r and their evaluation.

Surface grammar::

    word   := term*
    term   := atom suffix*
    atom   := gen | '[' word ',' word ']' | '(' word ')'
    suffix := "'" | '^' INT | '^' term
    gen    := 'h' INT | 's' | 't' | 'e'
            | 's' INT '_' INT | 't' INT '_' INT | 'rho' INT ['_'] INT

``s``, ``t``, ``e`` are sigma, tau, eta; ``s<i>_<j>`` is the adjacent
transposition s^i_j, ``t<i>_<j>`` the flip of a^i_j.  ``a^b`` means ``b a b'``
and ``[a,b]`` means ``a' b' a b``.  The right-hand side of ``^`` is a full
term, so towers associate to the right: ``t^s^h2`` is ``t^(s^h2)``.
"""

from __future__ import annotations

import functools
from typing import Iterable, NamedTuple

from . import autom
from .autom import EventuallyRigidAut

MAX_EXPANDED_LENGTH = 10**6


class GroupWordSyntaxError(ValueError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class Gen(NamedTuple):
    kind: str  # one of h, s, t, e, sij, tij, rho
    a: int = 0
    b: int = 0

    def __str__(self) -> str:
        if self.kind == "h":
            return f"h{self.a}"
        if self.kind in ("s", "t", "e"):
            return self.kind
        if self.kind == "sij":
            return f"s{self.a}_{self.b}"
        if self.kind == "tij":
            return f"t{self.a}_{self.b}"
        return f"rho{self.a}_{self.b}"

    @property
    def is_shift(self) -> bool:
        return self.kind == "h"

    def check(self, r: int) -> None:
        k, a, b = self
        if k == "h":
            ok = 2 <= a <= r
        elif k == "sij":
            ok = (b == 0 and 2 <= a <= r) or (b >= 1 and 1 <= a <= r)
        elif k == "tij":
            ok = 1 <= a <= r and b >= 1
        elif k == "rho":
            ok = a != b and 1 <= a <= r and 1 <= b <= r
        else:
            ok = True
        if not ok:
            raise ValueError(f"generator {self} out of range for r={r}")


SIGMA = Gen("s")
TAU = Gen("t")
ETA = Gen("e")


def H(i: int) -> Gen:
    return Gen("h", i)


class GLetter(NamedTuple):
    gen: Gen
    sign: int = 1

    def inverse(self) -> GLetter:
        return GLetter(self.gen, -self.sign)

    def __str__(self) -> str:
        return str(self.gen) + ("'" if self.sign < 0 else "")


class GroupWord:
    """Flat signed word over the abstract generators (not necessarily reduced)."""

    __slots__ = ("letters", "r")

    def __init__(self, letters: Iterable[GLetter] = (), r: int = 3):
        self.letters = tuple(letters)
        self.r = r

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupWord) and (self.r, self.letters) == (other.r, other.letters)

    def __hash__(self) -> int:
        return hash((self.r, self.letters))

    def __mul__(self, other: GroupWord) -> GroupWord:
        if self.r != other.r:
            raise autom.RankMismatchError(f"words for r={self.r} and r={other.r}")
        return GroupWord(self.letters + other.letters, self.r)

    def __pow__(self, n: int) -> GroupWord:
        base = self if n >= 0 else self.inverse()
        if abs(n) * len(self) > MAX_EXPANDED_LENGTH:
            raise OverflowError(f"power {n} expands beyond {MAX_EXPANDED_LENGTH} letters")
        return GroupWord(base.letters * abs(n), self.r)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple(x.inverse() for x in reversed(self.letters)), self.r)

    def conjugate(self, by: GroupWord) -> GroupWord:
        """``self^by = by self by'``."""
        return by * self * by.inverse()

    def free_reduce(self) -> GroupWord:
        out: list[GLetter] = []
        for x in self.letters:
            if out and out[-1].gen == x.gen and out[-1].sign == -x.sign:
                out.pop()
            else:
                out.append(x)
        return GroupWord(out, self.r)

    def __str__(self) -> str:
        return format_group_word(self)

    def __repr__(self) -> str:
        return f"GroupWord({format_group_word(self)!r}, r={self.r})"


def letter_word(gen: Gen, r: int, sign: int = 1) -> GroupWord:
    return GroupWord((GLetter(gen, sign),), r)


def commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    return a.inverse() * b.inverse() * a * b


def format_group_word(w: GroupWord) -> str:
    return " ".join(str(x) for x in w.letters)


class _Parser:
    def __init__(self, text: str, r: int):
        self.text = text
        self.pos = 0
        self.r = r

    def error(self, msg: str):
        raise GroupWordSyntaxError(msg, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self, signed: bool = False) -> int:
        start = self.pos
        if signed and self.peek() in "+-":
            self.pos += 1
        while self.peek().isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "+", "-"):
            self.pos = start
            self.error("expected integer")
        return int(digits)

    def word(self) -> GroupWord:
        letters: list[GLetter] = []
        while True:
            self.skip_ws()
            if self.peek() in ("", ")", "]", ","):
                return GroupWord(letters, self.r)
            letters.extend(self.term().letters)
            if len(letters) > MAX_EXPANDED_LENGTH:
                self.error(f"word expands beyond {MAX_EXPANDED_LENGTH} letters")

    def term(self) -> GroupWord:
        w = self.atom()
        while True:
            c = self.peek()
            if c == "'":
                self.pos += 1
                w = w.inverse()
            elif c == "^":
                self.pos += 1
                if self.peek().isdigit() or self.peek() in "+-":
                    n = self.integer(signed=True)
                    try:
                        w = w ** n
                    except OverflowError as exc:
                        self.error(str(exc))
                else:
                    w = w.conjugate(self.term())
            else:
                return w

    def atom(self) -> GroupWord:
        c = self.peek()
        if c == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        if c == "[":
            self.pos += 1
            a = self.word()
            self.expect(",")
            b = self.word()
            self.expect("]")
            return commutator(a, b)
        return letter_word(self.gen(), self.r)

    def gen(self) -> Gen:
        start = self.pos
        t = self.text
        if t.startswith("rho", self.pos):
            self.pos += 3
            first = self.pos
            a = self.integer()
            if self.peek() == "_":
                self.pos += 1
                b = self.integer()
            else:
                digits = t[first:self.pos]
                if len(digits) != 2:
                    self.pos = start
                    self.error("rho needs two ray indices, e.g. rho1_2 or rho12")
                a, b = int(digits[0]), int(digits[1])
            g = Gen("rho", a, b)
        else:
            c = self.peek()
            if c == "h":
                self.pos += 1
                g = Gen("h", self.integer())
            elif c in ("s", "t"):
                self.pos += 1
                if self.peek().isdigit():
                    a = self.integer()
                    if self.peek() != "_":
                        self.error(f"expected '_' in {c}<ray>_<pos>")
                    self.pos += 1
                    g = Gen(c + "ij", a, self.integer())
                else:
                    g = Gen(c)
            elif c == "e":
                self.pos += 1
                g = Gen("e")
            else:
                self.error(f"unexpected character {c!r}" if c else "unexpected end of input")
        try:
            g.check(self.r)
        except ValueError as exc:
            self.pos = start
            self.error(str(exc))
        return g


def parse_group_word(text: str, r: int = 3) -> GroupWord:
    p = _Parser(text, r)
    w = p.word()
    p.skip_ws()
    if p.pos != len(text):
        p.error(f"unexpected {p.peek()!r}")
    return w


@functools.lru_cache(maxsize=None)
def generator_element(gen: Gen, r: int) -> EventuallyRigidAut:
    k, a, b = gen
    if k == "h":
        return autom.shift(a, r)
    if k == "s":
        return autom.sigma(r)
    if k == "t":
        return autom.tau(r)
    if k == "e":
        return autom.eta(r)
    if k == "sij":
        return autom.transposition(a, b, r)
    if k == "tij":
        return autom.flip(a, b, r)
    return autom.rho(a, b, r)


@functools.lru_cache(maxsize=None)
def _letter_element(x: GLetter, r: int) -> EventuallyRigidAut:
    g = generator_element(x.gen, r)
    return g if x.sign > 0 else autom.invert(g)


def letter_element(x: GLetter, r: int) -> EventuallyRigidAut:
    return _letter_element(x, r)


def evaluate(w: GroupWord | str, r: int | None = None) -> EventuallyRigidAut:
    """Element of the concrete group represented by ``w`` (rightmost letter acts first)."""
    if isinstance(w, str):
        w = parse_group_word(w, 3 if r is None else r)
    acc = autom.identity(w.r)
    for x in w.letters:
        acc = autom.compose(acc, _letter_element(x, w.r))
    return acc


def syntactic_flux(w: GroupWord) -> tuple[int, ...]:
    """Signed h_i counts (i = 2..r); equals the flux of ``evaluate(w)``."""
    flux = [0] * (w.r - 1)
    for x in w.letters:
        if x.gen.kind == "rho":
            raise ValueError("syntactic flux is undefined for words containing rho letters")
        if x.gen.kind == "h":
            flux[x.gen.a - 2] += x.sign
    return tuple(flux)
