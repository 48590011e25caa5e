"""Eventually rigid automorphisms of the free group on the loops ``a^i_j``.

An element is stored as

* a ray permutation ``perm`` (``perm[i-1]`` is the image ray of ray ``i``),
* per-ray offsets ``t_i`` with ``sum(t) == 0``,
* a finite exception table for the automorphism and one for its inverse.

Outside its table a generator follows the rigid rule
``a^i_p -> a^{perm(i)}_{p + t_i}``.  Tables never contain entries that agree
with the rigid rule, so two elements are equal iff their data are equal.

Composition is functional: ``compose(f, g)`` applies ``g`` first.
"""

from __future__ import annotations

import contextlib
from typing import Iterable

from .words import EMPTY, GeneratorIndex, Letter, Word, invert_word, word_concat

DEFAULT_POSITION_CEILING = 10**6
_ceiling = DEFAULT_POSITION_CEILING


class PositionCeilingError(RuntimeError):
    pass


class NotPureError(ValueError):
    pass


class RankMismatchError(ValueError):
    pass


def get_position_ceiling() -> int:
    return _ceiling


def set_position_ceiling(n: int) -> None:
    global _ceiling
    if n < 1:
        raise ValueError("position ceiling must be positive")
    _ceiling = n


@contextlib.contextmanager
def position_ceiling(n: int):
    old = _ceiling
    set_position_ceiling(n)
    try:
        yield
    finally:
        set_position_ceiling(old)


class _Map:
    """One direction of an element: rigid rule plus exception table."""

    __slots__ = ("perm", "offsets", "table")

    def __init__(self, perm: tuple[int, ...], offsets: tuple[int, ...], table: dict):
        self.perm = perm
        self.offsets = offsets
        self.table = table

    def rule(self, x: GeneratorIndex) -> GeneratorIndex | None:
        p = x.position + self.offsets[x.ray - 1]
        if p < 1:
            return None
        return GeneratorIndex(self.perm[x.ray - 1], p)

    def preimage_by_rule(self, y: GeneratorIndex) -> GeneratorIndex | None:
        ray = self.perm.index(y.ray) + 1
        p = y.position - self.offsets[ray - 1]
        return GeneratorIndex(ray, p) if p >= 1 else None

    def image(self, x: GeneratorIndex) -> Word:
        w = self.table.get(x)
        if w is not None:
            return w
        y = self.rule(x)
        if y is None:
            raise ValueError(f"{x} has no rigid image (position + offset < 1)")
        return Word.letter(y)

    def apply(self, w: Word) -> Word:
        out = EMPTY
        for x in w.letters:
            img = self.image(x.index)
            out = word_concat(out, img if x.sign > 0 else invert_word(img))
        return out


def _compose_maps(f: _Map, g: _Map) -> _Map:
    """Map of ``f o g`` (g first)."""
    perm = tuple(f.perm[g.perm[i] - 1] for i in range(len(g.perm)))
    offsets = tuple(g.offsets[i] + f.offsets[g.perm[i] - 1] for i in range(len(g.perm)))
    domain = set(g.table)
    for y in f.table:
        x = g.preimage_by_rule(y)
        if x is not None and x not in g.table:
            domain.add(x)
    out = _Map(perm, offsets, {})
    ceiling = _ceiling
    table = {}
    for x in domain:
        img = f.apply(g.image(x))
        for letter in img.letters:
            if letter.index.position > ceiling:
                raise PositionCeilingError(
                    f"image of {x} reaches {letter.index}, above ceiling {ceiling}")
        if img.is_basis_letter() and img.letters[0].index == out.rule(x):
            continue
        table[x] = img
    out.table = table
    return out


class EventuallyRigidAut:
    __slots__ = ("r", "fwd", "bwd", "_hash")

    def __init__(self, r: int, fwd: _Map, bwd: _Map):
        self.r = r
        self.fwd = fwd
        self.bwd = bwd
        self._hash = None

    @classmethod
    def from_tables(cls, r: int, perm: Iterable[int], offsets: Iterable[int],
                    fwd: dict, inv: dict) -> EventuallyRigidAut:
        """Build an element from raw data, dropping table entries that match the rule."""
        perm = tuple(perm)
        offsets = tuple(offsets)
        if sorted(perm) != list(range(1, r + 1)) or len(offsets) != r:
            raise ValueError("perm must be a permutation of 1..r and offsets of length r")
        if sum(offsets) != 0:
            raise ValueError(f"offsets {offsets} do not sum to zero")
        inv_perm = [0] * r
        for i, p in enumerate(perm):
            inv_perm[p - 1] = i + 1
        inv_offsets = [0] * r
        for i in range(r):
            inv_offsets[perm[i] - 1] = -offsets[i]
        f = _Map(perm, offsets, {})
        b = _Map(tuple(inv_perm), tuple(inv_offsets), {})
        for m, table in ((f, fwd), (b, inv)):
            for x, img in table.items():
                x.check(r)
                if not (img.is_basis_letter() and img.letters[0].index == m.rule(x)):
                    m.table[x] = img
        return cls(r, f, b)

    @property
    def perm(self) -> tuple[int, ...]:
        return self.fwd.perm

    @property
    def offsets(self) -> tuple[int, ...]:
        return self.fwd.offsets

    @property
    def table(self) -> dict:
        return self.fwd.table

    @property
    def inverse_table(self) -> dict:
        return self.bwd.table

    def image(self, x: GeneratorIndex) -> Word:
        return self.fwd.image(x)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __mul__(self, other: EventuallyRigidAut) -> EventuallyRigidAut:
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, EventuallyRigidAut) and self.r == other.r
                and self.fwd.perm == other.fwd.perm
                and self.fwd.offsets == other.fwd.offsets
                and self.fwd.table == other.fwd.table)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.r, self.fwd.perm, self.fwd.offsets,
                               frozenset(self.fwd.table.items())))
        return self._hash

    def is_identity(self) -> bool:
        return (not self.fwd.table and not any(self.fwd.offsets)
                and self.fwd.perm == tuple(range(1, self.r + 1)))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "perm": list(self.perm),
            "offsets": list(self.offsets),
            "table": [{"gen": str(x), "image": str(self.table[x])}
                      for x in sorted(self.table)],
        }

    def __repr__(self) -> str:
        tab = ", ".join(f"{x}->{self.table[x]}" for x in sorted(self.table))
        return f"<EventuallyRigidAut r={self.r} perm={self.perm} offsets={self.offsets} {{{tab}}}>"

    def check_invariants(self) -> None:
        """Raise AssertionError if any structural invariant fails."""
        assert sum(self.offsets) == 0
        for m in (self.fwd, self.bwd):
            for x, img in m.table.items():
                assert not (img.is_basis_letter() and img.letters[0].index == m.rule(x)), x
        probes = set(self.fwd.table) | set(self.bwd.table)
        edge = max((x.position for x in probes), default=0)
        for i in range(1, self.r + 1):
            probes.add(GeneratorIndex(i, edge + abs(self.offsets[i - 1]) + 1))
        for x in probes:
            w = Word.letter(x)
            assert self.bwd.apply(self.fwd.apply(w)) == w, x
            assert self.fwd.apply(self.bwd.apply(w)) == w, x


def _involution(r: int, table: dict) -> EventuallyRigidAut:
    ident = tuple(range(1, r + 1))
    return EventuallyRigidAut.from_tables(r, ident, (0,) * r, table, table)


def _check_r(r: int) -> None:
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")


def identity(r: int) -> EventuallyRigidAut:
    _check_r(r)
    return _involution(r, {})


def _letter(ray: int, pos: int, sign: int = 1) -> Word:
    return Word.letter(GeneratorIndex(ray, pos), sign)


def shift(i: int, r: int) -> EventuallyRigidAut:
    """Loop shift h_i moving loops out of ray 1 into ray i."""
    _check_r(r)
    if not 2 <= i <= r:
        raise ValueError(f"shift index {i} outside 2..{r}")
    offsets = [0] * r
    offsets[0] = -1
    offsets[i - 1] = 1
    return EventuallyRigidAut.from_tables(
        r, range(1, r + 1), offsets,
        {GeneratorIndex(1, 1): _letter(i, 1)},
        {GeneratorIndex(i, 1): _letter(1, 1)})


def swap(i: int, j: int, k: int, l: int, r: int) -> EventuallyRigidAut:
    """Loop swap exchanging a^i_j and a^k_l."""
    _check_r(r)
    x, y = GeneratorIndex(i, j), GeneratorIndex(k, l)
    x.check(r)
    y.check(r)
    if x == y:
        raise ValueError(f"swap of {x} with itself")
    return _involution(r, {x: Word.letter(y), y: Word.letter(x)})


def transposition(i: int, j: int, r: int) -> EventuallyRigidAut:
    """Adjacent transposition s^i_j; s^i_0 swaps a^1_1 with a^i_1."""
    if j == 0:
        if not 2 <= i <= r:
            raise ValueError(f"s^{i}_0 needs 2 <= i <= {r}")
        return swap(1, 1, i, 1, r)
    if j < 0:
        raise ValueError(f"s^{i}_{j}: position must be >= 0")
    return swap(i, j, i, j + 1, r)


def flip(i: int, j: int, r: int) -> EventuallyRigidAut:
    """Orientation flip of a^i_j."""
    _check_r(r)
    x = GeneratorIndex(i, j)
    x.check(r)
    return _involution(r, {x: Word.letter(x, -1)})


def sigma(r: int) -> EventuallyRigidAut:
    return transposition(1, 1, r)


def tau(r: int) -> EventuallyRigidAut:
    return flip(1, 1, r)


def eta(r: int) -> EventuallyRigidAut:
    """a^1_1 -> (a^1_2)^-1 a^1_1 and a^1_2 -> (a^1_2)^-1; an involution."""
    _check_r(r)
    a11, a12 = GeneratorIndex(1, 1), GeneratorIndex(1, 2)
    table = {
        a11: Word([Letter(a12, -1), Letter(a11, 1)]),
        a12: Word.letter(a12, -1),
    }
    return _involution(r, table)


def rho(i: int, j: int, r: int) -> EventuallyRigidAut:
    """Exchange of rays i and j (loops carried position by position)."""
    _check_r(r)
    if i == j or not (1 <= i <= r and 1 <= j <= r):
        raise ValueError(f"rho({i},{j}) needs distinct rays in 1..{r}")
    perm = list(range(1, r + 1))
    perm[i - 1], perm[j - 1] = j, i
    return EventuallyRigidAut.from_tables(r, perm, (0,) * r, {}, {})


_KINDS = {
    "h": shift,
    "sigma": sigma,
    "tau": tau,
    "eta": eta,
    "s": transposition,
    "tau_at": flip,
    "swap": swap,
    "rho": rho,
}


def make_generator(kind: str, r: int, *params: int) -> EventuallyRigidAut:
    """Named generator: ``make_generator("h", 3, 2)`` is h_2 in B_3."""
    try:
        build = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown generator kind {kind!r}") from None
    return build(*params, r)


def apply(f: EventuallyRigidAut, w: Word) -> Word:
    for x in w.letters:
        if not 1 <= x.index.ray <= f.r:
            raise ValueError(f"letter {x} outside rays 1..{f.r}")
    return f.fwd.apply(w)


def compose(f: EventuallyRigidAut, g: EventuallyRigidAut) -> EventuallyRigidAut:
    """``f o g``: apply g, then f."""
    if f.r != g.r:
        raise RankMismatchError(f"cannot compose elements with r={f.r} and r={g.r}")
    if g.is_identity():
        return f
    if f.is_identity():
        return g
    return EventuallyRigidAut(f.r, _compose_maps(f.fwd, g.fwd), _compose_maps(g.bwd, f.bwd))


def invert(f: EventuallyRigidAut) -> EventuallyRigidAut:
    return EventuallyRigidAut(f.r, f.bwd, f.fwd)


def equal(f: EventuallyRigidAut, g: EventuallyRigidAut) -> bool:
    if f.r != g.r:
        raise RankMismatchError(f"cannot compare elements with r={f.r} and r={g.r}")
    return f == g


def conjugate(a: EventuallyRigidAut, b: EventuallyRigidAut) -> EventuallyRigidAut:
    """``a^b = b a b^-1``."""
    return compose(compose(b, a), invert(b))


def commutator(a: EventuallyRigidAut, b: EventuallyRigidAut) -> EventuallyRigidAut:
    """``[a, b] = a^-1 b^-1 a b``."""
    return compose(compose(invert(a), invert(b)), compose(a, b))


def is_pure(f: EventuallyRigidAut) -> bool:
    return f.perm == tuple(range(1, f.r + 1))


def flux_offsets(f: EventuallyRigidAut) -> tuple[int, ...]:
    """Flux coordinates (t_2, ..., t_r) of a pure element."""
    if not is_pure(f):
        raise NotPureError(f"element permutes the rays: {f.perm}")
    return f.offsets[1:]


def support(f: EventuallyRigidAut) -> set[GeneratorIndex]:
    """Generators moved by a compactly supported element."""
    if not is_pure(f) or any(f.offsets):
        raise NotPureError("support is only defined for pure, flux-zero elements")
    return set(f.table)


def is_compactly_supported(f: EventuallyRigidAut) -> bool:
    return is_pure(f) and not any(f.offsets)


def is_permutational(f: EventuallyRigidAut) -> bool:
    return all(img.is_basis_letter() for img in f.table.values())
