"""Rewriting a flux-zero word into compactly supported factors.

Shift letters are pushed to the right with ``h_k b == b^{h_k} h_k`` (a free
equivalence), leaving ``w == f H`` with ``H`` a word in the shifts only.  ``H`` is
then bubble-sorted into ``h_2^{n_2} ... h_r^{n_r}``; every crossing of two
shifts with different indices costs one application of ``sigma = [h_i, h_j]``
and spawns a conjugate of sigma::

    h_j' h_i' = sigma       h_i' h_j'
    h_j' h_i  = sigma^{h_i} h_i  h_j'
    h_j  h_i' = sigma^{h_j} h_i' h_j
    h_j  h_i  = sigma^{h_j h_i} h_i h_j        (i < j)

The area counter is the number of crossings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import autom
from .autom import EventuallyRigidAut
from .groupword import (ETA, SIGMA, TAU, GLetter, Gen, GroupWord, H, evaluate,
                        letter_word, syntactic_flux)


class NonzeroFluxError(ValueError):
    def __init__(self, flux: tuple[int, ...]):
        super().__init__(f"word has nonzero flux {flux}")
        self.flux = flux


@dataclass(frozen=True)
class Factor:
    base: GLetter
    conjugator: GroupWord

    def word(self) -> GroupWord:
        return letter_word(self.base.gen, self.conjugator.r, self.base.sign).conjugate(self.conjugator)

    def __str__(self) -> str:
        if not self.conjugator.letters:
            return str(self.base)
        return f"{self.base}^({self.conjugator})"


@dataclass
class CompactFactorization:
    r: int
    factors: list[Factor] = field(default_factory=list)
    residual: tuple[int, ...] = ()

    def word(self) -> GroupWord:
        out = GroupWord((), self.r)
        for f in self.factors:
            out = out * f.word()
        return out

    def evaluate(self) -> EventuallyRigidAut:
        acc = autom.identity(self.r)
        for f in self.factors:
            acc = autom.compose(acc, evaluate(f.word()))
        return acc


@dataclass
class RewriteStats:
    input_length: int
    expanded_length: int
    area: int
    sigma_factors: int


def _reduce_into(stack: list[GLetter], x: GLetter) -> None:
    if stack and stack[-1].gen == x.gen and stack[-1].sign == -x.sign:
        stack.pop()
    else:
        stack.append(x)


def _crossing_conjugator(left: GLetter, right: GLetter) -> list[GLetter]:
    # left = h_j^{±}, right = h_i^{±}, i < j
    if left.sign < 0 and right.sign < 0:
        return []
    if left.sign < 0:
        return [right]
    if right.sign < 0:
        return [left]
    return [left, right]


def rewrite_to_compact(w: GroupWord, allow_flux: bool = False
                       ) -> tuple[CompactFactorization, RewriteStats]:
    """Factor ``w`` as a product of conjugates of compact generators.

    With ``allow_flux`` the sorted shift tail is reported as ``residual``
    instead of raising :class:`NonzeroFluxError`.
    """
    r = w.r
    flux = syntactic_flux(w)
    if any(flux) and not allow_flux:
        raise NonzeroFluxError(flux)

    factors: list[Factor] = []
    shifts: list[GLetter] = []
    for x in w.letters:
        if x.gen.is_shift:
            _reduce_into(shifts, x)
        else:
            factors.append(Factor(x, GroupWord(shifts, r)))

    area = 0
    sigma = GLetter(SIGMA)
    k = 0
    while k + 1 < len(shifts):
        left, right = shifts[k], shifts[k + 1]
        if left.gen.a <= right.gen.a:
            k += 1
            continue
        conj = shifts[:k] + _crossing_conjugator(left, right)
        factors.append(Factor(sigma, GroupWord(conj, r).free_reduce()))
        area += 1
        rest = shifts[k + 2:]
        shifts = shifts[:k]
        for y in (right, left, *rest):
            _reduce_into(shifts, y)
        k = max(k - 1, 0)

    residual = [0] * (r - 1)
    for x in shifts:
        residual[x.gen.a - 2] += x.sign
    fac = CompactFactorization(r, factors, tuple(residual))
    stats = RewriteStats(
        input_length=len(w),
        expanded_length=len(fac.word().free_reduce()),
        area=area,
        sigma_factors=area,
    )
    return fac, stats


def decide(w: GroupWord) -> tuple[bool, str]:
    """Word problem: ``(is_trivial, stage)`` with stage ``flux``, ``compact-check`` or ``direct``."""
    if any(x.gen.kind == "rho" for x in w.letters):
        raise ValueError("word problem is only implemented for the pure subgroup (no rho letters)")
    if any(syntactic_flux(w)):
        return False, "flux"
    try:
        fac, _ = rewrite_to_compact(w)
        acc = autom.identity(w.r)
        for f in fac.factors:
            g = evaluate(f.word())
            if not autom.is_compactly_supported(g):
                raise AssertionError(f"factor {f} is not compactly supported")
            acc = autom.compose(acc, g)
        return not acc.table, "compact-check"
    except autom.PositionCeilingError:
        return evaluate(w).is_identity(), "direct"


def is_trivial(w: GroupWord) -> bool:
    return decide(w)[0]


def random_flux_zero_word(rng: random.Random, length: int, r: int = 3) -> GroupWord:
    """Uniform-ish random word of exactly ``length`` letters with zero flux."""
    compact = [ETA, TAU, SIGMA]
    k = rng.randrange(0, length // 2 + 1) * 2
    shifts = []
    for _ in range(k // 2):
        g = H(rng.randint(2, r))
        s = rng.choice((1, -1))
        shifts += [GLetter(g, s), GLetter(g, -s)]
    rng.shuffle(shifts)
    slots = sorted(rng.sample(range(length), k))
    letters = []
    it = iter(shifts)
    taken = set(slots)
    for p in range(length):
        if p in taken:
            letters.append(next(it))
        else:
            letters.append(GLetter(rng.choice(compact), rng.choice((1, -1))))
    return GroupWord(letters, r)


@dataclass
class GrowthRow:
    x: int
    samples: int
    max_length: int
    mean_length: float
    max_area: int
    max_area_ratio: float
    max_length_ratio: float


def measure_growth(samples: int, max_len: int, seed: int = 0, r: int = 3,
                   tripwire: float = 64.0) -> list[GrowthRow]:
    """Rewrite random flux-zero words of each length ``0..max_len`` and tabulate.

    Raises AssertionError if any sample breaks the area bound ``x**2`` or the
    ``tripwire * x**6`` length ceiling.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    rng = random.Random(seed)
    rows = []
    for x in range(max_len + 1):
        lengths, areas = [], []
        for _ in range(samples if x else 1):
            w = random_flux_zero_word(rng, x, r)
            _, st = rewrite_to_compact(w)
            assert st.area <= x * x, (str(w), st)
            assert st.expanded_length <= tripwire * x ** 6 or x == 0, (str(w), st)
            lengths.append(st.expanded_length)
            areas.append(st.area)
        rows.append(GrowthRow(
            x=x,
            samples=len(lengths),
            max_length=max(lengths),
            mean_length=sum(lengths) / len(lengths),
            max_area=max(areas),
            max_area_ratio=max(areas) / (x * x) if x else 0.0,
            max_length_ratio=max(lengths) / x ** 6 if x else 0.0,
        ))
    return rows
