"""Relator catalogs and their verification in the concrete group.

Every relation ``A = B`` is stored as the relator ``A B'``.  A relator holds
when its word evaluates to the identity automorphism.

Family ids: ``P.r1``..``P.r18`` (the finite presentation), ``AFV.1a``..``AFV.2h``
(the presentation of Aut(F_rn) on ``tau``, ``eta`` and the transpositions),
``QPRIME.*`` (conjugation of those generators by shifts), ``AUX.*`` (auxiliary
consequences) and ``R.*`` (the intermediate families obtained by substituting
shift conjugates of sigma into the previous two).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from . import autom
from .groupword import GroupWord, evaluate, parse_group_word
from .words import GeneratorIndex, Word

FAMILIES = ("P", "AFV", "QPRIME", "AUX", "R")


@dataclass(frozen=True)
class RelatorTemplate:
    family: str
    params: tuple[str, ...]
    pattern: str | Callable[..., str]

    def instantiate(self, r: int, **params: int) -> RelatorInstance:
        if set(params) != set(self.params):
            raise ValueError(f"{self.family} takes parameters {self.params}, got {tuple(params)}")
        text = self.pattern(**params) if callable(self.pattern) else self.pattern.format(**params)
        return RelatorInstance(self.family, tuple(sorted(params.items())), text,
                               parse_group_word(text, r))


@dataclass(frozen=True)
class RelatorInstance:
    family: str
    params: tuple[tuple[str, int], ...]
    text: str
    word: GroupWord

    @property
    def key(self) -> tuple:
        return (self.family, self.params)

    def params_dict(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class VerificationResult:
    instance: RelatorInstance
    holds: bool
    witness: GeneratorIndex | None = None
    image: Word | None = None

    def to_json(self) -> dict:
        return {
            "family": self.instance.family,
            "params": self.instance.params_dict(),
            "word": self.instance.text,
            "holds": self.holds,
            "witness": None if self.witness is None
            else {"gen": str(self.witness), "image": str(self.image)},
        }


@dataclass
class Report:
    results: list[VerificationResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(x.holds for x in self.results)

    def failures(self) -> list[VerificationResult]:
        return [x for x in self.results if not x.holds]

    def to_json(self) -> list[dict]:
        return [x.to_json() for x in self.results]


# text helpers: ``hb(i, n)`` is the n-th power of the inverse shift
def hb(i: int, n: int = 1) -> str:
    return f"(h{i}')^{n}"


def hp(i: int, n: int = 1) -> str:
    return f"(h{i}^{n})"


def _rel(lhs: str, rhs: str) -> str:
    return f"({lhs}) ({rhs})'"


def _shifts(r: int) -> range:
    return range(2, r + 1)


def _pairs(r: int) -> list[tuple[int, int]]:
    return list(combinations(_shifts(r), 2))


def _ordered_pairs(r: int) -> list[tuple[int, int]]:
    return [(i, j) for i in _shifts(r) for j in _shifts(r) if i != j]


# -- the finite presentation --------------------------------------------------

P_TEMPLATES = {
    "P.r1": RelatorTemplate("P.r1", (), "s^2"),
    "P.r2": RelatorTemplate("P.r2", ("i",), "[s, s^(h{i}')^2]"),
    "P.r3": RelatorTemplate("P.r3", ("i",), "(s s^(h{i}'))^3"),
    "P.r4": RelatorTemplate("P.r4", ("i", "j"), "s [h{i},h{j}]'"),
    "P.r5": RelatorTemplate("P.r5", ("i", "j"), "s^(h{i}') (s^(h{j}'))'"),
    "P.r6": RelatorTemplate("P.r6", (), "t^2"),
    "P.r7": RelatorTemplate("P.r7", (), "[t,s]^2"),
    "P.r8": RelatorTemplate("P.r8", ("i",), "[t, s^(h{i}')]"),
    "P.r9": RelatorTemplate("P.r9", ("i",), "t^(h{i}') (t^s)'"),
    "P.r10": RelatorTemplate("P.r10", (), "e^2"),
    "P.r11": RelatorTemplate("P.r11", (), "(s e)^3"),
    "P.r12": RelatorTemplate("P.r12", ("i",), "[e, s^h{i}]^2"),
    "P.r13": RelatorTemplate("P.r13", ("i",), "[e, s^(h{i}^2)]"),
    "P.r14": RelatorTemplate("P.r14", ("i",), "e^h{i} (e^(s s^h{i}))'"),
    "P.r15": RelatorTemplate("P.r15", ("i",), "[e, e^((h{i}')^2)]"),
    "P.r16": RelatorTemplate("P.r16", ("i",), "[e, t^h{i}]"),
    "P.r17": RelatorTemplate("P.r17", (), "((e t)^2 t^s)^2"),
    "P.r18": RelatorTemplate(
        "P.r18", ("i",),
        "s e s^(s^(h{i}')) t^s e s (s^(h{i}') e s^(s^(h{i}')) t^s e)^2"),
}


def _instances(templates: dict, r: int, family: str, grid: Iterable[dict]) -> list[RelatorInstance]:
    t = templates[family]
    return [t.instantiate(r, **p) for p in grid]


def catalog_P(r: int) -> list[RelatorInstance]:
    """Relators r1..r18; one-index families run over all shifts, two-index over i < j."""
    if r < 3:
        raise ValueError(f"the finite presentation is stated for r >= 3, got r={r}")
    out = []
    for fam, t in P_TEMPLATES.items():
        if not t.params:
            grid = [{}]
        elif t.params == ("i",):
            grid = [{"i": i} for i in _shifts(r)]
        else:
            grid = [{"i": i, "j": j} for i, j in _pairs(r)]
        out += _instances(P_TEMPLATES, r, fam, grid)
    return out


# -- Aut(F_rn) ----------------------------------------------------------------

def index_set(r: int, n: int) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` with ``1 <= i <= r``, ``0 <= j < n``, except ``(1, 0)``."""
    return [(i, j) for i in range(1, r + 1) for j in range(n) if (i, j) != (1, 0)]


def _s(i: int, j: int) -> str:
    return "s" if (i, j) == (1, 1) else f"s{i}_{j}"


def _tau_special(i: int, j: int) -> bool:
    return (i, j) == (1, 1) or (i >= 2 and j == 0)


def catalog_AFV(r: int, n: int) -> list[RelatorInstance]:
    """Relations (1a)..(1f), (2a)..(2h) over the index set for ``n`` loops per ray."""
    if n < 4:
        raise ValueError(f"the Aut(F_rn) presentation needs n >= 4, got n={n}")
    idx = index_set(r, n)
    out: list[RelatorInstance] = []

    def add(fam: str, text: str, **params: int) -> None:
        out.append(RelatorInstance(fam, tuple(sorted(params.items())), text,
                                   parse_group_word(text, r)))

    for i, j in idx:
        add("AFV.1a", f"{_s(i, j)}^2", i=i, j=j)
    for (i, j), (k, l) in combinations(idx, 2):
        if abs(j - l) >= 2 or (i != k and j >= 1 and l >= 1):
            add("AFV.1b", f"[{_s(i, j)}, {_s(k, l)}]", i=i, j=j, k=k, l=l)
    for i, j in idx:
        if (i, j + 1) in idx:
            add("AFV.1c", f"({_s(i, j)} {_s(i, j + 1)})^3", i=i, j=j, l=j + 1)
    for i in _shifts(r):
        add("AFV.1c", f"(s{i}_0 s)^3", i=i, j=0, k=1, l=1)
    for i, k in _pairs(r):
        add("AFV.1c", f"(s{i}_0 s{k}_0)^3", i=i, j=0, k=k, l=0)
    add("AFV.1d", "t^2")
    for i, j in idx:
        if _tau_special(i, j):
            add("AFV.1e", f"[t, {_s(i, j)}]^2", i=i, j=j)
        else:
            add("AFV.1f", f"[t, {_s(i, j)}]", i=i, j=j)

    add("AFV.2a", "e^2")
    add("AFV.2b", "(e s)^3")
    for j in range(2, n):
        chain = " ".join(_s(1, q) for q in range(j, 0, -1))
        add("AFV.2c", f"[e, t^({chain})]", i=1, j=j)
    for i in _shifts(r):
        for j in range(n):
            chain = " ".join(_s(i, q) for q in range(j, -1, -1))
            add("AFV.2c", f"[e, t^({chain})]", i=i, j=j)
    for i, j in idx:
        if j != 0 and (i, j) not in ((1, 1), (1, 2)):
            add("AFV.2d", f"[e, {_s(i, j)}]", i=i, j=j)
    for i in _shifts(r):
        add("AFV.2d", f"[e, s1_2^(s{i}_0 s)]", i=i, j=0)
    add("AFV.2e", "((e t)^2 t^s)^2")
    add("AFV.2f", "(e s^s1_2 t^s e s)^4")
    add("AFV.2g", "s e s^s1_2 t^s e s (s1_2 e s^s1_2 t^s e)^2")
    add("AFV.2h", "(s^(s1_2^s1_3) s1_2 e)^4")
    return sorted(out, key=lambda x: (_family_order(x.family), x.params))


# -- conjugation by shifts ----------------------------------------------------

def catalog_Qprime(r: int, n_max: int) -> list[RelatorInstance]:
    """Conjugates of eta, tau and the transpositions by shift powers."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    out = []

    def add(fam: str, lhs: str, rhs: str, **params: int) -> None:
        text = _rel(lhs, rhs)
        out.append(RelatorInstance(fam, tuple(sorted(params.items())), text,
                                   parse_group_word(text, r)))

    for i in _shifts(r):
        add("QPRIME.eta-neg", f"e^(h{i}')", "e^(s s1_2)", i=i)
        add("QPRIME.eta-pos", f"e^h{i}", f"e^(s s{i}_0)", i=i)
        add("QPRIME.tau-neg", f"t^(h{i}')", "t^s", i=i)
        add("QPRIME.tau-pos", f"t^h{i}", f"t^s{i}_0", i=i)
        for n in range(0, n_max + 1):
            add("QPRIME.sigma-neg", f"s^{hb(i, n)}", _s(1, n + 1), i=i, n=n)
        for n in range(1, n_max + 1):
            add("QPRIME.sigma-pos", f"s^{hp(i, n)}", f"s{i}_{n - 1}", i=i, n=n)
    return out


# -- auxiliary consequences ---------------------------------------------------

def _sigma_chain_neg(i: int, k: int) -> str:
    """``sigma^{hb^(k-1)} ... sigma^{hb} sigma``."""
    return " ".join(f"s^{hb(i, q)}" for q in range(k - 1, -1, -1))


def _sigma_chain_pos(i: int, k: int) -> str:
    """``sigma^{h^k} ... sigma^{h}``."""
    return " ".join(f"s^{hp(i, q)}" for q in range(k, 0, -1))


def r9k_rhs(i: int, k: int) -> str:
    return f"t^({_sigma_chain_neg(i, k)})"


def catalog_aux(r: int, k_max: int) -> list[RelatorInstance]:
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    out = []

    def add(fam: str, text: str, **params: int) -> None:
        out.append(RelatorInstance(fam, tuple(sorted(params.items())), text,
                                   parse_group_word(text, r)))

    for i, j in _ordered_pairs(r):
        add("AUX.q1", f"[t^h{i}, h{j}]", i=i, j=j)
        add("AUX.q3", f"[e^(h{i}^2), h{j}]", i=i, j=j)
        add("AUX.q4", _rel(f"e^(h{i}')", f"e^(h{j}')"), i=i, j=j)
        for k in range(1, k_max + 1):
            add("AUX.r9k-other", _rel(f"t^{hb(i, k)}", f"t^{hb(j, k)}"), i=i, j=j, k=k)
            add("AUX.q1k", f"[t^{hp(i, k)}, h{j}]", i=i, j=j, k=k)
        for k in range(2, k_max + 1):
            add("AUX.q2k", f"[s^{hp(i, k)}, h{j}]", i=i, j=j, k=k)
    for i in _shifts(r):
        for k in range(1, k_max + 1):
            add("AUX.r9k", _rel(f"t^{hb(i, k)}", r9k_rhs(i, k)), i=i, k=k)
            add("AUX.r9k-neg", _rel(f"t^{hp(i, k)}", f"t^({_sigma_chain_pos(i, k)})"), i=i, k=-k)
    return sorted(out, key=lambda x: (_family_order(x.family), x.params))


# -- the intermediate R families -----------------------------------------------

def catalog_R(r: int, n_max: int) -> list[RelatorInstance]:
    """Families R_1a..R_2h, R'_a..R'_c and R'' with infinite ranges cut at ``n_max``."""
    out = []

    def add(fam: str, text: str, **params: int) -> None:
        out.append(RelatorInstance(fam, tuple(sorted(params.items())), text,
                                   parse_group_word(text, r)))

    def sh(i: int, m: int) -> str:
        return f"s^{hp(i, m)}"

    rng = range(-n_max, n_max + 1)
    add("R.1a", "s^2")
    for i in _shifts(r):
        for m in rng:
            for n in rng:
                if m < n and abs(m - n) != 1:
                    add("R.1b", f"[{sh(i, m)}, {sh(i, n)}]", i=i, j=i, m=m, n=n)
    for i, j in _ordered_pairs(r):
        for m in rng:
            for n in rng:
                if m >= 2 or n >= 2:
                    add("R.1b", f"[{sh(i, m)}, {sh(j, n)}]", i=i, j=j, m=m, n=n)
                elif abs(m - n) != 1 and not m == n == 1:
                    add("R.1b", f"[{sh(i, m)}, {sh(j, n)}]", i=i, j=j, m=m, n=n)
    for i in _shifts(r):
        add("R.1c", f"(s s^h{i})^3", i=i)
    for i, j in _pairs(r):
        add("R.1c", f"(s^h{i} s^h{j})^3", i=i, j=j)
    add("R.1d", "t^2")
    add("R.1e", "[t, s]^2")
    for i in _shifts(r):
        add("R.1e", f"[t, s^h{i}]^2", i=i)
        for n in rng:
            if n not in (0, 1):
                add("R.1f", f"[t, {sh(i, n)}]", i=i, n=n)
    add("R.2a", "e^2")
    add("R.2b", "(e s)^3")
    for i in _shifts(r):
        for n in range(1, n_max + 1):
            neg = " ".join(f"s^{hb(i, q)}" for q in range(n, -1, -1))
            add("R.2c", f"[e, t^({neg})]", i=i, n=-n)
            add("R.2c", f"[e, t^({_sigma_chain_pos(i, n)})]", i=i, n=n)
        for n in rng:
            if abs(n) >= 2:
                add("R.2d", f"[e, {sh(i, n)}]", i=i, n=n)
    for i, j in _ordered_pairs(r):
        add("R.2d", f"[e, (s^(h{i}'))^(s^h{j} s)]", i=i, j=j)
    add("R.2e", "((e t)^2 t^s)^2")
    for i in _shifts(r):
        add("R.2f", f"(e s^(s^(h{i}')) t^s e s)^4", i=i)
        add("R.2g", P_TEMPLATES["P.r18"].pattern.format(i=i), i=i)
        add("R.2h", f"(s^((s^(h{i}'))^(s^{hb(i, 2)})) s^(h{i}') e)^4", i=i)
        add("R.a", _rel(f"e^(h{i}')", f"e^(s s^(h{i}'))"), i=i, sign=-1)
        add("R.a", _rel(f"e^h{i}", f"e^(s s^h{i})"), i=i, sign=1)
        add("R.b", _rel(f"t^(h{i}')", "t^s"), i=i, sign=-1)
        add("R.b", _rel(f"t^h{i}", f"t^(s^h{i})"), i=i, sign=1)
    for i, j in _ordered_pairs(r):
        for n in range(0, n_max + 1):
            add("R.c", _rel(f"s^{hb(i, n)}", f"s^{hb(j, n)}"), i=i, j=j, n=n)
        add("R.pp", f"s [h{i},h{j}]", i=i, j=j)
    return sorted(out, key=lambda x: (_family_order(x.family), x.params))


def _family_order(fam: str) -> tuple:
    head, _, tail = fam.partition(".")
    digits = "".join(c for c in tail if c.isdigit())
    return (FAMILIES.index(head) if head in FAMILIES else len(FAMILIES),
            int(digits) if digits and tail[0].isdigit() else 0, tail)


# -- verification --------------------------------------------------------------

def least_moved(f: autom.EventuallyRigidAut) -> tuple[GeneratorIndex, Word] | None:
    """Least ``(ray, position)`` generator moved by ``f`` and its image."""
    candidates = set(f.table)
    for k in range(1, f.r + 1):
        if f.offsets[k - 1] or f.perm[k - 1] != k:
            candidates.add(GeneratorIndex(k, 1))
    for x in sorted(candidates):
        img = f.image(x)
        if img != Word.letter(x):
            return x, img
    return None


def verify(inst: RelatorInstance) -> VerificationResult:
    g = evaluate(inst.word)
    moved = least_moved(g)
    if moved is None:
        return VerificationResult(inst, True)
    return VerificationResult(inst, False, *moved)


def catalog(family: str, r: int, n: int = 4, n_max: int = 6, k_max: int = 5) -> list[RelatorInstance]:
    if family == "P":
        return catalog_P(r)
    if family == "AFV":
        return catalog_AFV(r, n)
    if family == "QPRIME":
        return catalog_Qprime(r, n_max)
    if family == "AUX":
        return catalog_aux(r, k_max)
    if family == "R":
        return catalog_R(r, n_max)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)} or ALL")


def verify_all(families: Iterable[str] | str, r: int, n: int = 4, n_max: int = 6,
               k_max: int = 5) -> Report:
    """Verify every instance of the selected families, in catalog order."""
    if isinstance(families, str):
        families = FAMILIES if families == "ALL" else (families,)
    report = Report()
    for fam in families:
        report.results += [verify(x) for x in catalog(fam, r, n, n_max, k_max)]
    return report


# -- symbolic replays -----------------------------------------------------------

def cancel_involutions(blocks: list[str]) -> list[str]:
    """Cancel adjacent equal blocks, each assumed to be an involution."""
    out: list[str] = []
    for b in blocks:
        if out and out[-1] == b:
            out.pop()
        else:
            out.append(b)
    return out


# blocks of the rewritten (2f): eta, the two commuting involutions, s1_2
_X = "s^s1_2"
_TS = "t^s"


@dataclass
class ReplayStep:
    note: str
    blocks: list[str]

    def word(self, r: int = 3) -> GroupWord:
        return parse_group_word(" ".join(f"({b})" for b in self.blocks), r)


def replay_2f(r: int = 3) -> list[ReplayStep]:
    """Derive (2f) from (2g), the commutation of ``t^s`` with ``s^s1_2`` and involutions.

    Each step lists involution blocks; consecutive steps are equal in the group
    given those facts, and the last step is empty.
    """
    y = ["e", _X, _TS, "e", "s"]
    z = ["s1_2", "e", _TS, _X, "e", "s1_2"]
    steps = [ReplayStep("(2f)", y * 4),
             ReplayStep("(2g) rewritten: (e X T e s)^2 = s1_2 e T X e s1_2", z * 2)]
    blocks = cancel_involutions(z * 2)
    steps.append(ReplayStep("cancel adjacent involutions", blocks))
    k = next(q for q in range(len(blocks) - 1) if blocks[q:q + 2] == [_TS, _X])
    blocks = blocks[:k] + [_X, _TS] + blocks[k + 2:]
    steps.append(ReplayStep("commute T past X", blocks))
    blocks = cancel_involutions(blocks)
    steps.append(ReplayStep("cancel adjacent involutions", blocks))
    return steps


def replay_2f_facts(r: int = 3) -> list[RelatorInstance]:
    """The relations the replay relies on, as checkable relators."""
    facts = [
        ("AFV.2g-rewritten", _rel("(e s^s1_2 t^s e s)^2", "s1_2 e t^s s^s1_2 e s1_2")),
        ("AFV.commute", f"[{_TS}, {_X}]"),
    ]
    facts += [(f"AFV.involution", f"({b})^2") for b in ("e", _X, _TS, "s", "s1_2")]
    return [RelatorInstance(fam, (), text, parse_group_word(text, r)) for fam, text in facts]


def replay_r9k(i: int, k_max: int, r: int = 3) -> list[tuple[GroupWord, GroupWord]]:
    """Pairs ``(rhs_{k+1}, rhs_k conjugated by sigma^{hb^k})``; each pair is letter-equal."""
    out = []
    for k in range(1, k_max):
        lhs = parse_group_word(r9k_rhs(i, k + 1), r)
        rhs = parse_group_word(r9k_rhs(i, k), r).conjugate(parse_group_word(f"s^{hb(i, k)}", r))
        out.append((lhs, rhs))
    return out
