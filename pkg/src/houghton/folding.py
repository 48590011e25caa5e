"""Stallings foldings over the loop alphabet, subgroup rank and corank.

The flux coordinate of a pure element is also recovered from a corank count on
a finite window of the graph, which cross-checks the offset bookkeeping.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from . import autom
from .autom import EventuallyRigidAut
from .words import GeneratorIndex, Word


@dataclass(frozen=True)
class SubgroupGraph:
    """Folded core graph; vertices are ``0..n-1`` numbered by BFS from the basepoint 0."""

    num_vertices: int
    edges: tuple[tuple[int, GeneratorIndex, int], ...]
    basepoint: int = 0

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def rank(self) -> int:
        return len(self.edges) - self.num_vertices + 1

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "basepoint": self.basepoint,
            "edges": [{"from": u, "to": v, "label": str(x)} for u, x, v in self.edges],
        }


class _Folder:
    """Union-find over vertices with a per-vertex map ``(label, dir) -> neighbour``."""

    def __init__(self):
        self.parent: list[int] = []
        self.adj: list[dict] = []
        self.pending: list[tuple[int, int]] = []

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.adj.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def _attach(self, u: int, key, v: int) -> None:
        w = self.adj[u].get(key)
        if w is None:
            self.adj[u][key] = v
        elif self.find(w) != self.find(v):
            self.pending.append((w, v))

    def add_edge(self, u: int, label: GeneratorIndex, v: int) -> None:
        u, v = self.find(u), self.find(v)
        self._attach(u, (label, 1), v)
        self._attach(v, (label, -1), u)
        self.settle()

    def settle(self) -> None:
        while self.pending:
            a, b = self.pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if len(self.adj[a]) < len(self.adj[b]):
                a, b = b, a
            self.parent[b] = a
            moved, self.adj[b] = self.adj[b], {}
            for key, t in moved.items():
                self._attach(a, key, self.find(t))


def _trim(edges: set, keep: int) -> set:
    """Repeatedly drop hanging vertices other than ``keep``."""
    degree: dict[int, int] = {}
    incident: dict[int, list] = {}
    for e in edges:
        u, _, v = e
        for x in (u, v):
            degree[x] = degree.get(x, 0) + 1
            incident.setdefault(x, []).append(e)
    alive = set(edges)
    stack = [x for x, d in degree.items() if d == 1 and x != keep]
    while stack:
        x = stack.pop()
        if degree[x] != 1:
            continue
        for e in incident[x]:
            if e in alive:
                alive.discard(e)
                u, _, v = e
                y = v if u == x else u
                degree[x] -= 1
                degree[y] -= 1
                if degree[y] == 1 and y != keep:
                    stack.append(y)
                break
    return alive


def fold(generators: Iterable[Word]) -> SubgroupGraph:
    """Folded core graph of the subgroup generated by ``generators``."""
    F = _Folder()
    base = F.new_vertex()
    for w in generators:
        if not w:
            continue
        cur = base
        n = len(w.letters)
        for k, x in enumerate(w.letters):
            nxt = base if k == n - 1 else F.new_vertex()
            if x.sign > 0:
                F.add_edge(cur, x.index, nxt)
            else:
                F.add_edge(nxt, x.index, cur)
            cur = nxt

    edges = set()
    for v in range(len(F.parent)):
        if F.find(v) != v:
            continue
        for (label, d), t in F.adj[v].items():
            if d > 0:
                edges.add((v, label, F.find(t)))
    root = F.find(base)
    return _canonical(_trim(edges, root), root)


def _canonical(edges: set, root: int) -> SubgroupGraph:
    nbrs: dict[int, list] = {}
    for u, x, v in edges:
        nbrs.setdefault(u, []).append(((x, 1), v))
        nbrs.setdefault(v, []).append(((x, -1), u))
    number = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for _, v in sorted(nbrs.get(u, ())):
            if v not in number:
                number[v] = len(number)
                queue.append(v)
    out = sorted((number[u], x, number[v]) for u, x, v in edges)
    return SubgroupGraph(len(number), tuple(out))


def subgroup_rank(g: SubgroupGraph) -> int:
    return g.rank()


def contains(g: SubgroupGraph, w: Word) -> bool:
    """Membership: ``w`` reads a closed path at the basepoint."""
    step = {}
    for u, x, v in g.edges:
        step[(u, x, 1)] = v
        step[(v, x, -1)] = u
    cur = g.basepoint
    for x in w.letters:
        cur = step.get((cur, x.index, x.sign))
        if cur is None:
            return False
    return cur == g.basepoint


def corank(ambient_basis: Iterable[GeneratorIndex], subgroup_gens: list[Word],
           expect_basis: bool = False) -> int:
    """Rank of a complementary free factor of ``<subgroup_gens>`` in F(ambient_basis).

    The free-factor property is a precondition.  With ``expect_basis`` the
    generators must also be a free basis of the subgroup they span (rank
    equals their count), which holds when they are images of basis letters.
    """
    basis = set(ambient_basis)
    for w in subgroup_gens:
        for x in w.letters:
            if x.index not in basis:
                raise ValueError(f"letter {x.index} lies outside the ambient basis")
    rank = subgroup_rank(fold(subgroup_gens))
    if rank > len(basis):
        raise ValueError(f"subgroup rank {rank} exceeds ambient rank {len(basis)}")
    if expect_basis and rank != len(subgroup_gens):
        raise ValueError(f"{len(subgroup_gens)} generators span a subgroup of rank {rank}")
    return len(basis) - rank


class WindowError(ValueError):
    """A window violates the rigidity preconditions of the corank formula."""


def _window_bases(f: EventuallyRigidAut, i: int, n: int, m: int, window: int):
    t = f.offsets
    source, ambient = [], []
    for k in range(1, f.r + 1):
        if k == i:
            source += [GeneratorIndex(k, p) for p in range(1, n + 1)]
            ambient += [GeneratorIndex(k, p) for p in range(1, m + 1)]
        else:
            source += [GeneratorIndex(k, p) for p in range(1, window + 1)]
            ambient += [GeneratorIndex(k, p) for p in range(1, window + t[k - 1] + 1)]
    return source, ambient


def flux_via_corank(f: EventuallyRigidAut, i: int, n: int, m: int, window: int) -> int:
    """Flux coordinate ``i`` as ``(m - n) - corank(B_m, f(A_n))``.

    ``A_n`` holds ray ``i`` up to position ``n`` and every other ray ``k`` up to
    ``window``; the ambient ``B_m`` holds ray ``i`` up to ``m`` and ray ``k`` up to
    ``window + t_k``, i.e. exactly where the rigid part of ``f`` sends ray ``k``.
    """
    if not autom.is_pure(f):
        raise autom.NotPureError(f"element permutes the rays: {f.perm}")
    if not 2 <= i <= f.r:
        raise ValueError(f"flux index {i} outside 2..{f.r}")
    if not 1 <= n < m:
        raise WindowError(f"need 1 <= n < m, got n={n}, m={m}")
    for x in list(f.table) + list(f.inverse_table):
        limit = n if x.ray == i else window
        if x.position > limit:
            raise WindowError(f"exception at {x} lies beyond the window (limit {limit})")
    t = f.offsets
    for k in range(1, f.r + 1):
        if k != i and window + t[k - 1] < 1:
            raise WindowError(f"window {window} too small for ray {k} with offset {t[k - 1]}")

    source, ambient = _window_bases(f, i, n, m, window)
    amb = set(ambient)
    images = []
    for x in source:
        img = f.image(x)
        for y in img.letters:
            if y.index not in amb:
                raise WindowError(f"image of {x} contains {y.index}, outside the ambient window")
        images.append(img)
    # free-factor check: everything in the ambient except the fresh tail of
    # ray i must pull back into the source window
    src = set(source)
    for y in ambient:
        if y.ray == i and y.position > n + t[i - 1]:
            continue
        for z in f.bwd.image(y).letters:
            if z.index not in src:
                raise WindowError(f"preimage of {y} contains {z.index}, outside the source window")
    return (m - n) - corank(amb, images, expect_basis=True)


def auto_windows(f: EventuallyRigidAut) -> list[tuple[int, int, int]]:
    """Two valid ``(n, m, window)`` choices sized from the support and offsets of ``f``."""
    M = 0
    for table in (f.table, f.inverse_table):
        for x, img in table.items():
            M = max(M, x.position, *(y.index.position for y in img.letters))
    T = max((abs(t) for t in f.offsets), default=0)
    n = M + 1
    m = n + T + 1
    W = M + T + 2
    return [(n, m, W), (n + 2, m + 5, W + 3)]


def flux_corank_vector(f: EventuallyRigidAut,
                       window: tuple[int, int, int] | None = None) -> tuple[int, ...]:
    n, m, W = window if window is not None else auto_windows(f)[0]
    return tuple(flux_via_corank(f, i, n, m, W) for i in range(2, f.r + 1))
