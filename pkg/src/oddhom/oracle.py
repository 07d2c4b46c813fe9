"""Exact small-graph ground truth: homomorphism search and circular chromatic number."""

from __future__ import annotations

import math
import sys
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInputError, InvalidParameterError
from .graph import Graph, is_bipartite, two_core

DEFAULT_BUDGET = 10**8

FOUND = "found"
NONE = "none"
BUDGET_EXCEEDED = "budget_exceeded"


def circulant(p: int, q: int) -> Graph:
    """Circular clique K_{p/q}: u ~ v iff q <= |u - v|_p <= p - q."""
    if q < 1 or p < 1:
        raise InvalidParameterError(f"circulant needs p, q >= 1, got ({p}, {q})")
    edges = []
    for u in range(p):
        for v in range(u + 1, p):
            d = min(v - u, p - (v - u))
            if q <= d <= p - q:
                edges.append((u, v))
    return Graph(p, edges)


def odd_cycle_target(ell: int) -> Graph:
    return circulant(2 * ell + 1, ell)


@dataclass(frozen=True)
class HomSearchResult:
    status: str
    mapping: tuple[int, ...] | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND

    @property
    def decided(self) -> bool:
        return self.status != BUDGET_EXCEEDED


class _BudgetExceeded(Exception):
    pass


class _Walks:
    """Rows of the boolean powers of h's adjacency matrix, as bitmasks."""

    def __init__(self, h: Graph):
        self.nbr = [sum(1 << b for b in h.adj[a]) for a in range(h.n)]
        self.powers = [[1 << a for a in range(h.n)]]

    def row(self, length: int, a: int) -> int:
        while len(self.powers) <= length:
            prev = self.powers[-1]
            nxt = []
            for r in prev:
                acc = 0
                while r:
                    low = r & -r
                    acc |= self.nbr[low.bit_length() - 1]
                    r ^= low
                nxt.append(acc)
            self.powers.append(nxt)
        return self.powers[length][a]

    def walk(self, a: int, b: int, length: int) -> list[int]:
        """Vertices of some walk a -> b with ``length`` steps (endpoints included)."""
        out = [a]
        cur = a
        for rem in range(length - 1, -1, -1):
            cand = self.nbr[cur]
            while cand:
                low = cand & -cand
                nxt = low.bit_length() - 1
                if self.row(rem, nxt) >> b & 1:
                    break
                cand ^= low
            else:  # pragma: no cover - guarded by the constraint check
                raise AssertionError("no walk of the promised length")
            out.append(nxt)
            cur = nxt
        return out


def _core_components(core: Graph) -> list[list[int]]:
    adj = core.adj
    seen = set()
    comps = []
    for s in core.non_isolated().tolist():
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def _arcs(core: Graph, branch: set[int]) -> list[list[int]]:
    """Maximal paths of the core whose interior vertices have degree 2."""
    adj = core.adj
    used: set[tuple[int, int]] = set()
    arcs = []
    for u in sorted(branch):
        for w in adj[u]:
            if (u, w) in used:
                continue
            path = [u, w]
            while path[-1] not in branch:
                x, y = path[-2], path[-1]
                a, b = adj[y]
                path.append(b if a == x else a)
            for x, y in zip(path, path[1:]):
                used.add((x, y))
                used.add((y, x))
            arcs.append(path)
    return arcs


def _branch_order(branch: list[int], cons: dict[int, list[tuple[int, int]]]) -> list[int]:
    """BFS order from a max-degree vertex over the contracted graph."""
    order = []
    seen = set()
    for s in sorted(branch, key=lambda v: (-len(cons[v]), v)):
        if s in seen:
            continue
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w, _ in cons[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def is_homomorphism(g: Graph, h: Graph, mapping) -> bool:
    if len(mapping) != g.n:
        return False
    return all(h.has_edge(mapping[u], mapping[v]) for u, v in g.edge_list())


def hom_search(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> HomSearchResult:
    """Complete backtracking search for a homomorphism g -> h.

    Only the 2-core needs searching: pendant trees always extend because
    every image vertex has a neighbour.  Each degree-2 path of length L is
    contracted into the constraint "joined by a walk of length L in h", so the
    search assigns branch vertices only, component by component, with
    bitmask forward checking.  ``none`` is only returned after exhausting the
    search; running out of ``budget`` nodes gives ``budget_exceeded``.
    """
    if g.n == 0:
        return HomSearchResult(FOUND, (), 0)
    if h.n == 0:
        return HomSearchResult(NONE, None, 0)
    if g.m > 0 and h.m == 0:
        return HomSearchResult(NONE, None, 0)
    if g.m > 0 and is_bipartite(h) and not is_bipartite(g):
        return HomSearchResult(NONE, None, 0)

    walks = _Walks(h)
    full = (1 << h.n) - 1
    core = two_core(g)
    deg = core.degrees.tolist()
    assign = [-1] * g.n
    nodes = 0

    def solve(comp: list[int]) -> bool:
        nonlocal nodes
        branch = [v for v in comp if deg[v] >= 3]
        if not branch:
            # a bare cycle: any closed walk of its length will do
            length = len(comp)
            for a in range(h.n):
                nodes += 1
                if nodes > budget:
                    raise _BudgetExceeded
                if walks.row(length, a) >> a & 1:
                    start = min(comp)
                    cyc = [start]
                    prev, cur = -1, start
                    while len(cyc) < length:
                        nxt = next(w for w in core.adj[cur] if w != prev)
                        cyc.append(nxt)
                        prev, cur = cur, nxt
                    for v, b in zip(cyc, walks.walk(a, a, length)):
                        assign[v] = b
                    return True
            return False

        arcs = _arcs(core, set(branch))
        cons: dict[int, list[tuple[int, int]]] = {v: [] for v in branch}
        dom = {v: full for v in branch}
        for path in arcs:
            u, v, length = path[0], path[-1], len(path) - 1
            if u == v:
                dom[u] &= sum(1 << a for a in range(h.n) if walks.row(length, a) >> a & 1)
            else:
                cons[u].append((v, length))
                cons[v].append((u, length))
        order = _branch_order(branch, cons)

        def rec(i: int) -> bool:
            nonlocal nodes
            if i == len(order):
                return True
            v = order[i]
            mask = dom[v]
            while mask:
                low = mask & -mask
                a = low.bit_length() - 1
                mask ^= low
                nodes += 1
                if nodes > budget:
                    raise _BudgetExceeded
                assign[v] = a
                saved = []
                ok = True
                for w, length in cons[v]:
                    if assign[w] < 0:
                        new = dom[w] & walks.row(length, a)
                        if new != dom[w]:
                            saved.append((w, dom[w]))
                            dom[w] = new
                            if not new:
                                ok = False
                                break
                if ok and rec(i + 1):
                    return True
                for w, old in reversed(saved):
                    dom[w] = old
                assign[v] = -1
            return False

        if not rec(0):
            return False
        for path in arcs:
            images = walks.walk(assign[path[0]], assign[path[-1]], len(path) - 1)
            for v, b in zip(path[1:-1], images[1:-1]):
                assign[v] = b
        return True

    limit = sys.getrecursionlimit()
    if limit < g.n + 100:
        sys.setrecursionlimit(g.n + 100)
    try:
        for comp in _core_components(core):
            if not solve(comp):
                return HomSearchResult(NONE, None, nodes)
    except _BudgetExceeded:
        return HomSearchResult(BUDGET_EXCEEDED, None, nodes)
    finally:
        sys.setrecursionlimit(limit)

    # hang the trees off the core; whole tree components start anywhere with a neighbour
    anchor = next(a for a in range(h.n) if h.adj[a]) if h.m else 0
    adj = g.adj
    for s in [v for v in range(g.n) if assign[v] >= 0] + list(range(g.n)):
        if assign[s] < 0:
            assign[s] = anchor
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if assign[w] < 0:
                    assign[w] = h.adj[assign[v]][0]
                    queue.append(w)
    mapping = tuple(assign)
    if not is_homomorphism(g, h, mapping):  # pragma: no cover
        raise AssertionError("internal error: search returned a non-homomorphism")
    return HomSearchResult(FOUND, mapping, nodes)


@dataclass(frozen=True)
class CircularChromatic:
    p: int | None
    q: int | None
    status: str = FOUND
    frontier: tuple[int, int] | None = None
    probes: tuple[tuple[int, int, str], ...] = field(default=(), repr=False)

    @property
    def value(self) -> Fraction | None:
        return None if self.p is None else Fraction(self.p, self.q)


def farey_candidates(p_max: int) -> list[tuple[int, int]]:
    """Coprime (p, q) with 2q <= p <= p_max, in increasing order of p/q."""
    pairs = [(p, q) for p in range(2, p_max + 1) for q in range(1, p // 2 + 1)
             if math.gcd(p, q) == 1]
    pairs.sort(key=lambda pq: (Fraction(pq[0], pq[1]), pq[0]))
    return pairs


def circular_chromatic(g: Graph, p_max: int | None = None,
                       budget: int = DEFAULT_BUDGET) -> CircularChromatic:
    """Smallest p/q (p <= p_max) such that g maps to circulant(p, q).

    Exact when ``p_max >= |V(g)|``, since the circular chromatic number is
    attained by some p/q with p at most the number of vertices.
    """
    if g.m == 0:
        raise InvalidInputError("circular chromatic number needs at least one edge")
    if p_max is None:
        p_max = g.n
    probes = []
    for p, q in farey_candidates(p_max):
        res = hom_search(g, circulant(p, q), budget)
        probes.append((p, q, res.status))
        if res.status == FOUND:
            return CircularChromatic(p, q, FOUND, None, tuple(probes))
        if res.status == BUDGET_EXCEEDED:
            return CircularChromatic(None, None, BUDGET_EXCEEDED, (p, q), tuple(probes))
    return CircularChromatic(None, None, NONE, None, tuple(probes))


@dataclass(frozen=True)
class MonotonicityReport:
    exists: tuple[bool | None, ...]  # index l-1 -> hom to C_{2l+1}
    downward_closed: bool


def monotonicity_check(g: Graph, ell_max: int, budget: int = DEFAULT_BUDGET) -> MonotonicityReport:
    """Homomorphism existence to C_3, C_5, ..., C_{2 ell_max + 1}."""
    exists = []
    for ell in range(1, ell_max + 1):
        res = hom_search(g, odd_cycle_target(ell), budget)
        exists.append(None if not res.decided else res.found)
    decided = [e for e in exists if e is not None]
    closed = all(not (later and not earlier)
                 for earlier, later in zip(decided, decided[1:]))
    return MonotonicityReport(tuple(exists), closed)
