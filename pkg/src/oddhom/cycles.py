"""Odd girth, girth and short-cycle structure checks.

Every cycle of a graph lives in its 2-core, so the searches here run on the
core only.  Inside a connected core that is not itself a cycle, every cycle
passes through a vertex of degree >= 3, which is all the BFS roots we need.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInputError, InvalidParameterError
from .graph import Graph, bfs_ball, connected_components, two_core

MAX_SHORT_CYCLE_LENGTH = 64


@dataclass(frozen=True)
class OddGirthResult:
    length: int | None
    cycle: tuple[int, ...] | None = None

    @property
    def bipartite(self) -> bool:
        return self.length is None


@dataclass(frozen=True)
class ProximityViolation:
    cycle_a: tuple[int, ...]
    cycle_b: tuple[int, ...]
    dist: int

    def to_dict(self) -> dict:
        return {"cycle_a": list(self.cycle_a), "cycle_b": list(self.cycle_b),
                "dist": self.dist}


@dataclass(frozen=True)
class CycleProfile:
    branch_count: int
    longest_arc: tuple[int, ...]

    @property
    def longest_arc_length(self) -> int:
        return len(self.longest_arc) - 1


def is_cycle_of(g: Graph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    if any(not 0 <= v < g.n for v in cycle):
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def _bfs_roots(core: Graph) -> list[int]:
    """Roots that meet every cycle of ``core``: branch vertices, plus one
    vertex per component that is a bare cycle."""
    deg = core.degrees
    comp = connected_components(core)
    has_branch = set()
    roots = []
    for v in core.non_isolated().tolist():
        if deg[v] >= 3:
            roots.append(v)
            has_branch.add(comp[v])
    for v in core.non_isolated().tolist():
        if comp[v] == v and v not in has_branch:
            roots.append(v)
    return sorted(roots)


def _join(left: list[int], right: list[int]) -> list[int]:
    # left: u .. lca, right: w .. lca -> cycle lca .. u, w .. (before lca)
    return left[::-1] + right[:-1]


def _search(g: Graph, odd_only: bool, limit: int | None = None) -> tuple[int | None, list[int] | None]:
    core = two_core(g)
    if core.m == 0:
        return None, None
    adj = core.adj
    best = math.inf if limit is None else limit + 1
    best_cycle = None
    for s in _bfs_roots(core):
        depth = {s: 0}
        parent = {s: s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            dv = depth[v]
            # any cycle through a deeper level is at least this long
            if 2 * dv + 1 >= best:
                break
            for w in adj[v]:
                dw = depth.get(w)
                if dw is None:
                    depth[w] = dv + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] == w:
                    continue
                elif odd_only and dw != dv:
                    continue
                elif dw < dv:
                    continue
                elif dw == dv and w < v:
                    continue
                else:
                    cyc = _join(*_lca_paths(parent, depth, v, w))
                    if len(cyc) < best and (not odd_only or len(cyc) % 2 == 1):
                        best = len(cyc)
                        best_cycle = cyc
    if best_cycle is None:
        return None, None
    return best, best_cycle


def _lca_paths(parent: dict[int, int], depth: dict[int, int], u: int, w: int) -> tuple[list[int], list[int]]:
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        left.append(a)
        right.append(b)
    return left, right


def odd_girth(g: Graph, limit: int | None = None) -> OddGirthResult:
    """Shortest odd cycle of ``g`` with a witness; ``length=None`` iff bipartite.

    With ``limit`` the search only looks for odd cycles of length <= limit and
    reports None when there are none that short.
    """
    length, cyc = _search(g, odd_only=True, limit=limit)
    if length is None:
        return OddGirthResult(None, None)
    if not (is_cycle_of(g, cyc) and len(cyc) % 2 == 1):
        raise AssertionError(f"internal error: bad odd cycle witness {cyc}")
    return OddGirthResult(length, tuple(cyc))


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, None for forests."""
    length, cyc = _search(g, odd_only=False)
    if length is not None and not is_cycle_of(g, cyc):
        raise AssertionError(f"internal error: bad cycle witness {cyc}")
    return length


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation/reflection."""
    k = len(cycle)
    i = min(range(k), key=lambda j: cycle[j])
    rot = [cycle[(i + j) % k] for j in range(k)]
    if k > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def short_cycles(g: Graph, L: int) -> list[tuple[int, ...]]:
    """All cycles with fewer than ``L`` vertices, each once, in canonical form.

    Cycles are grown from their minimum vertex through larger vertices only,
    and the reflection is dropped by requiring the second vertex to be smaller
    than the last.
    """
    if L > MAX_SHORT_CYCLE_LENGTH:
        raise InvalidParameterError(
            f"L={L} exceeds the enumeration guard {MAX_SHORT_CYCLE_LENGTH}")
    if L <= 3:
        return []
    core = two_core(g)
    adj = core.adj
    found = []
    for s in core.non_isolated().tolist():
        path = [s]
        on_path = {s}
        stack = [iter([w for w in adj[s] if w > s])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            path.append(nxt)
            on_path.add(nxt)
            if len(path) >= 3 and s in adj[nxt] and path[1] < nxt:
                found.append(tuple(path))
            if len(path) < L - 1:
                stack.append(iter([w for w in adj[nxt] if w > s and w not in on_path]))
            else:
                on_path.discard(path.pop())
    return sorted(found, key=lambda c: (len(c), c))


def audit_short_cycle_proximity(g: Graph, L: int, D: int) -> list[ProximityViolation]:
    """Pairs of distinct cycles of length < L at graph distance < D.

    Distance between two cycles is the minimum BFS distance in ``g`` between
    a vertex of one and a vertex of the other (0 if they intersect).
    """
    cycles = short_cycles(g, L)
    adj = g.adj
    out = []
    for i, a in enumerate(cycles):
        if D <= 0:
            break
        ball = bfs_ball(adj, a, D - 1)
        for b in cycles[i + 1:]:
            d = min((ball[v] for v in b if v in ball), default=None)
            if d is not None and d < D:
                out.append(ProximityViolation(a, b, d))
    return out


def cycle_arcs(cycle: Sequence[int], deg: Sequence[int]) -> list[list[int]]:
    """Split a cycle at its vertices of degree != 2.

    Each arc is a vertex sequence whose interior vertices have degree 2; the
    two ends are branch vertices (equal when the cycle meets just one).  A cycle
    with no branch vertex is a single closed arc from its minimum vertex.
    """
    k = len(cycle)
    branch = [i for i in range(k) if deg[cycle[i]] != 2]
    if not branch:
        i = min(range(k), key=lambda j: cycle[j])
        arc = [cycle[(i + j) % k] for j in range(k + 1)]
        return [arc]
    arcs = []
    for t, i in enumerate(branch):
        j = branch[(t + 1) % len(branch)]
        span = (j - i) % k or k
        arcs.append([cycle[(i + s) % k] for s in range(span + 1)])
    return arcs


def orient_arc(arc: list[int]) -> list[int]:
    """Start the arc at its smaller end (closed arcs: toward the smaller neighbour)."""
    if arc[0] > arc[-1] or (arc[0] == arc[-1] and len(arc) > 2 and arc[1] > arc[-2]):
        return arc[::-1]
    return arc


def cycle_degree_profile(core: Graph, cycle: Sequence[int]) -> CycleProfile:
    """Branch-vertex count of a cycle of ``core`` and its longest degree-2 arc."""
    if not is_cycle_of(core, cycle):
        raise InvalidInputError("sequence is not a cycle of the given graph")
    deg = core.degrees
    count = sum(1 for v in cycle if deg[v] >= 3)
    arcs = cycle_arcs(cycle, deg)
    longest = max(arcs, key=len)
    return CycleProfile(count, tuple(orient_arc(longest)))
