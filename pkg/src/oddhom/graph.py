"""Undirected simple graphs, G(n, c/n) sampling and 2-core peeling.

Graphs are immutable.  Vertices are ``0..n-1`` and keep their identity under
every subgraph operation, so a 2-core or a spanning forest can be indexed with
the labels of the graph it came from.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidInputError, InvalidParameterError

Edge = tuple[int, int]


class Graph:
    """Undirected simple graph with sorted adjacency (CSR layout).

    ``edges`` is an ``(m, 2)`` int64 array with ``u < v`` in each row, rows
    sorted lexicographically.  Both arrays are read-only.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray = ()):
        n = int(n)
        if n < 0:
            raise InvalidParameterError(f"vertex count must be >= 0, got {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise InvalidInputError("edge endpoint out of range")
            if np.any(arr[:, 0] == arr[:, 1]):
                bad = arr[arr[:, 0] == arr[:, 1]][0]
                raise InvalidInputError(f"self-loop at vertex {int(bad[0])}")
            arr = np.sort(arr, axis=1)
            arr = arr[np.lexsort((arr[:, 1], arr[:, 0]))]
            dup = np.all(arr[1:] == arr[:-1], axis=1)
            if np.any(dup):
                u, v = arr[1:][dup][0]
                raise InvalidInputError(f"duplicate edge ({int(u)}, {int(v)})")
        self._init_sorted(n, arr)

    @classmethod
    def _from_sorted(cls, n: int, arr: np.ndarray) -> "Graph":
        # trusted path: rows already u<v, unique, lexicographically sorted
        g = cls.__new__(cls)
        g._init_sorted(n, np.asarray(arr, dtype=np.int64).reshape(-1, 2))
        return g

    def _init_sorted(self, n: int, arr: np.ndarray) -> None:
        self.n = n
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        self.edges = arr
        src = np.concatenate([arr[:, 0], arr[:, 1]])
        dst = np.concatenate([arr[:, 1], arr[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        indices.setflags(write=False)
        indptr.setflags(write=False)
        self.indptr = indptr
        self.indices = indices

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def adj(self) -> list[list[int]]:
        """Sorted neighbour lists as plain Python ints (for traversal loops)."""
        idx = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [idx[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.diff(self.indptr)
        d.setflags(write=False)
        return d

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> list[int]:
        return self.adj[v]

    def edge_list(self) -> list[Edge]:
        return [tuple(e) for e in self.edges.tolist()]

    @cached_property
    def _edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edge_list())

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    def non_isolated(self) -> np.ndarray:
        return np.flatnonzero(self.degrees > 0)

    def edge_subgraph(self, keep: np.ndarray | Iterable[Edge]) -> "Graph":
        """Subgraph on the same vertex set, keeping the given edges.

        ``keep`` is either a boolean mask over ``self.edges`` or an iterable of
        edges that must all be present in this graph.
        """
        if isinstance(keep, np.ndarray) and keep.dtype == bool:
            return Graph._from_sorted(self.n, self.edges[keep])
        sub = Graph(self.n, keep)
        for u, v in sub.edge_list():
            if not self.has_edge(u, v):
                raise InvalidInputError(f"edge ({u}, {v}) not in graph")
        return sub

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in removed}
        mask = np.fromiter(((u, v) not in drop for u, v in self.edge_list()),
                           dtype=bool, count=self.m)
        return Graph._from_sorted(self.n, self.edges[mask])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        p = np.asarray(perm, dtype=np.int64)
        return Graph(self.n, p[self.edges]) if self.m else Graph(self.n)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.edges, other.edges))

    def __hash__(self) -> int:
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- text format: "n m" header then one "u v" line per edge (u < v)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges.tolist())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise InvalidInputError("missing 'n m' header line")
        n, m = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != m:
            raise InvalidInputError(f"header declares {m} edges, found {len(body)}")
        edges = []
        for i, row in enumerate(body, start=2):
            if len(row) != 2:
                raise InvalidInputError(f"line {i}: expected 'u v'")
            u, v = int(row[0]), int(row[1])
            if u >= v:
                raise InvalidInputError(f"line {i}: expected u < v, got {u} {v}")
            edges.append((u, v))
        return cls(n, edges)

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_text().encode("ascii"))

    @classmethod
    def read(cls, path: str | Path) -> "Graph":
        return cls.from_text(Path(path).read_text(encoding="ascii"))


# -- small named graphs used throughout tests and examples

def cycle_graph(k: int, n: int | None = None) -> Graph:
    n = k if n is None else n
    return Graph(n, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_graph(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


# -- random generation

def _pair_from_index(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Invert the row-major enumeration of pairs u < v."""
    k = k.astype(np.int64)
    b = 2 * n - 1
    u = np.floor((b - np.sqrt(np.maximum(b * b - 8.0 * k, 0.0))) / 2).astype(np.int64)
    u = np.clip(u, 0, max(n - 2, 0))

    def start(r):
        return r * (n - 1) - r * (r - 1) // 2

    # float sqrt can be one row off either way
    while True:
        hi = start(u) > k
        if not hi.any():
            break
        u[hi] -= 1
    while True:
        lo = (u + 1 <= n - 2) & (start(u + 1) <= k)
        if not lo.any():
            break
        u[lo] += 1
    v = k - start(u) + u + 1
    return u, v


def generate_gnp(n: int, c: float, seed: int) -> Graph:
    """Sample G(n, p) with p = c/n.

    Pairs ``(u, v)``, ``u < v``, are visited in row-major order and each is
    kept independently with probability ``p``.  The gaps between kept pairs
    are geometric, so the sampler draws those gaps from numpy's PCG64
    generator seeded with ``seed`` instead of flipping C(n,2) coins; the
    result depends only on ``(n, c, seed)``.
    """
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if c < 0:
        raise InvalidParameterError(f"c must be >= 0, got {c}")
    p = c / n
    if p > 1:
        raise InvalidParameterError(f"c/n = {p} exceeds 1")
    total = n * (n - 1) // 2
    if p == 0 or total == 0:
        return Graph(n)
    if p == 1:
        iu = np.triu_indices(n, 1)
        return Graph._from_sorted(n, np.column_stack(iu))

    rng = np.random.Generator(np.random.PCG64(seed))
    expected = total * p
    batch = int(expected + 6 * math.sqrt(expected) + 64)
    chunks = []
    pos = -1
    while True:
        gaps = rng.geometric(p, size=batch)
        idx = pos + np.cumsum(gaps)
        if idx[-1] >= total:
            chunks.append(idx[idx < total])
            break
        chunks.append(idx)
        pos = int(idx[-1])
    k = np.concatenate(chunks)
    u, v = _pair_from_index(k, n)
    return Graph._from_sorted(n, np.column_stack([u, v]))


# -- 2-core

def two_core(g: Graph) -> Graph:
    """Maximal subgraph of minimum degree >= 2 (vertex labels preserved)."""
    deg = g.degrees.tolist()
    adj = g.adj
    alive = [d > 0 for d in deg]
    queue = deque(v for v in range(g.n) if 0 < deg[v] < 2)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < 2:
                    queue.append(w)
    keep = np.asarray(alive, dtype=bool)
    if g.m == 0:
        return g
    mask = keep[g.edges[:, 0]] & keep[g.edges[:, 1]]
    return Graph._from_sorted(g.n, g.edges[mask])


@dataclass(frozen=True)
class TwoCorePrediction:
    c: float
    x: float
    nu_frac: float
    mu_frac: float


def predict_two_core(c: float) -> TwoCorePrediction:
    """Asymptotic vertex and edge fractions of the 2-core of G(n, c/n).

    ``x`` is the root in (0, 1) of ``x e^{-x} = c e^{-c}``.
    """
    if not c > 1:
        raise InvalidParameterError(f"2-core prediction needs c > 1, got {c}")
    target = c * math.exp(-c)
    x = brentq(lambda t: t * math.exp(-t) - target, 0.0, 1.0, xtol=1e-15, rtol=1e-15,
               maxiter=200)
    return TwoCorePrediction(c=c, x=x, nu_frac=(1 - x) * (1 - x / c),
                             mu_frac=(1 - x / c) ** 2 * c / 2)


# -- traversal helpers

def bfs_distances(g: Graph, source: int) -> list[float]:
    """Hop distances from ``source``; ``math.inf`` where unreachable."""
    if not 0 <= source < g.n:
        raise InvalidParameterError(f"source {source} out of range for n={g.n}")
    dist: list[float] = [math.inf] * g.n
    dist[source] = 0
    adj = g.adj
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in adj[v]:
            if dist[w] == math.inf:
                dist[w] = dv
                queue.append(w)
    return dist


def bfs_ball(adj: Sequence[Sequence[int]], sources: Iterable[int], radius: float) -> dict[int, int]:
    """Distances from a source set, truncated at ``radius`` (inclusive)."""
    dist = {}
    queue = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        v = queue.popleft()
        d = dist[v]
        if d >= radius:
            continue
        for w in adj[v]:
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def bfs_path(adj: Sequence[Sequence[int]], source: int, target: int) -> list[int] | None:
    """A shortest path from ``source`` to ``target`` or None."""
    parent = {source: source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            break
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    if target not in parent:
        return None
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return path[::-1]


def find_cycle(adj: Sequence[Iterable[int]], roots: Iterable[int]) -> list[int] | None:
    """Return one cycle (vertex sequence) reachable from ``roots``, else None.

    Iterative DFS in the iteration order of ``adj``.  ``adj`` may be lists or
    sets; with sets the caller is responsible for a deterministic order.
    """
    state: dict[int, int] = {}  # 1 = on stack, 2 = done
    parent: dict[int, int] = {}
    for root in roots:
        if root in state:
            continue
        state[root] = 1
        parent[root] = -1
        stack = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent[v]:
                    continue
                s = state.get(w)
                if s is None:
                    state[w] = 1
                    parent[w] = v
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
                if s == 1:
                    cyc = [v]
                    while cyc[-1] != w:
                        cyc.append(parent[cyc[-1]])
                    return cyc[::-1]
            if not advanced:
                state[v] = 2
                stack.pop()
    return None


def is_forest(g: Graph) -> tuple[bool, list[int] | None]:
    """``(True, None)`` if acyclic, else ``(False, cycle)``."""
    cyc = find_cycle(g.adj, range(g.n))
    return (cyc is None, cyc)


def connected_components(g: Graph) -> list[int]:
    """Component label per vertex (labels are the minimum vertex of each component)."""
    comp = [-1] * g.n
    adj = g.adj
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = s
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if comp[w] < 0:
                    comp[w] = s
                    queue.append(w)
    return comp


def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    adj = g.adj
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return False
    return True
