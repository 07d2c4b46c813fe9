"""Split a graph's edges into a forest F and a sparse set M of removed edges.

The removed edges must be pairwise far apart in F.  Cycles are broken one at
a time: each cycle found in the (shrinking) 2-core loses the centre edge of its
longest degree-2 arc, measured with the degrees of the original 2-core.  The
separation property is then certified; when it fails the instance is reported
as a :class:`StructureFailure` rather than an exception, since that is an
expected (low probability) outcome on random inputs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .cycles import cycle_arcs, orient_arc
from .graph import Edge, Graph, bfs_distances, find_cycle, is_forest, two_core
from .errors import InvalidParameterError

M1 = "M1"  # centre of a long degree-2 arc
M2 = "M2"  # any other cycle-breaking edge


@dataclass(frozen=True)
class Decomposition:
    forest: Graph
    removed: tuple[Edge, ...]
    k: int
    tags: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.forest.n,
            "F": self.forest.edge_list(),
            "M": [{"edge": list(e), "tag": t} for e, t in zip(self.removed, self.tags)],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Decomposition":
        removed = tuple((min(x["edge"]), max(x["edge"])) for x in d["M"])
        return cls(Graph(d["n"], d["F"]), removed, int(d["k"]),
                   tuple(x["tag"] for x in d["M"]))


@dataclass(frozen=True)
class StructureFailure:
    stage: str
    reason: str
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"stage": self.stage, "reason": self.reason, "diagnostics": self.diagnostics}


def default_long_threshold(n: int) -> int:
    return max(1, math.ceil(0.05 * math.log(max(n, 2))))


def _center_edge(arc: list[int]) -> Edge:
    arc = orient_arc(arc)
    i = (len(arc) - 1) // 2
    u, v = arc[i], arc[i + 1]
    return (u, v) if u < v else (v, u)


def _peel(work: dict[int, set[int]], start: list[int]) -> None:
    queue = deque(start)
    while queue:
        v = queue.popleft()
        nbrs = work.get(v)
        if nbrs is None or len(nbrs) >= 2:
            continue
        del work[v]
        for w in nbrs:
            work[w].discard(v)
            queue.append(w)


def separation_violation(forest: Graph, removed: list[Edge] | tuple[Edge, ...], k: int) -> tuple[int, int, int] | None:
    """First pair ``(i, j, d)`` of removed edges at forest distance ``d < k``.

    Multi-source BFS from all endpoints labelled by edge index, truncated so
    only meetings at total distance < k are explored.
    """
    if len(removed) < 2 or k <= 0:
        return None
    adj = forest.adj
    label: dict[int, int] = {}
    dist: dict[int, int] = {}
    best: tuple[int, int, int] | None = None

    def consider(a: int, b: int, d: int) -> None:
        nonlocal best
        i, j = min(a, b), max(a, b)
        if d < k and (best is None or (d, i, j) < (best[2], best[0], best[1])):
            best = (i, j, d)

    queue = deque()
    for idx, (u, v) in enumerate(removed):
        for x in (u, v):
            if x in label and label[x] != idx:
                consider(label[x], idx, 0)
            elif x not in label:
                label[x] = idx
                dist[x] = 0
                queue.append(x)
    while queue:
        v = queue.popleft()
        dv = dist[v]
        if 2 * dv + 1 >= k + 1:
            continue
        for w in adj[v]:
            if w not in label:
                label[w] = label[v]
                dist[w] = dv + 1
                queue.append(w)
            elif label[w] != label[v]:
                consider(label[v], label[w], dv + 1 + dist[w])
    return best


def decompose(g: Graph, k: int, long_threshold: int | None = None) -> Decomposition | StructureFailure:
    """Decompose E(g) into a forest and removed edges pairwise >= k apart in F."""
    if k < 1:
        raise InvalidParameterError(f"separation k must be >= 1, got {k}")
    if long_threshold is None:
        long_threshold = default_long_threshold(g.n)
    core = two_core(g)
    deg = core.degrees.tolist()
    work = {v: set(core.adj[v]) for v in core.non_isolated().tolist()}

    removed: list[Edge] = []
    tags: list[str] = []
    while work:
        root = min(work)
        cyc = find_cycle({v: sorted(ns) for v, ns in work.items()}, [root])
        if cyc is None:  # pragma: no cover - a non-empty 2-core always has a cycle
            break
        arc = max(cycle_arcs(cyc, deg), key=len)
        arc_len = len(arc) - 1
        e = _center_edge(arc)
        tag = M1 if len(cyc) > long_threshold and arc_len >= 2 * k + 1 else M2
        removed.append(e)
        tags.append(tag)
        u, v = e
        work[u].discard(v)
        work[v].discard(u)
        _peel(work, [u, v])

    forest = g.without_edges(removed)
    ok, witness = is_forest(forest)
    if not ok:  # pragma: no cover - guarded by construction
        return StructureFailure("forest", "remaining edges contain a cycle", {"cycle": witness})
    bad = separation_violation(forest, removed, k)
    if bad is not None:
        i, j, d = bad
        return StructureFailure(
            "separation",
            f"removed edges {removed[i]} and {removed[j]} are at forest distance {d} < {k}",
            {"pair": [list(removed[i]), list(removed[j])], "dist": d,
             "tags": [tags[i], tags[j]], "removed": len(removed)},
        )
    return Decomposition(forest, tuple(removed), k, tuple(tags))


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class DecompositionReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)


def _edge_distance(dist_from: dict[int, list[float]], e: Edge, f: Edge) -> float:
    return min(dist_from[a][b] for a in e for b in f)


def verify_decomposition(g: Graph, d: Decomposition) -> DecompositionReport:
    """Re-check forest, edge partition and pairwise separation from scratch."""
    checks = []
    ok, cyc = is_forest(d.forest)
    checks.append(CheckResult("forest", ok, cyc))

    f_edges = set(d.forest.edge_list())
    m_edges = [tuple(sorted(e)) for e in d.removed]
    g_edges = set(g.edge_list())
    overlap = f_edges & set(m_edges)
    union = f_edges | set(m_edges)
    problems = {
        "overlap": sorted(overlap),
        "duplicate_m": sorted({e for e in m_edges if m_edges.count(e) > 1}),
        "missing": sorted(g_edges - union),
        "extra": sorted(union - g_edges),
    }
    partition_ok = d.forest.n == g.n and not any(problems.values())
    checks.append(CheckResult("partition", partition_ok, None if partition_ok else problems))

    ends = {x for e in m_edges for x in e}
    dist_from = {x: bfs_distances(d.forest, x) for x in ends}
    sep_witness = None
    for i in range(len(m_edges)):
        for j in range(i + 1, len(m_edges)):
            dd = _edge_distance(dist_from, m_edges[i], m_edges[j])
            if dd < d.k:
                sep_witness = (m_edges[i], m_edges[j], dd)
                break
        if sep_witness:
            break
    checks.append(CheckResult("separation", sep_witness is None, sep_witness))
    return DecompositionReport(checks)
