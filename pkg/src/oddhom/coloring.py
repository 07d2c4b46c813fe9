"""Homomorphisms to odd cycles by repairing a forest 2-colouring.

Pipeline: decompose G = F + M with M-edges at F-distance >= 4l-2, 2-colour F,
and around one endpoint of every monochromatic M-edge recolour a ball of
radius 2l-2 so the colours wind once around C_{2l+1}.  The result is verified;
if an M-edge is still bad its F-path closes a short odd cycle, which is
returned as a certificate instead.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .cycles import is_cycle_of, odd_girth
from .decomposition import Decomposition, StructureFailure, decompose
from .errors import InvalidInputError, InvalidParameterError, PreconditionError
from .graph import Edge, Graph, bfs_ball, bfs_path


@dataclass(frozen=True)
class CycleColoring:
    ell: int
    colors: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return 2 * self.ell + 1

    def to_dict(self) -> dict:
        return {"ell": self.ell, "colors": list(self.colors)}

    @classmethod
    def from_dict(cls, d: dict) -> "CycleColoring":
        return cls(int(d["ell"]), tuple(int(x) for x in d["colors"]))


@dataclass(frozen=True)
class BadEdgeSet:
    bad_edges: tuple[Edge, ...]
    reps: tuple[int, ...]
    rep_class: tuple[int, ...]


@dataclass(frozen=True)
class Hom:
    coloring: CycleColoring
    kind = "Hom"

    def to_dict(self) -> dict:
        return {"outcome": self.kind, "coloring": self.coloring.to_dict()}


@dataclass(frozen=True)
class OddGirthCertificate:
    cycle: tuple[int, ...]
    kind = "OddGirthCertificate"

    @property
    def length(self) -> int:
        return len(self.cycle)

    def to_dict(self) -> dict:
        return {"outcome": self.kind, "cycle": list(self.cycle), "length": self.length}


HomOutcome = Union[Hom, OddGirthCertificate, StructureFailure]


def outcome_tag(outcome: HomOutcome) -> str:
    return "StructureFailure" if isinstance(outcome, StructureFailure) else outcome.kind


def outcome_to_dict(outcome: HomOutcome) -> dict:
    if isinstance(outcome, StructureFailure):
        return {"outcome": "StructureFailure", **outcome.to_dict()}
    return outcome.to_dict()


def outcome_from_dict(d: dict) -> HomOutcome:
    tag = d["outcome"]
    if tag == "Hom":
        return Hom(CycleColoring.from_dict(d["coloring"]))
    if tag == "OddGirthCertificate":
        return OddGirthCertificate(tuple(d["cycle"]))
    if tag == "StructureFailure":
        return StructureFailure(d["stage"], d["reason"], d.get("diagnostics", {}))
    raise InvalidInputError(f"unknown outcome tag {tag!r}")


def two_color_forest(f: Graph) -> list[int]:
    """Proper 2-colouring of a forest; each component's minimum vertex gets 0."""
    color = [-1] * f.n
    adj = f.adj
    roots = 0
    for s in range(f.n):
        if color[s] >= 0:
            continue
        roots += 1
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    raise InvalidInputError(f"not a forest: odd cycle through edge ({v}, {w})")
    if f.m != f.n - roots:
        raise InvalidInputError("not a forest: graph contains a cycle")
    return color


def find_bad_edges(c_f: Sequence[int], removed: Sequence[Edge]) -> BadEdgeSet:
    """Monochromatic removed edges, represented by their smaller endpoint."""
    bad, reps, cls = [], [], []
    seen = set()
    for u, v in removed:
        if c_f[u] != c_f[v]:
            continue
        x = min(u, v)
        if x in seen:
            raise InvalidInputError(f"representative {x} shared by two bad edges")
        seen.add(x)
        bad.append((min(u, v), max(u, v)))
        reps.append(x)
        cls.append(c_f[x])
    return BadEdgeSet(tuple(bad), tuple(reps), tuple(cls))


def shift_coloring(f: Graph, c_f: Sequence[int], bad: BadEdgeSet, ell: int) -> CycleColoring:
    """Recolour balls of radius 2l-2 around the representatives.

    A vertex at F-distance d from representative x in class j gets
    ``c_F(x) - (-1)^j (d + 1) mod (2l + 1)``; all others keep ``c_F``.
    """
    if ell < 1:
        raise InvalidParameterError(f"ell must be >= 1, got {ell}")
    mod = 2 * ell + 1
    radius = 2 * ell - 2
    colors = list(c_f)
    owner: dict[int, int] = {}
    adj = f.adj
    for x, j in zip(bad.reps, bad.rep_class):
        sign = 1 if j == 0 else -1
        for v, d in bfs_ball(adj, [x], radius).items():
            if v in owner:
                raise PreconditionError(
                    f"vertex {v} lies within {radius} of representatives {owner[v]} and {x}")
            owner[v] = x
            colors[v] = (c_f[x] - sign * (d + 1)) % mod
    return CycleColoring(ell, tuple(colors))


def verify_coloring(g: Graph, col: CycleColoring) -> list[Edge]:
    """Edges whose colours do not differ by +-1 modulo 2l+1 (empty when proper)."""
    if len(col.colors) != g.n:
        raise InvalidInputError(f"colouring has {len(col.colors)} entries for n={g.n}")
    if g.m == 0:
        return []
    c = np.asarray(col.colors, dtype=np.int64)
    mod = col.modulus
    diff = (c[g.edges[:, 0]] - c[g.edges[:, 1]]) % mod
    ok = (diff == 1) | (diff == mod - 1)
    return [tuple(e) for e in g.edges[~ok].tolist()]


def verify_certificate(g: Graph, cycle: Sequence[int], ell: int) -> bool:
    return is_cycle_of(g, cycle) and len(cycle) % 2 == 1 and len(cycle) < 2 * ell + 1


def hom_find(g: Graph, ell: int, long_threshold: int | None = None) -> HomOutcome:
    """Find a homomorphism to C_{2l+1} or an odd cycle shorter than 2l+1."""
    if ell < 1:
        raise InvalidParameterError(f"ell must be >= 1, got {ell}")
    d = decompose(g, 4 * ell - 2, long_threshold)
    if isinstance(d, StructureFailure):
        # the disjunction still holds if a short odd cycle exists
        og = odd_girth(g, limit=2 * ell - 1)
        if og.length is not None:
            return OddGirthCertificate(og.cycle)
        return d
    return _color_from_decomposition(g, d, ell)


def _color_from_decomposition(g: Graph, d: Decomposition, ell: int) -> HomOutcome:
    c_f = two_color_forest(d.forest)
    bad = find_bad_edges(c_f, d.removed)
    try:
        col = shift_coloring(d.forest, c_f, bad, ell)
    except PreconditionError as exc:
        return StructureFailure("shift", str(exc))
    violations = verify_coloring(g, col)
    if not violations:
        return Hom(col)
    adj = d.forest.adj
    for x, y in violations:
        path = bfs_path(adj, x, y)
        if path is not None and len(path) % 2 == 1 and len(path) <= 2 * ell - 1:
            if verify_certificate(g, path, ell):
                return OddGirthCertificate(tuple(path))
    return StructureFailure("coloring", "shifted colouring has violations without a short odd cycle",
                            {"violations": [list(e) for e in violations[:10]]})
