"""Star graphs attached to primitive posets, their quadratic form, positive
roots, finite-type detection and enumeration of indecomposable dimension
vectors.

Positive roots are computed twice, by a bounded exhaustive scan and by
reflection closure of the simple roots, and the two enumerations must
agree; `enumerate_indec_dims` then keeps the roots whose coordinates are
chain-monotone and reads them as dimension vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import numpy as np

from .core import DimVector, PosetRepError, PrimitivePoset, ShapeMismatch

IntVector = tuple[int, ...]


class NotDynkin(PosetRepError):
    """Root enumeration requested for a graph of infinite type."""


class FiniteTypeRequired(PosetRepError):
    """Operation only defined for posets of finite representation type."""


@dataclass(frozen=True)
class StarGraph:
    """Tree with one arm per poset branch; vertex 0 is the centre, arm
    vertices follow branch-major in the order (j,1),...,(j,k_j)."""

    poset: PrimitivePoset
    nvertices: int
    edges: tuple[tuple[int, int], ...]

    def vertex_index(self, j: int, i: int) -> int:
        return 1 + sum(self.poset.branches[: j - 1]) + (i - 1)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.nvertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def star_graph(p: PrimitivePoset) -> StarGraph:
    """Underlying graph of the one-point extension of the Hasse diagram."""
    edges = []
    for j, k in enumerate(p.branches, start=1):
        base = 1 + sum(p.branches[: j - 1])
        for i in range(k - 1):
            edges.append((base + i, base + i + 1))
        edges.append((base + k - 1, 0))
    return StarGraph(p, 1 + p.n, tuple(edges))


def tits_form(g: StarGraph, x: IntVector) -> int:
    """q(x) = sum x_v^2 - sum over edges x_u x_w, exactly."""
    if len(x) != g.nvertices:
        raise ShapeMismatch(f"vector length {len(x)} != {g.nvertices} vertices")
    return sum(v * v for v in x) - sum(x[u] * x[w] for u, w in g.edges)


def is_finite_type(p: PrimitivePoset) -> bool:
    """Finite representation type, decided two ways that must agree:
    membership in the classification list and the star Dynkin criterion."""
    ks = tuple(sorted(p.branches, reverse=True))
    m = len(ks)
    by_list = (
        m <= 2
        or (m == 3 and (ks[1:] == (1, 1) or ks in ((2, 2, 1), (3, 2, 1), (4, 2, 1))))
    )
    by_star = m <= 2 or (
        m == 3 and sum(Fraction(1, k + 1) for k in ks) > 1
    )
    assert by_list == by_star, f"finite-type criteria disagree on {p.branches}"
    return by_list


def _scan_bound(p: PrimitivePoset) -> int:
    # 6 covers the largest highest-root coefficient of the exceptional
    # shapes; the chain and (k,1,1) shapes never exceed 2.
    ks = tuple(sorted(p.branches, reverse=True))
    if len(ks) == 3 and ks[1] == 2:
        return 6
    return 2


def _scan_roots(g: StarGraph, bound: int) -> frozenset[IntVector]:
    """All x in [0, bound]^V with x != 0 and q(x) = 1, by brute force."""
    n = g.nvertices
    width = bound + 1
    tail = n
    block = 1
    while tail > 0 and block * width <= 1 << 21:
        block *= width
        tail -= 1
    grid = np.indices((width,) * (n - tail)).reshape(n - tail, -1).T
    roots: set[IntVector] = set()
    for prefix in itertools.product(range(width), repeat=tail):
        x = np.empty((grid.shape[0], n), dtype=np.int64)
        x[:, :tail] = prefix
        x[:, tail:] = grid
        q = (x * x).sum(axis=1)
        for u, w in g.edges:
            q -= x[:, u] * x[:, w]
        for row in x[q == 1]:
            roots.add(tuple(int(v) for v in row))
    return frozenset(roots)


def _reflection_closure(g: StarGraph) -> frozenset[IntVector]:
    """Positive roots as the closure of simple roots under the simple
    reflections, discarding reflections that leave the positive cone."""
    n = g.nvertices
    adj = g.adjacency()
    simple = [tuple(1 if i == v else 0 for i in range(n)) for v in range(n)]
    roots: set[IntVector] = set(simple)
    frontier = list(simple)
    while frontier:
        fresh = []
        for x in frontier:
            for v in range(n):
                reflected = sum(x[u] for u in adj[v]) - x[v]
                if reflected < 0:
                    continue
                y = x[:v] + (reflected,) + x[v + 1 :]
                if y not in roots:
                    roots.add(y)
                    fresh.append(y)
        frontier = fresh
    return frozenset(roots)


@cache
def _positive_roots(branches: tuple[int, ...]) -> frozenset[IntVector]:
    p = PrimitivePoset(branches)
    if not is_finite_type(p):
        raise NotDynkin(f"graph of poset {branches} is not a Dynkin diagram")
    g = star_graph(p)
    scanned = _scan_roots(g, _scan_bound(p))
    reflected = _reflection_closure(g)
    if scanned != reflected:
        raise PosetRepError(
            f"root enumerations disagree for {branches}: "
            f"scan {len(scanned)} vs closure {len(reflected)}"
        )
    return scanned


def positive_roots(g: StarGraph) -> frozenset[IntVector]:
    """The positive roots of g, checked against two independent methods."""
    return _positive_roots(g.poset.branches)


def root_to_dim(p: PrimitivePoset, x: IntVector) -> DimVector:
    """Read root coordinates as a dimension vector (centre first)."""
    branches = []
    pos = 1
    for k in p.branches:
        branches.append(tuple(x[pos : pos + k]))
        pos += k
    return DimVector(x[0], tuple(branches))


def dim_to_root(d: DimVector) -> IntVector:
    return (d.d0,) + tuple(e for b in d.branches for e in b)


def enumerate_indec_dims(p: PrimitivePoset) -> tuple[DimVector, ...]:
    """Dimension vectors of the indecomposable representations: the
    chain-monotone positive roots, sorted by (d0, branch entries)."""
    if not is_finite_type(p):
        raise FiniteTypeRequired(f"poset {p.branches} has infinite type")
    dims = []
    for x in positive_roots(star_graph(p)):
        d = root_to_dim(p, x)
        if d.is_admissible(p):
            dims.append(d)
    dims.sort(key=lambda d: (d.d0, tuple(e for b in d.branches for e in b)))
    return tuple(dims)
