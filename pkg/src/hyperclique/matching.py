"""Maximum cliques of co-bipartite graphs via the bipartite complement.

A graph is co-bipartite when its complement is bipartite.  Its maximum
clique is the complement's maximum independent set, which Koenig's theorem
recovers from a maximum matching.  The complement of a co-bipartite graph
is dense to write down but cheap to walk, so nothing here materializes it:
the 2-coloring scans sorted non-neighbor lists and the matching consumes
per-vertex complement adjacency computed once per subproblem.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graphs import Graph

__all__ = [
    "Bipartition",
    "OddCycle",
    "MatchingResult",
    "min_cobipartite_edges",
    "quick_reject_cobipartite",
    "complement_bipartition",
    "hopcroft_karp",
    "max_clique_cobipartite",
]


@dataclass(frozen=True)
class Bipartition:
    """2-coloring of the complement: every complement edge crosses sides."""

    side: np.ndarray  # bool per vertex; True = side B


@dataclass(frozen=True)
class OddCycle:
    """Witness that the complement is not bipartite.

    `vertices` lists an odd closed walk of the complement in cycle order:
    consecutive entries, and the wrap-around pair, are non-adjacent in the
    original graph.
    """

    vertices: np.ndarray


class MatchingResult:
    """Matching as an involution array; pair[v] = partner or -1."""

    __slots__ = ("pair", "size")

    def __init__(self, pair: np.ndarray, size: int):
        self.pair = pair
        self.size = size


def min_cobipartite_edges(nv: int) -> int:
    """Fewest edges any co-bipartite graph on nv vertices can have.

    Two disjoint cliques as balanced as possible and no cross edges.
    """
    lo, hi = nv // 2, (nv + 1) // 2
    return lo * (lo - 1) // 2 + hi * (hi - 1) // 2


def quick_reject_cobipartite(sub: Graph) -> bool:
    """True when the edge count alone rules out co-bipartiteness."""
    return sub.m < min_cobipartite_edges(sub.n)


def _nonneighbors(g: Graph, u: int, pool: np.ndarray) -> np.ndarray:
    """Members of sorted `pool` not adjacent to u, excluding u itself."""
    out = pool[~np.isin(pool, g.neighbors(u), assume_unique=True)]
    return out[out != u]


def complement_bipartition(sub: Graph) -> Bipartition | OddCycle:
    """2-color the complement of `sub`, or return an odd complement cycle.

    BFS over the complement without building it: expanding u visits the
    not-yet-colored non-neighbors of u; a colored non-neighbor on u's own
    side closes an odd cycle through their BFS ancestors.
    """
    n = sub.n
    side = np.zeros(n, dtype=bool)
    colored = np.zeros(n, dtype=bool)
    parent = np.full(n, -1, dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    for root in range(n):
        if colored[root]:
            continue
        colored[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            others = _nonneighbors(sub, u, np.flatnonzero(colored))
            clash = others[side[others] == side[u]]
            if clash.size:
                return OddCycle(_odd_cycle(parent, depth, u, int(clash[0])))
            fresh = _nonneighbors(sub, u, np.flatnonzero(~colored))
            side[fresh] = not side[u]
            colored[fresh] = True
            parent[fresh] = u
            depth[fresh] = depth[u] + 1
            queue.extend(fresh.tolist())
    return Bipartition(side)


def _odd_cycle(parent: np.ndarray, depth: np.ndarray, u: int, w: int) -> np.ndarray:
    """Cycle through the BFS tree paths of u and w plus the edge uw."""
    up, wp = [u], [w]
    while depth[up[-1]] > depth[wp[-1]]:
        up.append(int(parent[up[-1]]))
    while depth[wp[-1]] > depth[up[-1]]:
        wp.append(int(parent[wp[-1]]))
    while up[-1] != wp[-1]:
        up.append(int(parent[up[-1]]))
        wp.append(int(parent[wp[-1]]))
    # both paths now end at the meet vertex; keep it once
    cycle = up + wp[-2::-1]
    return np.asarray(cycle, dtype=np.int64)


def hopcroft_karp(
    left: np.ndarray,
    right: np.ndarray,
    comp_neighbors: Callable[[int], np.ndarray],
) -> MatchingResult:
    """Maximum matching of the bipartite complement in O(E * sqrt(V)).

    `comp_neighbors(l)` yields the right-side vertices complement-adjacent
    to left vertex l.  Layered BFS from free left vertices alternates with
    augmentation along shortest augmenting paths; the augmenting walk is an
    explicit stack so deep paths cannot overflow the interpreter.
    """
    ids = [int(v) for v in left] + [int(v) for v in right]
    nv = max(ids) + 1 if ids else 0
    pair = np.full(nv, -1, dtype=np.int64)
    lefts = [int(v) for v in left]
    INF = -1  # sentinel layer meaning "unreached this phase"
    dist = np.full(nv, INF, dtype=np.int64)
    dist_nil = [INF]  # layer of the nearest free right vertex

    def bfs() -> bool:
        dist[:] = INF
        dist_nil[0] = INF
        queue = deque()
        for l in lefts:
            if pair[l] == -1:
                dist[l] = 0
                queue.append(l)
        while queue:
            l = queue.popleft()
            if dist_nil[0] != INF and dist[l] >= dist_nil[0]:
                continue
            for r in comp_neighbors(l):
                nxt = int(pair[r])
                if nxt == -1:
                    if dist_nil[0] == INF:
                        dist_nil[0] = dist[l] + 1
                elif dist[nxt] == INF:
                    dist[nxt] = dist[l] + 1
                    queue.append(nxt)
        return dist_nil[0] != INF

    def augment(start: int) -> bool:
        # frames hold (left vertex, its complement-neighbor cursor)
        stack = [(start, iter(comp_neighbors(start)))]
        trail = []  # (l, r) edges of the tentative path
        while stack:
            l, it = stack[-1]
            advanced = False
            for r in it:
                r = int(r)
                nxt = int(pair[r])
                if nxt == -1:
                    if dist[l] + 1 != dist_nil[0]:
                        continue
                    trail.append((l, r))
                    for pl, pr in trail:
                        pair[pl], pair[pr] = pr, pl
                    return True
                if dist[nxt] == dist[l] + 1:
                    trail.append((l, r))
                    stack.append((nxt, iter(comp_neighbors(nxt))))
                    advanced = True
                    break
            if not advanced:
                dist[l] = INF
                stack.pop()
                if trail:
                    trail.pop()
        return False

    size = 0
    while bfs():
        for l in lefts:
            if pair[l] == -1 and augment(l):
                size += 1
    return MatchingResult(pair, size)


def max_clique_cobipartite(sub: Graph, split: Bipartition | None = None) -> np.ndarray:
    """Maximum clique of a co-bipartite graph, as sorted vertex ids.

    Koenig: a minimum vertex cover of the bipartite complement is the
    unreached left side plus the reached right side of an alternating BFS
    from free left vertices; the clique is everything outside the cover.
    Callers that already hold the complement bipartition can pass it in.
    Raises ValueError when the complement is not bipartite.
    """
    if split is None:
        split = complement_bipartition(sub)
    if isinstance(split, OddCycle):
        raise ValueError("graph is not co-bipartite")
    left = np.flatnonzero(~split.side)
    right = np.flatnonzero(split.side)
    comp = {int(l): _nonneighbors(sub, int(l), right) for l in left}
    matching = hopcroft_karp(left, right, comp.__getitem__)

    reached = np.zeros(sub.n, dtype=bool)
    queue = deque(int(l) for l in left if matching.pair[l] == -1)
    for l in queue:
        reached[l] = True
    while queue:
        l = queue.popleft()
        for r in comp[l]:
            if reached[r]:
                continue
            # complement edges l->r, matching edges r->l2 alternate
            reached[r] = True
            l2 = int(matching.pair[r])
            if l2 != -1 and not reached[l2]:
                reached[l2] = True
                queue.append(l2)
    cover = np.concatenate([left[~reached[left]], right[reached[right]]])
    keep = np.ones(sub.n, dtype=bool)
    keep[cover.astype(np.int64)] = False
    clique = np.flatnonzero(keep)
    if __debug__:
        for i, u in enumerate(clique[:-1]):
            rest = clique[i + 1:]
            assert np.isin(rest, sub.neighbors(int(u)), assume_unique=True).all(), \
                "cover recovery produced a non-clique"
    return clique
