"""Bipartite conflict graphs with a maintained maximum matching.

A conflict graph pairs two candidate cliques X and Y; its edges are the
NON-intersecting cross pairs.  A maximum independent set of the conflict
graph is then a maximum clique of XubY, recovered via Koenig's theorem
from a maximum matching.

The static solver is Hopcroft-Karp; insert_vertex and delete_vertex keep
the matching maximum with a single alternating-path search per update.
All searches scan vertices and neighbors in sorted-id order, so identical
operation sequences always reproduce identical matchings and witnesses.
"""

from __future__ import annotations

from bisect import insort
from collections import deque
from typing import Callable, Iterable, Sequence

from .errors import InternalError, ValidationError

LEFT = "left"
RIGHT = "right"


class ConflictGraph:
    def __init__(self):
        self._side: dict = {}  # id -> LEFT | RIGHT
        self._adj: dict = {}  # id -> sorted list of opposite-side ids
        self._match: dict = {}  # id -> partner id, symmetric

    # -- inspection ------------------------------------------------------

    @property
    def matching_size(self) -> int:
        return len(self._match) // 2

    def vertices(self, side: str | None = None) -> list:
        if side is None:
            return sorted(self._adj)
        return sorted(v for v, s in self._side.items() if s == side)

    def side_of(self, v) -> str:
        return self._side[v]

    def neighbors(self, v) -> list:
        return list(self._adj[v])

    def edge_count(self) -> int:
        return sum(len(a) for a in self._adj.values()) // 2

    def matching_pairs(self) -> list[tuple]:
        return sorted((u, v) for u, v in self._match.items() if self._side[u] == LEFT)

    def matched_partner(self, v):
        return self._match.get(v)

    # -- construction ----------------------------------------------------

    def _add_vertex(self, v, side: str) -> None:
        if v in self._side:
            raise ValidationError(f"vertex {v!r} already present")
        self._side[v] = side
        self._adj[v] = []

    def _add_edge(self, u, v) -> None:
        insort(self._adj[u], v)
        insort(self._adj[v], u)

    # -- updates ---------------------------------------------------------

    def insert_vertex(self, v, side: str, conflict_neighbors: Iterable) -> None:
        """Add v with its conflict edges and restore matching maximality.

        One augmenting search from v suffices: any augmenting path in the
        grown graph must end at the only new exposed vertex.
        """
        if side not in (LEFT, RIGHT):
            raise ValidationError(f"unknown side {side!r}")
        neighbors = sorted(set(conflict_neighbors))
        for u in neighbors:
            if u not in self._side:
                raise ValidationError(f"unknown conflict neighbor {u!r}")
            if self._side[u] == side:
                raise ValidationError(f"conflict edge {v!r}-{u!r} stays on one side")
        self._add_vertex(v, side)
        for u in neighbors:
            self._add_edge(v, u)
        self._augment_from(v)

    def delete_vertex(self, v) -> None:
        """Remove v and its edges; re-augment from its freed partner, if any."""
        if v not in self._side:
            raise ValidationError(f"unknown vertex {v!r}")
        partner = self._match.pop(v, None)
        if partner is not None:
            del self._match[partner]
        for u in self._adj[v]:
            self._adj[u].remove(v)
        del self._adj[v]
        del self._side[v]
        if partner is not None:
            self._augment_from(partner)

    def _augment_from(self, start) -> bool:
        """Alternating DFS from an exposed vertex; flips one path if found."""
        if start in self._match:
            return False
        visited = set()

        def try_match(v) -> bool:
            for u in self._adj[v]:
                if u in visited:
                    continue
                visited.add(u)
                partner = self._match.get(u)
                if partner is None or try_match(partner):
                    self._match[v] = u
                    self._match[u] = v
                    return True
            return False

        return try_match(start)

    # -- maximality ------------------------------------------------------

    def max_matching(self) -> int:
        """Grow the current matching to maximum (Hopcroft-Karp) and return its size."""
        INF = len(self._adj) + 1
        lefts = self.vertices(LEFT)
        while True:
            # BFS phase: layer left vertices by alternating distance.
            dist = {}
            queue = deque()
            for v in lefts:
                if v not in self._match:
                    dist[v] = 0
                    queue.append(v)
            found = INF
            while queue:
                v = queue.popleft()
                if dist[v] >= found:
                    continue
                for u in self._adj[v]:
                    partner = self._match.get(u)
                    if partner is None:
                        found = min(found, dist[v] + 1)
                    elif partner not in dist:
                        dist[partner] = dist[v] + 1
                        queue.append(partner)
            if found == INF:
                return self.matching_size

            # DFS phase: vertex-disjoint shortest augmenting paths.
            def advance(v) -> bool:
                for u in self._adj[v]:
                    partner = self._match.get(u)
                    if partner is None:
                        if dist[v] + 1 == found:
                            self._match[v] = u
                            self._match[u] = v
                            return True
                    elif dist.get(partner) == dist[v] + 1:
                        if advance(partner):
                            self._match[v] = u
                            self._match[u] = v
                            return True
                dist[v] = INF
                return False

            for v in lefts:
                if v not in self._match:
                    advance(v)

    def has_augmenting_path(self) -> bool:
        """Certify (non-)maximality by one BFS over alternating paths."""
        queue = deque(v for v in self.vertices(LEFT) if v not in self._match)
        seen = set(queue)
        while queue:
            v = queue.popleft()
            for u in self._adj[v]:
                partner = self._match.get(u)
                if partner is None:
                    return True
                if partner not in seen:
                    seen.add(partner)
                    queue.append(partner)
        return False

    def max_independent_set(self) -> set:
        """Koenig extraction: an independent set of size |V| - matching_size.

        Requires the matching to be maximum; a stale matching is an internal
        error because every caller is expected to maintain maximality.
        """
        if self.has_augmenting_path():
            raise InternalError("max_independent_set called with a non-maximum matching")
        # Alternating reachability from exposed left vertices.
        reached = set(v for v in self.vertices(LEFT) if v not in self._match)
        queue = deque(reached)
        while queue:
            v = queue.popleft()
            if self._side[v] == LEFT:
                for u in self._adj[v]:
                    if u not in reached and self._match.get(v) != u:
                        reached.add(u)
                        queue.append(u)
            else:
                partner = self._match.get(v)
                if partner is not None and partner not in reached:
                    reached.add(partner)
                    queue.append(partner)
        mis = set()
        for v, side in self._side.items():
            if (side == LEFT) == (v in reached):
                mis.add(v)
        return mis


def build_conflict_graph(
    x_objects: Sequence,
    y_objects: Sequence,
    intersects: Callable,
) -> ConflictGraph:
    """Conflict graph between candidate sets X and Y.

    An edge joins u in X and v in Y exactly when the objects do NOT
    intersect.  The matching starts empty.
    """
    g = ConflictGraph()
    for obj in x_objects:
        g._add_vertex(obj.id, LEFT)
    for obj in y_objects:
        g._add_vertex(obj.id, RIGHT)
    for u in x_objects:
        for v in y_objects:
            if not intersects(u, v):
                g._add_edge(u.id, v.id)
    return g


def conflict_graph_from_ids(x_ids, y_ids, edges) -> ConflictGraph:
    """Same construction when conflicts are already known as id pairs."""
    g = ConflictGraph()
    for v in x_ids:
        g._add_vertex(v, LEFT)
    for v in y_ids:
        g._add_vertex(v, RIGHT)
    for u, v in edges:
        g._add_edge(u, v)
    return g
