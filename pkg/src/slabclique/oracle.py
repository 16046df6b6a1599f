"""Brute-force baselines: intersection graphs and Bron-Kerbosch maximum clique.

These exist to cross-check the slab-based solvers, so they favour being
obviously correct and predictable over being fast.  Instance sizes are
capped; the oracle refuses inputs it cannot finish dependably.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import ValidationError
from .geometry import Ball, Disk, balls_intersect, disks_intersect

DEFAULT_MAX_N = 60


def intersection_graph(objects: Sequence[Disk | Ball]) -> dict:
    """Symmetric adjacency (no self loops) over object ids, exact predicates."""
    ids = [obj.id for obj in objects]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate object ids")
    adj: dict = {obj.id: set() for obj in objects}
    for i, a in enumerate(objects):
        meets = disks_intersect if isinstance(a, Disk) else balls_intersect
        for b in objects[i + 1 :]:
            if meets(a, b):
                adj[a.id].add(b.id)
                adj[b.id].add(a.id)
    return adj


def _degeneracy_order(adj: Mapping) -> list:
    """Repeatedly peel a minimum-degree vertex; ties broken by id order."""
    degree = {v: len(adj[v]) for v in adj}
    remaining = set(adj)
    order = []
    while remaining:
        v = min(remaining, key=lambda u: (degree[u], u))
        order.append(v)
        remaining.remove(v)
        for u in adj[v]:
            if u in remaining:
                degree[u] -= 1
    return order


def bron_kerbosch_max_clique(adj: Mapping, max_n: int = DEFAULT_MAX_N) -> tuple:
    """A maximum clique by pivoted Bron-Kerbosch over a degeneracy ordering.

    Returns the lexicographically smallest sorted id tuple among maximum
    cliques.  Refuses graphs above max_n vertices.
    """
    n = len(adj)
    if n > max_n:
        raise ValidationError(f"oracle capped at {max_n} vertices, got {n}")
    if n == 0:
        return ()
    best: list[tuple] = [(0, ())]

    def consider(clique: list) -> None:
        size, ids = len(clique), tuple(sorted(clique))
        cur_size, cur_ids = best[0]
        if (-size, ids) < (-cur_size, cur_ids):
            best[0] = (size, ids)

    def expand(clique: list, cand: set, excl: set) -> None:
        if not cand and not excl:
            consider(clique)
            return
        pivot = max(cand | excl, key=lambda u: (len(adj[u] & cand), u))
        for v in sorted(cand - adj[pivot]):
            expand(clique + [v], cand & adj[v], excl & adj[v])
            cand = cand - {v}
            excl = excl | {v}

    order = _degeneracy_order(adj)
    rank = {v: i for i, v in enumerate(order)}
    for v in order:
        later = {u for u in adj[v] if rank[u] > rank[v]}
        earlier = {u for u in adj[v] if rank[u] < rank[v]}
        expand([v], later, earlier)
    return best[0][1]


def max_clique_oracle(objects: Sequence[Disk | Ball], max_n: int = DEFAULT_MAX_N) -> tuple:
    """Maximum clique of a disk/ball set by brute force; sorted id tuple."""
    if not objects:
        raise ValidationError("empty instance")
    return bron_kerbosch_max_clique(intersection_graph(objects), max_n=max_n)


def verify_clique(objects: Sequence[Disk | Ball], ids: Iterable) -> bool:
    """Check that ids name existing, pairwise-intersecting objects."""
    by_id = {obj.id: obj for obj in objects}
    chosen = []
    for i in ids:
        if i not in by_id:
            return False
        chosen.append(by_id[i])
    for i, a in enumerate(chosen):
        meets = disks_intersect if isinstance(a, Disk) else balls_intersect
        for b in chosen[i + 1 :]:
            if not meets(a, b):
                return False
    return True


def naive_rect_clique(inst, rect) -> int:
    """Maximum clique among unit disks with centers in a closed rectangle.

    `inst` is a range_tables.UnitInstance; `rect` is (x1, y1, x2, y2) in the
    instance's original units.  Pure brute force via Bron-Kerbosch.
    """
    ids = inst.ids_in_rect(rect)
    if not ids:
        return 0
    chosen = [d for d in inst.disks if d.id in set(ids)]
    return len(bron_kerbosch_max_clique(intersection_graph(chosen)))
