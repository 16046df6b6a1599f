"""Shared engine turning a guess of extreme clique members into a clique.

A guess fixes, per radius class (and per plane for balls), an ordered pair
of member centers assumed extreme along the slab axis.  Candidates confined
by the corresponding slabs split into two sides X and Y that are each
internally a clique, so the maximum clique over the candidates is a maximum
independent set of the bipartite conflict graph between the sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InternalError, ValidationError
from .geometry import (
    Disk,
    ObjectId,
    Side,
    balls_intersect,
    class_index_by_id,
    disks_intersect,
    in_slab,
)
from .matching import conflict_graph_from_ids


@dataclass(frozen=True)
class GuessSlot:
    """One guessed extreme pair: ids a, b with position(a) <= position(b)."""

    type_index: int
    plane_index: int | None
    a: ObjectId
    b: ObjectId


@dataclass(frozen=True)
class Guess:
    slots: tuple[GuessSlot, ...]

    def member_ids(self) -> tuple:
        seen: list = []
        for slot in self.slots:
            for v in (slot.a, slot.b):
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    def slot_for(self, type_index: int, plane_index: int | None = None) -> GuessSlot | None:
        for slot in self.slots:
            if slot.type_index == type_index and slot.plane_index == plane_index:
                return slot
        return None


@dataclass(frozen=True)
class CliqueResult:
    ids: tuple
    size: int
    witness_guess: Guess | None

    def sort_key(self) -> tuple:
        # Total order: larger cliques first, then lexicographically smallest ids.
        return (-self.size, self.ids)

    @classmethod
    def from_ids(cls, ids, guess: Guess | None) -> "CliqueResult":
        ordered = tuple(sorted(ids))
        return cls(ordered, len(ordered), guess)


class PreparedDisks:
    """Precomputed adjacency and per-class orderings for one disk instance.

    Shared by every guess: building it once turns the per-guess work into
    set lookups plus a handful of exact slab tests.
    """

    def __init__(self, disks: Sequence[Disk]):
        if not disks:
            raise ValidationError("empty disk instance")
        ids = [d.id for d in disks]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate disk ids")
        self.disks = tuple(sorted(disks, key=lambda d: d.id))
        self.by_id = {d.id: d for d in self.disks}
        self.class_of = class_index_by_id(self.disks)
        self.by_class: dict[int, list[Disk]] = {}
        for d in self.disks:
            self.by_class.setdefault(self.class_of[d.id], []).append(d)
        for members in self.by_class.values():
            members.sort(key=lambda d: (d.center.x, d.id))
        # neighbors[i] contains i itself: every disk intersects itself.
        self.neighbors: dict = {d.id: {d.id} for d in self.disks}
        n = len(self.disks)
        for i in range(n):
            a = self.disks[i]
            for j in range(i + 1, n):
                b = self.disks[j]
                if disks_intersect(a, b):
                    self.neighbors[a.id].add(b.id)
                    self.neighbors[b.id].add(a.id)

    def validate_guess(self, guess: Guess) -> None:
        seen_slots = set()
        for slot in guess.slots:
            if slot.plane_index is not None:
                raise ValidationError("disk guesses carry no plane index")
            if slot.type_index in seen_slots:
                raise ValidationError(f"duplicate slot for type {slot.type_index}")
            seen_slots.add(slot.type_index)
            for v in (slot.a, slot.b):
                if v not in self.by_id:
                    raise ValidationError(f"guess references unknown disk {v!r}")
                if self.class_of[v] != slot.type_index:
                    raise ValidationError(f"disk {v!r} is not of type {slot.type_index}")
            da, db = self.by_id[slot.a], self.by_id[slot.b]
            if (da.center.x, da.id) > (db.center.x, db.id):
                raise ValidationError(f"slot pair ({slot.a!r}, {slot.b!r}) out of order")
        if not guess.slots:
            raise ValidationError("guess has no occupied slots")
        members = guess.member_ids()
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                if v not in self.neighbors[u]:
                    raise ValidationError(f"guess members {u!r}, {v!r} do not intersect")

    def assemble(self, guess: Guess) -> tuple[list, list]:
        """Candidate id lists (X, Y) for a validated guess.

        X collects, per occupied slot, the disks of that type with centers in
        the closed upper slab of the guessed pair that intersect every guess
        member; Y uses the lower slabs.  Centers on the segment qualify for
        both sides and are kept in X only.
        """
        psi = guess.member_ids()
        xs: list = []
        ys: list = []
        for slot in guess.slots:
            a = self.by_id[slot.a].center
            b = self.by_id[slot.b].center
            for d in self.by_class[slot.type_index]:
                nbrs = self.neighbors[d.id]
                if any(m not in nbrs for m in psi):
                    continue
                upper = in_slab(a, b, d.center, Side.UPPER)
                lower = in_slab(a, b, d.center, Side.LOWER)
                if upper:
                    xs.append(d.id)
                elif lower:
                    ys.append(d.id)
        xs.sort()
        ys.sort()
        return xs, ys


def assemble_candidates(disks: Sequence[Disk], guess: Guess) -> tuple[list, list]:
    prep = PreparedDisks(disks)
    prep.validate_guess(guess)
    return prep.assemble(guess)


def assert_side_clique(objects: Sequence, ids: Sequence) -> bool:
    """Pairwise-check one assembled side; a violation is a solver bug.

    Returns True so tests can assert on the call; never returns False.
    """
    by_id = {obj.id: obj for obj in objects}
    chosen = [by_id[i] for i in ids]
    for i, a in enumerate(chosen):
        meets = disks_intersect if isinstance(a, Disk) else balls_intersect
        for b in chosen[i + 1 :]:
            if not meets(a, b):
                raise InternalError(
                    f"assembled side is not a clique: {a.id!r} and {b.id!r} do not intersect"
                )
    return True


def solve_sides(x_ids, y_ids, neighbors, guess: Guess | None) -> CliqueResult:
    """Maximum clique over X u Y given that each side is internally a clique."""
    edges = [(u, v) for u in x_ids for v in y_ids if v not in neighbors[u]]
    g = conflict_graph_from_ids(x_ids, y_ids, edges)
    g.max_matching()
    return CliqueResult.from_ids(g.max_independent_set(), guess)


def solve_guess(disks: Sequence[Disk], guess: Guess) -> CliqueResult:
    """Assemble candidates for one guess and extract the clique."""
    prep = PreparedDisks(disks)
    prep.validate_guess(guess)
    xs, ys = prep.assemble(guess)
    return solve_sides(xs, ys, prep.neighbors, guess)
