"""Precomputed maximum-clique sizes for every center-aligned rectangle.

Works over unit-disk instances in general position (all center x distinct,
all center y distinct; radii may be any common value, canonicalized to 1 by
exact scaling).  Two dense 4-index tables are built:

- S[l, r, t, b]: largest clique among disks adjacent to both the l-th and
  r-th centers in x-order whose centers lie in [x_l, x_r] x [y_b, y_t],
  provided both those centers lie in the y-range (0 otherwise, and 0 whenever
  the two centers are more than two scaled units apart).  Built by sweeping
  a bottom and a top line over each slab while a conflict graph maintains
  its maximum matching incrementally.
- M[l, r, t, b]: largest clique among centers in the rectangle, combining S
  entries with one-step index shrinks via dynamic programming; each entry
  remembers which branch won so queries can recover a witness clique.

Table file format "DCRQ1" (all integers little-endian):

    magic "DCRQ1" (5 bytes) | version (1 byte, = 1) | n (uint32)
    x-order permutation (n x uint32) | y-order permutation (n x uint32)
    instance digest (uint64)
    S sizes  (n^4 x uint32, row-major [l, r, t, b])
    M sizes  (n^4 x uint32, same layout)
    M witness codes (n^4 x uint32): 0 = take S here, 1/2/3/4 = shrink
    left/right/top/bottom by one index position.
"""

from __future__ import annotations

import struct
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InternalError, ParseError, ValidationError
from .geometry import Disk, Point2, Side, dist_sq, in_slab, scalar
from .matching import LEFT, RIGHT, ConflictGraph

DEFAULT_MAX_N = 64

MAGIC = b"DCRQ1"
FORMAT_VERSION = 1

WITNESS_S = 0
WITNESS_LEFT = 1
WITNESS_RIGHT = 2
WITNESS_TOP = 3
WITNESS_BOTTOM = 4


class UnitInstance:
    """An equal-radius disk instance prepared for range-table construction."""

    def __init__(self, disks: Sequence[Disk]):
        if not disks:
            raise ValidationError("empty unit-disk instance")
        ids = [d.id for d in disks]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate disk ids")
        radii = {d.radius for d in disks}
        if len(radii) != 1:
            raise ValidationError(f"unit-disk instance needs one radius, got {sorted(radii)}")
        self.disks = tuple(sorted(disks, key=lambda d: d.id))
        self.radius = self.disks[0].radius
        # Canonical radius 1: adjacency and slab membership are scale-invariant.
        self.centers = [
            Point2(d.center.x / self.radius, d.center.y / self.radius) for d in self.disks
        ]
        self.n = len(self.disks)
        xs_all = [c.x for c in self.centers]
        ys_all = [c.y for c in self.centers]
        if len(set(xs_all)) != self.n or len(set(ys_all)) != self.n:
            raise ValidationError(
                "general position violated: center x and y coordinates must be "
                "pairwise distinct (use perturb_to_general_position)"
            )
        self.x_order = sorted(range(self.n), key=lambda i: xs_all[i])
        self.y_order = sorted(range(self.n), key=lambda i: ys_all[i])
        self.x_rank = [0] * self.n
        self.y_rank = [0] * self.n
        for pos, i in enumerate(self.x_order):
            self.x_rank[i] = pos
        for pos, i in enumerate(self.y_order):
            self.y_rank[i] = pos
        self.xs = [xs_all[i] for i in self.x_order]
        self.ys = [ys_all[i] for i in self.y_order]
        # adj[i] includes i: every disk intersects itself.
        self.adj: list[set] = [set() for _ in range(self.n)]
        for i in range(self.n):
            self.adj[i].add(i)
            for j in range(i + 1, self.n):
                if dist_sq(self.centers[i], self.centers[j]) <= 4:
                    self.adj[i].add(j)
                    self.adj[j].add(i)

    def scale_rect(self, rect) -> tuple:
        x1, y1, x2, y2 = (scalar(v) for v in rect)
        if x1 > x2 or y1 > y2:
            raise ValidationError(f"malformed rectangle {rect!r}")
        return (x1 / self.radius, y1 / self.radius, x2 / self.radius, y2 / self.radius)

    def ids_in_rect(self, rect) -> list:
        """Ids of disks with centers in the closed rectangle (original units)."""
        x1, y1, x2, y2 = self.scale_rect(rect)
        return sorted(
            self.disks[i].id
            for i, c in enumerate(self.centers)
            if x1 <= c.x <= x2 and y1 <= c.y <= y2
        )


def perturb_to_general_position(disks: Sequence[Disk]) -> list[Disk]:
    """Nudge centers onto distinct x and y coordinates, deterministically.

    Disk j (in id order) moves by (j*step, j*step) where step is a power of
    ten chosen small enough that distinct coordinates keep their order and
    every non-tangent pair keeps its adjacency; only exactly-tangent pairs
    can change adjacency.  Coordinates stay exact decimals.
    """
    if not disks:
        raise ValidationError("empty instance")
    ordered = sorted(disks, key=lambda d: d.id)
    n = len(ordered)
    values = sorted({d.center.x for d in ordered} | {d.center.y for d in ordered})
    gaps = [b - a for a, b in zip(values, values[1:]) if b > a]
    bound = min(gaps) / 2 if gaps else Fraction(1)
    bound = min(bound, Fraction(1))
    margin = None
    span = Fraction(0)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = ordered[i], ordered[j]
            rsum = a.radius + b.radius
            gap = abs(dist_sq(a.center, b.center) - rsum * rsum)
            dx = abs(a.center.x - b.center.x) + abs(a.center.y - b.center.y)
            span = max(span, dx)
            if gap > 0:
                margin = gap if margin is None else min(margin, gap)
    if margin is not None:
        # |d(dist_sq)| <= 2*span*T + 2*T^2 <= (2*span + 2)*T for T <= 1.
        bound = min(bound, margin / (2 * span + 2))
    step = Fraction(1)
    while step * n >= bound:
        step /= 10
    nudged = [
        Disk(d.id, Point2(d.center.x + j * step, d.center.y + j * step), d.radius)
        for j, d in enumerate(ordered)
    ]
    xs = {d.center.x for d in nudged}
    ys = {d.center.y for d in nudged}
    if len(xs) != n or len(ys) != n:
        raise InternalError("perturbation failed to reach general position")
    return nudged


@dataclass
class STable:
    sizes: np.ndarray  # uint32, shape (n, n, n, n), axes (l, r, t, b)


@dataclass
class MTable:
    sizes: np.ndarray  # uint32, shape (n, n, n, n)
    witness: np.ndarray  # uint32 codes, same shape


def _slab_members(inst: UnitInstance, l: int, r: int) -> tuple[list, dict]:
    """Disk indices confined by slab (l, r) plus their side assignment."""
    pl, pr = inst.x_order[l], inst.x_order[r]
    cl, cr = inst.centers[pl], inst.centers[pr]
    members = []
    side = {}
    for i in range(inst.n):
        if not (l <= inst.x_rank[i] <= r):
            continue
        if pl not in inst.adj[i] or pr not in inst.adj[i]:
            continue
        members.append(i)
        # Centers on the segment fall in both slabs and are kept on the X side.
        if in_slab(cl, cr, inst.centers[i], Side.UPPER):
            side[i] = LEFT
        else:
            side[i] = RIGHT
    return members, side


def build_s_table(inst: UnitInstance, max_n: int = DEFAULT_MAX_N) -> STable:
    """Sweep every slab with a maintained conflict graph and record S entries.

    Per slab, the bottom line climbs through the y-order; between bottom
    advances the top line sweeps up (inserting centers) or down (deleting
    them), so one incrementally-matched conflict graph serves every strip.
    Each recorded size is members_in_strip - matching_size.
    """
    n = inst.n
    if n > max_n:
        raise ValidationError(
            f"instance size {n} above range-table cap {max_n} "
            f"(tables cost O(n^4) memory; raise max_n deliberately)"
        )
    S = np.zeros((n, n, n, n), dtype=np.uint32)
    for l in range(n):
        pl = inst.x_order[l]
        for r in range(l, n):
            pr = inst.x_order[r]
            if dist_sq(inst.centers[pl], inst.centers[pr]) > 4:
                continue
            members, side = _slab_members(inst, l, r)
            member_set = set(members)
            yl, yr = inst.y_rank[pl], inst.y_rank[pr]
            graph = ConflictGraph()
            present: dict[str, list] = {LEFT: [], RIGHT: []}
            count = 0

            def insert(idx):
                nonlocal count
                if idx not in member_set:
                    return
                mine, other = side[idx], (RIGHT if side[idx] == LEFT else LEFT)
                conflicts = [j for j in present[other] if j not in inst.adj[idx]]
                graph.insert_vertex(idx, mine, conflicts)
                present[mine].append(idx)
                count += 1

            def delete(idx):
                nonlocal count
                if idx not in member_set:
                    return
                graph.delete_vertex(idx)
                present[side[idx]].remove(idx)
                count -= 1

            def record(t, b):
                if b <= yl <= t and b <= yr <= t:
                    S[l, r, t, b] = count - graph.matching_size

            for t in range(n):
                insert(inst.y_order[t])
                record(t, 0)
            at_top = True
            for b in range(1, n):
                delete(inst.y_order[b - 1])
                if at_top:
                    for t in range(n - 1, b - 1, -1):
                        record(t, b)
                        if t > b:
                            delete(inst.y_order[t])
                    at_top = False
                else:
                    for t in range(b, n):
                        insert(inst.y_order[t])
                        record(t, b)
                    at_top = True
    return STable(S)


def build_m_table(inst: UnitInstance, s: STable) -> MTable:
    """Dynamic program over index rectangles, widest dependency first.

    M[l, r, t, b] = max of S[l, r, t, b] (valid exactly when both slab guards
    lie in the y-range, which S already encodes as zero otherwise) and the
    four entries with one side pulled inward by one sorted position.
    """
    n = inst.n
    S = s.sizes
    M = np.zeros_like(S)
    W = np.zeros_like(S)
    for w in range(n):
        li = np.arange(n - w)
        L = li[:, None]
        for h in range(n):
            bi = np.arange(n - h)
            B = bi[None, :]
            cand = np.zeros((5, n - w, n - h), dtype=np.uint32)
            cand[WITNESS_S] = S[L, L + w, B + h, B]
            if w > 0:
                cand[WITNESS_LEFT] = M[L + 1, L + w, B + h, B]
                cand[WITNESS_RIGHT] = M[L, L + w - 1, B + h, B]
            if h > 0:
                cand[WITNESS_TOP] = M[L, L + w, B + h - 1, B]
                cand[WITNESS_BOTTOM] = M[L, L + w, B + h, B + 1]
            M[L, L + w, B + h, B] = cand.max(axis=0)
            W[L, L + w, B + h, B] = cand.argmax(axis=0)
    return MTable(M, W)


def _solve_slab_rect(inst: UnitInstance, l: int, r: int, t: int, b: int) -> tuple[int, tuple]:
    """Re-solve one S entry to recover the witness ids."""
    members, side = _slab_members(inst, l, r)
    chosen = [i for i in members if b <= inst.y_rank[i] <= t]
    xs = sorted((i for i in chosen if side[i] == LEFT), key=lambda i: inst.disks[i].id)
    ys = sorted((i for i in chosen if side[i] == RIGHT), key=lambda i: inst.disks[i].id)
    graph = ConflictGraph()
    for i in xs:
        graph.insert_vertex(i, LEFT, [])
    for j in ys:
        graph.insert_vertex(j, RIGHT, [i for i in xs if i not in inst.adj[j]])
    graph.max_matching()
    mis = graph.max_independent_set()
    ids = tuple(sorted(inst.disks[i].id for i in mis))
    return len(ids), ids


def query_rect(inst: UnitInstance, m: MTable, rect) -> tuple[int, tuple]:
    """Clique size and witness ids for an axis-aligned rectangle query.

    The rectangle is given as (x1, y1, x2, y2) in original units.  The
    extreme centers inside it are located by binary search; the M entry at
    those indices answers the size, and following the stored witness codes
    to an S entry (then re-solving that single slab strip) yields the ids.
    """
    x1, y1, x2, y2 = inst.scale_rect(rect)
    l = bisect_left(inst.xs, x1)
    r = bisect_right(inst.xs, x2) - 1
    b = bisect_left(inst.ys, y1)
    t = bisect_right(inst.ys, y2) - 1
    if l > r or b > t:
        return 0, ()
    size = int(m.sizes[l, r, t, b])
    if size == 0:
        return 0, ()
    while True:
        code = int(m.witness[l, r, t, b])
        if code == WITNESS_S:
            break
        if code == WITNESS_LEFT:
            l += 1
        elif code == WITNESS_RIGHT:
            r -= 1
        elif code == WITNESS_TOP:
            t -= 1
        elif code == WITNESS_BOTTOM:
            b += 1
        else:
            raise InternalError(f"corrupt witness code {code}")
    got, ids = _solve_slab_rect(inst, l, r, t, b)
    if got != size:
        raise InternalError(f"witness size {got} disagrees with table size {size}")
    return size, ids


@dataclass
class TablesFile:
    n: int
    x_order: list[int]
    y_order: list[int]
    digest: int
    s: STable
    m: MTable


def write_tables(path, inst: UnitInstance, s: STable, m: MTable, digest: int) -> None:
    n = inst.n
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(bytes([FORMAT_VERSION]))
        fh.write(struct.pack("<I", n))
        fh.write(np.asarray(inst.x_order, dtype="<u4").tobytes())
        fh.write(np.asarray(inst.y_order, dtype="<u4").tobytes())
        fh.write(struct.pack("<Q", digest))
        fh.write(np.ascontiguousarray(s.sizes, dtype="<u4").tobytes())
        fh.write(np.ascontiguousarray(m.sizes, dtype="<u4").tobytes())
        fh.write(np.ascontiguousarray(m.witness, dtype="<u4").tobytes())


def read_tables(path) -> TablesFile:
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:5] != MAGIC:
        raise ParseError(f"{path}: not a DCRQ1 table file")
    if blob[5] != FORMAT_VERSION:
        raise ParseError(f"{path}: unsupported format version {blob[5]}")
    (n,) = struct.unpack_from("<I", blob, 6)
    off = 10
    expect = off + 2 * 4 * n + 8 + 3 * 4 * n**4
    if len(blob) != expect:
        raise ParseError(f"{path}: truncated table file ({len(blob)} vs {expect} bytes)")
    x_order = np.frombuffer(blob, dtype="<u4", count=n, offset=off).tolist()
    off += 4 * n
    y_order = np.frombuffer(blob, dtype="<u4", count=n, offset=off).tolist()
    off += 4 * n
    (digest,) = struct.unpack_from("<Q", blob, off)
    off += 8
    shape = (n, n, n, n)
    s_sizes = np.frombuffer(blob, dtype="<u4", count=n**4, offset=off).reshape(shape).copy()
    off += 4 * n**4
    m_sizes = np.frombuffer(blob, dtype="<u4", count=n**4, offset=off).reshape(shape).copy()
    off += 4 * n**4
    witness = np.frombuffer(blob, dtype="<u4", count=n**4, offset=off).reshape(shape).copy()
    return TablesFile(n, x_order, y_order, digest, STable(s_sizes), MTable(m_sizes, witness))
