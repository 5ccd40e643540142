"""Outer-boundary state and region attachment.

The growing partial map is tracked as a cyclic boundary walk split into
intervals at outward-pointing vertices (boundary vertices whose third edge
still points to the uncolored exterior).  Attaching an n-point region along
one interval rewrites the boundary locally:

  n = 0   new edge closes the arc; the two neighbor intervals merge
  n = 1   one new outward point; the neighbor intervals extend to it
  n >= 2  a chain of n new points; the neighbors become boundary intervals
          and n-1 intervals appear between the new points

In every case the interval count goes from k to k + n - 2 (the k = 2 and
k = 3 wrap-around cases are handled explicitly).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .errors import MapError
from .maps import PlanarMap, Walk, edge_key, walk_edges

OLD = "old"
NEW = "new"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class Interval:
    """One maximal boundary arc between consecutive outward vertices."""

    id: str
    arc: Walk  # boundary vertices, endpoints outward (full cycle when k = 1)
    faces: frozenset  # interior faces bordering the arc
    kind: str = OLD

    def arc_edges(self, whole_boundary: bool = False) -> List[Tuple[str, str]]:
        if whole_boundary:
            return walk_edges(self.arc)
        return [edge_key(self.arc[i], self.arc[i + 1]) for i in range(len(self.arc) - 1)]


@dataclass(frozen=True)
class BoundaryState:
    """Immutable snapshot of the growing map and its outer boundary."""

    faces: Mapping[str, Walk]  # interior fragment: face id -> walk
    boundary: Walk  # oriented boundary cycle
    intervals: Tuple[Interval, ...]  # cyclic order, aligned with boundary
    serial: int = 0  # counter for fresh vertex/interval/face names

    @property
    def k(self) -> int:
        return len(self.intervals)

    @property
    def interior_faces(self) -> Set[str]:
        return set(self.faces)

    def arc_edges(self, index: int) -> List[Tuple[str, str]]:
        return self.intervals[index].arc_edges(whole_boundary=self.k == 1)


def seed_polygon(k: int, face_id: str = "seed") -> BoundaryState:
    """Synthetic k-gon seed used by the harness (no enclosing map needed)."""
    if k < 2:
        raise MapError(f"cannot seed a polygon with {k} intervals")
    verts = tuple(f"b{i}" for i in range(k))
    intervals = tuple(
        Interval(id=f"I{i}", arc=(verts[i], verts[(i + 1) % k]), faces=frozenset({face_id}))
        for i in range(k)
    )
    return BoundaryState(faces={face_id: verts}, boundary=verts, intervals=intervals, serial=0)


def seed_boundary(m: PlanarMap, face: str) -> BoundaryState:
    """Start growing from one face of a (cubified) map.

    Every vertex of the seed face has its third edge leaving the face, so each
    boundary edge is its own interval.
    """
    if face not in m.faces:
        raise MapError(f"unknown face {face}")
    walks = m.faces[face]
    if len(walks) != 1:
        raise MapError(f"face {face} has {len(walks)} boundary walks; cannot seed from it")
    walk = walks[0]
    intervals = tuple(
        Interval(id=f"I{i}", arc=(walk[i], walk[(i + 1) % len(walk)]), faces=frozenset({face}))
        for i in range(len(walk))
    )
    return BoundaryState(faces={face: walk}, boundary=walk, intervals=intervals, serial=0)


def check_attach_legal(k: int, n: int) -> Optional[str]:
    """Return an error message if an n-point attachment is illegal at k.

    At three intervals the colors are pairwise distinct, so a 0-point region
    (which forces its neighbors to share a color) is impossible; at two
    intervals each interval neighbors the same interval on both sides, so a
    1-point region (which forces its neighbors to differ) is impossible.
    Regions with n >= 2 new points attach at any k >= 2.
    """
    if n < 0:
        return f"illegal attachment: n={n}"
    if k <= 1:
        return f"illegal attachment at k={k} (n={n})"
    if k == 3 and n == 0:
        return f"illegal attachment at k={k} (n={n})"
    if k == 2 and n == 1:
        return f"illegal attachment at k={k} (n={n})"
    return None


def _rotated(seq: Sequence, i: int) -> tuple:
    i %= len(seq)
    return tuple(seq[i:]) + tuple(seq[:i])


def attach(
    state: BoundaryState,
    index: int,
    n: int,
    region_id: Optional[str] = None,
    new_chain: Optional[Sequence[str]] = None,
) -> BoundaryState:
    """Attach an n-point region along interval `index`.

    `new_chain` lists the n new vertices in region-walk order (first element
    adjacent to the arc's far endpoint).  When omitted, fresh names are
    generated -- the harness mode.  The returned interval tuple starts with
    the rewritten block (merged interval, or extended-prev / new / extended-
    next) followed by the untouched intervals; scheme updates rely on this
    exact order.
    """
    k = state.k
    msg = check_attach_legal(k, n)
    if msg:
        raise MapError(msg)
    serial = state.serial
    if region_id is None:
        region_id = f"r{serial}"
        serial += 1
    if new_chain is None:
        new_chain = []
        for _ in range(n):
            new_chain.append(f"p{serial}")
            serial += 1
    elif len(new_chain) != n:
        raise MapError(f"new_chain has {len(new_chain)} vertices, expected n={n}")
    new_chain = tuple(new_chain)

    rot = _rotated(state.intervals, (index - 1) % k) if k >= 3 else state.intervals
    if k >= 3:
        prev, target, nxt = rot[0], rot[1], rot[2]
        rest = rot[3:]
    else:  # k == 2, n == 0
        target = state.intervals[index]
        prev = nxt = state.intervals[1 - index]
        rest = ()

    arc = target.arc
    u, w = arc[0], arc[-1]
    # Region walk: along the arc u..w, then back outside through the chain.
    region_walk = tuple(arc) + new_chain
    if len(set(region_walk)) != len(region_walk):
        raise MapError("attachment would create a non-simple region walk")
    faces = dict(state.faces)
    faces[region_id] = region_walk

    # New boundary: the arc interior is replaced by the reversed chain.
    b = state.boundary
    start = b.index(u)
    doubled = b + b
    seg_len = len(arc)
    if doubled[start : start + seg_len] != tuple(arc):
        raise MapError("interval arc not aligned with boundary orientation")
    suffix = doubled[start + seg_len - 1 : start + len(b)]  # w .. back to before u
    new_boundary: Walk = (u,) + tuple(reversed(new_chain)) + suffix

    if n == 0:
        if k == 2:
            merged = Interval(
                id=f"I{serial}",
                arc=new_boundary,
                faces=prev.faces | {region_id},
                kind=OLD,
            )
            serial += 1
            new_intervals: Tuple[Interval, ...] = (merged,)
        else:
            merged = Interval(
                id=f"I{serial}",
                arc=tuple(prev.arc) + tuple(nxt.arc),
                faces=prev.faces | nxt.faces | {region_id},
                kind=OLD,
            )
            serial += 1
            new_intervals = (merged,) + tuple(replace(iv, kind=OLD) for iv in rest)
    elif n == 1:
        y = new_chain[0]
        prev2 = Interval(id=prev.id, arc=tuple(prev.arc) + (y,), faces=prev.faces | {region_id}, kind=BOUNDARY)
        next2 = Interval(id=nxt.id, arc=(y,) + tuple(nxt.arc), faces=nxt.faces | {region_id}, kind=BOUNDARY)
        new_intervals = (prev2, next2) + tuple(replace(iv, kind=OLD) for iv in rest)
    elif k == 2:
        # The single other interval extends at both ends and wraps the old
        # boundary; its endpoints are new points, so its kind is `new`.
        ys = new_chain
        merged = Interval(
            id=f"I{serial}",
            arc=(ys[0],) + tuple(prev.arc) + (ys[-1],),
            faces=prev.faces | {region_id},
            kind=NEW,
        )
        serial += 1
        mids = []
        for j in range(n - 1, 0, -1):
            mids.append(
                Interval(id=f"I{serial}", arc=(ys[j], ys[j - 1]), faces=frozenset({region_id}), kind=NEW)
            )
            serial += 1
        new_intervals = (merged,) + tuple(mids)
    else:
        ys = new_chain  # y1 adjacent to w, yn adjacent to u
        prev2 = Interval(
            id=prev.id, arc=tuple(prev.arc) + (ys[-1],), faces=prev.faces | {region_id}, kind=BOUNDARY
        )
        next2 = Interval(
            id=nxt.id, arc=(ys[0],) + tuple(nxt.arc), faces=nxt.faces | {region_id}, kind=BOUNDARY
        )
        mids = []
        # boundary order after prev2: yn, yn-1, ..., y1
        for j in range(n - 1, 0, -1):
            mids.append(
                Interval(id=f"I{serial}", arc=(ys[j], ys[j - 1]), faces=frozenset({region_id}), kind=NEW)
            )
            serial += 1
        new_intervals = (prev2,) + tuple(mids) + (next2,) + tuple(replace(iv, kind=OLD) for iv in rest)

    return BoundaryState(faces=faces, boundary=new_boundary, intervals=new_intervals, serial=serial)


def match_face_to_arc(face_walk: Walk, arc: Walk) -> Optional[Tuple[str, ...]]:
    """If `arc` is a contiguous stretch of `face_walk`, return the remaining
    vertices as the new chain (first element adjacent to the arc's end).

    Tries both walk orientations; returns None when the face does not fit.
    """
    m = len(face_walk)
    a = len(arc)
    if a > m:
        return None
    for walk in (face_walk, tuple(reversed(face_walk))):
        doubled = walk + walk
        for s in range(m):
            if doubled[s : s + a] == tuple(arc):
                chain = doubled[s + a : s + m]
                if set(chain) & set(arc):
                    return None
                return tuple(chain)
    return None


def find_attachable_interval(
    state: BoundaryState, full_map: PlanarMap
) -> Optional[Tuple[int, str, int]]:
    """Scan intervals for one whose exterior face touches the boundary only
    along that interval's arc; return (interval index, face id, n).

    The scan order is the deterministic cyclic interval order, so ties break
    to the lowest index.  Returns None when no interval qualifies (either the
    closure face is all that remains, or the existence claim fails).
    """
    interior = state.interior_faces
    if len(set(full_map.faces) - interior) <= 1:
        return None  # only the closure face remains
    boundary_set = set(state.boundary)
    # Map each edge pair to the faces owning it, to find the exterior side.
    owners: Dict[Tuple[str, str], List[str]] = {}
    for fid, w in full_map.walks():
        for e in walk_edges(w):
            owners.setdefault(e, []).append(fid)

    for idx in range(state.k):
        arc = state.intervals[idx].arc
        edges = state.arc_edges(idx)
        candidates: Set[str] = set()
        for e in edges:
            for fid in owners.get(e, []):
                if fid not in interior:
                    candidates.add(fid)
        if len(candidates) != 1:
            continue
        (fid,) = candidates
        walks = full_map.faces[fid]
        if len(walks) != 1:
            continue
        fwalk = walks[0]
        if set(fwalk) & boundary_set != set(arc):
            continue
        chain = match_face_to_arc(fwalk, arc if state.k > 1 else state.boundary)
        if chain is None:
            continue
        return idx, fid, len(chain)
    return None


def close(
    state: BoundaryState,
    interior_coloring: Mapping[str, int],
    color: int,
    face_id: str,
) -> Dict[str, int]:
    """Color the single remaining exterior face and return the total coloring."""
    if state.k != 1:
        raise MapError(f"boundary not reduced: k={state.k}")
    interval = state.intervals[0]
    for f in sorted(interval.faces):
        if f not in interior_coloring:
            raise MapError(f"interior face {f} is uncolored")
        if interior_coloring[f] == color:
            raise MapError(
                f"closure infeasible: color {color} clashes with interior face {f}"
            )
    out = dict(interior_coloring)
    out[face_id] = color
    return out
