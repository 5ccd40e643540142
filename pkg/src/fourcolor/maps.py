"""Spherical planar maps given by face walks.

A map is a set of faces, each bounded by one or more cyclic vertex walks.
Ordinary faces have a single walk.  A face may carry several walks when it
encloses "islands": disconnected pieces of the graph drawn inside it.  The
usual single-component sphere map is the one-walk-per-face special case.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Set, Tuple

from .errors import MapError

Walk = Tuple[str, ...]
Edge = Tuple[str, str]  # sorted vertex pair


def edge_key(u: str, v: str) -> Edge:
    return (u, v) if u <= v else (v, u)


def walk_edges(walk: Sequence[str]) -> List[Edge]:
    """Unordered vertex pairs traversed by a cyclic walk."""
    return [edge_key(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]


@dataclass(frozen=True)
class PlanarMap:
    """Combinatorial sphere map: face id -> tuple of boundary walks."""

    faces: Mapping[str, Tuple[Walk, ...]]

    @classmethod
    def from_walks(cls, faces: Mapping[str, Sequence]) -> "PlanarMap":
        """Build from `{face: [v, ...]}` or `{face: [[v, ...], [w, ...]]}`."""
        out: Dict[str, Tuple[Walk, ...]] = {}
        for fid, spec in faces.items():
            if spec and isinstance(spec[0], (list, tuple)):
                out[fid] = tuple(tuple(w) for w in spec)
            else:
                out[fid] = (tuple(spec),)
        return cls(faces=out)

    @property
    def face_ids(self) -> List[str]:
        return sorted(self.faces)

    def walks(self) -> List[Tuple[str, Walk]]:
        """All (face id, walk) pairs in deterministic order."""
        return [(fid, w) for fid in self.face_ids for w in self.faces[fid]]

    @property
    def vertices(self) -> List[str]:
        seen: Set[str] = set()
        for _, w in self.walks():
            seen.update(w)
        return sorted(seen)

    def edge_slots(self) -> Counter:
        """Multiplicity of each unordered vertex pair over all walk edges."""
        slots: Counter = Counter()
        for _, w in self.walks():
            slots.update(walk_edges(w))
        return slots

    @property
    def num_edges(self) -> int:
        return sum(self.edge_slots().values()) // 2

    def degrees(self) -> Dict[str, int]:
        """Vertex degree = number of face corners at the vertex."""
        deg: Dict[str, int] = defaultdict(int)
        for _, w in self.walks():
            for v in w:
                deg[v] += 1
        return dict(deg)

    def components(self) -> List[Set[str]]:
        """Vertex sets of the connected components of the underlying graph."""
        adj: Dict[str, Set[str]] = defaultdict(set)
        for _, w in self.walks():
            for i, v in enumerate(w):
                u = w[(i + 1) % len(w)]
                adj[v].add(u)
                adj[u].add(v)
        seen: Set[str] = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                for nxt in adj[stack.pop()]:
                    if nxt not in comp:
                        comp.add(nxt)
                        stack.append(nxt)
            seen |= comp
            comps.append(comp)
        return comps


@dataclass(frozen=True)
class DualGraph:
    """Region adjacency: two faces are adjacent iff they share an edge."""

    nodes: Tuple[str, ...]
    edges: frozenset  # of 2-element frozensets

    def neighbors(self, fid: str) -> List[str]:
        out = []
        for e in self.edges:
            if fid in e:
                (other,) = e - {fid}
                out.append(other)
        return sorted(out)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: Tuple[str, ...] = ()


@dataclass(frozen=True)
class CubifyRecord:
    """Bookkeeping for undoing the degree-3 reduction."""

    added_faces: Mapping[str, str]  # new face id -> covered original vertex
    vertex_map: Mapping[str, str]  # new vertex id -> original vertex
    original_faces: Tuple[str, ...]


def validate_map(m: PlanarMap) -> ValidationReport:
    """Check the sphere-map invariants, reporting every violation found."""
    problems: List[str] = []
    if len(m.faces) < 2:
        problems.append("map must have at least 2 faces")
    for fid, walks in sorted(m.faces.items()):
        if not walks:
            problems.append(f"face {fid} has no boundary walk")
        for w in walks:
            if len(w) < 2:
                problems.append(f"face {fid} walk shorter than 2 vertices")
            if len(set(w)) != len(w):
                problems.append(f"face {fid} walk repeats a vertex")
    if problems:
        return ValidationReport(False, tuple(problems))

    for (u, v), count in sorted(m.edge_slots().items()):
        if count % 2 != 0:
            problems.append(f"edge {u}-{v} shared by {count} face walk(s), expected an even count")

    # Per-component Euler check: each component, with its incident walks as
    # faces, must be a sphere map on its own.
    comps = m.components()
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
    comp_walks: Dict[int, List[Tuple[str, Walk]]] = defaultdict(list)
    for fid, w in m.walks():
        cids = {comp_of[v] for v in w}
        if len(cids) != 1:
            problems.append(f"face {fid} walk spans multiple components")
            continue
        comp_walks[cids.pop()].append((fid, w))
    for i, comp in enumerate(comps):
        walks = comp_walks.get(i, [])
        fids = [fid for fid, _ in walks]
        if len(set(fids)) != len(fids):
            problems.append(f"component {i} contains two walks of the same face")
        if len(walks) < 2:
            problems.append(f"component {i} has fewer than 2 face walks")
        v = len(comp)
        e = sum(len(w) for _, w in walks) // 2
        f = len(walks)
        if v - e + f != 2:
            problems.append(f"component {i}: Euler V-E+F = {v}-{e}+{f} != 2")

    # The components must hang together through shared faces (one sphere).
    if len(comps) > 1:
        links: Dict[int, Set[int]] = defaultdict(set)
        face_comps: Dict[str, Set[int]] = defaultdict(set)
        for i, walks in comp_walks.items():
            for fid, _ in walks:
                face_comps[fid].add(i)
        for cids in face_comps.values():
            for a in cids:
                links[a] |= cids
        seen = {0}
        stack = [0]
        while stack:
            for nxt in links[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(comps):
            problems.append("map is disconnected (components not linked by shared faces)")

    return ValidationReport(not problems, tuple(problems))


def dual(m: PlanarMap) -> DualGraph:
    """Face adjacency; faces are adjacent iff a vertex pair lies on both."""
    owners: Dict[Edge, Set[str]] = defaultdict(set)
    for fid, w in m.walks():
        for e in walk_edges(w):
            owners[e].add(fid)
    edges = set()
    for fids in owners.values():
        fids = sorted(fids)
        for i in range(len(fids)):
            for j in range(i + 1, len(fids)):
                edges.add(frozenset((fids[i], fids[j])))
    return DualGraph(nodes=tuple(m.face_ids), edges=frozenset(edges))


def _rotation_at(m: PlanarMap, v: str) -> List[str]:
    """Cyclic order of neighbors around vertex v, derived from the corners.

    Each walk visiting v contributes a corner (a, v, b); corners chain into a
    single cycle on a sphere map.
    """
    corners: List[Tuple[str, str]] = []
    for _, w in m.walks():
        for i, x in enumerate(w):
            if x == v:
                corners.append((w[i - 1], w[(i + 1) % len(w)]))
    remaining = corners[:]
    first = remaining.pop(0)
    order = [first[0], first[1]]
    while remaining:
        cur = order[-1]
        for idx, (a, b) in enumerate(remaining):
            if a == cur:
                order.append(b)
                remaining.pop(idx)
                break
            if b == cur:
                order.append(a)
                remaining.pop(idx)
                break
        else:
            raise MapError(f"cannot order edges around vertex {v} (ambiguous corners)")
    if order[-1] != order[0]:
        raise MapError(f"corners around vertex {v} do not close into a cycle")
    return order[:-1]


def smooth_degree_two(m: PlanarMap) -> PlanarMap:
    """Drop degree-2 vertices that merely subdivide an edge.

    Such a vertex sits on the border of exactly two faces and carries no
    adjacency information; removing it changes no face relationships.  A
    vertex is kept when any containing walk is too short to lose it (digon
    pairs stay intact).
    """
    faces = {fid: tuple(ws) for fid, ws in m.faces.items()}
    changed = True
    while changed:
        changed = False
        degs = PlanarMap(faces=faces).degrees()
        for v in sorted(degs):
            if degs[v] != 2:
                continue
            holders = [
                (fid, i)
                for fid, ws in faces.items()
                for i, w in enumerate(ws)
                if v in w
            ]
            if any(len(faces[fid][i]) < 3 for fid, i in holders):
                continue
            # the two neighbors of v fuse into one edge; skip if that pair
            # already exists, as the fused edge would be a duplicate
            w0 = faces[holders[0][0]][holders[0][1]]
            j = w0.index(v)
            fused = edge_key(w0[j - 1], w0[(j + 1) % len(w0)])
            existing = {
                e
                for _, w in PlanarMap(faces=faces).walks()
                for e in walk_edges(w)
                if v not in e
            }
            if fused in existing:
                continue
            for fid, i in holders:
                ws = list(faces[fid])
                ws[i] = tuple(x for x in ws[i] if x != v)
                faces[fid] = tuple(ws)
            changed = True
            break
    return PlanarMap(faces=faces)


def cubify(m: PlanarMap) -> Tuple[PlanarMap, CubifyRecord]:
    """Replace every vertex of degree > 3 by a small covering face."""
    degs = m.degrees()
    for v, d in sorted(degs.items()):
        if d < 3:
            raise MapError(f"vertex {v} has degree {d}: degree below 3 unsupported")

    faces: Dict[str, Tuple[Walk, ...]] = {fid: tuple(ws) for fid, ws in m.faces.items()}
    added: Dict[str, str] = {}
    vmap: Dict[str, str] = {}
    for v in sorted(degs):
        if degs[v] <= 3:
            continue
        cur = PlanarMap(faces=faces)
        ring = _rotation_at(cur, v)  # neighbors in cyclic order
        d = len(ring)
        names = {ring[i]: f"{v}.{i}" for i in range(d)}
        if len(set(ring)) != d:
            raise MapError(f"vertex {v} has parallel incident edges; cubify unsupported here")
        new_faces: Dict[str, Tuple[Walk, ...]] = {}
        for fid, ws in faces.items():
            out_ws = []
            for w in ws:
                if v not in w:
                    out_ws.append(w)
                    continue
                i = w.index(v)
                a, b = w[i - 1], w[(i + 1) % len(w)]
                # The corner (a, v, b) is replaced by the two new vertices on
                # the edges toward a and b.
                repl = (names[a], names[b])
                out_ws.append(tuple(w[:i]) + repl + tuple(w[i + 1 :]))
            new_faces[fid] = tuple(out_ws)
        cover_id = f"cubify:{v}"
        new_faces[cover_id] = (tuple(names[x] for x in ring),)
        faces = new_faces
        added[cover_id] = v
        for nv in names.values():
            vmap[nv] = v

    return PlanarMap(faces=faces), CubifyRecord(
        added_faces=added, vertex_map=vmap, original_faces=tuple(m.face_ids)
    )


def uncubify(coloring: Mapping[str, int], record: CubifyRecord) -> Dict[str, int]:
    """Drop the covering faces, keeping the original faces' colors."""
    out = {}
    for fid in record.original_faces:
        if fid not in coloring:
            raise MapError(f"coloring is missing original face {fid}")
        out[fid] = coloring[fid]
    return out


# --- JSON interchange -------------------------------------------------------


def map_to_json(m: PlanarMap) -> str:
    payload = {}
    for fid in m.face_ids:
        ws = m.faces[fid]
        payload[fid] = list(ws[0]) if len(ws) == 1 else [list(w) for w in ws]
    return json.dumps({"faces": payload}, indent=2, sort_keys=True)


def map_from_json(text: str) -> PlanarMap:
    try:
        data = json.loads(text)
        faces = data["faces"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise MapError(f"malformed map file: {exc}") from exc
    if not isinstance(faces, dict):
        raise MapError("malformed map file: 'faces' must be an object")
    return PlanarMap.from_walks(faces)


def coloring_to_json(coloring: Mapping[str, int]) -> str:
    return json.dumps({"colors": dict(sorted(coloring.items()))}, indent=2, sort_keys=True)


def coloring_from_json(text: str) -> Dict[str, int]:
    try:
        data = json.loads(text)
        colors = data["colors"]
        return {str(f): int(c) for f, c in colors.items()}
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise MapError(f"malformed coloring file: {exc}") from exc
