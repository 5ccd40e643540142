"""End-to-end map coloring.

Cubify, seed one face, grow the colored fragment one attachable region at a
time while maintaining the primitive scheme set, close the last face from a
surviving witness, undo cubification, verify.  When a guarantee the growth
procedure relies on fails (empty scheme set, no attachable interval), the run
records the violation and completes the map by brute force instead.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Set, Tuple

from .boundary import (
    attach,
    close,
    find_attachable_interval,
    match_face_to_arc,
    seed_boundary,
)
from .errors import MapError, ScaleLimitError
from .maps import (
    PlanarMap,
    cubify,
    dual,
    smooth_degree_two,
    uncubify,
    validate_map,
)
from .oracle import four_color_bruteforce
from .schemes import seed_primitive_set, update_on_attach

MAX_PIPELINE_FACES = 40


@dataclass(frozen=True)
class AttachmentOp:
    interval_index: int
    face_id: str
    n: int

    def to_json_obj(self) -> dict:
        return {"interval_index": self.interval_index, "face_id": self.face_id, "n": self.n}


@dataclass
class ColoringRun:
    input_faces: Tuple[str, ...]
    coloring: Dict[str, int]
    trace: List[AttachmentOp] = field(default_factory=list)
    used_fallback: bool = False
    claim_violations: List[str] = field(default_factory=list)
    verified: bool = False
    violations: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_json_obj(self) -> dict:
        return {
            "faces": list(self.input_faces),
            "coloring": dict(sorted(self.coloring.items())),
            "trace": [op.to_json_obj() for op in self.trace],
            "used_fallback": self.used_fallback,
            "claim_violations": list(self.claim_violations),
            "verified": self.verified,
            "violations": list(self.violations),
            "seconds": self.seconds,
        }


def verify_coloring(m: PlanarMap, coloring: Mapping[str, int]) -> Tuple[bool, List[str]]:
    """Proper iff every dual edge joins differently colored faces."""
    missing = sorted(set(m.faces) - set(coloring))
    if missing:
        raise MapError(f"coloring is missing faces: {', '.join(missing)}")
    violations = []
    for fid, c in sorted(coloring.items()):
        if c not in (0, 1, 2, 3):
            violations.append(f"face {fid} has color {c} outside 0..3")
    for e in sorted(dual(m).edges, key=sorted):
        a, b = sorted(e)
        if coloring[a] == coloring[b]:
            violations.append(f"adjacent faces {a} and {b} share color {coloring[a]}")
    return not violations, violations


def _fallback(m: PlanarMap, run: ColoringRun, reason: str) -> ColoringRun:
    run.claim_violations.append(reason)
    run.used_fallback = True
    brute = four_color_bruteforce(dual(m))
    if brute is None:
        run.violations.append("no proper 4-coloring found by brute force")
        run.coloring = {}
        return run
    run.coloring = {fid: brute[fid] for fid in m.faces}
    run.verified, run.violations = verify_coloring(m, run.coloring)
    return run


def _grow_coloring(c: PlanarMap, seed_face: str, seed_color: int, run: ColoringRun) -> Optional[Dict[str, int]]:
    """Incremental growth over the cubified map; None means a claim failed."""
    state = seed_boundary(c, seed_face)
    pset = seed_primitive_set(state.k, seed_face, seed_color)
    while True:
        found = find_attachable_interval(state, c)
        if found is None:
            break
        idx, fid, n = found
        arc = state.intervals[idx].arc if state.k > 1 else state.boundary
        chain = match_face_to_arc(c.faces[fid][0], arc)
        state = attach(state, idx, n, region_id=fid, new_chain=chain)
        pset = update_on_attach(pset, idx, n, region_id=fid)
        run.trace.append(AttachmentOp(interval_index=idx, face_id=fid, n=n))
        if not pset.schemes:
            run.claim_violations.append(
                f"primitive set emptied after attaching {fid}"
            )
            return None
    remaining = sorted(set(c.faces) - state.interior_faces)
    if len(remaining) != 1:
        run.claim_violations.append(
            f"no attachable interval though {len(remaining)} faces remain"
        )
        return None
    if state.k != 1:
        run.claim_violations.append(
            f"boundary not reduced at closure: k={state.k}"
        )
        return None
    scheme = min(sorted(pset.schemes))
    witness = pset.witnesses[scheme]
    return close(state, witness, scheme[0], remaining[0])


def color_map(
    m: PlanarMap,
    seed_face: Optional[str] = None,
    seed_color: int = 0,
    rng_seed: int = 0,
) -> ColoringRun:
    """Color one connected map (every face a single closed walk)."""
    t0 = time.time()
    run = ColoringRun(input_faces=tuple(sorted(m.faces)), coloring={})
    report = validate_map(m)
    if not report.ok:
        raise MapError("; ".join(report.problems))
    try:
        if len(m.faces) == 2:
            a, b = sorted(m.faces)
            run.coloring = {a: seed_color, b: (seed_color + 1) % 4}
            run.verified, run.violations = verify_coloring(m, run.coloring)
            return run
        c, record = cubify(smooth_degree_two(m))
        if len(c.faces) > MAX_PIPELINE_FACES:
            raise ScaleLimitError(
                f"{len(c.faces)} faces after cubification exceeds cap {MAX_PIPELINE_FACES}"
            )
        seed = seed_face if seed_face is not None else sorted(c.faces)[0]
        full = _grow_coloring(c, seed, seed_color, run)
        if full is None:
            return _fallback(m, run, run.claim_violations.pop())
        ok, problems = verify_coloring(c, full)
        if not ok:
            return _fallback(m, run, "grown coloring failed verification: " + problems[0])
        run.coloring = uncubify(full, record)
        run.verified, run.violations = verify_coloring(m, run.coloring)
        return run
    finally:
        run.seconds = time.time() - t0


def _vertex_components(m: PlanarMap) -> List[Set[str]]:
    """Connected components of the map's vertices under walk edges."""
    adj: Dict[str, Set[str]] = {}
    for _, w in m.walks():
        for a, b in zip(w, w[1:] + (w[0],)):
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    seen: Set[str] = set()
    comps = []
    for v in sorted(adj):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def _component_submap(m: PlanarMap, comp: Set[str]) -> PlanarMap:
    faces = {}
    for fid, walks in m.faces.items():
        kept = tuple(w for w in walks if set(w) <= comp)
        if kept:
            faces[fid] = kept
    return PlanarMap(faces=faces)


def color_with_islands(m: PlanarMap, rng_seed: int = 0) -> ColoringRun:
    """Color a map that may contain islands (faces with several boundary
    walks separating nested vertex components).  Each component is colored by
    `color_map`, seeded with the already-assigned color of the face it shares
    with the part colored before it."""
    t0 = time.time()
    report = validate_map(m)
    if not report.ok:
        raise MapError("; ".join(report.problems))
    comps = _vertex_components(m)
    if len(comps) == 1:
        return color_map(m, rng_seed=rng_seed)

    run = ColoringRun(input_faces=tuple(sorted(m.faces)), coloring={})
    submaps = [_component_submap(m, comp) for comp in comps]
    # mainland first: the component holding the first face in sorted order
    first = sorted(m.faces)[0]
    order = sorted(range(len(submaps)), key=lambda i: (first not in submaps[i].faces, i))
    colored: Dict[str, int] = {}
    done: Set[int] = set()
    queue = [order[0]]
    pending = set(order[1:])
    try:
        while queue:
            i = queue.pop(0)
            if i in done:
                continue
            sub = submaps[i]
            shared = sorted(set(sub.faces) & set(colored))
            if not shared:
                part = color_map(sub, rng_seed=rng_seed)
            else:
                # the sea face around this island already has a color; grow
                # inward from it
                sea = shared[0]
                part = color_map(sub, seed_face=sea, seed_color=colored[sea], rng_seed=rng_seed)
            run.trace.extend(part.trace)
            run.used_fallback = run.used_fallback or part.used_fallback
            run.claim_violations.extend(part.claim_violations)
            for fid, col in part.coloring.items():
                if fid in colored and colored[fid] != col:
                    raise MapError(f"face {fid} colored inconsistently across islands")
                colored[fid] = col
            done.add(i)
            for j in sorted(pending - done):
                if set(submaps[j].faces) & set(colored):
                    queue.append(j)
        if pending - done:
            raise MapError("island components unreachable from the mainland")
        run.coloring = colored
        run.verified, run.violations = verify_coloring(m, run.coloring)
        return run
    finally:
        run.seconds = time.time() - t0
