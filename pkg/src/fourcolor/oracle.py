"""Brute-force ground truth: exhaustive coloring and reference primitive sets.

Everything here is deliberately naive (backtracking over explicit
assignments) and capped at desk scale; its value is independence from the
incremental machinery it validates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Set, Tuple

from .boundary import BoundaryState
from .errors import ScaleLimitError
from .maps import DualGraph, walk_edges
from .schemes import COLORS, PrimitiveSet, Scheme, Witness

MAX_INTERIOR_FACES = 12
MAX_INTERVALS = 12


@dataclass(frozen=True)
class ColoringEnumeration:
    count: int
    sample: Optional[Mapping[str, int]] = None


def _adjacency_lists(adjacency: DualGraph) -> Dict[str, Set[str]]:
    adj: Dict[str, Set[str]] = {fid: set() for fid in adjacency.nodes}
    for e in adjacency.edges:
        a, b = sorted(e)
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _colorings(
    nodes: List[str],
    adj: Dict[str, Set[str]],
    num_colors: int,
    fixed: Optional[Mapping[str, int]] = None,
) -> Iterator[Dict[str, int]]:
    """Backtracking enumeration of proper colorings, nodes in given order."""
    fixed = fixed or {}
    assignment: Dict[str, int] = {}

    def rec(i: int) -> Iterator[Dict[str, int]]:
        if i == len(nodes):
            yield dict(assignment)
            return
        node = nodes[i]
        choices = [fixed[node]] if node in fixed else range(num_colors)
        for c in choices:
            if any(assignment.get(nb) == c for nb in adj[node]):
                continue
            assignment[node] = c
            yield from rec(i + 1)
            del assignment[node]

    return rec(0)


def four_color_bruteforce(adjacency: DualGraph) -> Optional[Dict[str, int]]:
    """First proper 4-coloring in sorted first-fit order, or None."""
    nodes = sorted(adjacency.nodes)
    adj = _adjacency_lists(adjacency)
    for coloring in _colorings(nodes, adj, 4):
        return coloring
    return None


def count_colorings(adjacency: DualGraph, num_colors: int) -> ColoringEnumeration:
    nodes = sorted(adjacency.nodes)
    adj = _adjacency_lists(adjacency)
    count = 0
    sample = None
    for coloring in _colorings(nodes, adj, num_colors):
        if sample is None:
            sample = coloring
        count += 1
    return ColoringEnumeration(count=count, sample=sample)


def _fragment_adjacency(state: BoundaryState) -> Dict[str, Set[str]]:
    """Interior faces sharing at least one edge, recomputed from the walks."""
    owners: Dict[Tuple[str, str], List[str]] = {}
    for fid in sorted(state.faces):
        for e in walk_edges(state.faces[fid]):
            owners.setdefault(e, []).append(fid)
    adj: Dict[str, Set[str]] = {fid: set() for fid in state.faces}
    for fids in owners.values():
        for i in range(len(fids)):
            for j in range(i + 1, len(fids)):
                if fids[i] != fids[j]:
                    adj[fids[i]].add(fids[j])
                    adj[fids[j]].add(fids[i])
    return adj


def _interval_borders(state: BoundaryState) -> List[List[str]]:
    """For each interval, the interior faces owning one of its arc edges."""
    owners: Dict[Tuple[str, str], List[str]] = {}
    for fid in sorted(state.faces):
        for e in walk_edges(state.faces[fid]):
            owners.setdefault(e, []).append(fid)
    borders = []
    for idx in range(state.k):
        faces: List[str] = []
        for e in state.arc_edges(idx):
            for fid in owners.get(e, []):
                if fid not in faces:
                    faces.append(fid)
        borders.append(sorted(faces))
    return borders


def _schemes_for_profile(
    allowed: Tuple[FrozenSet[int], ...], constrain_adjacent: bool
) -> List[Scheme]:
    """Proper cyclic schemes with per-position allowed colors."""
    k = len(allowed)
    if k == 1:
        return [(c,) for c in sorted(allowed[0])]
    out: List[Scheme] = []

    def rec(prefix: List[int]):
        i = len(prefix)
        if i == k:
            if not constrain_adjacent or prefix[0] != prefix[-1] or k == 1:
                out.append(tuple(prefix))
            return
        for c in sorted(allowed[i]):
            if constrain_adjacent and prefix and c == prefix[-1]:
                continue
            rec(prefix + [c])

    rec([])
    return out


def primitive_set_reference(
    state: BoundaryState,
    fixed_colors: Optional[Mapping[str, int]] = None,
    constrain_adjacent: bool = True,
) -> PrimitiveSet:
    """Reference primitive set by full enumeration.

    Enumerates every proper 4-coloring of the interior faces (extending
    `fixed_colors`, typically the seed face's pinned color) and collects each
    scheme whose interval colors avoid the bordering interior faces and --
    under the default reading -- differ on adjacent intervals.  One witness
    per scheme, first in deterministic order.
    """
    if len(state.faces) > MAX_INTERIOR_FACES:
        raise ScaleLimitError(
            f"scale limit: {len(state.faces)} interior faces > {MAX_INTERIOR_FACES}"
        )
    if state.k > MAX_INTERVALS:
        raise ScaleLimitError(f"scale limit: {state.k} intervals > {MAX_INTERVALS}")

    nodes = sorted(state.faces)
    adj = _fragment_adjacency(state)
    borders = _interval_borders(state)

    result: Dict[Scheme, Witness] = {}
    profile_cache: Dict[Tuple[FrozenSet[int], ...], List[Scheme]] = {}
    for interior in _colorings(nodes, adj, 4, fixed=fixed_colors):
        allowed = tuple(
            frozenset(c for c in COLORS if all(interior[f] != c for f in faces))
            for faces in borders
        )
        schemes = profile_cache.get(allowed)
        if schemes is None:
            schemes = _schemes_for_profile(allowed, constrain_adjacent)
            profile_cache[allowed] = schemes
        for s in schemes:
            if s not in result:
                result[s] = dict(interior)
    return PrimitiveSet(k=state.k, schemes=frozenset(result), witnesses=result)
