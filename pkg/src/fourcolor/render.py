"""Drawing colored maps.

Straight-line embeddings via the barycentric (Tutte) method: the outer face
walk is pinned to a regular polygon and every interior vertex solves to the
average of its neighbors.  Geometry is cosmetic only; correctness of
colorings never depends on it.
"""

from __future__ import annotations

import math
from typing import Dict, List, Mapping, Optional, Set, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import MapError
from .maps import PlanarMap

PALETTE = ("#4878cf", "#e8a33d", "#6acc65", "#d65f5f")


def _vertex_adjacency(m: PlanarMap, comp: Optional[Set[str]] = None) -> Dict[str, Set[str]]:
    adj: Dict[str, Set[str]] = {}
    for _, w in m.walks():
        if comp is not None and not set(w) <= comp:
            continue
        for a, b in zip(w, w[1:] + (w[0],)):
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    return adj


def tutte_layout(
    m: PlanarMap, outer_face: str, comp: Optional[Set[str]] = None
) -> Dict[str, Tuple[float, float]]:
    """Coordinates for every vertex (of one component), outer walk pinned."""
    walks = [w for w in m.faces[outer_face] if comp is None or set(w) <= comp]
    if len(walks) != 1:
        raise MapError(f"face {outer_face} has no single boundary walk here")
    outer = walks[0]
    adj = _vertex_adjacency(m, comp)
    pos: Dict[str, Tuple[float, float]] = {}
    n = len(outer)
    for i, v in enumerate(outer):
        ang = 2 * math.pi * i / n - math.pi / 2
        pos[v] = (math.cos(ang), math.sin(ang))
    inner = sorted(v for v in adj if v not in pos)
    if inner:
        index = {v: i for i, v in enumerate(inner)}
        a = np.zeros((len(inner), len(inner)))
        bx = np.zeros(len(inner))
        by = np.zeros(len(inner))
        for v in inner:
            i = index[v]
            a[i, i] = len(adj[v])
            for u in adj[v]:
                if u in index:
                    a[i, index[u]] -= 1.0
                else:
                    bx[i] += pos[u][0]
                    by[i] += pos[u][1]
        xs = np.linalg.solve(a, bx)
        ys = np.linalg.solve(a, by)
        for v in inner:
            pos[v] = (float(xs[index[v]]), float(ys[index[v]]))
    return pos


def _components(m: PlanarMap) -> List[Set[str]]:
    adj = _vertex_adjacency(m)
    seen: Set[str] = set()
    out = []
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
        out.append(comp)
    return out


def _pick_outer(m: PlanarMap, comp: Set[str]) -> str:
    # longest single walk inside the component makes the roomiest frame
    best = None
    for fid, walks in sorted(m.faces.items()):
        for w in walks:
            if set(w) <= comp and (best is None or len(w) > best[0]):
                best = (len(w), fid)
    if best is None:
        raise MapError("component has no face walk")
    return best[1]


def render_map(
    m: PlanarMap,
    coloring: Mapping[str, int],
    out_path: str,
    outer_face: Optional[str] = None,
) -> None:
    """Write an SVG/PNG with one filled polygon per face; islands get one
    panel per vertex component."""
    comps = _components(m)
    fig, axes = plt.subplots(1, len(comps), figsize=(4.5 * len(comps), 4.5))
    if len(comps) == 1:
        axes = [axes]
    for ax, comp in zip(axes, comps):
        outer = outer_face if outer_face and outer_face in m.faces else _pick_outer(m, comp)
        pos = tutte_layout(m, outer, comp)
        if outer in coloring:
            ax.set_facecolor(PALETTE[coloring[outer] % 4] + "55")
        for fid, walks in sorted(m.faces.items()):
            for w in walks:
                if not set(w) <= comp or fid == outer:
                    continue
                pts = [pos[v] for v in w]
                color = PALETTE[coloring[fid] % 4] if fid in coloring else "none"
                ax.fill(
                    [p[0] for p in pts],
                    [p[1] for p in pts],
                    facecolor=color,
                    edgecolor="black",
                    linewidth=1.0,
                )
                cx = sum(p[0] for p in pts) / len(pts)
                cy = sum(p[1] for p in pts) / len(pts)
                ax.text(cx, cy, fid, ha="center", va="center", fontsize=7)
        ax.set_aspect("equal")
        ax.set_xlim(-1.15, 1.15)
        ax.set_ylim(-1.15, 1.15)
        ax.set_xticks([])
        ax.set_yticks([])
        ax.set_title(f"outer: {outer}", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def render_fuzz_summary(counts_by_kind: Mapping[str, Mapping[str, int]], out_path: str) -> None:
    """Bar chart of trial verdicts per harness kind."""
    kinds = sorted(counts_by_kind)
    verdicts = ("consistent", "counterexample", "skipped")
    fig, ax = plt.subplots(figsize=(1.8 * max(3, len(kinds)), 3.5))
    width = 0.25
    xs = np.arange(len(kinds))
    for j, verdict in enumerate(verdicts):
        ax.bar(
            xs + (j - 1) * width,
            [counts_by_kind[k].get(verdict, 0) for k in kinds],
            width,
            label=verdict,
        )
    ax.set_xticks(xs)
    ax.set_xticklabels(kinds, fontsize=8)
    ax.legend(fontsize=8)
    ax.set_ylabel("trials")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
