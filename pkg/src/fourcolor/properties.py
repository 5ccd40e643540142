"""Deciding the two boundary properties by exhaustive state exploration.

A state is a pair (k, scheme set).  While k >= 4 any interval may receive a
0-point or 1-point move; states with k in {2, 3} are terminal.  The first
property holds when no reachable state (after any move prefix) has an empty
scheme set; the second collects the colors that some surviving scheme avoids
in every reachable state.

Exploration is breadth-first with deduplication on the canonical packed
scheme set, so reported violating trails are shortest.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Optional, Sequence, Set, Tuple

from .errors import ScaleLimitError
from .schemes import COLORS, Scheme, canonical_key, filter_one, filter_zero

Move = Tuple[str, int]  # ("zero" | "one", interval index)
Trail = Tuple[Move, ...]

NAIVE_MAX_K = 5
NAIVE_MAX_SCHEMES = 64
DEFAULT_MAX_STATES = 200_000


@dataclass(frozen=True)
class PropertyReport:
    holds: bool
    violating_trail: Optional[Trail]
    outer_colors: FrozenSet[int]
    states_explored: int
    memo_hits: int

    def to_json_obj(self) -> dict:
        return {
            "holds": self.holds,
            "violating_trail": [list(m) for m in self.violating_trail]
            if self.violating_trail is not None
            else None,
            "outer_colors": sorted(self.outer_colors),
            "states_explored": self.states_explored,
            "memo_hits": self.memo_hits,
        }


def apply_move(k: int, schemes: FrozenSet[Scheme], move: Move) -> Tuple[FrozenSet[Scheme], int]:
    kind, idx = move
    if kind == "zero":
        return filter_zero(schemes, k, idx)
    if kind == "one":
        return filter_one(schemes, k, idx)
    raise ValueError(f"unknown move kind {kind!r}")


def replay_trail(k: int, schemes: FrozenSet[Scheme], trail: Sequence[Move]) -> Tuple[FrozenSet[Scheme], int]:
    for move in trail:
        schemes, k = apply_move(k, schemes, move)
    return schemes, k


def _avoidable_colors(k: int, schemes: FrozenSet[Scheme], per_interval: bool) -> Set[int]:
    """Colors d such that the set can do without d (per the chosen reading)."""
    if per_interval:
        return {
            d
            for d in COLORS
            if schemes
            and all(any(s[i] != d for s in schemes) for i in range(k))
        }
    return {d for d in COLORS if any(all(c != d for c in s) for s in schemes)}


def _explore_counted(k, schemes, max_states, pruned):
    """Breadth-first walk over all reachable (k, scheme set) states.

    Returns each distinct state once with a shortest trail to it, plus the
    count of deduplicated revisits.  In pruned mode, moves that empty the set
    are not taken (treated as geometrically unavailable, not violations).
    """
    states = []
    seen: Set[Tuple[int, Tuple[int, ...]]] = set()
    queue: deque = deque()
    seen.add(canonical_key(k, schemes))
    queue.append((k, schemes, ()))
    hits = 0
    while queue:
        cur_k, cur, trail = queue.popleft()
        if len(states) >= max_states:
            raise ScaleLimitError(
                "state space too large",
                stats={"states_explored": len(states), "memo_hits": hits},
            )
        states.append((cur_k, cur, trail))
        if cur_k <= 3 or not cur:
            continue
        for idx in range(cur_k):
            for kind in ("zero", "one"):
                child, child_k = apply_move(cur_k, cur, (kind, idx))
                if pruned and not child:
                    continue
                key = canonical_key(child_k, child)
                if key in seen:
                    hits += 1
                    continue
                seen.add(key)
                queue.append((child_k, child, trail + ((kind, idx),)))
    return states, hits


def check_property_A(
    k: int,
    schemes: FrozenSet[Scheme],
    max_states: int = DEFAULT_MAX_STATES,
    pruned: bool = False,
) -> PropertyReport:
    """Does some scheme survive every simple-region move sequence?"""
    states, hits = _explore_counted(k, schemes, max_states, pruned)
    for cur_k, cur, trail in states:
        if not cur:
            return PropertyReport(
                holds=False,
                violating_trail=trail,
                outer_colors=frozenset(),
                states_explored=len(states),
                memo_hits=hits,
            )
    return PropertyReport(
        holds=True,
        violating_trail=None,
        outer_colors=frozenset(),
        states_explored=len(states),
        memo_hits=hits,
    )


def check_property_B(
    k: int,
    schemes: FrozenSet[Scheme],
    max_states: int = DEFAULT_MAX_STATES,
    pruned: bool = False,
    per_interval: bool = False,
) -> PropertyReport:
    """Which colors stay avoidable across every simple-region move sequence?"""
    states, hits = _explore_counted(k, schemes, max_states, pruned)
    robust = set(COLORS)
    first_loss: Dict[int, Trail] = {}
    root_avoid = _avoidable_colors(k, schemes, per_interval)
    for cur_k, cur, trail in states:
        avoid = _avoidable_colors(cur_k, cur, per_interval)
        for d in list(robust):
            if d not in avoid:
                robust.discard(d)
                first_loss.setdefault(d, trail)
    trail = None
    if not robust:
        candidates = sorted(root_avoid) or sorted(first_loss)
        if candidates:
            trail = first_loss.get(candidates[0], ())
        else:
            trail = ()
    return PropertyReport(
        holds=bool(robust),
        violating_trail=trail,
        outer_colors=frozenset(robust),
        states_explored=len(states),
        memo_hits=hits,
    )


def _naive_states(k: int, schemes: FrozenSet[Scheme]) -> Iterator[Tuple[int, FrozenSet[Scheme]]]:
    """Every state along every move sequence, repeats included, no memo."""
    yield k, schemes
    if k <= 3 or not schemes:
        return
    for idx in range(k):
        for kind in ("zero", "one"):
            child, child_k = apply_move(k, schemes, (kind, idx))
            yield from _naive_states(child_k, child)


def check_naive(
    k: int, schemes: FrozenSet[Scheme], prop: str, per_interval: bool = False
) -> PropertyReport:
    """Plain enumeration twin of the memoized checkers, for cross-validation."""
    if k > NAIVE_MAX_K or len(schemes) > NAIVE_MAX_SCHEMES:
        raise ScaleLimitError(
            f"check_naive capped at k <= {NAIVE_MAX_K}, |schemes| <= {NAIVE_MAX_SCHEMES}"
        )
    explored = 0
    if prop == "A":
        holds = True
        for cur_k, cur in _naive_states(k, schemes):
            explored += 1
            if not cur:
                holds = False
        return PropertyReport(holds, None, frozenset(), explored, 0)
    if prop == "B":
        robust = set(COLORS)
        for cur_k, cur in _naive_states(k, schemes):
            explored += 1
            robust &= _avoidable_colors(cur_k, cur, per_interval)
        return PropertyReport(bool(robust), None, frozenset(robust), explored, 0)
    raise ValueError(f"unknown property {prop!r}")
