"""Schemes (interval colorings) and incremental primitive-set maintenance.

A scheme is a tuple of colors 0..3, one per interval, aligned with the
boundary state's interval order.  The primitive set holds every realizable
scheme, optionally with a witness interior coloring per scheme.  Attachments
update the set by the local constraint calculus:

  n = 0   the two neighbor intervals must share a color (they merge)
  n = 1   the two neighbor intervals must differ (they become adjacent)
  n >= 2  the attached region takes the target interval's color c; the
          extended neighbors must differ from c, and the n-1 intervals
          among the new points range over proper chains avoiding c

Adjacent intervals always receive different colors (regions later attached
on adjacent intervals meet at their shared outward vertex's third edge).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .boundary import check_attach_legal
from .errors import MapError

Scheme = Tuple[int, ...]
Witness = Dict[str, int]

COLORS = (0, 1, 2, 3)


def pack_scheme(scheme: Scheme) -> int:
    """2 bits per interval, position 0 in the low bits."""
    out = 0
    for i, c in enumerate(scheme):
        out |= c << (2 * i)
    return out


def canonical_key(k: int, schemes: Iterable[Scheme]) -> Tuple[int, Tuple[int, ...]]:
    return k, tuple(sorted(pack_scheme(s) for s in schemes))


def scheme_is_proper(scheme: Scheme) -> bool:
    """Adjacent intervals (cyclically) take different colors."""
    k = len(scheme)
    if k == 1:
        return True
    if k == 2:
        return scheme[0] != scheme[1]
    return all(scheme[i] != scheme[(i + 1) % k] for i in range(k))


def cycle_schemes(k: int, colors: Sequence[int] = COLORS) -> FrozenSet[Scheme]:
    """All proper cyclic colorings of k intervals over the given colors."""
    if k == 1:
        return frozenset((c,) for c in colors)
    out: List[Scheme] = []

    def rec(prefix: List[int]):
        if len(prefix) == k:
            if prefix[0] != prefix[-1]:
                out.append(tuple(prefix))
            return
        for c in colors:
            if c != prefix[-1]:
                rec(prefix + [c])

    for c in colors:
        rec([c])
    return frozenset(out)


def seed_schemes(k: int, seed_color: int, constrain_adjacent: bool = True) -> FrozenSet[Scheme]:
    """Schemes of a k-gon seed: every interval avoids the polygon's color."""
    others = tuple(c for c in COLORS if c != seed_color)
    if constrain_adjacent:
        return cycle_schemes(k, others)
    return frozenset(itertools.product(others, repeat=k))


@dataclass(frozen=True)
class PrimitiveSet:
    """Realizable schemes for the current boundary, with optional witnesses."""

    k: int
    schemes: FrozenSet[Scheme]
    witnesses: Optional[Mapping[Scheme, Witness]] = None

    def __post_init__(self):
        for s in self.schemes:
            if len(s) != self.k:
                raise MapError(f"scheme {s} has wrong length for k={self.k}")

    @property
    def empty(self) -> bool:
        return not self.schemes

    def sorted_schemes(self) -> List[Scheme]:
        return sorted(self.schemes)

    def to_json_obj(self) -> list:
        return [[int(c) for c in s] for s in self.sorted_schemes()]


def seed_primitive_set(k: int, face_id: str, seed_color: int) -> PrimitiveSet:
    schemes = seed_schemes(k, seed_color)
    return PrimitiveSet(
        k=k, schemes=schemes, witnesses={s: {face_id: seed_color} for s in schemes}
    )


def _rot(seq: Sequence, i: int) -> tuple:
    i %= len(seq)
    return tuple(seq[i:]) + tuple(seq[:i])


def _new_chains(n: int, c: int, left: int, right: int) -> Iterable[Tuple[int, ...]]:
    """Color chains for the n-1 intervals among new points: every color
    differs from the region color c, from its chain neighbors, and from the
    adjacent boundary interval's color at each end."""
    length = n - 1
    if length == 0:
        yield ()
        return

    def rec(prefix: List[int]):
        if len(prefix) == length:
            if prefix[-1] != right:
                yield tuple(prefix)
            return
        for col in COLORS:
            if col == c:
                continue
            if prefix:
                if col == prefix[-1]:
                    continue
            elif col == left:
                continue
            yield from rec(prefix + [col])

    yield from rec([])


def update_on_attach(
    pset: PrimitiveSet, index: int, n: int, region_id: Optional[str] = None
) -> PrimitiveSet:
    """Push the primitive set through an n-point attachment at `index`.

    The attached region takes the target interval's color from each scheme;
    witnesses (when kept) extend by that assignment.  Output schemes align
    with boundary.attach's interval order (rewritten block first).
    """
    k = pset.k
    msg = check_attach_legal(k, n)
    if msg:
        raise MapError(msg)
    keep_witness = pset.witnesses is not None and region_id is not None

    out: Dict[Scheme, Witness] = {}
    for x in pset.sorted_schemes():
        if k == 2:
            prev = nxt = x[1 - index]
            c = x[index]
            rest: Tuple[int, ...] = ()
        else:
            r = _rot(x, (index - 1) % k)
            prev, c, nxt = r[0], r[1], r[2]
            rest = r[3:]

        produced: List[Scheme] = []
        if n == 0:
            if prev == nxt:
                produced.append((prev,) + rest)
        elif n == 1:
            if prev != nxt:
                produced.append((prev, nxt) + rest)
        elif k == 2:
            # the other interval wraps around; it neighbors both chain ends
            if prev != c:
                for chain in _new_chains(n, c, prev, prev):
                    produced.append((prev,) + chain)
        else:
            if prev != c and nxt != c:
                for chain in _new_chains(n, c, prev, nxt):
                    produced.append((prev,) + chain + (nxt,) + rest)
        for y in produced:
            if y not in out:
                out[y] = (
                    dict(pset.witnesses[x], **{region_id: c}) if keep_witness else None
                )

    new_k = 1 if (k == 2 and n == 0) else k + n - 2
    return PrimitiveSet(
        k=new_k,
        schemes=frozenset(out),
        witnesses=dict(out) if keep_witness else None,
    )


def filter_zero(schemes: FrozenSet[Scheme], k: int, index: int) -> Tuple[FrozenSet[Scheme], int]:
    """Abstract 0-point move at `index` (k >= 4): neighbors must match, merge."""
    if k < 4:
        raise MapError(f"filter_zero requires k >= 4, got {k}")
    out = set()
    for x in schemes:
        r = _rot(x, (index - 1) % k)
        if r[0] == r[2]:
            out.add((r[0],) + r[3:])
    return frozenset(out), k - 2


def filter_one(schemes: FrozenSet[Scheme], k: int, index: int) -> Tuple[FrozenSet[Scheme], int]:
    """Abstract 1-point move at `index` (k >= 4): neighbors must differ."""
    if k < 4:
        raise MapError(f"filter_one requires k >= 4, got {k}")
    out = set()
    for x in schemes:
        r = _rot(x, (index - 1) % k)
        if r[0] != r[2]:
            out.add((r[0], r[2]) + r[3:])
    return frozenset(out), k - 1


def abstract_update(
    schemes: FrozenSet[Scheme], k: int, index: int, n: int
) -> Tuple[FrozenSet[Scheme], int]:
    """Witness-free n-point scheme update (the calculus of update_on_attach)."""
    pset = update_on_attach(PrimitiveSet(k=k, schemes=schemes), index, n)
    return pset.schemes, pset.k
