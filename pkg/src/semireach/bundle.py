"""Disjunctive reduction bundles: sub-instances plus witness push/pull maps."""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

Push = Callable[[tuple], Optional[tuple]]
Pull = Callable[[int, tuple], Optional[tuple]]


@dataclass(frozen=True)
class Dims:
    n_in: int
    n_out: int
    r_in: int
    r_out: int


@dataclass(frozen=True)
class ReductionBundle:
    """The original instance is Yes iff ``immediate`` is set or some sub-instance is Yes.

    ``push(w)`` maps a satisfying original witness to ``(sub_index, sub_witness)``
    (or None when only the immediate answer accounts for ``w``); ``pull(k, v)``
    maps a satisfying witness of sub-instance ``k`` back, returning None when
    ``v`` does not have the shape the construction guarantees.
    """

    kind: str
    original: object
    subs: tuple
    dims: Dims
    witness_map: str
    push_fn: Push = field(repr=False, compare=False)
    pull_fn: Pull = field(repr=False, compare=False)
    immediate: Optional[tuple] = None

    def push(self, w) -> Optional[tuple]:
        return self.push_fn(tuple(w))

    def pull(self, k: int, v) -> Optional[tuple]:
        if not 0 <= k < len(self.subs):
            raise IndexError(f"sub-instance index {k} out of range")
        return self.pull_fn(k, tuple(v))


def dims_of(original, subs) -> Dims:
    return Dims(original.n, max(s.n for s in subs), original.r, max(s.r for s in subs))


def single(kind, original, sub, push, pull, witness_map, immediate=None) -> ReductionBundle:
    def push0(w):
        v = push(w)
        return None if v is None else (0, v)

    return ReductionBundle(kind, original, (sub,), dims_of(original, [sub]), witness_map,
                           push0, lambda k, v: pull(v), immediate)


def identity_bundle(kind, original, sub) -> ReductionBundle:
    return single(kind, original, sub, lambda w: w, lambda v: v, "identity")


def compose(outer: ReductionBundle, inner: Callable[[object], ReductionBundle], kind: str | None = None,
            witness_map: str | None = None) -> ReductionBundle:
    """Apply ``inner`` to every sub-instance of ``outer`` and flatten."""
    inners = [inner(s) for s in outer.subs]
    offsets = [0]
    for b in inners:
        offsets.append(offsets[-1] + len(b.subs))
    subs = tuple(s for b in inners for s in b.subs)

    immediate = outer.immediate
    if immediate is None:
        for j, b in enumerate(inners):
            if b.immediate is not None:
                w = outer.pull(j, b.immediate)
                if w is not None:
                    immediate = w
                    break

    def push(w):
        p = outer.push(w)
        if p is None:
            return None
        j, u = p
        q = inners[j].push(u)
        if q is None:
            return None
        m, x = q
        return offsets[j] + m, x

    def pull(k, x):
        j = bisect.bisect_right(offsets, k) - 1
        u = inners[j].pull(k - offsets[j], x)
        return None if u is None else outer.pull(j, u)

    maps = witness_map or "+".join(dict.fromkeys([outer.witness_map] + [b.witness_map for b in inners]))
    dims = Dims(outer.dims.n_in, max(b.dims.n_out for b in inners), outer.dims.r_in,
                max(b.dims.r_out for b in inners))
    return ReductionBundle(kind or inners[0].kind, outer.original, subs, dims, maps, push, pull, immediate)


def union(kind: str, original, parts: Sequence[ReductionBundle]) -> ReductionBundle:
    """Disjunction of bundles built for pieces of ``original`` (one per target)."""
    offsets = [0]
    for b in parts:
        offsets.append(offsets[-1] + len(b.subs))
    subs = tuple(s for b in parts for s in b.subs)
    immediate = next((b.immediate for b in parts if b.immediate is not None), None)

    def push(w):
        for j, b in enumerate(parts):
            if b.original.satisfied_by(w):
                q = b.push(w)
                return None if q is None else (offsets[j] + q[0], q[1])
        return None

    def pull(k, x):
        j = bisect.bisect_right(offsets, k) - 1
        return parts[j].pull(k - offsets[j], x)

    dims = Dims(original.n, max(b.dims.n_out for b in parts), original.r, max(b.dims.r_out for b in parts))
    maps = "+".join(dict.fromkeys(b.witness_map for b in parts))
    return ReductionBundle(kind, original, subs, dims, maps, push, pull, immediate)
