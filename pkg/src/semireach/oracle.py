"""Bounded exact search over words, and cross-checks of reduction bundles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .instances import Decision
from .semiring import SEPARABLE


def oracle_search(inst, max_len: int, memo: bool = True) -> Decision:
    """First satisfying word in (length, lexicographic) order, evaluated exactly."""
    if inst.star and inst.satisfied_by(()):
        return Decision.yes((), "empty word")
    if memo:
        return _search_memo(inst, max_len)
    for length in range(1, max_len + 1):
        for w in itertools.product(range(1, inst.r + 1), repeat=length):
            if inst.satisfied_by(w):
                return Decision.yes(w, f"length {length}")
    return Decision.unknown(max_len, f"no witness up to length {max_len}")


def _search_memo(inst, max_len):
    start = inst.start()
    seen = {start} if inst.star else set()
    frontier = [((), start)]
    for length in range(1, max_len + 1):
        nxt = []
        for w, state in frontier:
            for a in range(1, inst.r + 1):
                new = inst.step(state, a)
                if new in seen:
                    continue
                seen.add(new)
                if inst.accepts(new):
                    return Decision.yes(w + (a,), f"length {length}")
                nxt.append((w + (a,), new))
        if not nxt:
            break
        frontier = nxt
    return Decision.unknown(max_len, f"no witness up to length {max_len}")


def satisfying_words(inst, max_len: int, limit: int | None = None) -> list:
    """All satisfying words of length <= max_len (depth-first, sharing prefixes)."""
    out = []
    if inst.star and inst.satisfied_by(()):
        out.append(())

    def walk(w, state):
        if limit is not None and len(out) >= limit:
            return
        for a in range(1, inst.r + 1):
            new = inst.step(state, a)
            word = w + (a,)
            if inst.accepts(new):
                out.append(word)
            if len(word) < max_len:
                walk(word, new)

    if max_len > 0:
        walk((), inst.start())
    return out[:limit] if limit is not None else out


# ---------------------------------------------------------------------------


@dataclass
class ConsistencyReport:
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, what: str, witness=None):
        self.checks += 1
        if not ok:
            self.failures.append((what, witness))

    def summary(self) -> str:
        head = f"{self.checks} checks, {len(self.failures)} failures"
        lines = [f"FAIL {what}" + ("" if w is None else f" witness: {' '.join(map(str, w)) or 'empty'}")
                 for what, w in self.failures]
        return "\n".join([head] + lines)


def reduction_consistency_check(inst, bundle, max_len: int, use_decider: bool = True,
                                limit: int | None = 200) -> ConsistencyReport:
    """(a) decide(original) = OR decide(subs); (b) pushes verify; (c) pulls verify."""
    from .decide import decide

    rep = ConsistencyReport()
    if bundle.immediate is not None:
        rep.record(inst.satisfied_by(bundle.immediate), "immediate witness fails the original", bundle.immediate)

    if use_decider and inst.semiring.name in SEPARABLE:
        d0 = decide(inst)
        subs_yes = any(decide(s).is_yes for s in bundle.subs)
        rep.record(d0.is_yes == (bundle.immediate is not None or subs_yes),
                   f"answer not preserved: original {d0.verdict}, subs {'YES' if subs_yes else 'NO'}",
                   d0.witness)

    for w in satisfying_words(inst, max_len, limit):
        p = bundle.push(w)
        if p is None:
            rep.record(bundle.immediate is not None, "push gave nothing and there is no immediate answer", w)
            continue
        k, v = p
        good = bundle.subs[k].satisfied_by(v)
        rep.record(good, f"push to sub-instance {k} does not satisfy it", w)
        if good:
            back = bundle.pull(k, v)
            rep.record(back is not None and inst.satisfied_by(back), "push then pull loses satisfaction", w)

    for k, sub in enumerate(bundle.subs):
        for v in satisfying_words(sub, max_len, limit):
            w = bundle.pull(k, v)
            rep.record(w is not None and inst.satisfied_by(w), f"pull from sub-instance {k} fails the original", v)
    return rep
