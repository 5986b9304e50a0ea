"""Decision procedure for separable semirings: finite quotient, closure/orbit BFS, DFA extraction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .instances import CornerReach, Decision, InstanceError, ParseError, corner_to_scalar
from .matrix import Matrix, mat_pow
from .semiring import SEPARABLE, FiniteSemiring, Special, truncation_quotient


# ---------------------------------------------------------------------------
# batched arithmetic over a finite semiring (elements are table indices)


def batch_matmul(fs: FiniteSemiring, A: np.ndarray, G: np.ndarray) -> np.ndarray:
    """``A`` of shape (b, p, q) times ``G`` of shape (q, m), for each of the b matrices."""
    P = fs.mul_array[A[:, :, :, None], G[None, None, :, :]]
    add = fs.add_array
    acc = P[:, :, 0, :]
    for k in range(1, P.shape[2]):
        acc = add[acc, P[:, :, k, :]]
    return acc


def _to_array(M: Matrix) -> np.ndarray:
    return np.array(M.rows, dtype=np.int16)


def _to_matrix(fs, a: np.ndarray) -> Matrix:
    return Matrix.of(fs, a.tolist())


@dataclass
class _Graph:
    """Level-ordered BFS graph. Node 0 is the start (the state for the empty word)."""

    states: list
    parent: list  # (parent node, letter) or None for node 0
    trans: list  # trans[node][letter-1] -> node
    levels: list  # list of node-index lists, level 0 = [0]

    def word(self, node: int) -> tuple:
        out = []
        while self.parent[node] is not None:
            node, a = self.parent[node]
            out.append(a)
        return tuple(reversed(out))


def _explore(fs, start: np.ndarray, gens: np.ndarray, include_start: bool, stop=None) -> _Graph:
    """BFS over start·gens*.

    With ``include_start`` false, node 0 is a pre-start node: a later state equal to
    the start value still gets its own node.  ``stop(indices, array)`` may end the
    search after a level; it receives the level's new nodes and their stacked states.
    """
    g = _Graph([start], [None], [[None] * len(gens)], [[0]])
    index = {start.tobytes(): 0} if include_start else {}
    frontier = [0]
    while frontier:
        F = np.stack([g.states[i] for i in frontier])
        prods = [batch_matmul(fs, F, G) for G in gens]
        new = []
        for fi, i in enumerate(frontier):
            for a in range(len(gens)):
                P = prods[a][fi]
                key = P.tobytes()
                j = index.get(key)
                if j is None:
                    j = len(g.states)
                    index[key] = j
                    g.states.append(P)
                    g.parent.append((i, a + 1))
                    g.trans.append([None] * len(gens))
                    new.append(j)
                g.trans[i][a] = j
        if new:
            g.levels.append(new)
            if stop is not None and stop(new, np.stack([g.states[j] for j in new])):
                break
        frontier = new
    return g


def closure_semigroup(gens, include_identity: bool = False) -> set:
    gens = list(gens)
    fs = gens[0].semiring
    n = gens[0].nrows
    eye = np.array(Matrix.identity(fs, n).rows, dtype=np.int16)
    G = np.stack([_to_array(M) for M in gens])
    g = _explore(fs, eye, G, include_identity)
    nodes = range(len(g.states)) if include_identity else range(1, len(g.states))
    return {_to_matrix(fs, g.states[i]) for i in nodes}


def orbit_vectors(start: Matrix, gens) -> set:
    fs = start.semiring
    G = np.stack([_to_array(M) for M in gens])
    g = _explore(fs, _to_array(start), G, True)
    return {_to_matrix(fs, a) for a in g.states}


# ---------------------------------------------------------------------------
# quotient setup


@dataclass
class _Setup:
    inst: object
    fs: FiniteSemiring
    pi: object
    start: np.ndarray
    gens: np.ndarray
    accept: object  # (stacked states) -> bool array


def _project(pi, M: Matrix) -> np.ndarray:
    return np.array([[pi(x) for x in row] for row in M.rows], dtype=np.int16)


def _setup(inst) -> _Setup:
    src = corner_to_scalar(inst) if isinstance(inst, CornerReach) else inst
    fs, pi = truncation_quotient(src.semiring, src.protected())
    gens = np.stack([_project(pi, G) for G in src.mu.generators])
    if src.kind == "matrix":
        start = np.array(Matrix.identity(fs, src.n).rows, dtype=np.int16)
        targets = np.stack([_project(pi, M) for M in src.targets])

        def accept(S):
            return (S[:, None] == targets[None]).all(axis=(2, 3)).any(axis=1)
    elif src.kind == "vector":
        start = _project(pi, src.alpha)
        eta = _project(pi, src.eta)

        def accept(S):
            return (S == eta[None]).all(axis=(1, 2))
    else:
        start = _project(pi, src.alpha)
        beta = _project(pi, src.beta)
        gamma = pi(src.gamma)

        def accept(S):
            return batch_matmul(fs, S, beta)[:, 0, 0] == gamma
    return _Setup(src, fs, pi, start, gens, accept)


def _state_label(fs, a: np.ndarray) -> str:
    if a.shape == (1, 1):
        return fs.label(int(a[0, 0]))
    rows = [" ".join(fs.label(int(x)) for x in row) for row in a]
    return "(" + rows[0] + ")" if len(rows) == 1 else "[" + "; ".join(rows) + "]"


# ---------------------------------------------------------------------------
# decide


def decide(inst, oracle_fallback: Optional[int] = None, r1_max_pow: Optional[int] = None) -> Decision:
    """Exact decision over separable semirings; other semirings get Unsupported or a bounded fallback."""
    name = inst.semiring.name
    if name not in SEPARABLE:
        if r1_max_pow is not None and inst.r == 1 and name in ("zmax", "zmin"):
            return r1_bounded(inst, r1_max_pow)
        if oracle_fallback is not None:
            from .oracle import oracle_search
            return oracle_search(inst, oracle_fallback)
        return Decision.unsupported(f"no separation for {name}")
    st = _setup(inst)
    if inst.star and st.accept(st.start[None])[0]:
        return _verified(inst, (), "empty word")
    hit = []

    def stop(nodes, S):
        ok = np.flatnonzero(st.accept(S))
        if ok.size:
            hit.append(nodes[ok[0]])
            return True
        return False

    g = _explore(st.fs, st.start, st.gens, inst.star, stop)
    if not hit:
        return Decision.no(f"closure of {len(g.states)} quotient states misses the target")
    return _verified(inst, g.word(hit[0]), "quotient closure")


def _verified(inst, w, reason) -> Decision:
    if not inst.satisfied_by(w):
        raise AssertionError(f"quotient witness {w} fails exact evaluation")
    return Decision.yes(w, reason)


# ---------------------------------------------------------------------------
# DFA


@dataclass(frozen=True)
class Dfa:
    labels: tuple
    start: int
    trans: tuple  # trans[state][letter-1]
    accept: frozenset

    @property
    def states(self) -> int:
        return len(self.labels)

    @property
    def letters(self) -> int:
        return len(self.trans[0]) if self.trans else 0

    def run(self, word) -> int:
        q = self.start
        for a in word:
            q = self.trans[q][a - 1]
        return q

    def accepts(self, word) -> bool:
        return self.run(word) in self.accept


def rational_language_dfa(inst) -> Dfa:
    """DFA over the reachable quotient states; plus mode keeps a non-accepting pre-start node."""
    name = inst.semiring.name
    if name not in SEPARABLE:
        raise InstanceError(f"no separation for {name}")
    st = _setup(inst)
    g = _explore(st.fs, st.start, st.gens, inst.star)
    ok = st.accept(np.stack(g.states))
    accept = {i for i in range(len(g.states)) if ok[i] and (i > 0 or inst.star)}
    labels = tuple(_state_label(st.fs, a) for a in g.states)
    return Dfa(labels, 0, tuple(tuple(t) for t in g.trans), frozenset(accept))


def format_dfa(d: Dfa) -> str:
    lines = ["dfa", f"states {d.states}", f"start {d.start}", "accept " + " ".join(map(str, sorted(d.accept)))]
    lines += [f"# label {i} {lab}" for i, lab in enumerate(d.labels)]
    for q, row in enumerate(d.trans):
        lines += [f"trans {q} {a} {dst}" for a, dst in enumerate(row, 1)]
    return "\n".join(lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    m = start = None
    accept, labels, edges = frozenset(), {}, {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.startswith("# label "):
            _, _, idx, lab = raw.split(" ", 3)
            labels[int(idx)] = lab
            continue
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        try:
            if not seen_header:
                if toks != ["dfa"]:
                    raise ParseError("expected 'dfa' header", lineno, 1)
                seen_header = True
            elif toks[0] == "states" and len(toks) == 2:
                m = int(toks[1])
            elif toks[0] == "start" and len(toks) == 2:
                start = int(toks[1])
            elif toks[0] == "accept":
                accept = frozenset(int(t) for t in toks[1:])
            elif toks[0] == "trans" and len(toks) == 4:
                q, a, d = map(int, toks[1:])
                if (q, a) in edges:
                    raise ParseError(f"duplicate transition ({q}, {a})", lineno, 1)
                edges[q, a] = d
            else:
                raise ParseError(f"unexpected line {raw.strip()!r}", lineno, 1)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"bad integer in {raw.strip()!r}", lineno, 1) from None
    if m is None or start is None:
        raise ParseError("missing 'states' or 'start'")
    r = max((a for _, a in edges), default=0)
    for q in range(m):
        for a in range(1, r + 1):
            if (q, a) not in edges:
                raise InstanceError(f"transition function not total: no edge for state {q}, letter {a}")
    bad = [x for x in [start, *accept, *edges.values(), *(q for q, _ in edges)] if not 0 <= x < m]
    if bad:
        raise InstanceError(f"state index {bad[0]} outside 0..{m - 1}")
    trans = tuple(tuple(edges[q, a] for a in range(1, r + 1)) for q in range(m))
    return Dfa(tuple(labels.get(i, str(i)) for i in range(m)), start, trans, accept)


# ---------------------------------------------------------------------------
# r = 1 over zmax / zmin (heuristic)


def _observable(inst, state):
    """The coordinates an acceptance test looks at, and the targets to compare with."""
    if inst.kind == "matrix":
        return tuple(state.entries()), [tuple(M.entries()) for M in inst.targets]
    if inst.kind == "vector":
        return tuple(state.entries()), [tuple(inst.eta.entries())]
    if inst.kind == "scalar":
        return ((state @ inst.beta)[0, 0],), [(inst.gamma,)]
    return (state[0, inst.n - 1],), [(inst.gamma,)]


def _find_period(xs, K):
    """Smallest (c, N, lams) with x_{m+c} = lams[m mod c] + x_m coordinatewise for N <= m <= K-c.

    ``xs[k]`` is the observable of a^k (k = 1..K).  The recurrence must be checked on
    at least two full periods.
    """
    for c in range(1, K // 3 + 1):
        for N in range(1, K - 3 * c + 2):
            lams, ok = {}, True
            for m in range(N, K - c + 1):
                for coord, (x, y) in enumerate(zip(xs[m], xs[m + c])):
                    if isinstance(x, Special) or isinstance(y, Special):
                        if x != y:
                            ok = False
                            break
                        continue
                    key = (m % c, coord)
                    if lams.setdefault(key, y - x) != y - x:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return c, N, lams
    return None


def _predict(xs, c, N, lams, target):
    """Smallest k >= N with observable(a^k) == target under the detected recurrence."""
    best = None
    for rho in range(N, N + c):
        q_need = None
        for coord, (x, t) in enumerate(zip(xs[rho], target)):
            if isinstance(x, Special) or isinstance(t, Special):
                if x != t:
                    break
                continue
            lam = lams.get((rho % c, coord), 0)
            if lam == 0:
                if x != t:
                    break
                continue
            if (t - x) % lam or (t - x) // lam < 0:
                break
            q = (t - x) // lam
            if q_need is not None and q_need != q:
                break
            q_need = q
        else:
            k = rho + c * (q_need or 0)
            best = k if best is None else min(best, k)
    return best


def r1_bounded(inst, max_pow: int) -> Decision:
    if inst.r != 1:
        raise InstanceError("r1_bounded needs a single generator")
    if inst.star and inst.satisfied_by(()):
        return Decision.yes((), "empty word")
    xs = [None]
    state = inst.start()
    for k in range(1, max_pow + 1):
        state = inst.step(state, 1)
        if inst.accepts(state):
            return Decision.yes((1,) * k, f"power {k}")
        obs, targets = _observable(inst, state)
        xs.append(obs)
    found = _find_period(xs, max_pow)
    if found is None:
        return Decision.unknown(max_pow, f"no match and no period among powers 1..{max_pow}")
    c, N, lams = found
    for t in targets:
        k = _predict(xs, c, N, lams, t)
        if k is not None:
            if inst.accepts(inst.start() @ mat_pow(inst.mu.gen(1), k)):
                return Decision.yes((1,) * k, f"power {k} predicted by period {c}")
            return Decision.unknown(max_pow, f"period {c} predicted power {k} but it does not match")
    return Decision.no(f"period {c} from power {N} excludes the target (heuristic)", certified=False)
