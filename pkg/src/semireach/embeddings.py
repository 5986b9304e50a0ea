"""Two-letter embeddings of r-generated matrix semigroups, and automaton gadgets.

Words over {b, c} are plain strings such as ``"cbb"``; as instance letters,
``b`` is letter 1 and ``c`` is letter 2.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .matrix import Matrix, Morphism, block_diag, mat_pow, place_blocks

B, C = 1, 2


class AmbiguityError(ValueError):
    pass


def bc_letters(v: str) -> tuple:
    return tuple(B if ch == "b" else C for ch in v)


def bc_string(word) -> str:
    return "".join("b" if a == B else "c" for a in word)


def delta_encode(w, r: int) -> str:
    if any(not 1 <= a <= r for a in w):
        raise ValueError(f"letters must lie in 1..{r}")
    return "".join("c" * (a - 1) + "b" for a in w)


def delta_decode(v: str, r: int) -> Optional[tuple]:
    out, run = [], 0
    for ch in v:
        if ch == "c":
            run += 1
            if run >= r:
                return None
        elif ch == "b":
            out.append(run + 1)
            run = 0
        else:
            return None
    return tuple(out) if run == 0 else None


def bc_factorize(v: str) -> tuple:
    """Exponents (i_1, ..., i_{k+1}) with v = c^i_1 b ... c^i_k b c^i_{k+1}."""
    return tuple(len(part) for part in v.split("b"))


def first_embedding(mu: Morphism) -> Morphism:
    s, r, n = mu.semiring, mu.r, mu.n
    N = r * n
    mb = place_blocks(s, N, N, [(j * n, 0, mu.gen(j + 1)) for j in range(r)])
    if r > 1:
        mc = place_blocks(s, N, N, [(0, n, Matrix.identity(s, (r - 1) * n))])
    else:
        mc = Matrix.zeros(s, N)
    return Morphism(s, (mb, mc))


def first_block_formula(mu: Morphism, w) -> Matrix:
    """Closed form of first_embedding(mu)(delta(w)) for nonempty ``w``.

    Block row j holds mu(a_{i_1+j} a_{i_2} ... a_{i_k}) while i_1 + j <= r; the rest is zero.
    """
    s, r, n = mu.semiring, mu.r, mu.n
    head, tail = w[0], tuple(w[1:])
    blocks = [(j * n, 0, mu((head + j,) + tail)) for j in range(r - head + 1)]
    return place_blocks(s, r * n, r * n, blocks)


def block_shift(s, r: int, n: int) -> Matrix:
    """The cyclic block permutation [[0, I_(r-1)n], [I_n, 0]]."""
    N = r * n
    if r == 1:
        return Matrix.identity(s, N)
    return place_blocks(s, N, N, [(0, n, Matrix.identity(s, (r - 1) * n)), ((r - 1) * n, 0, Matrix.identity(s, n))])


def second_embedding(mu: Morphism) -> Morphism:
    s, r, n = mu.semiring, mu.r, mu.n
    return Morphism(s, (block_shift(s, r, n), block_diag(list(mu.generators))))


def cyclic_word(exponents, start: int, r: int) -> tuple:
    """a_{start}^{i_1} a_{start+1}^{i_2} ... with letters taken cyclically mod r (1-based)."""
    out = []
    for t, e in enumerate(exponents):
        out.extend([(start - 1 + t) % r + 1] * e)
    return tuple(out)


def first_diagonal_word(v: str, r: int) -> tuple:
    return cyclic_word(bc_factorize(v), 1, r)


def rotation_encoding(w, r: int) -> str:
    """Fewest-b word over {b, c} whose first diagonal block reads ``w``."""
    out, p = [], 1
    for a in w:
        out.append("b" * ((a - p) % r) + "c")
        p = a
    return "".join(out)


def emb_block_formula(mu: Morphism, v: str) -> Matrix:
    r = mu.r
    exps = bc_factorize(v)
    k = len(exps) - 1
    D = block_diag([mu(cyclic_word(exps, j, r)) for j in range(1, r + 1)])
    return D @ mat_pow(block_shift(mu.semiring, r, mu.n), k)


# ---------------------------------------------------------------------------
# automata


@dataclass(frozen=True)
class Automaton:
    """States 0..p-1; ``edges[x]`` is the set of (src, dst) pairs labelled by letter x+1."""

    states: int
    edges: tuple
    initial: frozenset
    final: frozenset

    @property
    def letters(self) -> int:
        return len(self.edges)

    def successors(self, q, letter):
        return [d for (src, d) in self.edges[letter - 1] if src == q]

    def accepts(self, word) -> bool:
        cur = set(self.initial)
        for a in word:
            cur = {d for q in cur for d in self.successors(q, a)}
        return bool(cur & self.final)

    def _reach(self, start, forward=True):
        seen, todo = set(start), list(start)
        while todo:
            q = todo.pop()
            for es in self.edges:
                for (src, d) in es:
                    a, b = (src, d) if forward else (d, src)
                    if a == q and b not in seen:
                        seen.add(b)
                        todo.append(b)
        return seen

    def is_trim(self) -> bool:
        everything = set(range(self.states))
        return self._reach(self.initial) == everything and self._reach(self.final, forward=False) == everything

    def is_unambiguous(self) -> bool:
        """Product-automaton test: no useful pair (p, q) with p != q."""
        start = {(i, j) for i in self.initial for j in self.initial}
        fwd, todo = set(start), list(start)
        while todo:
            p, q = todo.pop()
            for es in self.edges:
                for (s1, d1) in es:
                    if s1 != p:
                        continue
                    for (s2, d2) in es:
                        if s2 == q and (d1, d2) not in fwd:
                            fwd.add((d1, d2))
                            todo.append((d1, d2))
        goal = {(i, j) for i in self.final for j in self.final}
        bwd, todo = set(goal), list(goal)
        while todo:
            p, q = todo.pop()
            for es in self.edges:
                for (s1, d1) in es:
                    if d1 != p:
                        continue
                    for (s2, d2) in es:
                        if d2 == q and (s1, s2) not in bwd:
                            bwd.add((s1, s2))
                            todo.append((s1, s2))
        return all(p == q for (p, q) in fwd & bwd)


def prefix_automaton(r: int) -> Automaton:
    """Recognizes a_{r+1} Sigma_r^*."""
    loops = frozenset({(1, 1)})
    return Automaton(2, (loops,) * r + (frozenset({(0, 1)}),), frozenset({0}), frozenset({1}))


def suffix_automaton(r: int) -> Automaton:
    """Recognizes Sigma_r^* a_{r+1}."""
    loops = frozenset({(0, 0)})
    return Automaton(2, (loops,) * r + (frozenset({(0, 1)}),), frozenset({0}), frozenset({1}))


def bracket_automaton(r: int) -> Automaton:
    """Recognizes a_{r+1} Sigma_r^* a_{r+1}."""
    loops = frozenset({(1, 1)})
    return Automaton(3, (loops,) * r + (frozenset({(0, 1), (1, 2)}),), frozenset({0}), frozenset({2}))


def automaton_matrices(A: Automaton, s):
    p = A.states
    gens = []
    for es in A.edges:
        gens.append(Matrix.of(s, [[s.one if (i, j) in es else s.zero for j in range(p)] for i in range(p)]))
    alpha = Matrix.row(s, [s.one if k in A.initial else s.zero for k in range(p)])
    beta = Matrix.column(s, [s.one if k in A.final else s.zero for k in range(p)])
    return Morphism(s, tuple(gens)), alpha, beta


def _check_01(M: Matrix):
    s = M.semiring
    for x in M.entries():
        if x != s.zero and x != s.one:
            raise AmbiguityError(f"entry {s.label(x)} outside {{0, 1}}: automaton is ambiguous")


def _matrix_key(M: Matrix):
    s = M.semiring
    return tuple(0 if x == s.zero else 1 for x in M.entries())


def automaton_reach_sets(A: Automaton, s):
    """The finite sets M_A and F_A, sorted canonically."""
    nu, alpha, _ = automaton_matrices(A, s)
    seen = {Matrix.identity(s, A.states)}
    todo = deque(seen)
    while todo:
        M = todo.popleft()
        for G in nu.generators:
            P = M @ G
            _check_01(P)
            if P not in seen:
                seen.add(P)
                todo.append(P)
    hits = [M for M in seen if any(M[i, f] == s.one for i in A.initial for f in A.final)]
    vecs = {alpha @ M for M in seen}
    fhits = [v for v in vecs if any(v[0, f] == s.one for f in A.final)]
    return tuple(sorted(hits, key=_matrix_key)), tuple(sorted(fhits, key=_matrix_key))
