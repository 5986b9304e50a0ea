"""Instance transformers between the reachability problems, with witness maps.

Every reduction returns a :class:`ReductionBundle`.  Plus-mode inputs are the
canonical case; star-mode inputs (and plus-mode inputs whose empty word would
leak through an embedding) are routed through :func:`plus_star_convert`
first, so any instance can be handed in.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .bundle import ReductionBundle, compose, single, union, dims_of
from .embeddings import (B, bc_letters, bc_string, bracket_automaton, automaton_matrices, automaton_reach_sets,
                         delta_decode, delta_encode, first_diagonal_word, first_embedding, prefix_automaton,
                         rotation_encoding, second_embedding, suffix_automaton)
from .instances import (PLUS, STAR, CornerReach, InstanceError, MatrixReach, ScalarReach, VectorReach,
                        corner_scalar_bundle, plus_star_convert, scalar_corner_bundle, scalar_to_corner)
from .matrix import Matrix, Morphism, block_diag, diag_morphism, hconcat, mat_pow, place_blocks, proportional, vec_flatten


def _require(inst, *kinds):
    if inst.kind not in kinds:
        raise InstanceError(f"expected a {' or '.join(kinds)} instance, got {inst.kind}")


def _as_plus(inst, fn, kind):
    return compose(plus_star_convert(inst, PLUS), fn, kind=kind)


def _pad_row(v: Matrix, r: int) -> Matrix:
    s, n = v.semiring, v.ncols
    return hconcat([v] + [Matrix.zeros(s, 1, n)] * (r - 1))


def _push_rotation(r):
    return lambda w: bc_letters(rotation_encoding(w, r))


def _pull_diagonal(r):
    return lambda v: first_diagonal_word(bc_string(v), r)


# ---------------------------------------------------------------------------
# r letters -> 2 letters


def reduce_scalar_to_scalar2(inst: ScalarReach) -> ReductionBundle:
    _require(inst, "scalar")
    if not inst.star and inst.with_words(STAR).satisfied_by(()):
        # b^k would hit through the empty first-diagonal word: split on the first letter
        return compose(plus_star_convert(inst, STAR), reduce_scalar_to_scalar2, kind="scalar2")
    s, r = inst.semiring, inst.r
    beta2 = Matrix(s, inst.beta.rows * r)  # stacked: the hit no longer depends on the b-count
    sub = ScalarReach(second_embedding(inst.mu), _pad_row(inst.alpha, r), beta2, inst.gamma, inst.words)
    return single("scalar2", inst, sub, _push_rotation(r), _pull_diagonal(r), "rotation")


def reduce_vector_to_vector2(inst: VectorReach) -> ReductionBundle:
    _require(inst, "vector")
    if not inst.star and inst.alpha == inst.eta:
        return compose(plus_star_convert(inst, STAR), reduce_vector_to_vector2, kind="vector2")
    s, r = inst.semiring, inst.r
    emb = second_embedding(inst.mu)
    alpha2, eta2 = _pad_row(inst.alpha, r), _pad_row(inst.eta, r)
    subs = tuple(VectorReach(emb, alpha2, eta2 @ mat_pow(emb.gen(B), k), inst.words) for k in range(r))

    def push(w):
        v = rotation_encoding(w, r)
        return v.count("b") % r, bc_letters(v)

    pull = _pull_diagonal(r)
    return ReductionBundle("vector2", inst, subs, dims_of(inst, subs), "rotation", push, lambda k, v: pull(v))


def _swap(word, i, j):
    return tuple(j if a == i else i if a == j else a for a in word)


def reduce_matrix_to_matrix2(inst: MatrixReach) -> ReductionBundle:
    _require(inst, "matrix")
    if inst.star:
        return _as_plus(inst, reduce_matrix_to_matrix2, "matrix2")
    if len(inst.targets) > 1:
        return union("matrix2", inst, [reduce_matrix_to_matrix2(MatrixReach(inst.mu, (M,))) for M in inst.targets])
    s, r, n = inst.semiring, inst.r, inst.n
    M = inst.targets[0]
    if M.is_zero():
        sub = MatrixReach(second_embedding(inst.mu), (Matrix.zeros(s, r * n),))

        def push(w):
            v = rotation_encoding(w, r)
            # pad so each repetition shifts by one block; r repetitions put mu(w) in every block
            unit = v + "b" * ((1 - v.count("b")) % r)
            return bc_letters(unit * r)

        return single("matrix2", inst, sub, push, _pull_diagonal(r), "mortality-rotation")

    target = block_diag([M, Matrix.zeros(s, (r - 1) * n)]) if r > 1 else M
    subs = tuple(MatrixReach(first_embedding(inst.mu.swapped(i, r)), (target,)) for i in range(1, r + 1))

    def push(w):
        i = w[0]
        return i - 1, bc_letters(delta_encode((r,) + _swap(w[1:], i, r), r))

    def pull(k, v):
        z = delta_decode(bc_string(v), r)
        return None if z is None else _swap(z, k + 1, r)

    return ReductionBundle("matrix2", inst, subs, dims_of(inst, subs), "delta-swap", push, pull)


# ---------------------------------------------------------------------------
# sentinel-letter reductions (r -> r+1 letters)


def _strip(z, sentinel, lead, trail):
    i, j = 0, len(z)
    if lead:
        while i < j and z[i] == sentinel:
            i += 1
        if i == 0:
            return None
    if trail:
        while j > i and z[j - 1] == sentinel:
            j -= 1
        if j == len(z):
            return None
    core = z[i:j]
    if not core or sentinel in core:
        return None
    return core


def _one(s):
    return Matrix.of(s, [[s.one]])


def reduce_vector_to_matrix(inst: VectorReach) -> ReductionBundle:
    _require(inst, "vector")
    if inst.star:
        return _as_plus(inst, reduce_vector_to_matrix, "v2m")
    s, r, n = inst.semiring, inst.r, inst.n
    k = n + 1
    gens = [place_blocks(s, k, k, [(0, 1, inst.alpha @ G), (1, 1, G)]) for G in inst.mu.generators]
    gens.append(place_blocks(s, k, k, [(0, 0, _one(s))]))
    mu1 = Morphism(s, tuple(gens))
    m_eta = place_blocks(s, k, k, [(0, 1, inst.eta)])
    if not inst.eta.is_zero():
        sub = MatrixReach(mu1, (m_eta,))
    else:
        A = prefix_automaton(r)
        nu, _, _ = automaton_matrices(A, s)
        m_a, _ = automaton_reach_sets(A, s)
        sub = MatrixReach(diag_morphism([mu1, nu]), tuple(block_diag([m_eta, N]) for N in m_a))
    sentinel = r + 1
    return single("v2m", inst, sub, lambda w: (sentinel,) + w,
                  lambda z: _strip(z, sentinel, True, False), "sentinel-prefix")


def reduce_scalar_to_vector(inst: ScalarReach) -> ReductionBundle:
    _require(inst, "scalar")
    if inst.star:
        return _as_plus(inst, reduce_scalar_to_vector, "s2v")
    s, r, n = inst.semiring, inst.r, inst.n
    k = n + 1
    gens = [place_blocks(s, k, k, [(0, 0, G), (0, n, G @ inst.beta)]) for G in inst.mu.generators]
    gens.append(place_blocks(s, k, k, [(n, n, _one(s))]))
    mu1 = Morphism(s, tuple(gens))
    zero_n = [s.zero] * n
    if inst.gamma != s.zero:
        sub = VectorReach(mu1, Matrix.row(s, inst.alpha.entries() + [s.zero]), Matrix.row(s, zero_n + [inst.gamma]))
    else:
        nu, _, _ = automaton_matrices(suffix_automaton(r), s)
        alpha2 = Matrix.row(s, inst.alpha.entries() + [s.one, s.one, s.zero])
        eta2 = Matrix.row(s, zero_n + [s.zero, s.zero, s.one])
        sub = VectorReach(diag_morphism([mu1, nu]), alpha2, eta2)
    sentinel = r + 1
    return single("s2v", inst, sub, lambda w: w + (sentinel,),
                  lambda z: _strip(z, sentinel, False, True), "sentinel-suffix")


def reduce_scalar_to_matrix(inst: ScalarReach) -> ReductionBundle:
    _require(inst, "scalar")
    if inst.star:
        return _as_plus(inst, reduce_scalar_to_matrix, "s2m")
    s, r, n = inst.semiring, inst.r, inst.n
    k = n + 2
    corner = scalar_to_corner(inst)
    sent = place_blocks(s, k, k, [(0, 0, _one(s)), (k - 1, k - 1, _one(s))])
    mu1 = Morphism(s, corner.mu.generators + (sent,))
    m_gamma = place_blocks(s, k, k, [(0, k - 1, Matrix.of(s, [[inst.gamma]]))])
    if inst.gamma != s.zero:
        sub = MatrixReach(mu1, (m_gamma,))
    else:
        A = bracket_automaton(r)
        nu, _, _ = automaton_matrices(A, s)
        m_a, _ = automaton_reach_sets(A, s)
        sub = MatrixReach(diag_morphism([mu1, nu]), tuple(block_diag([m_gamma, N]) for N in m_a))
    sentinel = r + 1
    return single("s2m", inst, sub, lambda w: (sentinel,) + w + (sentinel,),
                  lambda z: _strip(z, sentinel, True, True), "sentinel-bracket")


def reduce_matrix_to_vector(inst: MatrixReach) -> ReductionBundle:
    """Row-by-row flattening: vec(mu(a_k w)) = vec(mu(a_k)) diag(mu, ..., mu)(w)."""
    _require(inst, "matrix")
    if inst.star:
        return _as_plus(inst, reduce_matrix_to_vector, "m2v")
    if len(inst.targets) > 1:
        return union("m2v", inst, [reduce_matrix_to_vector(MatrixReach(inst.mu, (M,))) for M in inst.targets])
    mu, M = inst.mu, inst.targets[0]
    wide = diag_morphism([mu] * mu.n)
    subs = tuple(VectorReach(wide, vec_flatten(mu.gen(k)), vec_flatten(M), STAR) for k in range(1, mu.r + 1))
    return ReductionBundle("m2v", inst, subs, dims_of(inst, subs), "first-letter",
                           lambda w: (w[0] - 1, w[1:]), lambda k, v: (k + 1,) + v)


# ---------------------------------------------------------------------------
# projective lifts


def projective_hit(u: Matrix, v: Matrix) -> bool:
    return proportional(u, v) is not None


@dataclass(frozen=True)
class ProjectiveMatrixReach(MatrixReach):
    """Matrix reachability up to a global additive shift."""

    def accepts(self, state) -> bool:
        return any(projective_hit(state, M) for M in self.targets)


@dataclass(frozen=True)
class ProjectiveVectorReach(VectorReach):
    def accepts(self, state) -> bool:
        return projective_hit(state, self.eta)


def projective_lift(inst) -> ReductionBundle:
    _require(inst, "matrix", "vector")
    s = inst.semiring
    if s.name not in ("zmax", "zmin"):
        raise InstanceError(f"projective lift needs zmax or zmin, got {s.name}")
    one = _one(s)
    nu = Morphism(s, tuple(block_diag([one, G]) for G in inst.mu.generators))
    if inst.kind == "matrix":
        sub = ProjectiveMatrixReach(nu, tuple(block_diag([one, M]) for M in inst.targets), inst.words)
    else:
        sub = ProjectiveVectorReach(nu, hconcat([one, inst.alpha]), hconcat([one, inst.eta]), inst.words)
    return single("projective", inst, sub, lambda w: w, lambda v: v, "identity")


# ---------------------------------------------------------------------------
# zero corner chain


def _to_corner(sc: ScalarReach) -> ReductionBundle:
    if sc.star:
        return compose(plus_star_convert(sc, PLUS), scalar_corner_bundle, kind="s2c")
    return scalar_corner_bundle(sc)


def _chain(inst) -> ReductionBundle:
    if inst.kind == "corner":
        return compose(compose(corner_scalar_bundle(inst), reduce_scalar_to_scalar2), _to_corner)
    return compose(reduce_scalar_to_scalar2(inst), _to_corner)


def cassaigne_chain(inst: CornerReach) -> ReductionBundle:
    """Zero corner problem on r letters, dim n -> zero corner problem on 2 letters, dim rn+2."""
    _require(inst, "corner")
    if inst.gamma != inst.semiring.zero:
        raise InstanceError("the chain is defined for the zero corner problem (gamma = 0)")
    if inst.star:
        # small corners may come back as scalar instances from the mode conversion
        return compose(plus_star_convert(inst, PLUS), _chain, kind="cassaigne")
    return dataclasses.replace(_chain(inst), kind="cassaigne")


REDUCTIONS = {
    "scalar2": reduce_scalar_to_scalar2,
    "vector2": reduce_vector_to_vector2,
    "matrix2": reduce_matrix_to_matrix2,
    "v2m": reduce_vector_to_matrix,
    "s2v": reduce_scalar_to_vector,
    "s2m": reduce_scalar_to_matrix,
    "m2v": reduce_matrix_to_vector,
    "projective": projective_lift,
    "cassaigne": cassaigne_chain,
}

_SCALAR_INPUT = {"scalar2", "s2v", "s2m"}


def reduce(inst, kind: str) -> ReductionBundle:
    try:
        fn = REDUCTIONS[kind]
    except KeyError:
        raise InstanceError(f"unknown reduction {kind!r}; choose from {sorted(REDUCTIONS)}") from None
    if kind in _SCALAR_INPUT and inst.kind == "corner":
        return compose(corner_scalar_bundle(inst), fn, kind=kind)
    return fn(inst)
