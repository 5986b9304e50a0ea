import itertools
import random

import pytest

from gen import corpus, rand_morphism
from semireach.decide import (closure_semigroup, decide, format_dfa, orbit_vectors, parse_dfa, r1_bounded,
                              rational_language_dfa)
from semireach.instances import STAR, CornerReach, MatrixReach, ScalarReach, VectorReach
from semireach.matrix import Matrix, Morphism
from semireach.oracle import oracle_search
from semireach.semiring import BOOLEAN, SEPARABLE, get_semiring, truncation_quotient

NMIN = get_semiring("nmin")
ZMAX = get_semiring("zmax")


def scalar(gens, gamma):
    mu = Morphism.of(NMIN, [[[g]] for g in gens])
    zero = Matrix.of(NMIN, [[0]])
    return ScalarReach(mu, zero, zero, gamma)


def test_decide_examples():
    d = decide(scalar([2, 3], 7))
    assert d.verdict == "YES" and d.witness == (1, 1, 2)
    assert decide(scalar([2, 3], 1)).verdict == "NO"
    zm = MatrixReach(Morphism.of(ZMAX, [[[1]]]), (Matrix.of(ZMAX, [[2]]),))
    d = decide(zm)
    assert d.verdict == "UNSUPPORTED" and d.reason == "no separation for zmax"


def labels(fs, mats):
    return sorted(fs.label(M[0, 0]) for M in mats)


def test_closure_examples():
    T = Matrix.of(BOOLEAN, [[1]])
    assert closure_semigroup([T]) == {T}
    fs, pi = truncation_quotient(NMIN, {7})
    gens = [Matrix.of(fs, [[pi(2)]]), Matrix.of(fs, [[pi(3)]])]
    assert labels(fs, closure_semigroup(gens)) == ["2", "3", "4", "5", "6", "7", "T"]
    assert labels(fs, closure_semigroup(gens, True)) == ["0", "2", "3", "4", "5", "6", "7", "T"]
    assert closure_semigroup(gens[::-1]) == closure_semigroup(gens)


def test_orbit_examples():
    fs, pi = truncation_quotient(NMIN, {7})
    gens = [Matrix.of(fs, [[pi(2)]]), Matrix.of(fs, [[pi(3)]])]
    assert labels(fs, orbit_vectors(Matrix.of(fs, [[pi(0)]]), gens)) == ["0", "2", "3", "4", "5", "6", "7", "T"]
    z = Matrix.row(fs, [fs.zero, fs.zero])
    g2 = [Matrix.of(fs, [[pi(1), pi(2)], [pi(0), pi(5)]])]
    assert orbit_vectors(z, g2) == {z}
    big = orbit_vectors(Matrix.row(fs, [pi(0), pi(3)]), g2)
    assert len(big) <= fs.size ** 2


def test_dfa_worked_language():
    d = rational_language_dfa(scalar([1, 2], 2))
    assert sorted(d.labels) == ["0", "1", "2", "T"]
    assert {d.labels[q] for q in d.accept} == {"2"}
    words = [w for k in range(5) for w in itertools.product((1, 2), repeat=k) if d.accepts(w)]
    assert words == [(2,), (1, 1)]


def test_dfa_star_accepts_empty():
    mu = Morphism.of(NMIN, [[[1]]])
    inst = VectorReach(mu, Matrix.row(NMIN, [0]), Matrix.row(NMIN, [0]), STAR)
    assert rational_language_dfa(inst).accepts(())
    assert not rational_language_dfa(inst.with_words("plus")).accepts(())


@pytest.mark.parametrize("kind", ["matrix", "vector", "scalar", "corner"])
def test_dfa_matches_evaluation(kind):
    for inst in corpus(21, NMIN, kind, 8, words=random.Random(kind).choice(["plus", "star"])):
        d = rational_language_dfa(inst)
        for k in range(6):
            for w in itertools.product(range(1, inst.r + 1), repeat=k):
                assert d.accepts(w) == inst.satisfied_by(w)


def test_dfa_text_round_trip():
    d = rational_language_dfa(scalar([1, 2], 2))
    assert parse_dfa(format_dfa(d)) == d


@pytest.mark.parametrize("name", sorted(SEPARABLE))
def test_decide_agrees_with_oracle(name):
    s = get_semiring(name)
    for kind in ("matrix", "vector", "scalar", "corner"):
        for inst in corpus(len(name), s, kind, 10):
            d, o = decide(inst), oracle_search(inst, 8)
            assert d.is_yes == o.is_yes
            if d.is_yes:
                assert d.witness == o.witness
                assert inst.satisfied_by(d.witness)


def test_r1_examples():
    mu = Morphism.of(ZMAX, [[[1]]])
    d = r1_bounded(MatrixReach(mu, (Matrix.of(ZMAX, [[5]]),)), 20)
    assert d.verdict == "YES" and d.witness == (1,) * 5
    d = r1_bounded(MatrixReach(mu, (Matrix.of(ZMAX, [[0]]),)), 20)
    assert d.verdict == "NO" and not d.certified
    assert r1_bounded(MatrixReach(mu, (Matrix.of(ZMAX, [[0]]),)), 2).verdict == "UNKNOWN"


def test_r1_predicts_beyond_bound():
    mu = Morphism.of(ZMAX, [[[ZMAX.zero, 1], [2, ZMAX.zero]]])
    inst = ScalarReach(mu, Matrix.row(ZMAX, [0, ZMAX.zero]), Matrix.column(ZMAX, [0, ZMAX.zero]), 60)
    d = r1_bounded(inst, 12)
    assert d.verdict == "YES" and inst.satisfied_by(d.witness) and len(d.witness) == 40


def test_decide_r1_option():
    mu = Morphism.of(ZMAX, [[[1]]])
    inst = MatrixReach(mu, (Matrix.of(ZMAX, [[4]]),))
    assert decide(inst, r1_max_pow=10).witness == (1,) * 4
    assert decide(inst, oracle_fallback=6).witness == (1,) * 4
    assert decide(inst, oracle_fallback=2).verdict == "UNKNOWN"
