import itertools
import random
import re

import pytest

from gen import rand_morphism
from semireach.embeddings import (AmbiguityError, Automaton, automaton_matrices, automaton_reach_sets, bc_factorize,
                                  bracket_automaton, cyclic_word, delta_decode, delta_encode, emb_block_formula,
                                  first_block_formula, first_diagonal_word, first_embedding, prefix_automaton,
                                  rotation_encoding, second_embedding, suffix_automaton)
from semireach.matrix import Matrix, Morphism, block_diag, mat_pow
from semireach.semiring import get_semiring

NMIN = get_semiring("nmin")
ZMAX = get_semiring("zmax")
NAT = get_semiring("nat")


def test_delta_examples():
    assert delta_encode((2, 1, 3), 3) == "cbbccb"
    assert delta_encode((), 3) == ""
    assert delta_encode((1, 1), 2) == "bb"
    assert delta_decode("bcb", 2) == (1, 2)
    assert delta_decode("cc", 2) is None


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_delta_bijection(r):
    image = re.compile("^(" + "|".join("c" * i + "b" for i in range(r)) + ")*$")
    for k in range(7):
        for w in itertools.product(range(1, r + 1), repeat=k):
            v = delta_encode(w, r)
            assert image.match(v)
            assert delta_decode(v, r) == w


@pytest.mark.parametrize("r", [1, 2, 3])
def test_delta_decode_rejects_exactly_outside_image(r):
    image = re.compile("^(" + "|".join("c" * i + "b" for i in range(r)) + ")*$")
    for k in range(9):
        for v in itertools.product("bc", repeat=k):
            v = "".join(v)
            assert (delta_decode(v, r) is not None) == bool(image.match(v))


def test_bc_factorize():
    assert bc_factorize("ccbcbc") == (2, 1, 1)
    assert bc_factorize("") == (0,)
    assert bc_factorize("bb") == (0, 0, 0)


def test_first_embedding_shape():
    x, y = 5, 7
    mu = Morphism.of(NMIN, [[[x]], [[y]]])
    hat = first_embedding(mu)
    inf = NMIN.zero
    assert hat.gen(1) == Matrix.of(NMIN, [[x, inf], [y, inf]])
    assert hat.gen(2) == Matrix.of(NMIN, [[inf, 0], [inf, inf]])


@pytest.mark.parametrize("r", [1, 2, 3])
def test_first_embedding_formula(r):
    rng = random.Random(r)
    for s in (NMIN, ZMAX, NAT):
        mu = rand_morphism(rng, s, r, 2)
        hat = first_embedding(mu)
        assert mat_pow(hat.gen(2), r).is_zero()
        for k in range(1, 6 if r < 3 else 5):
            for w in itertools.product(range(1, r + 1), repeat=k):
                v = [1 if ch == "b" else 2 for ch in delta_encode(w, r)]
                assert hat(v) == first_block_formula(mu, w)
                if w[0] == r:
                    top = block_diag([mu(w), Matrix.zeros(s, (r - 1) * 2)]) if r > 1 else mu(w)
                    assert hat(v) == top


def test_second_embedding_small():
    mu = Morphism.of(NMIN, [[[4]], [[6]]])
    emb = second_embedding(mu)
    assert emb.gen(1) == Matrix.of(NMIN, [[NMIN.zero, 0], [0, NMIN.zero]])
    assert emb.gen(2) == block_diag([mu.gen(1), mu.gen(2)])
    for r in (1, 2, 3):
        m = rand_morphism(random.Random(r), NMIN, r, 2)
        assert mat_pow(second_embedding(m).gen(1), r) == Matrix.identity(NMIN, 2 * r)


def test_worked_example_r3():
    v = "cc" + "b" + "c" * 7 + "b" + "c" * 9 + "b" + "c" + "b" + "b" + "c" * 11
    assert bc_factorize(v) == (2, 7, 9, 1, 0, 11)
    blocks = [cyclic_word((2, 7, 9, 1, 0, 11), j, 3) for j in (1, 2, 3)]
    assert blocks[0] == (1,) * 2 + (2,) * 7 + (3,) * 9 + (1,) + (3,) * 11
    assert blocks[1] == (2,) * 2 + (3,) * 7 + (1,) * 9 + (2,) + (1,) * 11
    assert blocks[2] == (3,) * 2 + (1,) * 7 + (2,) * 9 + (3,) + (2,) * 11
    mu = rand_morphism(random.Random(30), NMIN, 3, 2)
    emb = second_embedding(mu)
    word = [1 if ch == "b" else 2 for ch in v]
    expect = block_diag([mu(b) for b in blocks]) @ mat_pow(emb.gen(1), 5)
    assert emb(word) == expect == emb_block_formula(mu, v)


@pytest.mark.parametrize("s", [NMIN, ZMAX], ids=["nmin", "zmax"])
def test_block_formula_random(s):
    rng = random.Random(77)
    for _ in range(500):
        r, n = rng.randint(1, 3), rng.randint(1, 2)
        mu = rand_morphism(rng, s, r, n)
        v = "".join(rng.choice("bc") for _ in range(rng.randint(0, 10)))
        assert second_embedding(mu)([1 if ch == "b" else 2 for ch in v]) == emb_block_formula(mu, v)


def test_block_formula_degenerate_words():
    mu = rand_morphism(random.Random(8), NMIN, 3, 1)
    emb = second_embedding(mu)
    assert emb_block_formula(mu, "bbbb") == mat_pow(emb.gen(1), 4)
    assert emb_block_formula(mu, "ccc") == block_diag([mu((a,) * 3) for a in (1, 2, 3)])


def test_rotation_encoding_reads_back():
    for r in (1, 2, 3, 4):
        for k in range(6):
            for w in itertools.product(range(1, r + 1), repeat=k):
                assert first_diagonal_word(rotation_encoding(w, r), r) == w


def test_prefix_automaton_matrices():
    nu, alpha, beta = automaton_matrices(prefix_automaton(2), NMIN)
    z, o = NMIN.zero, NMIN.one
    assert nu.gen(1) == nu.gen(2) == Matrix.of(NMIN, [[z, z], [z, o]])
    assert nu.gen(3) == Matrix.of(NMIN, [[z, o], [z, z]])
    assert alpha == Matrix.row(NMIN, [o, z]) and beta == Matrix.column(NMIN, [z, o])
    assert nu(()) == Matrix.identity(NMIN, 2)
    m_a, _ = automaton_reach_sets(prefix_automaton(2), NMIN)
    assert m_a == (Matrix.of(NMIN, [[z, o], [z, z]]),)


@pytest.mark.parametrize("make", [prefix_automaton, suffix_automaton, bracket_automaton])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_gadgets_recognize_by_reach_sets(make, r):
    A = make(r)
    assert A.is_trim() and A.is_unambiguous()
    for s in (NMIN, NAT):
        nu, alpha, _ = automaton_matrices(A, s)
        m_a, f_a = automaton_reach_sets(A, s)
        for k in range(6):
            for w in itertools.product(range(1, r + 2), repeat=k):
                assert A.accepts(w) == (nu(w) in m_a) == (alpha @ nu(w) in f_a)


def test_bracket_membership():
    r = 2
    nu, _, _ = automaton_matrices(bracket_automaton(r), NMIN)
    m_a, _ = automaton_reach_sets(bracket_automaton(r), NMIN)
    assert nu((3, 1, 3)) in m_a


def test_ambiguity_detected():
    # two paths for letter 1 from state 0 to state 1
    A = Automaton(3, (frozenset({(0, 1), (0, 2), (2, 1), (1, 1)}),), frozenset({0}), frozenset({1}))
    assert not A.is_unambiguous()
    with pytest.raises(AmbiguityError):
        automaton_reach_sets(A, NAT)
