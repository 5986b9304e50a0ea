import itertools
import random

import pytest

from gen import corpus, rand_instance
from semireach.instances import (PLUS, STAR, CarrierViolation, CornerReach, MatrixReach, ParseError, ScalarReach,
                                 ShapeMismatch, UnknownSemiring, VectorReach, corner_to_scalar, parse_instance,
                                 plus_star_convert, scalar_to_corner, serialize_instance)
from semireach.matrix import Matrix, Morphism
from semireach.oracle import oracle_search
from semireach.semiring import PINF, SEMIRINGS, get_semiring

NMIN = get_semiring("nmin")

SCALAR_TEXT = """\
# two tropical generators
semiring nmin
problem scalar
letters 2
dim 1
gen 1
2
gen 2
3
alpha 0
beta 0
gamma 7
"""


def test_parse_scalar_file():
    inst = parse_instance(SCALAR_TEXT)
    assert isinstance(inst, ScalarReach)
    assert inst.words == PLUS and inst.r == 2 and inst.n == 1
    assert inst.gamma == 7
    assert inst.mu.gen(2) == Matrix.of(NMIN, [[3]])


def test_parse_errors_are_distinct():
    with pytest.raises(CarrierViolation, match="omega is not an element of nat"):
        parse_instance("semiring nat\nproblem corner\nletters 1\ndim 1\ngen 1\nomega\ngamma 0\n")
    with pytest.raises(ShapeMismatch, match="gen 3 exceeds letters 2"):
        parse_instance("semiring nat\nproblem corner\nletters 2\ndim 1\ngen 3\n1\n")
    with pytest.raises(UnknownSemiring, match="unknown semiring id 'reals'"):
        parse_instance("semiring reals\n")
    with pytest.raises(ParseError, match=r"line 2, column 1: unknown keyword 'frob'"):
        parse_instance("semiring nat\nfrob 1\n")
    with pytest.raises(ParseError, match="bad element token 'x'"):
        parse_instance("semiring nat\nproblem corner\nletters 1\ndim 1\ngen 1\nx\n")
    with pytest.raises(ShapeMismatch, match="missing"):
        parse_instance("semiring nat\nproblem scalar\nletters 1\ndim 1\ngen 1\n1\ngamma 0\n")
    with pytest.raises(ShapeMismatch, match="missing generator"):
        parse_instance("semiring nat\nproblem corner\nletters 2\ndim 1\ngen 1\n1\ngamma 0\n")


def test_serialize_special_and_multi_target():
    mu = Morphism.of(NMIN, [[[PINF, 1], [0, PINF]]])
    inst = MatrixReach(mu, (Matrix.zeros(NMIN, 2), Matrix.identity(NMIN, 2)))
    text = serialize_instance(inst)
    assert "+inf" in text
    assert text.count("target") == 2
    assert parse_instance(text) == inst


def test_round_trip_corpus():
    rng = random.Random(5)
    for s in SEMIRINGS.values():
        for kind in ("matrix", "vector", "scalar", "corner"):
            for words in (PLUS, STAR):
                for _ in range(3):
                    inst = rand_instance(rng, s, kind, words=words)
                    text = serialize_instance(inst)
                    assert parse_instance(text) == inst
                    assert serialize_instance(parse_instance(text)) == text


def _fold_or(bundle, max_len):
    return bundle.immediate is not None or any(oracle_search(s, max_len).is_yes for s in bundle.subs)


def test_plus_to_star_vector_splits_by_first_letter():
    inst = corpus(1, NMIN, "vector", 1, r=2)[0]
    b = plus_star_convert(inst, STAR)
    assert len(b.subs) == 2 and all(s.words == STAR for s in b.subs)
    assert b.subs[1].alpha == inst.alpha @ inst.mu.gen(2)


def test_plus_to_star_matrix_identity_target():
    mu = Morphism.of(NMIN, [[[1, PINF], [PINF, 0]], [[0, 1], [PINF, PINF]]])
    inst = MatrixReach(mu, (Matrix.identity(NMIN, 2),))
    b = plus_star_convert(inst, STAR)
    assert len(b.subs) == 1 and b.subs[0].n == 3 and b.subs[0].star
    assert not b.subs[0].satisfied_by(())


def test_star_vector_with_equal_ends_is_immediate():
    mu = Morphism.of(NMIN, [[[1]]])
    inst = VectorReach(mu, Matrix.row(NMIN, [0]), Matrix.row(NMIN, [0]), STAR)
    assert plus_star_convert(inst, PLUS).immediate == ()


def test_star_corner_zero_is_immediate():
    mu = Morphism.of(NMIN, [[[1, 2], [3, 4]]])
    assert plus_star_convert(CornerReach(mu, PINF, STAR), PLUS).immediate == ()


@pytest.mark.parametrize("kind", ["matrix", "vector", "scalar", "corner"])
@pytest.mark.parametrize("to", [PLUS, STAR])
def test_mode_conversion_preserves_answers(kind, to):
    src = STAR if to == PLUS else PLUS
    for inst in corpus(sum(map(ord, kind + to)), NMIN, kind, 25, words=src):
        b = plus_star_convert(inst, to)
        assert oracle_search(inst, 6).is_yes == _fold_or(b, 6)


def test_scalar_to_corner():
    mu = Morphism.of(NMIN, [[[2]], [[3]]])
    zero = Matrix.of(NMIN, [[0]])
    inst = ScalarReach(mu, zero, zero, 7)
    corner = scalar_to_corner(inst)
    assert corner.n == 3 and corner.gamma == 7
    for k in range(1, 5):
        for w in itertools.product((1, 2), repeat=k):
            assert corner.mu(w)[0, 2] == inst.value(w)


def test_scalar_corner_answers_agree():
    for inst in corpus(8, NMIN, "scalar", 50):
        assert oracle_search(inst, 6).is_yes == oracle_search(scalar_to_corner(inst), 6).is_yes


def test_corner_to_scalar():
    mu = Morphism.of(NMIN, [[[4]]])
    sc = corner_to_scalar(CornerReach(mu, 8))
    assert sc.alpha == Matrix.of(NMIN, [[0]]) and sc.beta == Matrix.of(NMIN, [[0]])
    for inst in corpus(9, NMIN, "corner", 50):
        sc = corner_to_scalar(inst)
        assert sc.n == inst.n and sc.gamma == inst.gamma
        assert oracle_search(inst, 6).is_yes == oracle_search(sc, 6).is_yes


def test_round_trip_through_corner_keeps_gamma():
    for inst in corpus(10, NMIN, "scalar", 30):
        back = corner_to_scalar(scalar_to_corner(inst))
        assert back.gamma == inst.gamma
        assert oracle_search(back, 5).is_yes == oracle_search(inst, 5).is_yes
