"""Reachability instances, decisions, the instance text format, and mode conversions."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

from .bundle import ReductionBundle, compose, identity_bundle, single, dims_of
from .matrix import Matrix, Morphism, block_diag, place_blocks
from .semiring import SemiringError, format_value, get_semiring, parse_value

PLUS, STAR = "plus", "star"
KINDS = ("matrix", "vector", "scalar", "corner")


class InstanceError(ValueError):
    pass


class ParseError(InstanceError):
    def __init__(self, msg, line=None, col=None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(f"syntax error: {where}{msg}")
        self.line, self.col = line, col


class CarrierViolation(InstanceError):
    pass


class ShapeMismatch(InstanceError):
    pass


class UnknownSemiring(InstanceError):
    pass


# ---------------------------------------------------------------------------
# instances


class _Instance:
    """Shared behaviour; concrete classes define ``kind`` and the state machinery."""

    kind = ""

    @property
    def semiring(self):
        return self.mu.semiring

    @property
    def r(self) -> int:
        return self.mu.r

    @property
    def n(self) -> int:
        return self.mu.n

    @property
    def star(self) -> bool:
        return self.words == STAR

    def with_words(self, words: str):
        return dataclasses.replace(self, words=words)

    def step(self, state: Matrix, letter: int) -> Matrix:
        return state @ self.mu.gen(letter)

    def run(self, word) -> Matrix:
        state = self.start()
        for a in word:
            state = self.step(state, a)
        return state

    def satisfied_by(self, word) -> bool:
        word = tuple(word)
        if any(not 1 <= a <= self.r for a in word):
            return False
        if not word and not self.star:
            return False
        return self.accepts(self.run(word))

    def validate(self):
        for g in self.mu.generators:
            g.validate()
        for M in self._vectors():
            if M.semiring != self.semiring:
                raise ShapeMismatch("instance data over different semirings")
            M.validate()
        return self


@dataclass(frozen=True)
class MatrixReach(_Instance):
    mu: Morphism
    targets: tuple
    words: str = PLUS
    kind = "matrix"

    def __post_init__(self):
        if not self.targets:
            raise ShapeMismatch("matrix problem needs at least one target")
        for M in self.targets:
            if M.shape != (self.n, self.n):
                raise ShapeMismatch(f"target of shape {M.shape}, expected {(self.n, self.n)}")

    def _vectors(self):
        return self.targets

    def start(self):
        return Matrix.identity(self.semiring, self.n)

    def accepts(self, state) -> bool:
        return state in self.targets

    def value(self, word):
        return self.mu(word)

    def protected(self):
        return {x for M in self.targets for x in M.entries()}


@dataclass(frozen=True)
class VectorReach(_Instance):
    mu: Morphism
    alpha: Matrix
    eta: Matrix
    words: str = PLUS
    kind = "vector"

    def __post_init__(self):
        for v, nm in ((self.alpha, "alpha"), (self.eta, "eta")):
            if v.shape != (1, self.n):
                raise ShapeMismatch(f"{nm} of shape {v.shape}, expected {(1, self.n)}")

    def _vectors(self):
        return (self.alpha, self.eta)

    def start(self):
        return self.alpha

    def accepts(self, state) -> bool:
        return state == self.eta

    def value(self, word):
        return self.run(word)

    def protected(self):
        return set(self.eta.entries())


@dataclass(frozen=True)
class ScalarReach(_Instance):
    mu: Morphism
    alpha: Matrix
    beta: Matrix
    gamma: object
    words: str = PLUS
    kind = "scalar"

    def __post_init__(self):
        if self.alpha.shape != (1, self.n):
            raise ShapeMismatch(f"alpha of shape {self.alpha.shape}, expected {(1, self.n)}")
        if self.beta.shape != (self.n, 1):
            raise ShapeMismatch(f"beta of shape {self.beta.shape}, expected {(self.n, 1)}")

    def _vectors(self):
        return (self.alpha, self.beta, Matrix.of(self.semiring, [[self.gamma]]))

    def start(self):
        return self.alpha

    def accepts(self, state) -> bool:
        return (state @ self.beta)[0, 0] == self.gamma

    def value(self, word):
        return (self.run(word) @ self.beta)[0, 0]

    def protected(self):
        return {self.gamma}


@dataclass(frozen=True)
class CornerReach(_Instance):
    mu: Morphism
    gamma: object
    words: str = PLUS
    kind = "corner"

    def _vectors(self):
        return (Matrix.of(self.semiring, [[self.gamma]]),)

    def start(self):
        s = self.semiring
        return Matrix.row(s, [s.one] + [s.zero] * (self.n - 1))

    def accepts(self, state) -> bool:
        return state[0, self.n - 1] == self.gamma

    def value(self, word):
        return self.run(word)[0, self.n - 1]

    def protected(self):
        return {self.gamma}


Instance = (MatrixReach, VectorReach, ScalarReach, CornerReach)


# ---------------------------------------------------------------------------
# decisions


@dataclass(frozen=True)
class Decision:
    verdict: str  # YES | NO | UNKNOWN | UNSUPPORTED
    witness: Optional[tuple] = None
    bound: Optional[int] = None
    reason: str = ""
    certified: bool = True

    @classmethod
    def yes(cls, witness, reason="", certified=True):
        return cls("YES", tuple(witness), reason=reason, certified=certified)

    @classmethod
    def no(cls, reason="", certified=True):
        return cls("NO", reason=reason, certified=certified)

    @classmethod
    def unknown(cls, bound, reason=""):
        return cls("UNKNOWN", bound=bound, reason=reason)

    @classmethod
    def unsupported(cls, reason):
        return cls("UNSUPPORTED", reason=reason)

    @property
    def is_yes(self) -> bool:
        return self.verdict == "YES"


# ---------------------------------------------------------------------------
# text format


def _tokenize(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        col = 0
        for part in body.split():
            col = body.index(part, col)
            yield part, lineno, col + 1
            col += len(part)


class _Tokens:
    def __init__(self, text):
        self.toks = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, what):
        if self.i >= len(self.toks):
            last = self.toks[-1] if self.toks else ("", 1, 1)
            raise ParseError(f"unexpected end of input, expected {what}", last[1], last[2])
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def int(self, what):
        tok, line, col = self.next(what)
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"expected {what}, got {tok!r}", line, col) from None
        if v < 1:
            raise ShapeMismatch(f"line {line}: {what} must be positive, got {v}")
        return v


_HEADER = ("semiring", "problem", "words", "letters", "dim")
_DATA = ("gen", "alpha", "beta", "eta", "gamma", "target")
_REQUIRED = {
    "matrix": {"target"},
    "vector": {"alpha", "eta"},
    "scalar": {"alpha", "beta", "gamma"},
    "corner": {"gamma"},
}


def parse_instance(text: str):
    """Parse the instance text format; raises a subclass of InstanceError."""
    toks = _Tokens(text)
    head: dict = {}
    data: dict = {"gen": {}, "target": []}

    def elements(count, s):
        out = []
        for _ in range(count):
            tok, line, col = toks.next("element")
            try:
                x = parse_value(tok)
            except SemiringError:
                raise ParseError(f"bad element token {tok!r}", line, col) from None
            if not s.contains(x):
                raise CarrierViolation(f"line {line}, column {col}: {tok} is not an element of {s.name}")
            out.append(x)
        return out

    while toks.peek() is not None:
        key, line, col = toks.next("keyword")
        if key in _HEADER:
            if key in head:
                raise ParseError(f"duplicate {key!r}", line, col)
            if key in ("letters", "dim"):
                head[key] = toks.int(key)
            else:
                val, vl, vc = toks.next(key)
                if key == "semiring":
                    try:
                        head[key] = get_semiring(val)
                    except SemiringError:
                        raise UnknownSemiring(f"line {vl}: unknown semiring id {val!r}") from None
                elif key == "problem":
                    if val not in KINDS:
                        raise ParseError(f"unknown problem kind {val!r}", vl, vc)
                    head[key] = val
                else:
                    if val not in (PLUS, STAR):
                        raise ParseError(f"words must be plus or star, got {val!r}", vl, vc)
                    head[key] = val
            continue
        if key not in _DATA:
            raise ParseError(f"unknown keyword {key!r}", line, col)
        for need in ("semiring", "problem", "letters", "dim"):
            if need not in head:
                raise ParseError(f"{key!r} before {need!r} header", line, col)
        s, r, n = head["semiring"], head["letters"], head["dim"]
        if key == "gen":
            idx = toks.int("generator index")
            if idx > r:
                raise ShapeMismatch(f"line {line}: gen {idx} exceeds letters {r}")
            if idx in data["gen"]:
                raise ParseError(f"duplicate gen {idx}", line, col)
            vals = elements(n * n, s)
            data["gen"][idx] = Matrix.of(s, [vals[i * n:(i + 1) * n] for i in range(n)])
        elif key == "target":
            vals = elements(n * n, s)
            data["target"].append(Matrix.of(s, [vals[i * n:(i + 1) * n] for i in range(n)]))
        else:
            if key in data:
                raise ParseError(f"duplicate {key!r}", line, col)
            data[key] = elements(1 if key == "gamma" else n, s)

    for need in ("semiring", "problem", "letters", "dim"):
        if need not in head:
            raise ParseError(f"missing {need!r} header")
    s, kind, r, n = head["semiring"], head["problem"], head["letters"], head["dim"]
    missing = [i for i in range(1, r + 1) if i not in data["gen"]]
    if missing:
        raise ShapeMismatch(f"missing generator(s) {missing}")
    present = {k for k in ("alpha", "beta", "eta", "gamma") if k in data}
    if data["target"]:
        present.add("target")
    if present != _REQUIRED[kind]:
        extra, lacking = present - _REQUIRED[kind], _REQUIRED[kind] - present
        raise ShapeMismatch(f"{kind} problem: " + "; ".join(
            ([f"missing {sorted(lacking)}"] if lacking else []) + ([f"unexpected {sorted(extra)}"] if extra else [])))
    mu = Morphism(s, tuple(data["gen"][i] for i in range(1, r + 1)))
    words = head.get("words", PLUS)
    if kind == "matrix":
        return MatrixReach(mu, tuple(data["target"]), words)
    if kind == "vector":
        return VectorReach(mu, Matrix.row(s, data["alpha"]), Matrix.row(s, data["eta"]), words)
    if kind == "scalar":
        return ScalarReach(mu, Matrix.row(s, data["alpha"]), Matrix.column(s, data["beta"]), data["gamma"][0], words)
    return CornerReach(mu, data["gamma"][0], words)


def _fmt_row(xs):
    return " ".join(format_value(x) for x in xs)


def serialize_instance(inst) -> str:
    lines = [f"semiring {inst.semiring.name}", f"problem {inst.kind}", f"words {inst.words}",
             f"letters {inst.r}", f"dim {inst.n}"]
    for i, G in enumerate(inst.mu.generators, 1):
        lines.append(f"gen {i}")
        lines.extend(_fmt_row(row) for row in G.rows)
    if inst.kind in ("vector", "scalar"):
        lines.append("alpha " + _fmt_row(inst.alpha.entries()))
    if inst.kind == "scalar":
        lines.append("beta " + _fmt_row(inst.beta.entries()))
    if inst.kind == "vector":
        lines.append("eta " + _fmt_row(inst.eta.entries()))
    if inst.kind in ("scalar", "corner"):
        lines.append("gamma " + format_value(inst.gamma))
    if inst.kind == "matrix":
        for M in inst.targets:
            lines.append("target")
            lines.extend(_fmt_row(row) for row in M.rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# corner <-> scalar


def scalar_to_corner(inst: ScalarReach) -> CornerReach:
    s, n = inst.semiring, inst.n
    gens = []
    for G in inst.mu.generators:
        aG = inst.alpha @ G
        Gb = G @ inst.beta
        gens.append(place_blocks(s, n + 2, n + 2, [(0, 1, aG), (0, n + 1, aG @ inst.beta),
                                                    (1, 1, G), (1, n + 1, Gb)]))
    return CornerReach(Morphism(s, tuple(gens)), inst.gamma, inst.words)


def corner_to_scalar(inst: CornerReach) -> ScalarReach:
    s, n = inst.semiring, inst.n
    alpha = Matrix.row(s, [s.one] + [s.zero] * (n - 1))
    beta = Matrix.column(s, [s.zero] * (n - 1) + [s.one])
    return ScalarReach(inst.mu, alpha, beta, inst.gamma, inst.words)


def scalar_corner_bundle(inst: ScalarReach) -> ReductionBundle:
    if inst.star:
        raise InstanceError("scalar_to_corner expects a plus-mode instance")
    return identity_bundle("s2c", inst, scalar_to_corner(inst))


def corner_scalar_bundle(inst: CornerReach) -> ReductionBundle:
    return identity_bundle("c2s", inst, corner_to_scalar(inst))


# ---------------------------------------------------------------------------
# plus / star


def _first_letter_split(inst, make_sub, kind):
    """Plus -> star: one star sub-instance per first letter."""
    subs = tuple(make_sub(a) for a in range(1, inst.r + 1))
    return ReductionBundle(kind, inst, subs, dims_of(inst, subs), "first-letter",
                           lambda w: (w[0] - 1, w[1:]) if w else None,
                           lambda k, v: (k + 1,) + v)


def plus_star_convert(inst, to: str) -> ReductionBundle:
    if to not in (PLUS, STAR):
        raise ValueError(f"mode must be plus or star, got {to!r}")
    if inst.words == to:
        return identity_bundle("mode", inst, inst)
    s = inst.semiring
    if inst.kind == "vector":
        if to == STAR:
            return _first_letter_split(
                inst, lambda a: VectorReach(inst.mu, inst.alpha @ inst.mu.gen(a), inst.eta, STAR), "plus->star")
        hit = () if inst.alpha == inst.eta else None
        return single("star->plus", inst, inst.with_words(PLUS), lambda w: w or None, lambda v: v, "identity", hit)
    if inst.kind == "scalar":
        if to == STAR:
            return _first_letter_split(
                inst, lambda a: ScalarReach(inst.mu, inst.alpha @ inst.mu.gen(a), inst.beta, inst.gamma, STAR),
                "plus->star")
        hit = () if (inst.alpha @ inst.beta)[0, 0] == inst.gamma else None
        return single("star->plus", inst, inst.with_words(PLUS), lambda w: w or None, lambda v: v, "identity", hit)
    if inst.kind == "matrix":
        eye = Matrix.identity(s, inst.n)
        if to == STAR:
            if eye not in inst.targets:
                return identity_bundle("plus->star", inst, inst.with_words(STAR))
            z = Matrix.zeros(s, 1)
            mu2 = Morphism(s, tuple(block_diag([G, z]) for G in inst.mu.generators))
            sub = MatrixReach(mu2, tuple(block_diag([M, z]) for M in inst.targets), STAR)
            return single("plus->star", inst, sub, lambda w: w, lambda v: v, "identity")
        hit = () if eye in inst.targets else None
        return single("star->plus", inst, inst.with_words(PLUS), lambda w: w or None, lambda v: v, "identity", hit)
    # corner
    if inst.n >= 2 and inst.gamma != s.zero:
        return identity_bundle("mode", inst, inst.with_words(to))
    if inst.n >= 2 and to == PLUS:
        # the empty word already puts zero in the corner
        return single("star->plus", inst, inst.with_words(PLUS), lambda w: w or None, lambda v: v, "identity", ())
    return compose(corner_scalar_bundle(inst), lambda sc: plus_star_convert(sc, to), kind="mode")
