"""Modified Post correspondence instances as integer vector-mortality instances."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .instances import PLUS, InstanceError, ParseError, VectorReach
from .matrix import Matrix, Morphism
from .semiring import ZRING


class MpcpError(InstanceError):
    pass


@dataclass(frozen=True)
class MPCPInstance:
    alphabet: int
    pairs: tuple  # of (u, v) digit strings
    base: Optional[int] = None

    def __post_init__(self):
        if self.alphabet < 1:
            raise MpcpError("alphabet size must be positive")
        if not self.pairs:
            raise MpcpError("an MPCP instance needs at least one pair")
        if self.b <= self.alphabet:
            raise MpcpError(f"base {self.b} must exceed the alphabet size {self.alphabet}")
        for u, v in self.pairs:
            for w in (u, v):
                if any(not ch.isdigit() or not 1 <= int(ch) <= self.alphabet for ch in w):
                    raise MpcpError(f"word {w!r} uses digits outside 1..{self.alphabet}")

    @property
    def b(self) -> int:
        return self.alphabet + 1 if self.base is None else self.base

    @property
    def r(self) -> int:
        return len(self.pairs)


def base_value(w: str, b: int) -> int:
    out = 0
    for ch in w:
        d = int(ch)
        if d >= b:
            raise MpcpError(f"digit {d} is not below base {b}")
        out = out * b + d
    return out


def paterson_matrix(u: str, v: str, b: int) -> Matrix:
    return Matrix.of(ZRING, [[b ** len(u), 0, 0], [0, b ** len(v), 0], [base_value(u, b), base_value(v, b), 1]])


T_MATRIX = Matrix.of(ZRING, [[1, -1, 0], [-1, 1, 0], [0, 0, 0]])


def encode_mpcp(m: MPCPInstance) -> VectorReach:
    b = m.b
    u1, v1 = m.pairs[0]
    gens = tuple(paterson_matrix(u, v, b) for u, v in m.pairs) + (T_MATRIX,)
    alpha = Matrix.row(ZRING, [base_value(u1, b), base_value(v1, b), 1])
    return VectorReach(Morphism(ZRING, gens), alpha, Matrix.row(ZRING, [0, 0, 0]), PLUS)


def decode_mpcp_witness(w, m: MPCPInstance) -> tuple:
    """Pair indices i_2..i_k from a witness of the form a_{i_2}...a_{i_k} a_{r+1}."""
    w, r = tuple(w), m.r
    if not w or w[-1] != r + 1 or (r + 1) in w[:-1]:
        raise MpcpError(f"witness {' '.join(map(str, w))} is not of the form Sigma_{r}^* a_{r + 1}")
    idx = w[:-1]
    if any(not 1 <= i <= r for i in idx):
        raise MpcpError("witness letter out of range")
    top = m.pairs[0][0] + "".join(m.pairs[i - 1][0] for i in idx)
    bottom = m.pairs[0][1] + "".join(m.pairs[i - 1][1] for i in idx)
    if base_value(top, m.b) != base_value(bottom, m.b):
        raise MpcpError(f"concatenations differ: {top} vs {bottom}")
    return idx


def parse_mpcp(text: str) -> MPCPInstance:
    lines = [(i, ln.split("#", 1)[0].split()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, t) for i, t in lines if t]
    if not lines or lines[0][1] != ["mpcp"]:
        raise ParseError("expected 'mpcp' header", lines[0][0] if lines else 1, 1)
    alphabet, base, pairs = None, None, []
    for i, toks in lines[1:]:
        key = toks[0]
        try:
            if key == "alphabet" and len(toks) == 2 and alphabet is None:
                alphabet = int(toks[1])
            elif key == "base" and len(toks) == 2 and base is None:
                base = int(toks[1])
            elif key == "pair" and len(toks) == 3:
                pairs.append(tuple("" if t == "_" else t for t in toks[1:]))
            else:
                raise ParseError(f"unexpected line {' '.join(toks)!r}", i, 1)
        except ValueError:
            raise ParseError(f"bad integer in {' '.join(toks)!r}", i, 1) from None
    if alphabet is None:
        raise ParseError("missing 'alphabet' line")
    return MPCPInstance(alphabet, tuple(pairs), base)


def serialize_mpcp(m: MPCPInstance) -> str:
    lines = ["mpcp", f"alphabet {m.alphabet}"]
    if m.base is not None:
        lines.append(f"base {m.base}")
    lines += [f"pair {u or '_'} {v or '_'}" for u, v in m.pairs]
    return "\n".join(lines) + "\n"
