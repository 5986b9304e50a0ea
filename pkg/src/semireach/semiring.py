"""Semiring values, the built-in semirings, finite semirings and truncation quotients.

Values are plain Python ints (unbounded) or one of the three ``Special``
markers.  A semiring is a small descriptor object exposing ``zero``, ``one``,
``add``, ``mul`` and ``contains``; built-in semirings and finite (table
driven) semirings share that surface so matrix code does not care which one
it is handed.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Union

import numpy as np


class Special(enum.Enum):
    PINF = "+inf"
    NINF = "-inf"
    OMEGA = "omega"

    def __repr__(self):
        return self.value

    __str__ = __repr__


PINF = Special.PINF
NINF = Special.NINF
OMEGA = Special.OMEGA

Value = Union[int, Special]


class SemiringError(ValueError):
    pass


class CarrierError(SemiringError):
    """A value does not belong to the carrier of the semiring."""


class SeparationUnavailable(SemiringError):
    """No finite-image separation is known for this semiring."""


def is_fin(x: Value) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# tokens


def parse_value(token: str) -> Value:
    if token in ("+inf", "inf"):
        return PINF
    if token == "-inf":
        return NINF
    if token == "omega":
        return OMEGA
    try:
        return int(token)
    except ValueError:
        raise SemiringError(f"bad element token {token!r}") from None


def format_value(x: Value) -> str:
    return x.value if isinstance(x, Special) else str(x)


# ---------------------------------------------------------------------------
# built-in semirings


@dataclass(frozen=True, eq=False)
class Semiring:
    name: str
    zero: Value
    one: Value
    add: Callable[[Value, Value], Value] = field(repr=False)
    mul: Callable[[Value, Value], Value] = field(repr=False)
    specials: tuple = ()
    naturals: bool = True  # finite part restricted to >= 0
    finite = False

    def contains(self, x) -> bool:
        if isinstance(x, Special):
            return x in self.specials
        if not is_fin(x):
            return False
        return x >= 0 or not self.naturals

    def check(self, x) -> Value:
        if not self.contains(x):
            raise CarrierError(f"{format_value(x) if isinstance(x, (int, Special)) else x!r} "
                               f"is not an element of {self.name}")
        return x

    def label(self, x: Value) -> str:
        return format_value(x)

    def __repr__(self):
        return f"Semiring({self.name})"


def _max_plus_add(x, y):
    if x is NINF:
        return y
    if y is NINF:
        return x
    return max(x, y)


def _max_plus_mul(x, y):
    if x is NINF or y is NINF:
        return NINF
    return x + y


def _min_plus_add(x, y):
    if x is PINF:
        return y
    if y is PINF:
        return x
    return min(x, y)


def _min_plus_mul(x, y):
    if x is PINF or y is PINF:
        return PINF
    return x + y


_BARMAX_RANK = {NINF: 0, PINF: 2}


def _barmax_add(x, y):
    rx, ry = _BARMAX_RANK.get(x, 1), _BARMAX_RANK.get(y, 1)
    if rx != ry:
        return x if rx > ry else y
    return x if rx != 1 else max(x, y)


def _barmax_mul(x, y):
    # (+inf) + (-inf) = -inf: the zero wins
    if x is NINF or y is NINF:
        return NINF
    if x is PINF or y is PINF:
        return PINF
    return x + y


# order 0 < 1 < ... < omega < +inf
_LEUNG_RANK = {OMEGA: 1, PINF: 2}


def _leung_add(x, y):
    rx, ry = _LEUNG_RANK.get(x, 0), _LEUNG_RANK.get(y, 0)
    if rx != ry:
        return x if rx < ry else y
    return x if rx else min(x, y)


def _leung_mul(x, y):
    if x is PINF or y is PINF:
        return PINF
    if x is OMEGA or y is OMEGA:
        return OMEGA
    return x + y


def _natbar_add(x, y):
    if x is PINF or y is PINF:
        return PINF
    return x + y


def _natbar_mul(x, y):
    if x == 0 or y == 0:
        return 0
    if x is PINF or y is PINF:
        return PINF
    return x * y


def _ring_add(x, y):
    return x + y


def _ring_mul(x, y):
    return x * y


ZMAX = Semiring("zmax", NINF, 0, _max_plus_add, _max_plus_mul, (NINF,), naturals=False)
ZMIN = Semiring("zmin", PINF, 0, _min_plus_add, _min_plus_mul, (PINF,), naturals=False)
NMIN = Semiring("nmin", PINF, 0, _min_plus_add, _min_plus_mul, (PINF,))
NMAX = Semiring("nmax", NINF, 0, _max_plus_add, _max_plus_mul, (NINF,))
NBARMAX = Semiring("nbarmax", NINF, 0, _barmax_add, _barmax_mul, (NINF, PINF))
LEUNG = Semiring("leung", PINF, 0, _leung_add, _leung_mul, (OMEGA, PINF))
NAT = Semiring("nat", 0, 1, _ring_add, _ring_mul, ())
NATBAR = Semiring("natbar", 0, 1, _natbar_add, _natbar_mul, (PINF,))
ZRING = Semiring("zring", 0, 1, _ring_add, _ring_mul, (), naturals=False)

SEMIRINGS = {s.name: s for s in (ZMAX, ZMIN, NMIN, NMAX, NBARMAX, LEUNG, NAT, NATBAR, ZRING)}
SEPARABLE = frozenset({"nmin", "nmax", "nbarmax", "leung", "nat", "natbar"})


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise SemiringError(f"unknown semiring id {name!r}") from None


def sr_add(s: Semiring, x: Value, y: Value) -> Value:
    return s.add(s.check(x), s.check(y))


def sr_mul(s: Semiring, x: Value, y: Value) -> Value:
    return s.mul(s.check(x), s.check(y))


def negate_value(x: Value) -> Value:
    """Sign change, the isomorphism between zmax and zmin."""
    if x is NINF:
        return PINF
    if x is PINF:
        return NINF
    return -x


def sample_values(s: Semiring, top: int = 4) -> list:
    """Small carrier sample: a range of finite values plus every special element."""
    lo = 0 if s.naturals else -top
    return list(range(lo, top + 1)) + list(s.specials)


# ---------------------------------------------------------------------------
# finite semirings


@dataclass(frozen=True)
class FiniteSemiring:
    labels: tuple
    add_table: tuple
    mul_table: tuple
    zero: int
    one: int
    finite = True

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def name(self) -> str:
        return f"finite[{self.size}]"

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def contains(self, x) -> bool:
        return is_fin(x) and 0 <= x < self.size

    def check(self, x):
        if not self.contains(x):
            raise CarrierError(f"{x!r} is not an element index of {self.name}")
        return x

    def label(self, x: int) -> str:
        return self.labels[x]

    @cached_property
    def add_array(self) -> np.ndarray:
        return np.array(self.add_table, dtype=np.int16)

    @cached_property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul_table, dtype=np.int16)

    def axiom_failures(self) -> list[str]:
        """Exhaustive scan of the semiring laws; returns a description per violation."""
        m = self.size
        A, M = self.add_array, self.mul_array
        out = []
        if not (A == A.T).all():
            out.append("addition not commutative")
        x, y, z = np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij")
        if not (A[A[x, y], z] == A[x, A[y, z]]).all():
            out.append("addition not associative")
        if not (M[M[x, y], z] == M[x, M[y, z]]).all():
            out.append("multiplication not associative")
        if not (M[x, A[y, z]] == A[M[x, y], M[x, z]]).all():
            out.append("left distributivity fails")
        if not (M[A[x, y], z] == A[M[x, z], M[y, z]]).all():
            out.append("right distributivity fails")
        r = np.arange(m)
        if not (A[self.zero, r] == r).all():
            out.append("zero is not an additive identity")
        if not (M[self.one, r] == r).all() or not (M[r, self.one] == r).all():
            out.append("one is not a multiplicative identity")
        if not (M[self.zero, r] == self.zero).all() or not (M[r, self.zero] == self.zero).all():
            out.append("zero is not absorbing")
        return out


BOOLEAN = FiniteSemiring(("0", "1"), ((0, 1), (1, 1)), ((0, 0), (0, 1)), 0, 1)


def product_semiring(f1: FiniteSemiring, f2: FiniteSemiring) -> FiniteSemiring:
    m2 = f2.size

    def pair_index(a, b):
        return a * m2 + b

    pairs = list(itertools.product(range(f1.size), range(m2)))
    labels = tuple(f"({f1.labels[a]},{f2.labels[b]})" for a, b in pairs)
    add = tuple(tuple(pair_index(f1.add(a, c), f2.add(b, d)) for c, d in pairs) for a, b in pairs)
    mul = tuple(tuple(pair_index(f1.mul(a, c), f2.mul(b, d)) for c, d in pairs) for a, b in pairs)
    return FiniteSemiring(labels, add, mul, pair_index(f1.zero, f2.zero), pair_index(f1.one, f2.one))


# ---------------------------------------------------------------------------
# truncation quotients


@dataclass(frozen=True)
class QuotientMap:
    """Canonical projection collapsing every natural >= threshold to one class ``T``.

    Class indices: 0..threshold-1 for the small naturals, ``threshold`` for T,
    then the special elements of the source in their declared order.
    """

    source: Semiring
    target: FiniteSemiring
    threshold: int

    def __call__(self, x: Value) -> int:
        if isinstance(x, Special):
            return self.threshold + 1 + self.source.specials.index(x)
        return x if x < self.threshold else self.threshold

    def representative(self, k: int) -> Value:
        if k <= self.threshold:
            return k
        return self.source.specials[k - self.threshold - 1]

    def separates(self, y: Value) -> bool:
        """True when the class of ``y`` is the singleton {y}."""
        return isinstance(y, Special) or y < self.threshold

    @property
    def top(self) -> int:
        return self.threshold


def truncation_quotient(s: Semiring, protected: Iterable[Value]) -> tuple[FiniteSemiring, QuotientMap]:
    if s.name not in SEPARABLE:
        raise SeparationUnavailable(f"no separation for {s.name}")
    protected = [s.check(y) for y in protected]
    finite = [y for y in protected if is_fin(y)]
    n = 1 + max(finite) if finite else 1
    reps = list(range(n + 1)) + list(s.specials)
    labels = tuple([str(k) for k in range(n)] + ["T"] + [format_value(x) for x in s.specials])

    def cls(x):
        if isinstance(x, Special):
            return n + 1 + s.specials.index(x)
        return min(x, n)

    add = tuple(tuple(cls(s.add(a, b)) for b in reps) for a in reps)
    mul = tuple(tuple(cls(s.mul(a, b)) for b in reps) for a in reps)
    fs = FiniteSemiring(labels, add, mul, cls(s.zero), cls(s.one))
    return fs, QuotientMap(s, fs, n)
