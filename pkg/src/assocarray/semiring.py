"""Semirings used by the array product and by value aggregation.

A :class:`Semiring` bundles two binary operations with their constants.
Numeric semirings use numpy ufuncs (or ufunc-compatible callables) so the
sparse kernels can apply them to whole arrays at once; they work on plain
Python scalars too.

The string algebra does not satisfy the full semiring axiom list (string
concatenation is not commutative, and ``min`` only distributes over
concatenation from the left), so it gets its own type that names its two
operations explicitly and lets each array operation pick the one it needs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Semiring",
    "StringAlgebra",
    "Violation",
    "plus_times",
    "max_plus",
    "max_min",
    "string_algebra",
    "check_axioms",
]


@dataclass(frozen=True)
class Semiring:
    """An algebra ``(carrier, add, mul, zero, one)``.

    ``one`` is ``None`` for nonunital algebras. ``rel_tol`` is the relative
    tolerance used when sampling the axioms; it is nonzero only where the
    operations round (plus-times over floats).
    """

    name: str
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    zero: Any
    one: Any | None = None
    rel_tol: float = 0.0

    def __repr__(self) -> str:
        return f"Semiring({self.name!r})"


def _tropical_mul(a, b):
    # -inf annihilates, including against +inf
    with np.errstate(invalid="ignore"):
        out = np.add(a, b)
    return np.where(np.logical_or(np.isneginf(a), np.isneginf(b)), -np.inf, out)[()]


def plus_times() -> Semiring:
    """Ordinary arithmetic ``(R, +, *, 0, 1)``."""
    return _PLUS_TIMES


def max_plus() -> Semiring:
    """Tropical ``(R u {+-inf}, max, +, -inf, 0)``."""
    return _MAX_PLUS


def max_min() -> Semiring:
    """``(R u {+-inf}, max, min, -inf, +inf)``."""
    return _MAX_MIN


_PLUS_TIMES = Semiring("plus_times", np.add, np.multiply, 0.0, 1.0, rel_tol=1e-12)
_MAX_PLUS = Semiring("max_plus", np.maximum, _tropical_mul, -math.inf, 0.0)
_MAX_MIN = Semiring("max_min", np.maximum, np.minimum, -math.inf, math.inf)


@dataclass(frozen=True)
class StringAlgebra:
    """Strings under concatenation and dictionary-order minimum.

    The character order defaults to code-point order. Passing ``alphabet``
    orders characters by their position in that string instead; characters
    outside it raise ``KeyError`` when compared.
    """

    alphabet: str | None = None
    empty: str = ""
    _rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.alphabet is not None:
            if len(set(self.alphabet)) != len(self.alphabet):
                raise ValueError("alphabet must not repeat characters")
            rank = {c: i for i, c in enumerate(self.alphabet)}
        else:
            rank = {}
        object.__setattr__(self, "_rank", rank)

    name = "string"

    def sort_key(self, s: str):
        if self.alphabet is None:
            return s
        return [self._rank[c] for c in s]

    def concat(self, a: str, b: str) -> str:
        return a + b

    def minimum(self, a: str, b: str) -> str:
        return b if self.sort_key(b) < self.sort_key(a) else a

    def maximum(self, a: str, b: str) -> str:
        return b if self.sort_key(a) < self.sort_key(b) else a


def string_algebra(alphabet: str | None = None) -> StringAlgebra:
    return StringAlgebra(alphabet)


class Violation(NamedTuple):
    law: str
    operands: tuple


def _same(x, y, rel_tol: float) -> bool:
    if isinstance(x, str) or isinstance(y, str):
        return x == y
    x, y = float(x), float(y)
    if x == y:
        return True
    if rel_tol and math.isfinite(x) and math.isfinite(y):
        return math.isclose(x, y, rel_tol=rel_tol, abs_tol=0.0)
    return False


def check_axioms(s: Semiring | StringAlgebra, samples: Sequence, rel_tol: float | None = None) -> list[Violation]:
    """Check every axiom instance over all sample pairs and triples.

    Returns the violated instances; an empty list means none failed.
    For a :class:`StringAlgebra` the laws checked are the ones the algebra
    actually has: ``minimum`` is associative, commutative and idempotent,
    concatenation is associative with the empty string as identity, the
    empty string absorbs under ``minimum``, and concatenation distributes
    over ``minimum`` from the left.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("samples must be nonempty")
    if isinstance(s, StringAlgebra):
        return _check_string_laws(s, samples)

    tol = s.rel_tol if rel_tol is None else rel_tol
    add, mul, zero, one = s.add, s.mul, s.zero, s.one
    out: list[Violation] = []

    def law(name, lhs, rhs, ops):
        if not _same(lhs, rhs, tol):
            out.append(Violation(name, ops))

    for u in samples:
        law("additive identity", add(u, zero), u, (u,))
        law("additive identity", add(zero, u), u, (u,))
        law("multiplicative annihilator", mul(u, zero), zero, (u,))
        law("multiplicative annihilator", mul(zero, u), zero, (u,))
        if one is not None:
            law("multiplicative identity", mul(u, one), u, (u,))
            law("multiplicative identity", mul(one, u), u, (u,))
    for u, v in itertools.product(samples, repeat=2):
        law("additive commutativity", add(u, v), add(v, u), (u, v))
    for u, v, w in itertools.product(samples, repeat=3):
        law("additive associativity", add(u, add(v, w)), add(add(u, v), w), (u, v, w))
        law("multiplicative associativity", mul(u, mul(v, w)), mul(mul(u, v), w), (u, v, w))
        law("left distributivity", mul(u, add(v, w)), add(mul(u, v), mul(u, w)), (u, v, w))
        law("right distributivity", mul(add(v, w), u), add(mul(v, u), mul(w, u)), (u, v, w))
    return out


def _check_string_laws(s: StringAlgebra, samples: list) -> list[Violation]:
    cat, lo, eps = s.concat, s.minimum, s.empty
    out: list[Violation] = []

    def law(name, lhs, rhs, ops):
        if lhs != rhs:
            out.append(Violation(name, ops))

    for u in samples:
        law("minimum idempotence", lo(u, u), u, (u,))
        law("concatenation identity", cat(eps, u), u, (u,))
        law("concatenation identity", cat(u, eps), u, (u,))
        law("empty absorbs minimum", lo(u, eps), eps, (u,))
        law("empty absorbs minimum", lo(eps, u), eps, (u,))
    for u, v in itertools.product(samples, repeat=2):
        law("minimum commutativity", lo(u, v), lo(v, u), (u, v))
    for u, v, w in itertools.product(samples, repeat=3):
        law("minimum associativity", lo(u, lo(v, w)), lo(lo(u, v), w), (u, v, w))
        law("concatenation associativity", cat(u, cat(v, w)), cat(cat(u, v), w), (u, v, w))
        law("left distributivity", cat(u, lo(v, w)), lo(cat(u, v), cat(u, w)), (u, v, w))
    return out
