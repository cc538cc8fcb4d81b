"""Semigroup computation contract.

Everything downstream (cycle-length algorithms, discrete-log solvers, the
bench harness) talks to a semigroup through a SemigroupContext: an object
that knows how to multiply two elements, how to serialize an element to a
canonical byte key, and that counts every semigroup multiplication it
performs.  Elements themselves are plain immutable Python values (ints,
tuples); only the context interprets them.

No identity element is ever assumed: exponents start at 1 and x^0 is a
domain error.  Equality of elements is always key equality, so collision
tables and match lookups work uniformly across instance families.
"""

from __future__ import annotations

import bisect
from abc import ABC, abstractmethod
from dataclasses import dataclass


class SemigroupError(Exception):
    """Base error for semigroup computations."""


class IncompatibleElementError(SemigroupError):
    """Element does not belong to the context's instance."""


class NoSolutionError(SemigroupError):
    """The requested discrete logarithm has no solution."""


class OracleFailureError(SemigroupError):
    """A discrete-log oracle found no exponent within its bound."""


class SemigroupContext(ABC):
    """A concrete semigroup instance plus its multiplication counter.

    Subclasses fix the element representation and implement the raw
    product, the canonical key encoding and element validation.  The
    counter (`mult_count`) is the only mutable state; it counts semigroup
    multiplications only, never integer arithmetic.  Single-writer: do not
    share one context across threads that multiply concurrently.
    """

    family: str = "abstract"

    def __init__(self) -> None:
        self.mult_count = 0

    @abstractmethod
    def _product(self, a, b):
        """Raw associative product, no counting, no validation."""

    @abstractmethod
    def key(self, a) -> bytes:
        """Deterministic, instance-stable canonical encoding of `a`.

        Equal elements produce equal keys and vice versa.  Encodings are
        fixed per family (see README) so golden tests stay bit-exact.
        """

    @abstractmethod
    def validate(self, a):
        """Return `a` if it belongs to this instance, else raise."""

    @abstractmethod
    def describe(self) -> dict:
        """Instance descriptor (family tag plus parameters), JSON-able."""

    @abstractmethod
    def element_json(self, a) -> dict:
        """Element as a parseable spec document (see instances module)."""

    def mul(self, a, b):
        """Counted product. Internal fast path, inputs assumed valid."""
        self.mult_count += 1
        return self._product(a, b)

    def equal(self, a, b) -> bool:
        return self.key(a) == self.key(b)

    def __repr__(self) -> str:
        params = ", ".join(
            f"{k}={v}" for k, v in self.describe().items() if k != "type"
        )
        return f"{type(self).__name__}({params})"


def multiply(ctx: SemigroupContext, a, b):
    """Product a*b in `ctx`, incrementing the multiplication counter by 1.

    Raises IncompatibleElementError when either operand does not belong to
    the context's instance (wrong dimension, out-of-range entries, ...).
    """
    ctx.validate(a)
    ctx.validate(b)
    return ctx.mul(a, b)


def power(ctx: SemigroupContext, x, e: int):
    """x^e by square and multiply, for e >= 1.

    Uses exactly (bit_length(e) - 1) + (popcount(e) - 1) multiplications,
    which is at most 2*floor(log2 e) + 1.  e = 0 is rejected: a semigroup
    has no identity to return.
    """
    if not isinstance(e, int) or e < 1:
        raise SemigroupError(f"exponent must be a positive integer, got {e!r} "
                             "(no identity element exists for x^0)")
    result = None
    base = x
    k = e
    while True:
        if k & 1:
            result = base if result is None else ctx.mul(result, base)
        k >>= 1
        if not k:
            return result
        base = ctx.mul(base, base)


def canonical_key(ctx: SemigroupContext, a) -> bytes:
    """Canonical byte key of `a`; key equality is element equality."""
    return ctx.key(a)


@dataclass(frozen=True)
class CycleStructure:
    """Cycle start s, cycle length L and order N = s + L - 1 of a torsion
    element.

    The power sequence x, x^2, ... takes N distinct values; x^{s} is the
    first value ever revisited, and x^{s+L} = x^{s} with L minimal.
    """

    cycle_start: int
    cycle_length: int
    order: int = 0

    def __post_init__(self):
        if self.cycle_start < 1 or self.cycle_length < 1:
            raise ValueError("cycle start and cycle length must be >= 1")
        expected = self.cycle_start + self.cycle_length - 1
        if self.order == 0:
            object.__setattr__(self, "order", expected)
        elif self.order != expected:
            raise ValueError(
                f"order {self.order} != cycle_start + cycle_length - 1 = {expected}"
            )

    def to_json(self) -> dict:
        return {
            "cycle_start": self.cycle_start,
            "cycle_length": self.cycle_length,
            "order": self.order,
        }


@dataclass(frozen=True)
class CollisionTable:
    """Sorted table of (exponent, canonical key) pairs.

    Entries are sorted by key, then exponent, so all exponents sharing a
    probe key are found with one bisection.  `start_exp`, `stride` and
    `count` record the arithmetic progression of exponents the table was
    built over.
    """

    entries: tuple
    start_exp: int
    stride: int
    count: int

    def __len__(self) -> int:
        return len(self.entries)

    def duplicate_groups(self):
        """Exponent lists of keys stored more than once, in key order."""
        groups = []
        i = 0
        ents = self.entries
        while i < len(ents):
            j = i + 1
            while j < len(ents) and ents[j][1] == ents[i][1]:
                j += 1
            if j - i > 1:
                groups.append([exp for exp, _ in ents[i:j]])
            i = j
        return groups


def build_power_table(ctx: SemigroupContext, base, start_exp: int,
                      stride: int, count: int) -> CollisionTable:
    """Table of (start_exp + k*stride, key(base^(start_exp + k*stride)))
    for k = 0..count.

    Built incrementally: one power() call for base^start_exp, then `count`
    multiplications by base^stride (stride > 1 costs one extra power()
    call to form the step element).
    """
    if start_exp < 1:
        raise SemigroupError("start_exp must be >= 1")
    if stride < 1:
        raise SemigroupError("stride must be >= 1")
    if count < 0:
        raise SemigroupError("count must be >= 0")
    cur = power(ctx, base, start_exp)
    entries = [(start_exp, ctx.key(cur))]
    if count > 0:
        step = base if stride == 1 else power(ctx, base, stride)
        exp = start_exp
        for _ in range(count):
            cur = ctx.mul(cur, step)
            exp += stride
            entries.append((exp, ctx.key(cur)))
    entries.sort(key=lambda ent: (ent[1], ent[0]))
    return CollisionTable(entries=tuple(entries), start_exp=start_exp,
                          stride=stride, count=count)


def find_matches(table: CollisionTable, probe_key: bytes) -> list:
    """All exponents in `table` whose key equals `probe_key`, ascending.

    Empty list when the key is absent; duplicates preserved (a key stored
    under several exponents yields them all).
    """
    ents = table.entries
    i = bisect.bisect_left(ents, probe_key, key=lambda ent: ent[1])
    out = []
    while i < len(ents) and ents[i][1] == probe_key:
        out.append(ents[i][0])
        i += 1
    return out
