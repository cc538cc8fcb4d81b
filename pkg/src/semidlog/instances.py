"""Concrete semigroup families and the element-spec parser.

Five families, all torsion (every element has a finite power sequence):

  zmod            integers modulo n under multiplication (zero divisors
                  allowed, so genuinely a semigroup, not a group)
  matmod          d x d integer matrices modulo m
  boolmat         d x d matrices over the boolean semiring ({0,1},
                  OR-addition, AND-multiplication)
  transformation  self-maps of {1..d} under composition
  monogenic       the abstract semigroup generated by one element with a
                  prescribed cycle start s and cycle length L; elements
                  are canonical exponents in [1, s+L-1]

Element spec documents are UTF-8 JSON with a "type" tag, e.g.
{"type": "zmod", "modulus": 100, "value": 2}.  Matrices are row-major
arrays of arrays; transformation maps are 1-indexed externally (and
0-indexed internally).
"""

from __future__ import annotations

import json
import random

from .core import IncompatibleElementError, SemigroupContext, SemigroupError

KEY_ENCODING_VERSION = 1

FAMILIES = ("zmod", "matmod", "boolmat", "transformation", "monogenic")


class ElementSpecError(SemigroupError):
    """Malformed or out-of-range element spec; `where` locates the fault."""

    def __init__(self, message: str, where: str = "$"):
        super().__init__(f"{message} (at {where})")
        self.where = where


def _byte_width(max_value: int) -> int:
    return max(1, (max(max_value, 1).bit_length() + 7) // 8)


class ZModContext(SemigroupContext):
    """Multiplicative semigroup of integers modulo n."""

    family = "zmod"

    def __init__(self, modulus: int):
        if modulus < 2:
            raise SemigroupError("zmod modulus must be >= 2")
        super().__init__()
        self.modulus = modulus
        self._width = _byte_width(modulus - 1)

    def _product(self, a, b):
        return a * b % self.modulus

    def key(self, a) -> bytes:
        # fixed-width big-endian residue
        return a.to_bytes(self._width, "big")

    def validate(self, a):
        if not isinstance(a, int) or not 0 <= a < self.modulus:
            raise IncompatibleElementError(
                f"{a!r} is not a residue modulo {self.modulus}")
        return a

    def describe(self) -> dict:
        return {"type": "zmod", "modulus": self.modulus}

    def element_json(self, a) -> dict:
        return {"type": "zmod", "modulus": self.modulus, "value": a}


class MatModContext(SemigroupContext):
    """d x d matrices over Z/mZ under matrix multiplication."""

    family = "matmod"

    def __init__(self, dim: int, modulus: int):
        if dim < 1:
            raise SemigroupError("matmod dimension must be >= 1")
        if modulus < 2:
            raise SemigroupError("matmod modulus must be >= 2")
        super().__init__()
        self.dim = dim
        self.modulus = modulus
        self._width = _byte_width(modulus - 1)

    def _product(self, a, b):
        n = self.dim
        m = self.modulus
        rng = range(n)
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in rng) % m for j in rng)
            for i in rng
        )

    def key(self, a) -> bytes:
        w = self._width
        return b"".join(
            entry.to_bytes(w, "big") for row in a for entry in row)

    def validate(self, a):
        ok = (
            isinstance(a, tuple) and len(a) == self.dim
            and all(isinstance(r, tuple) and len(r) == self.dim for r in a)
            and all(isinstance(v, int) and 0 <= v < self.modulus
                    for r in a for v in r)
        )
        if not ok:
            raise IncompatibleElementError(
                f"not a {self.dim}x{self.dim} matrix mod {self.modulus}")
        return a

    def describe(self) -> dict:
        return {"type": "matmod", "dim": self.dim, "modulus": self.modulus}

    def element_json(self, a) -> dict:
        return {"type": "matmod", "modulus": self.modulus,
                "entries": [list(row) for row in a]}


class BoolMatContext(SemigroupContext):
    """d x d boolean matrices: entry_ij = OR_k (a_ik AND b_kj)."""

    family = "boolmat"

    def __init__(self, dim: int):
        if dim < 1:
            raise SemigroupError("boolmat dimension must be >= 1")
        super().__init__()
        self.dim = dim
        self._width = (dim * dim + 7) // 8

    def _product(self, a, b):
        n = self.dim
        rng = range(n)
        return tuple(
            tuple(1 if any(a[i][k] and b[k][j] for k in rng) else 0
                  for j in rng)
            for i in rng
        )

    def key(self, a) -> bytes:
        # row-major bits, first entry most significant
        val = 0
        for row in a:
            for bit in row:
                val = (val << 1) | bit
        return val.to_bytes(self._width, "big")

    def validate(self, a):
        ok = (
            isinstance(a, tuple) and len(a) == self.dim
            and all(isinstance(r, tuple) and len(r) == self.dim for r in a)
            and all(v in (0, 1) for r in a for v in r)
        )
        if not ok:
            raise IncompatibleElementError(
                f"not a {self.dim}x{self.dim} boolean matrix")
        return a

    def describe(self) -> dict:
        return {"type": "boolmat", "dim": self.dim}

    def element_json(self, a) -> dict:
        return {"type": "boolmat", "entries": [list(row) for row in a]}


class TransformationContext(SemigroupContext):
    """Full transformation semigroup on {1..d}.

    Elements are 0-indexed image tuples internally; mul(a, b) applies b
    first, then a.  Keys use the 1-indexed images, one byte per point,
    which caps the supported degree at 255.
    """

    family = "transformation"

    def __init__(self, degree: int):
        if not 1 <= degree <= 255:
            raise SemigroupError("transformation degree must be in [1, 255]")
        super().__init__()
        self.degree = degree

    def _product(self, a, b):
        return tuple(a[v] for v in b)

    def key(self, a) -> bytes:
        return bytes(v + 1 for v in a)

    def validate(self, a):
        ok = (
            isinstance(a, tuple) and len(a) == self.degree
            and all(isinstance(v, int) and 0 <= v < self.degree for v in a)
        )
        if not ok:
            raise IncompatibleElementError(
                f"not a transformation of degree {self.degree}")
        return a

    def describe(self) -> dict:
        return {"type": "transformation", "degree": self.degree}

    def element_json(self, a) -> dict:
        return {"type": "transformation", "map": [v + 1 for v in a]}


class MonogenicContext(SemigroupContext):
    """Abstract monogenic semigroup with prescribed cycle start and length.

    Elements are canonical exponents e in [1, s+L-1] of the generator;
    products add exponents and reduce with canon(n) = n for n <= s+L-1,
    else ((n - s) mod L) + s.  The generator (e = 1) has cycle start
    exactly s and cycle length exactly L, which makes abstract (s, L)
    scenarios executable.
    """

    family = "monogenic"

    def __init__(self, cycle_start: int, cycle_length: int):
        if cycle_start < 1 or cycle_length < 1:
            raise SemigroupError("monogenic parameters must be >= 1")
        super().__init__()
        self.cycle_start = cycle_start
        self.cycle_length = cycle_length
        self.order = cycle_start + cycle_length - 1
        self._width = _byte_width(self.order)

    def canon(self, n: int) -> int:
        if n <= self.order:
            return n
        return (n - self.cycle_start) % self.cycle_length + self.cycle_start

    @property
    def generator(self) -> int:
        return 1

    def _product(self, a, b):
        return self.canon(a + b)

    def key(self, a) -> bytes:
        return a.to_bytes(self._width, "big")

    def validate(self, a):
        if not isinstance(a, int) or not 1 <= a <= self.order:
            raise IncompatibleElementError(
                f"{a!r} is not a canonical exponent in [1, {self.order}]")
        return a

    def describe(self) -> dict:
        return {"type": "monogenic", "s": self.cycle_start,
                "L": self.cycle_length}

    def element_json(self, a) -> dict:
        return {"type": "monogenic", "s": self.cycle_start,
                "L": self.cycle_length, "e": a}


def make_context(family: str, params: dict) -> SemigroupContext:
    """Context for a named family; `params` uses the JSON spec field names."""
    if family == "zmod":
        return ZModContext(params["modulus"])
    if family == "matmod":
        return MatModContext(params["dim"], params["modulus"])
    if family == "boolmat":
        return BoolMatContext(params["dim"])
    if family == "transformation":
        return TransformationContext(params["degree"])
    if family == "monogenic":
        return MonogenicContext(params["s"], params["L"])
    raise ElementSpecError(f"unknown family {family!r}", "$.type")


def _require(doc: dict, name: str, kind, where: str):
    if name not in doc:
        raise ElementSpecError(f"missing field {name!r}", where)
    val = doc[name]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise ElementSpecError(f"field {name!r} must be an integer",
                               f"{where}.{name}")
    if kind is list and not isinstance(val, list):
        raise ElementSpecError(f"field {name!r} must be an array",
                               f"{where}.{name}")
    return val


def _parse_matrix(doc: dict, where: str):
    rows = _require(doc, "entries", list, where)
    if not rows:
        raise ElementSpecError("matrix must have at least one row",
                               f"{where}.entries")
    dim = len(rows)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ElementSpecError(
                f"row {i} must be an array of length {dim}",
                f"{where}.entries[{i}]")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise ElementSpecError("matrix entries must be integers",
                                       f"{where}.entries[{i}][{j}]")
        out.append(tuple(row))
    return dim, tuple(out)


def parse_element_spec(text):
    """Parse an element spec document into (context, element).

    `text` may be a JSON string or an already-decoded dict.  Errors carry
    the position of the offending field; malformed JSON reports line and
    column from the decoder.
    """
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ElementSpecError(
                f"malformed JSON: {exc.msg}",
                f"line {exc.lineno} column {exc.colno}") from exc
    else:
        doc = text
    if not isinstance(doc, dict):
        raise ElementSpecError("element spec must be a JSON object")
    family = doc.get("type")
    if family not in FAMILIES:
        raise ElementSpecError(f"unknown family {family!r}", "$.type")

    if family == "zmod":
        modulus = _require(doc, "modulus", int, "$")
        value = _require(doc, "value", int, "$")
        if modulus < 2:
            raise ElementSpecError("modulus must be >= 2", "$.modulus")
        if not 0 <= value < modulus:
            raise ElementSpecError(
                f"value must be in [0, {modulus})", "$.value")
        return ZModContext(modulus), value

    if family == "matmod":
        modulus = _require(doc, "modulus", int, "$")
        if modulus < 2:
            raise ElementSpecError("modulus must be >= 2", "$.modulus")
        dim, mat = _parse_matrix(doc, "$")
        for i, row in enumerate(mat):
            for j, v in enumerate(row):
                if not 0 <= v < modulus:
                    raise ElementSpecError(
                        f"entry must be in [0, {modulus})",
                        f"$.entries[{i}][{j}]")
        return MatModContext(dim, modulus), mat

    if family == "boolmat":
        dim, mat = _parse_matrix(doc, "$")
        for i, row in enumerate(mat):
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ElementSpecError(
                        "boolean matrix entries must be 0 or 1",
                        f"$.entries[{i}][{j}]")
        return BoolMatContext(dim), mat

    if family == "transformation":
        images = _require(doc, "map", list, "$")
        degree = len(images)
        if not 1 <= degree <= 255:
            raise ElementSpecError("degree must be in [1, 255]", "$.map")
        for i, v in enumerate(images):
            if not isinstance(v, int) or not 1 <= v <= degree:
                raise ElementSpecError(
                    f"image must be in [1, {degree}]", f"$.map[{i}]")
        return TransformationContext(degree), tuple(v - 1 for v in images)

    # monogenic
    s = _require(doc, "s", int, "$")
    length = _require(doc, "L", int, "$")
    if s < 1:
        raise ElementSpecError("s must be >= 1", "$.s")
    if length < 1:
        raise ElementSpecError("L must be >= 1", "$.L")
    ctx = MonogenicContext(s, length)
    e = doc.get("e", 1)
    if not isinstance(e, int) or not 1 <= e <= ctx.order:
        raise ElementSpecError(
            f"e must be in [1, {ctx.order}]", "$.e")
    return ctx, e


def random_element(family: str, params: dict, seed: int):
    """Seed-deterministic element of the given family, uniform entries."""
    rng = random.Random(seed)
    if family == "zmod":
        return rng.randrange(params["modulus"])
    if family == "matmod":
        d, m = params["dim"], params["modulus"]
        return tuple(tuple(rng.randrange(m) for _ in range(d))
                     for _ in range(d))
    if family == "boolmat":
        d = params["dim"]
        return tuple(tuple(rng.randrange(2) for _ in range(d))
                     for _ in range(d))
    if family == "transformation":
        d = params["degree"]
        return tuple(rng.randrange(d) for _ in range(d))
    if family == "monogenic":
        order = params["s"] + params["L"] - 1
        return rng.randint(1, order)
    raise ElementSpecError(f"unknown family {family!r}", "$.type")
