"""Discrete logarithms over a torsion base element.

Once the cycle structure (s, L) of the base x is known, the powers
{x^s, ..., x^(s+L-1)} form a cyclic group whose identity is x^(tL) with
t = ceil(s/L) and whose generator is x' = x^(tL+1).  GroupView packages
that data; semigroup_dlog reduces the semigroup problem to one BSGS run
inside the group plus two binary searches, and pohlig_hellman_dlog swaps
the single BSGS for per-prime digit extraction when the factorization of
L is available.  Both return the complete solution set: a unique exponent
below the cycle start, or an arithmetic progression with period L.

Integer factorization and CRT support live in `numtheory` and are
re-exported here for convenience.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    CycleStructure,
    NoSolutionError,
    SemigroupContext,
    SemigroupError,
    power,
)
from .numtheory import crt_combine, factor_integer  # noqa: F401  (re-export)
from .numtheory import ceil_sqrt


@dataclass(frozen=True)
class GroupView:
    """The cyclic group hiding inside the power sequence of x.

    `identity` is x^(tL), `generator` is x' = x^(tL+1), and `cycle_power`
    caches x^L for the one-multiplication membership test
    y in G_x  <=>  y * x^L = y.
    """

    base: object
    cycle: CycleStructure
    t: int
    generator: object
    identity: object
    cycle_power: object
    identity_key: bytes


def make_group_view(ctx: SemigroupContext, x,
                    cycle: CycleStructure) -> GroupView:
    s, length = cycle.cycle_start, cycle.cycle_length
    t = -(-s // length)
    identity = power(ctx, x, t * length)
    generator = ctx.mul(identity, x)  # x^(tL+1)
    cycle_power = power(ctx, x, length)
    return GroupView(base=x, cycle=cycle, t=t, generator=generator,
                     identity=identity, cycle_power=cycle_power,
                     identity_key=ctx.key(identity))


def in_group(ctx: SemigroupContext, gv: GroupView, y) -> bool:
    """Membership test: one multiplication and one key comparison."""
    return ctx.key(ctx.mul(y, gv.cycle_power)) == ctx.key(y)


def inverse_in_group(ctx: SemigroupContext, gv: GroupView, n: int):
    """Inverse of x^n inside the group, for any exponent n >= cycle start.

    With v minimal such that v*L >= s + n, the element x^(vL - n) lies in
    the group and multiplies with x^n to the identity x^(tL).
    """
    s, length = gv.cycle.cycle_start, gv.cycle.cycle_length
    if n < s:
        raise SemigroupError(
            f"x^{n} lies before the cycle start {s} and has no inverse")
    v = -(-(s + n) // length)
    return power(ctx, gv.base, v * length - n)


def bsgs_group_dlog(ctx: SemigroupContext, gv: GroupView, generator, target,
                    order: int) -> int:
    """Minimal m' in [0, order) with generator^m' = target, inverse-free.

    Baby steps store target*g^j for j = 0..q (q = ceil(sqrt(order)));
    giant probes are g^(iq) for i = 1..q+1.  A probe matching the baby
    entry j gives m' = iq - j: scanning i upward and, within the first
    matching probe, taking the largest j makes that candidate minimal.
    m' = 0 is the target-equals-identity case, checked upfront since no
    zeroth power exists.  Costs at most 2q + O(log order) multiplications
    and stores q + 1 table entries.
    """
    if order < 1:
        raise SemigroupError("order must be >= 1")
    target_key = ctx.key(target)
    if target_key == gv.identity_key:
        return 0
    q = ceil_sqrt(order)
    baby = {target_key: 0}
    cur = target
    for j in range(1, q + 1):
        cur = ctx.mul(cur, generator)
        k = ctx.key(cur)
        prior = baby.get(k)
        if prior is None or prior < j:
            baby[k] = j
    step = power(ctx, generator, q)
    probe = step
    for i in range(1, q + 2):
        if i > 1:
            probe = ctx.mul(probe, step)
        j = baby.get(ctx.key(probe))
        if j is not None:
            m = (i * q - j) % order
            if m:
                return m
    raise NoSolutionError("target is not in the subgroup generated by the base")


@dataclass(frozen=True)
class DlogSolution:
    """Complete solution set of x^m = y.

    kind "unique": a single solution m0 below the cycle start.
    kind "progression": all solutions are m0 + k*period for k >= 0, with
    m0 the minimal in-cycle exponent (cycle_start <= m0 < cycle_start +
    period).
    """

    kind: str
    m0: int
    period: int | None = None

    def contains(self, m: int) -> bool:
        if self.kind == "unique":
            return m == self.m0
        return m >= self.m0 and (m - self.m0) % self.period == 0

    def smallest(self) -> int:
        return self.m0

    def to_json(self) -> dict:
        if self.kind == "unique":
            return {"kind": "unique", "m": self.m0}
        return {"kind": "progression", "m0": self.m0, "period": self.period}


def solution_set(raw_m: int, cycle: CycleStructure) -> DlogSolution:
    """Normalize one known solution exponent into the full solution set."""
    if raw_m < 1:
        raise SemigroupError("solution exponent must be >= 1")
    s, length = cycle.cycle_start, cycle.cycle_length
    if raw_m < s:
        return DlogSolution("unique", raw_m)
    return DlogSolution("progression", s + (raw_m - s) % length, length)


@dataclass
class DlogTrace:
    b: int = 0
    m_prime: int = 0
    m_prime_effective: int = 0
    c: int = 0
    raw: int = 0

    def to_json(self) -> dict:
        return {"b": self.b, "m_prime": self.m_prime,
                "m_prime_effective": self.m_prime_effective,
                "c": self.c, "raw": self.raw}


def _shift_into_group(ctx, gv, y):
    """Minimal b in [0, t] with y*x^(bL) in the group, plus that product.

    The predicate is monotone in b (the shift pushes the implicit exponent
    of y past the cycle start); its failure at b = t means y is not a
    power of the base at all.
    """
    if in_group(ctx, gv, y):
        return 0, y
    t, length = gv.t, gv.cycle.cycle_length
    x = gv.base

    def shifted(b):
        return ctx.mul(y, power(ctx, x, b * length))

    if t == 0 or not in_group(ctx, gv, shifted(t)):
        raise NoSolutionError("y*x^(tL) never enters the group; "
                              "y is not a power of the base")
    lo, hi = 0, t
    while hi - lo >= 2:
        mid = (lo + hi) // 2
        if in_group(ctx, gv, shifted(mid)):
            hi = mid
        else:
            lo = mid
    return hi, shifted(hi)


def _closing_shift(ctx, gv, m_prime_effective):
    """Maximal c >= 0 with x^((tL+1)*m' - cL) still in the group.

    Membership fails monotonically as c grows; exponents stay positive by
    bounding c at (A-1)/L where A = (tL+1)*m'.
    """
    length = gv.cycle.cycle_length
    a = (gv.t * length + 1) * m_prime_effective
    x = gv.base

    def member(c):
        return in_group(ctx, gv, power(ctx, x, a - c * length))

    hi = (a - 1) // length
    if hi == 0 or member(hi):
        return hi, a
    lo = 0  # member(0) always holds: A >= tL+1 > cycle start
    while hi - lo >= 2:
        mid = (lo + hi) // 2
        if member(mid):
            lo = mid
        else:
            hi = mid
    return lo, a


def semigroup_dlog(ctx: SemigroupContext, x, y, cycle: CycleStructure):
    """All m with x^m = y, given the cycle structure of x.

    Reduction to the internal group: shift y into the group (binary search
    for b), one inverse-free BSGS for m' = log of the shifted target with
    base x', then a second binary search for the maximal c that keeps
    x^((tL+1)m' - cL) in the group.  The exponent (tL+1)m' - (b+c)L is the
    discrete logarithm; both searches cost O((log N)^2) multiplications.
    Returns (DlogSolution, DlogTrace); raises NoSolutionError when y is
    not a power of x.
    """
    gv = make_group_view(ctx, x, cycle)
    b, y_prime = _shift_into_group(ctx, gv, y)
    length = cycle.cycle_length
    m_prime = bsgs_group_dlog(ctx, gv, gv.generator, y_prime, length)
    m_eff = m_prime if m_prime else length  # no x^0: identity is (x')^L
    c, a = _closing_shift(ctx, gv, m_eff)
    raw = a - (b + c) * length
    # a y outside <x> can still shift into the group; the power check
    # catches whatever the collision searches let through
    if raw < 1 or not ctx.equal(power(ctx, x, raw), y):
        raise NoSolutionError("y is not a power of the base")
    trace = DlogTrace(b=b, m_prime=m_prime, m_prime_effective=m_eff, c=c,
                      raw=raw)
    return solution_set(raw, cycle), trace


@dataclass
class PrimePowerRecord:
    prime: int
    exponent: int
    digits: list
    residue: int

    def to_json(self) -> dict:
        return {"prime": self.prime, "exponent": self.exponent,
                "digits": self.digits, "residue": self.residue}


@dataclass
class PohligHellmanTrace:
    b: int = 0
    prime_records: list = field(default_factory=list)
    m_prime: int = 0
    m_prime_effective: int = 0
    c: int = 0
    raw: int = 0

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "primes": [r.to_json() for r in self.prime_records],
            "m_prime": self.m_prime,
            "m_prime_effective": self.m_prime_effective,
            "c": self.c,
            "raw": self.raw,
        }


def pohlig_hellman_dlog(ctx: SemigroupContext, x, y, cycle: CycleStructure,
                        factorization: list | None = None):
    """Semigroup discrete log via per-prime digit extraction.

    For each p^e dividing the cycle length L: project the generator and
    the shifted target into the order-p^e subgroup, extract the base-p
    digits of the residue with BSGS runs in the order-p subgroup (at most
    ceil(sqrt(p)) + 1 table entries each), and recombine the residues with
    the CRT.  The closing b/c searches and the final exponent formula are
    shared with semigroup_dlog, so both solvers return identical solution
    sets.  Whenever a partial exponent n_k is zero the z^(n_k) factor is
    simply omitted (no zeroth power exists in a semigroup).
    """
    length = cycle.cycle_length
    if factorization is None:
        factorization = factor_integer(length)
    check = 1
    for p, e in factorization:
        check *= p ** e
    if check != length:
        raise SemigroupError(
            f"factorization {factorization} does not multiply to {length}")

    gv = make_group_view(ctx, x, cycle)
    b, y_prime = _shift_into_group(ctx, gv, y)
    trace = PohligHellmanTrace(b=b)

    residues = []
    for p, e in factorization:
        pe = p ** e
        cof = length // pe
        xi = power(ctx, gv.generator, cof) if cof > 1 else gv.generator
        yi = power(ctx, y_prime, cof) if cof > 1 else y_prime
        gamma = power(ctx, xi, p ** (e - 1)) if e > 1 else xi
        zi = inverse_in_group(ctx, gv, (gv.t * length + 1) * cof)
        n_k = 0
        digits = []
        for k in range(e):
            adjusted = ctx.mul(yi, power(ctx, zi, n_k)) if n_k else yi
            lift = p ** (e - 1 - k)
            y_k = power(ctx, adjusted, lift) if lift > 1 else adjusted
            d_k = bsgs_group_dlog(ctx, gv, gamma, y_k, p)
            digits.append(d_k)
            n_k += p ** k * d_k
        residues.append((n_k, pe))
        trace.prime_records.append(PrimePowerRecord(p, e, digits, n_k))

    m_prime = crt_combine(residues) if residues else 0
    m_eff = m_prime if m_prime else length
    c, a = _closing_shift(ctx, gv, m_eff)
    raw = a - (b + c) * length
    if raw < 1 or not ctx.equal(power(ctx, x, raw), y):
        raise NoSolutionError("y is not a power of the base")
    trace.m_prime = m_prime
    trace.m_prime_effective = m_eff
    trace.c = c
    trace.raw = raw
    return solution_set(raw, cycle), trace
