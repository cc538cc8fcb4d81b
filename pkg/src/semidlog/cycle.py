"""Cycle-length and cycle-start computation for torsion elements.

Four routes to the cycle structure:

  brute_force_cycle           exhaustive power enumeration; the ground
                              truth every other route is tested against
  deterministic_cycle_length  doubling baby-step/giant-step rounds; exact
  monico_cycle_length         collision search with a prime offset and
                              divisor stripping; may return a proper
                              multiple of the cycle length
  banin_tsaban_cycle_length   gcd/lcm accumulation of discrete-log oracle
                              answers for random powers

plus cycle_start_search (doubling + bisection once the cycle length is
known) and group_dlog_oracle (the inverse-free collision oracle the
Banin-Tsaban route relies on).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .core import (
    CollisionTable,
    CycleStructure,
    OracleFailureError,
    SemigroupContext,
    SemigroupError,
    build_power_table,
    find_matches,
    power,
)
from .numtheory import (
    ceil_sqrt,
    divisors,
    next_prime,
    prime_power_divisors_below,
)

BRUTE_FORCE_CAP = 10 ** 7
_DOUBLING_CAP = 1 << 62


def brute_force_cycle(ctx: SemigroupContext, x, cap: int = BRUTE_FORCE_CAP) -> CycleStructure:
    """Exact cycle structure by iterating x, x^2, ... until the first
    repeated value.

    The first repeated key, seen at exponent b with an earlier occurrence
    at a, gives cycle start a and cycle length b - a.  Raises when no
    repeat shows up within `cap` steps (element not torsion within cap).
    """
    seen = {}
    cur = x
    exp = 1
    while exp <= cap:
        k = ctx.key(cur)
        prior = seen.get(k)
        if prior is not None:
            return CycleStructure(prior, exp - prior)
        seen[k] = exp
        cur = ctx.mul(cur, x)
        exp += 1
    raise SemigroupError(f"no repeated power within {cap} steps; "
                         "element may not be torsion")


@dataclass(frozen=True)
class Alg4Round:
    """One doubling round of the deterministic algorithm."""

    bound: int
    stride: int
    baby_hit: int | None
    giant_hit: tuple | None
    candidate: int | None
    accepted: bool
    table_size: int

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "stride": self.stride,
            "baby_hit": self.baby_hit,
            "giant_hit": list(self.giant_hit) if self.giant_hit else None,
            "candidate": self.candidate,
            "accepted": self.accepted,
            "table_size": self.table_size,
        }


@dataclass
class Alg4Trace:
    rounds: list = field(default_factory=list)
    multiplications: int = 0
    cycle_length: int | None = None

    @property
    def table_peak(self) -> int:
        return max((r.table_size for r in self.rounds), default=0)

    def to_json(self) -> dict:
        return {
            "rounds": [r.to_json() for r in self.rounds],
            "multiplications": self.multiplications,
            "cycle_length": self.cycle_length,
            "table_peak": self.table_peak,
        }


def _alg4_round(ctx: SemigroupContext, x, bound: int):
    """One baby/giant round at the given bound.

    Baby phase: walk x^N, x^(N+1), ..., x^(N+q) with q = ceil(sqrt(N)),
    comparing each against x^N (a hit at step j means the cycle length is
    exactly j, since equal powers at distinct exponents certify both lie
    in the cycle).  The pairs (N+j, key) for j < q form the lookup table.

    Giant phase: probe x^(N+iq) for i = 1..q against the table.  A match
    at minimal i yields candidate iq - j, which is provably the cycle
    length when N >= max(cycle start, cycle length) but can be a proper
    multiple when the table straddles the cycle start.  The candidate is
    therefore accepted only after checking x^N = x^(N + candidate); a
    failed check means this round's bound was too small and the caller
    doubles.
    """
    q = ceil_sqrt(bound)
    base = power(ctx, x, bound)
    base_key = ctx.key(base)
    entries = [(bound, base_key)]
    cur = base
    for j in range(1, q + 1):
        cur = ctx.mul(cur, x)
        k = ctx.key(cur)
        if k == base_key:
            rec = Alg4Round(bound, q, j, None, j, True, len(entries))
            return j, rec
        if j < q:
            entries.append((bound + j, k))
    entries.sort(key=lambda ent: (ent[1], ent[0]))
    table = CollisionTable(entries=tuple(entries), start_exp=bound,
                           stride=1, count=len(entries) - 1)

    step = power(ctx, x, q)
    probe = cur  # x^(N+q), the i = 1 giant value
    for i in range(1, q + 1):
        if i > 1:
            probe = ctx.mul(probe, step)
        matches = find_matches(table, ctx.key(probe))
        if matches:
            j = max(matches) - bound
            candidate = i * q - j
            check = ctx.mul(power(ctx, x, candidate), base)
            accepted = ctx.key(check) == base_key
            rec = Alg4Round(bound, q, None, (i, j), candidate, accepted,
                            len(table))
            return (candidate if accepted else None), rec
    rec = Alg4Round(bound, q, None, None, None, False, len(table))
    return None, rec


def deterministic_cycle_length(ctx: SemigroupContext, x,
                               known_bound: int | None = None):
    """Exact cycle length of a torsion element; returns (L, Alg4Trace).

    Without a bound, rounds run at N = 1, 2, 4, ... until a validated
    collision appears, which is guaranteed once N reaches
    max(cycle start, cycle length).  With `known_bound` (an upper bound on
    the order), a single round at that bound suffices and a failure to
    find a collision raises instead of doubling.
    """
    trace = Alg4Trace()
    start_count = ctx.mult_count
    if known_bound is not None:
        if known_bound < 1:
            raise SemigroupError("known_bound must be >= 1")
        result, rec = _alg4_round(ctx, x, known_bound)
        trace.rounds.append(rec)
        trace.multiplications = ctx.mult_count - start_count
        if result is None:
            raise SemigroupError(
                f"no validated collision at bound {known_bound}; the bound "
                "must be at least max(cycle start, cycle length)")
        trace.cycle_length = result
        return result, trace

    bound = 1
    while bound <= _DOUBLING_CAP:
        result, rec = _alg4_round(ctx, x, bound)
        trace.rounds.append(rec)
        if result is not None:
            trace.multiplications = ctx.mult_count - start_count
            trace.cycle_length = result
            return result, trace
        bound *= 2
    raise SemigroupError("doubling cap exceeded; element may not be torsion")


def cycle_start_search(ctx: SemigroupContext, x, cycle_length: int,
                       max_start: int = _DOUBLING_CAP) -> int:
    """Cycle start via doubling then bisection, given the true cycle length.

    The predicate "x^(c + L) = x^c" holds exactly for c >= cycle start
    (it also holds when L is any positive multiple of the true cycle
    length, so a Monico-style overshoot still yields the correct start).
    Costs O((log N)^2) multiplications.  `max_start` guards against a
    candidate L that is not a multiple of the true cycle length, for which
    the predicate never holds.
    """
    if cycle_length < 1:
        raise SemigroupError("cycle_length must be >= 1")
    step = power(ctx, x, cycle_length)

    def holds(c: int) -> bool:
        xc = power(ctx, x, c)
        return ctx.key(ctx.mul(xc, step)) == ctx.key(xc)

    s = 1
    while not holds(s):
        s *= 2
        if s > max_start:
            raise SemigroupError(
                f"x^(c+{cycle_length}) never equals x^c for c <= {max_start}; "
                "the supplied cycle length is not a multiple of the true one")
    if s == 1:
        return 1
    lo = s // 2  # predicate known false here
    while s - lo >= 2:
        mid = (lo + s) // 2
        if holds(mid):
            s = mid
        else:
            lo = mid
    return s


@dataclass
class MonicoTrace:
    bound: int = 0
    m: int = 0
    prime: int = 0
    duplicate_pair: tuple | None = None
    collision_one: tuple | None = None  # (a1, b1)
    collision_two: tuple | None = None  # (a2, b2)
    gcd_value: int = 0
    divisor_bound: int = 0
    stripped_divisors: list = field(default_factory=list)
    attempts: list = field(default_factory=list)  # bounds of failed rounds
    multiplications: int = 0
    cycle_length: int | None = None

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "m": self.m,
            "prime": self.prime,
            "duplicate_pair": list(self.duplicate_pair) if self.duplicate_pair else None,
            "collision_one": list(self.collision_one) if self.collision_one else None,
            "collision_two": list(self.collision_two) if self.collision_two else None,
            "gcd": self.gcd_value,
            "divisor_bound": self.divisor_bound,
            "stripped_divisors": self.stripped_divisors,
            "failed_bounds": self.attempts,
            "multiplications": self.multiplications,
            "cycle_length": self.cycle_length,
        }


def monico_strip(ctx: SemigroupContext, x, anchor_exp: int, g: int,
                 divisor_bound: int, record: list | None = None) -> int:
    """Divisor-stripping step: reduce a multiple g of the cycle length.

    The divisor list is the set of prime-power divisors of the *original*
    g that do not exceed `divisor_bound`, tested in decreasing order; g is
    replaced by g/d whenever x^(anchor_exp + g/d) = x^(anchor_exp) holds.
    The list is not recomputed as g shrinks, so prime factors above the
    bound are never removed and the result can stay a proper multiple.
    """
    if g < 1:
        raise SemigroupError("g must be >= 1")
    base = power(ctx, x, anchor_exp)
    base_key = ctx.key(base)
    for d in prime_power_divisors_below(g, divisor_bound):
        if g % d:
            continue
        cand = g // d
        if cand < 1:
            continue
        if ctx.key(ctx.mul(power(ctx, x, cand), base)) == base_key:
            g = cand
            if record is not None:
                record.append(d)
    return g


def _monico_round(ctx, x, bound, divisor_bound, trace):
    m = ceil_sqrt(bound)
    q = next_prime(bound)
    table = build_power_table(ctx, x, q, m, m)
    trace.bound, trace.m, trace.prime = bound, m, q

    dup_groups = table.duplicate_groups()
    if dup_groups:
        exps = dup_groups[0][:2]
        i1, i2 = (exps[0] - q) // m, (exps[1] - q) // m
        trace.duplicate_pair = (i1, i2)
        g = (i2 - i1) * m
    else:
        def least_shift(offset_exp):
            # smallest b in [1, m] with x^(offset_exp + b) in the table;
            # b = m does occur: consecutive table residues can sit exactly
            # m apart, so the open window [1, m) is not always enough
            cur = power(ctx, x, offset_exp)
            for b in range(1, m + 1):
                cur = ctx.mul(cur, x)
                hits = find_matches(table, ctx.key(cur))
                if hits:
                    return b, (hits[0] - q) // m
            return None, None

        b1, a1 = least_shift(q)
        if b1 is None:
            return None
        b2, a2 = least_shift(2 * q)
        if b2 is None:
            return None
        trace.collision_one = (a1, b1)
        trace.collision_two = (a2, b2)
        g = math.gcd(abs(a1 * m - b1), abs(a2 * m - b2 - q))
        if g == 0:
            return None

    trace.gcd_value = g
    stripped: list = []
    result = monico_strip(ctx, x, bound, g, divisor_bound, stripped)
    trace.stripped_divisors = stripped
    return result


def monico_cycle_length(ctx: SemigroupContext, x, bound: int | None = None,
                        divisor_bound: int = 10 ** 4,
                        seed: int | None = None):
    """Monico's baby-step giant-step route; returns (L, MonicoTrace).

    With a valid bound (at least the order of x) the output is always a
    positive multiple of the cycle length; it equals the cycle length
    unless stripping misses a factor above `divisor_bound`, an event whose
    probability drops off as (1 - 1/B)^log(g).  Without a bound the search
    doubles an internal bound until collisions appear.

    The computation is deterministic: the prime offset is the smallest
    prime above the bound.  `seed` is accepted for interface uniformity
    with the randomized routes and is unused here.
    """
    del seed
    if divisor_bound < 2:
        raise SemigroupError("divisor_bound must be >= 2")
    trace = MonicoTrace(divisor_bound=divisor_bound)
    start_count = ctx.mult_count
    doubling = bound is None
    n = 1 if doubling else bound
    if n < 1:
        raise SemigroupError("bound must be >= 1")
    while True:
        result = _monico_round(ctx, x, n, divisor_bound, trace)
        if result is not None:
            trace.multiplications = ctx.mult_count - start_count
            trace.cycle_length = result
            return result, trace
        if not doubling:
            raise SemigroupError(
                f"no collision within bound {bound}; the bound must be at "
                "least the order of the element")
        trace.attempts.append(n)
        n *= 2
        if n > _DOUBLING_CAP:
            raise SemigroupError("doubling cap exceeded; element may not be torsion")


def group_dlog_oracle(ctx: SemigroupContext, h, target, bound: int) -> int:
    """Smallest verified k' with h^k' = target found by inverse-free
    collision search, or OracleFailureError.

    Baby steps walk target*h^j for j = 1..q and giant probes h^(iq) for
    i = 1..q+1 with q = ceil(sqrt(bound)); a match suggests k' = iq - j,
    which is confirmed against h^k' = target before being returned (the
    cancellation step behind the suggestion is only sound when h already
    lies inside its cycle, so candidates are never trusted blindly).
    Candidates are scanned in increasing order, making the returned
    exponent the smallest one the table can express; it is at most
    q(q+1) <= 2*bound.
    """
    if bound < 1:
        raise SemigroupError("oracle bound must be >= 1")
    q = ceil_sqrt(max(bound, 2))
    target_key = ctx.key(target)
    entries = [(0, target_key)]
    cur = target
    for j in range(1, q + 1):
        cur = ctx.mul(cur, h)
        entries.append((j, ctx.key(cur)))
    entries.sort(key=lambda ent: (ent[1], ent[0]))
    table = CollisionTable(entries=tuple(entries), start_exp=0, stride=1,
                           count=q)

    step = power(ctx, h, q)
    probe = step
    for i in range(1, q + 2):
        if i > 1:
            probe = ctx.mul(probe, step)
        for j in sorted(find_matches(table, ctx.key(probe)), reverse=True):
            cand = i * q - j
            if cand < 1:
                continue
            if ctx.key(power(ctx, h, cand)) == target_key:
                return cand
    raise OracleFailureError(
        f"no exponent k' <= {q * (q + 1)} maps h to the target")


@dataclass
class BaninRound:
    z: int
    pairs: list  # (k_i, k_i') tuples
    gcd_value: int

    def to_json(self) -> dict:
        return {"z": self.z, "pairs": [list(p) for p in self.pairs],
                "gcd": self.gcd_value}


@dataclass
class BaninTrace:
    bound: int = 0
    rounds: list = field(default_factory=list)
    lcm_candidate: int = 0
    anchor_exponent: int | None = None
    verified: bool = False
    corrected_from: int | None = None
    failed_bounds: list = field(default_factory=list)
    multiplications: int = 0
    cycle_length: int | None = None

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "rounds": [r.to_json() for r in self.rounds],
            "lcm_candidate": self.lcm_candidate,
            "anchor_exponent": self.anchor_exponent,
            "verified": self.verified,
            "corrected_from": self.corrected_from,
            "failed_bounds": self.failed_bounds,
            "multiplications": self.multiplications,
            "cycle_length": self.cycle_length,
        }


def _default_outer_rounds(bound: int) -> int:
    if bound < 4:
        return 2
    return math.ceil(math.log2(max(2.0, math.log2(bound)))) + 1


def _banin_attempt(ctx, x, bound, inner, outer, rng, trace):
    rounds = []
    acc = 1
    anchor = None
    for _ in range(outer):
        z = rng.randint(max(1, bound // 2), bound)
        h = power(ctx, x, z)
        g = 0
        pairs = []
        for _ in range(inner):
            k = rng.randint(bound + 1, 2 * bound)
            target = power(ctx, h, k)
            try:
                kp = group_dlog_oracle(ctx, h, target, bound)
            except OracleFailureError:
                trace.rounds = rounds
                return None
            pairs.append((k, kp))
            if kp != k:
                # equal elements at distinct exponents z*kp and z*k certify
                # that z*kp already sits inside the cycle
                cert = z * min(kp, k)
                anchor = cert if anchor is None else min(anchor, cert)
            g = math.gcd(g, abs(k - kp))
        rounds.append(BaninRound(z, pairs, g))
        if g:
            acc = math.lcm(acc, g)
    trace.rounds = rounds
    trace.lcm_candidate = acc
    trace.anchor_exponent = anchor
    if anchor is None or acc >= 1 << 63:
        return None
    base = power(ctx, x, anchor)
    base_key = ctx.key(base)
    if ctx.key(ctx.mul(power(ctx, x, acc), base)) != base_key:
        return None
    # candidate verified to be a multiple of the cycle length; correct it
    # to the minimal divisor that still closes the cycle
    for d in divisors(acc):
        if ctx.key(ctx.mul(power(ctx, x, d), base)) == base_key:
            trace.verified = True
            trace.corrected_from = acc if d != acc else None
            return d
    return None  # unreachable: acc itself verifies


def banin_tsaban_cycle_length(ctx: SemigroupContext, x, bound: int = 16,
                              inner_rounds: int = 4,
                              outer_rounds: int | None = None,
                              seed: int = 0, max_doublings: int = 48):
    """Banin-Tsaban cycle length; returns (L, BaninTrace).

    Each outer round draws z in [bound/2, bound], sets h = x^z and gcds
    the differences k_i - k_i' over `inner_rounds` oracle queries with
    random k_i in [bound+1, 2*bound]; the per-round gcds accumulate by
    lcm.  The accumulated candidate is checked against a certified
    in-cycle exponent and divisor-corrected down to the cycle length; any
    failure (oracle miss because z fell below the cycle start, no
    certificate, candidate not a multiple) doubles the bound and retries.
    Outer rounds default to ceil(log2 log2 bound) + 1.
    """
    if bound < 2:
        raise SemigroupError("bound must be >= 2")
    if inner_rounds < 1:
        raise SemigroupError("inner_rounds must be >= 1")
    if outer_rounds is not None and outer_rounds < 1:
        raise SemigroupError("outer_rounds must be >= 1")
    rng = random.Random(seed)
    trace = BaninTrace()
    start_count = ctx.mult_count
    m = bound
    for _ in range(max_doublings):
        outer = outer_rounds if outer_rounds is not None else _default_outer_rounds(m)
        trace.bound = m
        result = _banin_attempt(ctx, x, m, inner_rounds, outer, rng, trace)
        if result is not None:
            trace.multiplications = ctx.mult_count - start_count
            trace.cycle_length = result
            return result, trace
        trace.failed_bounds.append(m)
        m *= 2
    raise SemigroupError(
        f"no verified cycle length within {max_doublings} doublings")


def cycle_structure(ctx: SemigroupContext, x,
                    known_bound: int | None = None) -> CycleStructure:
    """Full (start, length, order) via the deterministic route."""
    length, _ = deterministic_cycle_length(ctx, x, known_bound)
    start = cycle_start_search(ctx, x, length)
    return CycleStructure(start, length)
