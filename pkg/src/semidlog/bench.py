"""Seeded benchmark sweeps over instance families and algorithms.

One BenchRecord per (instance, trial): the multiplication count comes
straight from the context counter, the table peak from the algorithm
trace, and the success flag from comparison against the brute-force
oracle whenever the order is small enough to enumerate.  Records are
sorted before emission so output is deterministic under a fixed seed
(wall-clock times excepted; see README).
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass

from .core import SemigroupError
from .cycle import (
    banin_tsaban_cycle_length,
    brute_force_cycle,
    cycle_start_search,
    deterministic_cycle_length,
    monico_cycle_length,
)
from .instances import make_context, random_element

CYCLE_ALGORITHMS = ("deterministic", "monico", "banin-tsaban", "brute")

ORACLE_CAP = 1 << 21


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    order: int | None
    algorithm: str
    trial: int
    seed: int
    multiplications: int
    table_peak: int | None
    wall_time_s: float
    success: bool | None

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "order": self.order,
            "algorithm": self.algorithm,
            "trial": self.trial,
            "seed": self.seed,
            "multiplications": self.multiplications,
            "table_peak": self.table_peak,
            "wall_time_s": self.wall_time_s,
            "success": self.success,
        }

    sort_key = property(lambda self: (self.instance, self.algorithm, self.trial))


_FAMILY_IDS = {"zmod": 1, "matmod": 2, "boolmat": 3, "transformation": 4,
               "monogenic": 5}


def _instance_params(family: str, size: int, rng: random.Random, dim: int,
                     modulus: int) -> dict:
    """Seeded family parameters with `size` steering the instance scale."""
    if family == "monogenic":
        # split size = order into cycle start + length
        length = rng.randint(1, size)
        return {"s": size + 1 - length, "L": length}
    if family == "zmod":
        return {"modulus": max(2, size)}
    if family == "matmod":
        return {"dim": dim, "modulus": modulus}
    if family == "boolmat":
        return {"dim": dim}
    if family == "transformation":
        return {"degree": max(1, size)}
    raise SemigroupError(f"unknown bench family {family!r}")


def _run_algorithm(ctx, elem, algorithm, bound, divisor_bound, rounds, seed):
    """Returns (cycle_length, cycle_start, table_peak)."""
    if algorithm == "deterministic":
        length, trace = deterministic_cycle_length(ctx, elem, bound)
        peak = trace.table_peak
    elif algorithm == "monico":
        length, trace = monico_cycle_length(ctx, elem, bound, divisor_bound,
                                            seed)
        peak = trace.m + 1
    elif algorithm == "banin-tsaban":
        inner, outer = rounds if rounds else (4, None)
        length, _ = banin_tsaban_cycle_length(
            ctx, elem, bound or 16, inner_rounds=inner, outer_rounds=outer,
            seed=seed)
        peak = None
    elif algorithm == "brute":
        cyc = brute_force_cycle(ctx, elem)
        return cyc.cycle_length, cyc.cycle_start, cyc.order
    else:
        raise SemigroupError(f"unknown algorithm {algorithm!r}")
    start = cycle_start_search(ctx, elem, length)
    return length, start, peak


def run_sweep(family: str, algorithm: str, sizes, trials: int = 1,
              seed: int = 0, bound: int | None = None,
              divisor_bound: int = 10 ** 4, rounds=None, dim: int = 2,
              modulus: int = 5, check_oracle: bool = True) -> list:
    records = []
    for size in sizes:
        for trial in range(trials):
            mix = (seed * 1_000_003 + _FAMILY_IDS[family] * 7919
                   + size * 104_729 + trial)
            trial_seed = random.Random(mix).randrange(1 << 62)
            rng = random.Random(trial_seed)
            params = _instance_params(family, size, rng, dim, modulus)
            ctx = make_context(family, params)
            if family == "monogenic":
                # the generator realizes the instance's (s, L) exactly, so
                # `size` is the order actually exercised
                elem = 1
            else:
                elem = random_element(family, params, rng.randrange(1 << 62))
            run_bound = bound
            if bound is None and family == "monogenic" and algorithm in ("monico", "banin-tsaban"):
                run_bound = size  # the construction pins the order
            t0 = time.perf_counter()
            before = ctx.mult_count
            length, start, peak = _run_algorithm(
                ctx, elem, algorithm, run_bound, divisor_bound, rounds,
                trial_seed)
            mults = ctx.mult_count - before
            elapsed = time.perf_counter() - t0
            success = None
            order = None
            if check_oracle:
                oracle_ctx = make_context(family, params)
                try:
                    truth = brute_force_cycle(oracle_ctx, elem, ORACLE_CAP)
                except SemigroupError:
                    truth = None
                if truth is not None:
                    order = truth.order
                    success = (length == truth.cycle_length
                               and start == truth.cycle_start)
            records.append(BenchRecord(
                instance=json.dumps(ctx.describe(), sort_keys=True),
                order=order,
                algorithm=algorithm,
                trial=trial,
                seed=trial_seed,
                multiplications=mults,
                table_peak=peak,
                wall_time_s=round(elapsed, 6),
                success=success,
            ))
    records.sort(key=lambda r: r.sort_key)
    return records


CSV_FIELDS = ("instance", "order", "algorithm", "trial", "seed",
              "multiplications", "table_peak", "wall_time_s", "success")


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS)
    writer.writeheader()
    for rec in records:
        writer.writerow(rec.to_json())
    return buf.getvalue()


def records_to_jsonl(records) -> str:
    return "".join(json.dumps(rec.to_json(), sort_keys=True) + "\n"
                   for rec in records)
