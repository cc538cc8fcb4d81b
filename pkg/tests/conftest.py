import itertools
import random

import pytest

from semidlog import (
    BoolMatContext,
    MatModContext,
    MonogenicContext,
    TransformationContext,
    ZModContext,
    random_element,
)


def small_instance_pool(seed=0):
    """Varied (ctx_factory, element) pairs used by several property tests.

    Context factories rather than contexts so each test gets fresh
    counters.
    """
    rng = random.Random(seed)
    pool = []
    for n in (6, 10, 36, 100, 101):
        for x in (0, 1, 2, 3, n - 1):
            pool.append((lambda n=n: ZModContext(n), x % n))
    for s, length in [(1, 1), (1, 6), (2, 20), (5, 12), (10, 15), (18, 7),
                      (7, 9), (40, 3)]:
        pool.append((lambda s=s, L=length: MonogenicContext(s, L), 1))
    for deg in (3, 4):
        for images in itertools.islice(
                itertools.product(range(deg), repeat=deg), 0, None, 3):
            pool.append((lambda deg=deg: TransformationContext(deg), images))
    for _ in range(12):
        d = rng.choice([2, 3])
        m = rng.choice([2, 3, 5])
        elem = random_element("matmod", {"dim": d, "modulus": m},
                              rng.randrange(1 << 30))
        pool.append((lambda d=d, m=m: MatModContext(d, m), elem))
    for _ in range(6):
        d = rng.choice([2, 3, 4])
        elem = random_element("boolmat", {"dim": d}, rng.randrange(1 << 30))
        pool.append((lambda d=d: BoolMatContext(d), elem))
    return pool


@pytest.fixture(scope="session")
def instance_pool():
    return small_instance_pool()
