import random

import pytest

from brieskorn import seifert_data, validate_params
from brieskorn.errors import NotHyperbolic


def random_valid_tuples(seed, count, max_n=5, max_exponent=9, max_minima=50):
    """Seeded corpus of hyperbolic-type exponent tuples.

    The minima count is capped so that exact elimination on each fiber
    complex stays desk scale.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, max_n)
        exponents = [rng.randint(2, max_exponent) for _ in range(n)]
        try:
            params = validate_params(exponents)
        except NotHyperbolic:
            continue
        data = seifert_data(params)
        if data.minima_count > max_minima:
            continue
        out.append(data)
    return out


@pytest.fixture(scope="session")
def fuzz_corpus():
    return random_valid_tuples(seed=20250808, count=1000)
