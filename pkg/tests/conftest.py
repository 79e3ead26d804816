import numpy as np
import pytest

from sdude import bsc_channel, build_tables, hamming_loss


@pytest.fixture(scope="session")
def bsc01():
    return bsc_channel(0.1)


@pytest.fixture(scope="session")
def hamming2():
    return hamming_loss(2)


@pytest.fixture(scope="session")
def tables01(bsc01, hamming2):
    return build_tables(bsc01, hamming2)


def random_full_rank_channel(rng, clean, noisy):
    """Row-stochastic (clean x noisy) matrix with full row rank."""
    from sdude import build_channel
    from sdude.errors import RankError

    while True:
        pi = rng.dirichlet(np.ones(noisy), size=clean)
        try:
            return build_channel(pi)
        except RankError:  # pragma: no cover - essentially never for random draws
            continue
