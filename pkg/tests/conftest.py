import pytest

from hsdet.moments import Family, moment_table
from hsdet.rational import HalfAlpha
from hsdet.reconstruct import legendre_coefficients


@pytest.fixture(scope="session")
def moment_cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("moment-cache")


@pytest.fixture(scope="session")
def unbalanced_expansions(moment_cache_dir):
    """Exact degree-600 unbalanced expansions for alpha = 1/2, 1, 2.

    Built once per session; lower-degree expansions are exact prefixes.
    """
    out = {}
    for ta in (1, 2, 4):
        seq = moment_table(
            Family.UNBALANCED, HalfAlpha(ta), 600, cache_dir=moment_cache_dir
        )
        out[ta] = legendre_coefficients(seq, 600)
    return out
