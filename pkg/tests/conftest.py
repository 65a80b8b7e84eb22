import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sbc import Alphabet, BlockMap  # noqa: E402


# The two 4-symbol window-2 tables used throughout: the first is regressive
# but not progressive yet induces a local homeomorphism; the second is
# weakly progressive of order 2 without being regressive.
REG_ORDER2_TABLE = (0, 0, 1, 1, 3, 3, 2, 2, 2, 2, 3, 3, 1, 1, 0, 0)
NONREG_ORDER2_TABLE = (0, 0, 1, 1, 2, 2, 3, 3, 0, 0, 1, 1, 2, 2, 3, 3)


@pytest.fixture(scope="session")
def a2():
    return Alphabet(2)


@pytest.fixture(scope="session")
def a3():
    return Alphabet(3)


@pytest.fixture(scope="session")
def a4():
    return Alphabet(4)


@pytest.fixture(scope="session")
def reg_order2(a4):
    return BlockMap(a4, 2, REG_ORDER2_TABLE)


@pytest.fixture(scope="session")
def nonreg_order2(a4):
    return BlockMap(a4, 2, NONREG_ORDER2_TABLE)


def modular_sum_map(k):
    """d(a_1..a_k) = (a_1 + .. + a_k) mod k over the k-symbol alphabet."""
    import itertools

    alphabet = Alphabet(k)
    table = tuple(
        sum(w) % k for w in itertools.product(range(k), repeat=k)
    )
    return BlockMap(alphabet, k, table)
