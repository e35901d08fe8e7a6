import numpy as np
import pytest

from boolq import kernels
from boolq.core import TruthTable

ACCEPTANCE_LINES = []


def all_tables(n):
    return [TruthTable.from_int(n, v) for v in range(1 << (1 << n))]


def random_tables(n, count, seed):
    rng = np.random.default_rng(seed)
    return [TruthTable(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8).tobytes()) for _ in range(count)]


BACKENDS = [pytest.param(kernels.python_backend, id="python")]
if kernels.compiled_backend() is not None:
    BACKENDS.append(pytest.param(kernels.compiled_backend(), id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def tables3():
    return all_tables(3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
