import os

import pytest
from hypothesis import HealthCheck, settings

from wsprime.harness.corpus import CorpusSpec, cached_corpus
from wsprime.modules import regular_module, span_submodule
from wsprime.rings import make_cyclic_ring, make_mult_set

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("WSPRIME_HYPOTHESIS", "default"))

# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def z12():
    return make_cyclic_ring(12)


@pytest.fixture(scope="session")
def z12_example(z12):
    m = regular_module(z12)
    return m, span_submodule(m, [6]), make_mult_set(z12, [1, 3, 9])


@pytest.fixture(scope="session")
def small_spec():
    return CorpusSpec(max_ring_order=8, max_module_order=12)


@pytest.fixture(scope="session")
def small_corpus(small_spec):
    return cached_corpus(small_spec)
