import pytest
from hypothesis import strategies as st

from costfair.generator import GeneratorConfig, generate_random_protocol
from costfair.lab import corpus
from costfair.protolib import BUILTINS, builtin


@pytest.fixture(scope="session")
def theorem1_corpus():
    return list(corpus(theorem=1))


@pytest.fixture(scope="session")
def theorem2_corpus():
    return list(corpus(theorem=2))


@pytest.fixture(params=sorted(BUILTINS))
def any_builtin(request):
    return builtin(request.param)


@st.composite
def small_protocols(draw, max_depth=4, max_branching=3):
    """Generated protocols of modest size, in every generator mode."""
    premises = draw(st.sampled_from(["none", "theorem1", "theorem2"]))
    config = GeneratorConfig(
        depth=draw(st.integers(1, max_depth)),
        branching=draw(st.integers(2, max_branching)),
        seed=draw(st.integers(0, 10**6)),
        enforce_theorem1_premises=premises == "theorem1",
        enforce_fair_exchange=draw(st.booleans()),
        both_can_leave=premises == "theorem2",
    )
    return generate_random_protocol(config)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
