import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from antiham import Digraph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# filled in by test_acceptance.py, printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@st.composite
def digraphs(draw, min_order=0, max_order=8, density=None):
    N = draw(st.integers(min_order, max_order))
    pairs = [(u, v) for u in range(N) for v in range(N) if u != v]
    if density is None:
        arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    else:
        keep = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
        arcs = [p for p, r in zip(pairs, keep) if r < density]
    return Digraph(N, arcs)


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns ``(exit_code, stdout, stderr)``."""
    from antiham.cli import main

    def run(*argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr()
        return code, out.out, out.err

    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
