import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")


@pytest.fixture(params=["compiled", "python"])
def backend(request):
    """Kernel module for each available backend."""
    from minkphi import _fallback

    if request.param == "python":
        return _fallback
    try:
        from minkphi import _kernels
    except ImportError:
        pytest.skip("compiled extension not built")
    return _kernels


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
