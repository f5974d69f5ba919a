import pytest
from hypothesis import HealthCheck, settings

from rotlandau import PhysicalConfig

settings.register_profile(
    "ci",
    max_examples=120,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.filter_too_much],
)
settings.load_profile("ci")


@pytest.fixture()
def worked_config() -> PhysicalConfig:
    # reference configuration used throughout: unit mass and coupling,
    # rotating at Omega = 1, pure attractive 1/rho tail
    return PhysicalConfig(
        M=1.0, alpha=0.0, chi=0.0, B0=0.0, Omega=1.0, D=0.0, a=0.0, mu=1.0, tau2=0.0
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion, aggregated over subcases."""
    verdicts: dict[str, bool] = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            if getattr(report, "when", "call") not in ("call", "setup"):
                continue
            name = nodeid.split("::")[1].split("[")[0]
            key = name.removeprefix("test_criterion_")[:2]
            verdicts[key] = verdicts.get(key, True) and outcome == "passed"
    if not verdicts:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(verdicts):
        status = "PASS" if verdicts[key] else "FAIL"
        terminalreporter.write_line(f"criterion {int(key)}: {status}")
