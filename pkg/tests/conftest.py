import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import SUMMARY

    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for n in sorted(SUMMARY):
            terminalreporter.write_line(SUMMARY[n])
