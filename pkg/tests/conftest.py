import re
import sys
from collections import OrderedDict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_AC = re.compile(r"test_acceptance\.py::test_ac(\d+)_(\w+)")
_results: "OrderedDict[int, list[tuple[str, bool]]]" = OrderedDict()

TITLES = {
    1: "single-path gain identity",
    2: "grid orthogonality",
    3: "allocation optimality",
    4: "expected energy closed form vs sampling",
    5: "ergodic SE upper bound",
    6: "coverage geometry",
    7: "coverage vs deployment size shape",
    8: "SE vs user position shape",
    9: "Gaussian even moments",
    10: "determinism across parallelism",
}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(int(m.group(1)), []).append((m.group(2), report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for ac in sorted(_results):
        checks = _results[ac]
        failed = [name for name, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
        if failed:
            detail += " ; failing: " + ", ".join(failed)
        terminalreporter.write_line(f"[{status}] AC{ac} {TITLES.get(ac, '')} ({detail})")
