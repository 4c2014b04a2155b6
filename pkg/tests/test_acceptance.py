"""One test per acceptance criterion; the summary prints a PASS/FAIL line for each.

Run directly with ``python3 tests/test_acceptance.py``.
"""

import subprocess
import sys

import pytest

from hopf_toprec import checks
from hopf_toprec.cli import io_roundtrip

CRITERIA = {
    1: ("Hopf axioms on trees of total order <= 5", ["1"]),
    2: ("Catalan dimensions and fiber sizes", ["2"]),
    3: ("order-3 product in k[S] and k[Y]", ["3"]),
    4: ("antipode values", ["4"]),
    5: ("reduced and iterated coproduct", ["5"]),
    6: ("coproduct of W^0_4 and cut admissibility", ["6"]),
    7: ("loop-graph suite", ["7"]),
    8: ("recursion expansion and displays", ["8"]),
    9: ("product compatibility", ["9"]),
    10: ("forest map and exponential series", ["10"]),
    11: ("quantization", ["11"]),
}


def _report(lines):
    return "\n".join(f"{'ok  ' if ok else 'FAIL'} {n.strip()}: {d}" for n, ok, d in lines)


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, record_property):
    title, suites = CRITERIA[n]
    record_property("criterion", n)
    record_property("title", title)
    lines = [line for s in suites for line in checks.run(s)]
    assert checks.passed(lines), _report(lines)


def test_criterion_12(record_property):
    record_property("criterion", 12)
    record_property("title", "JSON round trip and `check all` exit status")
    lines = io_roundtrip(4)
    res = subprocess.run([sys.executable, "-m", "hopf_toprec.cli", "check", "all"],
                         capture_output=True, text=True)
    lines.append(("check all exits 0", res.returncode == 0, f"exit {res.returncode}"))
    assert checks.passed(lines), _report(lines) + "\n" + res.stdout


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
