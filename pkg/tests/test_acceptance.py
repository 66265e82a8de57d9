"""Full acceptance run: every headline check, one pass/fail line each."""

import pytest

from airycheck import cli

BUDGET_MS = {
    "trace-identity-gl2": 2000,
    "trace-identity-gl4": 10000,
    "decomposition": 30000,
}

_results = {}


@pytest.mark.parametrize("name,fn", cli.ACCEPTANCE, ids=[n for n, _ in cli.ACCEPTANCE])
def test_acceptance(name, fn, capsys):
    verdict = cli.run_check(name, fn)
    _results[name] = verdict
    status = "PASS" if verdict["pass"] else "FAIL"
    with capsys.disabled():
        print(f"{status} {name} ({verdict['runtime_ms']} ms)")
    assert verdict["pass"], verdict.get("witness")
    budget = BUDGET_MS.get(name)
    if budget is not None:
        assert verdict["runtime_ms"] < budget, (
            f"{name} took {verdict['runtime_ms']} ms, budget {budget} ms"
        )


def test_all_criteria_ran():
    assert len(_results) == len(cli.ACCEPTANCE) == 12
