from __future__ import annotations

import conftest
import pytest

from lagorbits import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    result = acceptance.run_criterion(number, seed=0)
    line = result.line()
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert result.passed, line
