import pytest

from conftest import ACCEPTANCE_LINES
from torusqm.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("k,title", [(k, title) for k, title, _ in CRITERIA], ids=lambda x: str(x))
def test_criterion(k, title):
    checks = run_criterion(k)
    failed = [c for c in checks if not c.passed]
    line = f"criterion {k}: {'PASS' if not failed else 'FAIL'} - {title}"
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert not failed, "; ".join(f"{c.name}: {c.detail}" for c in failed)
