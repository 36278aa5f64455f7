import os

import numpy as np
import pytest

from qubitizer import _backend

CRITERIA: dict[int, tuple[str, bool, str]] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    prev = CRITERIA.get(number)
    if prev is not None:
        ok = ok and prev[1]
        detail = "; ".join(d for d in (prev[2], detail) if d)
    CRITERIA[number] = (title, bool(ok), detail)
    print(f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title} {detail}")


@pytest.fixture
def criterion():
    return record


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="module", params=["python", "cython"])
def kernels(request):
    mods = {"python": _backend.python_kernels, "cython": _backend.compiled_kernels}
    mod = mods[request.param]
    if mod is None:
        pytest.skip("compiled kernels not built")
    return mod


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, ok, detail = CRITERIA[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        )
    terminalreporter.write_line(f"backend in use: {_backend.BACKEND}  (QUBITIZER_BACKEND={os.environ.get('QUBITIZER_BACKEND', '')})")
