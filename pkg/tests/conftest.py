from __future__ import annotations

import pytest


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line past pytest's capture, then assert."""

    def emit(name: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, f"{name}: {detail}"

    return emit
