from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from opentelemetry.test.test_base import TestBase

if TYPE_CHECKING:
    from collections.abc import Iterator


@pytest.fixture(autouse=True)
def clear_seed_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("CFCOLOR_SEED", raising=False)


@pytest.fixture
def otel_test_base() -> Iterator[TestBase]:
    test_base = TestBase()
    test_base.setUp()
    try:
        yield test_base
    finally:
        test_base.tearDown()
