"""Reproducible experiment suites over the colorers and the exact oracle."""

from __future__ import annotations

__all__ = ["SUITES", "SuiteResult", "run_suite"]

from ._suites import SUITES, SuiteResult, run_suite
