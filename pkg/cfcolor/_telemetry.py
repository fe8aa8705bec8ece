from __future__ import annotations

import logging
import os
from typing import TYPE_CHECKING

from opentelemetry import metrics, trace

if TYPE_CHECKING:
    from opentelemetry.metrics import Counter, Histogram, Meter, MeterProvider
    from opentelemetry.trace import Tracer, TracerProvider

_SCOPE = "cfcolor"

logger = logging.getLogger("cfcolor")
"""Stage-level debug messages."""

resample_logger = logging.getLogger("cfcolor.resample")
"""One debug record per Moser–Tardos resample."""

DEFAULT_SEED = 1
"""The published seed used when neither an argument nor CFCOLOR_SEED is given."""

SEED_ENV = "CFCOLOR_SEED"


def default_seed() -> int:
    """Returns the seed from the CFCOLOR_SEED environment variable, or DEFAULT_SEED.

    Raises:
        ValueError: If CFCOLOR_SEED is set but is not a non-negative integer.
    """
    raw = os.environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    try:
        seed = int(raw)
    except ValueError:
        msg = f"{SEED_ENV} must be a non-negative integer, got {raw!r}"
        raise ValueError(msg) from None
    if seed < 0:
        msg = f"{SEED_ENV} must be a non-negative integer, got {raw!r}"
        raise ValueError(msg)
    return seed


def get_tracer(tracer_provider: TracerProvider | None = None) -> Tracer:
    return trace.get_tracer(_SCOPE, tracer_provider=tracer_provider)


def get_meter(meter_provider: MeterProvider | None = None) -> Meter:
    return metrics.get_meter(_SCOPE, meter_provider=meter_provider)


def resample_counter(meter: Meter) -> Counter:
    return meter.create_counter(
        "cfcolor.resample.count",
        unit="{resample}",
        description="Number of bad hyperedges resampled.",
    )


def colors_histogram(meter: Meter) -> Histogram:
    return meter.create_histogram(
        "cfcolor.coloring.colors",
        unit="{color}",
        description="Distinct colors used by a verified coloring.",
    )
