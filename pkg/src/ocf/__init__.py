"""Occupancy-controlled cuckoo filter with adaptive resizing.

Public surface: ``OcfFilter`` (the filter itself, in static-threshold
"pre" mode or congestion-aware "eof" mode), ``FilterParams`` for tuning,
and the benchmark harness in ``ocf.bench`` / the ``ocf-bench`` CLI.
"""

from .facade import ConsistencyError, Mode, OcfFilter, ResizeReport, StatsSnapshot
from .params import FilterParams, InvalidParams
from .policy import ResizeDirective

__all__ = [
    "ConsistencyError",
    "FilterParams",
    "InvalidParams",
    "Mode",
    "OcfFilter",
    "ResizeDirective",
    "ResizeReport",
    "StatsSnapshot",
]
