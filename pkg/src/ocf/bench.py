"""Benchmark harness: seeded workloads, the three experiments, CSV output.

Experiments:

* ``table1`` — insert the whole workload, then probe with guaranteed-absent
  keys and report the final occupancy / false-positive row.
* ``fill``   — interleave inserts with periodic stat rows; the fixed-size
  RAW baseline records insert failures once it saturates.
* ``trendline`` — periodic capacity rows tracing how each mode's size
  evolves over the run.

Workload keys and probe keys live in disjoint keyspaces (distinct one-byte
generator prefixes), and probe absence is double-checked against the exact
key-store, so a reported false positive is always a genuine fingerprint
collision.
"""

import random
import time
from dataclasses import dataclass, field
from typing import BinaryIO, Iterator, Optional, Union

from .core import CuckooTable
from .facade import Mode, OcfFilter
from .keystore import KeyStore
from .params import FilterParams

RAW = "raw"

WORKLOAD_PREFIX = b"k"
PROBE_PREFIX = b"q"

DEFAULT_PROBES = 100_000
DEFAULT_KEY_LENGTH = 16

# Initial logical capacity for experiments, as a fraction of the key count.
# The workload starts well below the final size on purpose: the resize
# policies are the subject under test, so every run has to exercise many
# grow episodes.
CAPACITY_DIVISOR = 44


def default_capacity(n_keys: int) -> int:
    return max(64, n_keys // CAPACITY_DIVISOR)


class WorkloadError(ValueError):
    """Invalid workload spec, e.g. deleting more keys than are live."""


@dataclass(frozen=True)
class Insert:
    count: int


@dataclass(frozen=True)
class Delete:
    count: int


@dataclass(frozen=True)
class Burst:
    count: int
    tag: str = "burst"


Phase = Union[Insert, Delete, Burst]


@dataclass
class WorkloadSpec:
    seed: int
    phases: list[Phase]
    key_length: int = DEFAULT_KEY_LENGTH

    @property
    def n_keys(self) -> int:
        return sum(p.count for p in self.phases if not isinstance(p, Delete))


def insert_workload(n_keys: int, seed: int, key_length: int = DEFAULT_KEY_LENGTH) -> WorkloadSpec:
    return WorkloadSpec(seed=seed, phases=[Insert(n_keys)], key_length=key_length)


def gen_workload(spec: WorkloadSpec) -> Iterator[tuple[str, bytes]]:
    """Deterministic op stream: ("insert", key) / ("delete", key).

    Keys are fixed-length random byte strings; delete phases draw
    uniformly from the keys currently live in the workload model.
    """
    rng = random.Random(spec.seed)
    live: list[bytes] = []
    seen: set[bytes] = set()
    for phase in spec.phases:
        if isinstance(phase, Delete):
            if phase.count > len(live):
                raise WorkloadError(
                    f"delete of {phase.count} keys with only {len(live)} live"
                )
            for _ in range(phase.count):
                i = rng.randrange(len(live))
                live[i], live[-1] = live[-1], live[i]
                key = live.pop()
                seen.discard(key)
                yield "delete", key
        else:
            for _ in range(phase.count):
                key = WORKLOAD_PREFIX + rng.randbytes(spec.key_length)
                while key in seen:
                    key = WORKLOAD_PREFIX + rng.randbytes(spec.key_length)
                seen.add(key)
                live.append(key)
                yield "insert", key


class RawFilter:
    """Fixed-capacity baseline: a bare cuckoo table that never resizes.

    Inserts fail once the kick loop gives up; failures are counted and the
    key is dropped. The key-store mirrors successful inserts only, so
    false-positive probes stay honest.
    """

    def __init__(self, params: FilterParams, seed: int = 0):
        params.validate()
        buckets = 1 << max(0, params.capacity.bit_length() - 1)
        buckets = max(1, buckets)
        self._rng = random.Random(seed)
        self.params = params
        self.table = CuckooTable(buckets, params, self._rng)
        self.store = KeyStore()
        self.insert_failures = 0
        self.capacity = buckets

    @property
    def occupancy(self) -> float:
        return self.table.occupancy()

    def insert(self, key: bytes) -> bool:
        if key in self.store:
            return False
        if self.table.insert(key):
            self.store.add(key)
            return True
        self.insert_failures += 1
        return False

    def contains(self, key: bytes) -> bool:
        return self.table.lookup(key)

    def delete(self, key: bytes) -> bool:
        if not self.store.remove(key):
            return False
        return self.table.remove(key)


def measure_fp(filt: Union[OcfFilter, RawFilter], probe_count: int,
               seed: int, key_length: int = DEFAULT_KEY_LENGTH) -> tuple[int, int]:
    """(false_positives, probes) over keys guaranteed absent from the
    key-store."""
    rng = random.Random(seed)
    false_positives = 0
    probes = 0
    for _ in range(probe_count):
        key = PROBE_PREFIX + rng.randbytes(key_length)
        if key in filt.store:
            continue
        probes += 1
        if filt.contains(key):
            false_positives += 1
    return false_positives, probes


@dataclass(frozen=True)
class ReportRow:
    trial: int
    ops_done: int
    occupancy: float
    logical_capacity: int
    internal_buckets: int
    item_count: int
    false_positives: int
    probes: int
    elapsed_ns: int


@dataclass
class ExperimentReport:
    experiment: str
    mode: str
    rows: list[ReportRow] = field(default_factory=list)
    insert_failures: int = 0
    final_alpha: Optional[float] = None


def _build_filter(mode: str, params: FilterParams, seed: int) -> Union[OcfFilter, RawFilter]:
    if mode == RAW:
        return RawFilter(params, seed=seed)
    return OcfFilter(Mode(mode), params, seed=seed)


def _row(filt: Union[OcfFilter, RawFilter], trial: int, ops_done: int,
         elapsed_ns: int, false_positives: int = 0, probes: int = 0) -> ReportRow:
    return ReportRow(
        trial=trial,
        ops_done=ops_done,
        occupancy=filt.occupancy,
        logical_capacity=filt.capacity,
        internal_buckets=filt.table.num_buckets,
        item_count=filt.table.item_count,
        false_positives=false_positives,
        probes=probes,
        elapsed_ns=elapsed_ns,
    )


def run_experiment(name: str, mode: str, spec: WorkloadSpec, params: FilterParams,
                   probes: int = DEFAULT_PROBES, probe_seed: int = 0xFA15E,
                   interval: Optional[int] = None) -> ExperimentReport:
    """Run one experiment; all filter work is single-threaded so a fixed
    (mode, spec, params) triple reproduces the same report apart from the
    elapsed_ns column."""
    if name not in ("table1", "fill", "trendline"):
        raise ValueError(f"unknown experiment {name!r}")
    filt = _build_filter(mode, params, seed=spec.seed)
    report = ExperimentReport(experiment=name, mode=mode)
    periodic = name in ("fill", "trendline")
    if interval is None:
        interval = max(1, spec.n_keys // (100 if name == "fill" else 200))

    start = time.perf_counter_ns()
    ops_done = 0
    trial = 0
    for op, key in gen_workload(spec):
        if op == "insert":
            filt.insert(key)
        else:
            filt.delete(key)
        ops_done += 1
        if periodic and ops_done % interval == 0:
            report.rows.append(_row(filt, trial, ops_done,
                                    time.perf_counter_ns() - start))
            trial += 1
    if name == "table1":
        fp, n_probes = measure_fp(filt, probes, probe_seed, spec.key_length)
        report.rows.append(_row(filt, trial, ops_done,
                                time.perf_counter_ns() - start, fp, n_probes))
    elif not report.rows or report.rows[-1].ops_done != ops_done:
        report.rows.append(_row(filt, trial, ops_done,
                                time.perf_counter_ns() - start))
    if isinstance(filt, RawFilter):
        report.insert_failures = filt.insert_failures
    else:
        report.final_alpha = filt.alpha
    return report


CSV_HEADER = ("trial,ops_done,occupancy,logical_capacity,internal_buckets,"
              "item_count,false_positives,probes,elapsed_ns")


def emit_csv(report: ExperimentReport, destination: BinaryIO) -> int:
    """Write the report as CSV (LF line endings, occupancy to 6 decimal
    places); returns the number of bytes written."""
    lines = [CSV_HEADER]
    for r in report.rows:
        lines.append(
            f"{r.trial},{r.ops_done},{r.occupancy:.6f},{r.logical_capacity},"
            f"{r.internal_buckets},{r.item_count},{r.false_positives},"
            f"{r.probes},{r.elapsed_ns}"
        )
    payload = ("\n".join(lines) + "\n").encode("ascii")
    destination.write(payload)
    return len(payload)
