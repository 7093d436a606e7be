"""Filter tunables and their validity rules."""

from dataclasses import dataclass

from .hashing import MAX_FINGERPRINT_BITS, MIN_FINGERPRINT_BITS


class InvalidParams(ValueError):
    """Raised when the parameter set violates its ordering or range rules."""


@dataclass
class FilterParams:
    """Tunables for the filter and both resize policies.

    ``capacity`` is the requested logical bucket count; the table rounds it
    up to a power of two internally. Occupancy thresholds must satisfy
    0 <= o_min < k_min <= k_max < o_max < 1. The k markers only matter in
    congestion-aware mode; the estimation gain is the EWMA weight of the
    newest congestion ratio.
    """

    capacity: int
    bucket_size: int = 4
    fingerprint_bits: int = 8
    max_displacements: int = 500
    o_max: float = 0.9
    o_min: float = 0.2
    k_min: float = 0.3
    k_max: float = 0.8
    estimation_gain: float = 1.0 / 16.0

    def validate(self) -> None:
        if self.capacity < 1:
            raise InvalidParams(f"capacity must be positive, got {self.capacity}")
        if self.bucket_size < 1:
            raise InvalidParams(f"bucket_size must be positive, got {self.bucket_size}")
        if not MIN_FINGERPRINT_BITS <= self.fingerprint_bits <= MAX_FINGERPRINT_BITS:
            raise InvalidParams(
                f"fingerprint_bits must be in [{MIN_FINGERPRINT_BITS}, "
                f"{MAX_FINGERPRINT_BITS}], got {self.fingerprint_bits}"
            )
        if self.max_displacements < 1:
            raise InvalidParams("max_displacements must be positive")
        if not 0.0 < self.estimation_gain < 1.0:
            raise InvalidParams("estimation_gain must be in (0, 1)")
        ordered = (
            0.0 <= self.o_min < self.k_min <= self.k_max < self.o_max < 1.0
        )
        if not ordered:
            raise InvalidParams(
                "thresholds must satisfy 0 <= o_min < k_min <= k_max < o_max < 1, "
                f"got o_min={self.o_min} k_min={self.k_min} "
                f"k_max={self.k_max} o_max={self.o_max}"
            )
