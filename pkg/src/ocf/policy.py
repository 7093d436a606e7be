"""Resize controllers.

Two policies consume one occupancy observation per filter mutation and may
emit a resize directive; neither touches the table itself.

* ``PrePolicy`` uses static thresholds: double above the max threshold,
  shed 10% below the min threshold.
* ``EofPolicy`` is congestion-aware: once occupancy leaves the k-marker
  band it counts the mutations ("marked ops") until a hard threshold is
  crossed, then updates an EWMA growth factor from the ratio of the
  previous episode's capacity-time product to the current one, and resizes
  by that factor.

Shrink directives are raised so the post-shrink occupancy stays at or
below 0.5; shrinking into the unsafe zone is how a naive static policy
manufactures false negatives.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .params import FilterParams

GROW = "grow"
SHRINK = "shrink"

ALPHA_MIN = 0.05
ALPHA_MAX = 1.0
ALPHA_INITIAL = 0.5
CAPACITY_FLOOR = 16


@dataclass(frozen=True)
class ResizeDirective:
    action: str  # GROW or SHRINK
    new_capacity: int


def _shrink_floor(item_count: int, bucket_size: int) -> int:
    # smallest capacity keeping occupancy <= 0.5 after the shrink
    return math.ceil(item_count / (bucket_size * 0.5))


def _safe_shrink(new_capacity: int, capacity: int, item_count: int,
                 bucket_size: int) -> Optional[ResizeDirective]:
    new_capacity = max(new_capacity, CAPACITY_FLOOR,
                       _shrink_floor(item_count, bucket_size))
    if new_capacity >= capacity:
        return None
    return ResizeDirective(SHRINK, new_capacity)


class PrePolicy:
    """Static-threshold resizing: grow to 2c, shrink to c - floor(c/10)."""

    def __init__(self, params: FilterParams):
        self.params = params

    def observe(self, occ: float, capacity: int, item_count: int) -> Optional[ResizeDirective]:
        p = self.params
        if occ > p.o_max:
            return ResizeDirective(GROW, 2 * capacity)
        if occ < p.o_min and capacity > CAPACITY_FLOOR:
            return _safe_shrink(capacity - capacity // 10, capacity,
                                item_count, p.bucket_size)
        return None


def resize_for_crossing(alpha: float, capacity: int, crossed: str,
                        item_count: int, bucket_size: int) -> Optional[ResizeDirective]:
    """Directive for a hard-threshold crossing given the current growth
    factor: grow to ceil(c * (1 + alpha)), shrink to floor(c * alpha).

    ``crossed`` is GROW for a max-threshold crossing and SHRINK for min.
    Returns None when a shrink cannot make the filter any smaller safely.
    """
    if crossed == GROW:
        return ResizeDirective(GROW, math.ceil(capacity * (1.0 + alpha)))
    return _safe_shrink(math.floor(capacity * alpha), capacity,
                        item_count, bucket_size)


class EofPolicy:
    """Congestion-aware resizing driven by marked-operation episodes.

    State: EWMA growth factor ``alpha`` (clamped to [0.05, 1.0]), whether a
    marking episode is open, the operations marked so far, and the
    capacity-time product of the previous completed episode. Time is
    counted in marked operations, not wall clock, so identical observation
    sequences always produce identical directives.
    """

    def __init__(self, params: FilterParams):
        self.params = params
        self.alpha = ALPHA_INITIAL
        self.monitoring = False
        self.marked_ops = 0
        self.mark_start_capacity = 0
        self.prev_episode_product: Optional[float] = None

    def update_alpha(self, capacity_now: int, marked_ops_now: int) -> float:
        """EWMA step: alpha <- alpha*(1-g) + g*M with
        M = (previous episode's c*t) / (capacity_now * marked_ops_now).
        The first episode ever uses M = 1 so it is alpha-neutral.
        """
        if self.prev_episode_product is None:
            m = 1.0
        else:
            m = self.prev_episode_product / (capacity_now * marked_ops_now)
        g = self.params.estimation_gain
        alpha = self.alpha * (1.0 - g) + g * m
        self.alpha = min(ALPHA_MAX, max(ALPHA_MIN, alpha))
        return self.alpha

    def observe(self, occ: float, capacity: int, item_count: int) -> Optional[ResizeDirective]:
        p = self.params
        if not self.monitoring:
            if occ > p.k_max or occ < p.k_min:
                self.monitoring = True
                self.marked_ops = 0
                self.mark_start_capacity = capacity
            return None
        if p.k_min <= occ <= p.k_max:
            # excursion ended without crossing a hard threshold
            self.monitoring = False
            self.marked_ops = 0
            return None
        self.marked_ops += 1
        if p.o_min < occ < p.o_max:
            return None
        self.update_alpha(capacity, self.marked_ops)
        crossed = SHRINK if occ <= p.o_min else GROW
        self.prev_episode_product = float(capacity * self.marked_ops)
        self.monitoring = False
        self.marked_ops = 0
        return resize_for_crossing(self.alpha, capacity, crossed,
                                   item_count, p.bucket_size)
