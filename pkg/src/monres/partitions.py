"""partitions.py - strictly ordered partitions and the f(n_1, ..., n_l) counts."""
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

import pandas as pd
from structlog import get_logger
from typeguard import typechecked

from .errors import ParameterError
from .taylor import check_lattice_cap, indices_of

log = get_logger()

Weight = Tuple[int, ...]


@dataclass(frozen=True)
class StrictPartition:
    """Blocks S_1, ..., S_l with max(S_i) < min(S_{i+1})."""

    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if any(not block for block in self.blocks):
            raise ParameterError("blocks must be nonempty")
        for block in self.blocks:
            if list(block) != sorted(set(block)):
                raise ParameterError(f"block {block} is not strictly increasing")
        for left, right in zip(self.blocks, self.blocks[1:]):
            if left[-1] >= right[0]:
                raise ParameterError("blocks are not strictly ordered")

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def weight(self) -> Weight:
        return tuple(len(block) for block in self.blocks)


@typechecked
def canonical_partition(subset: Sequence[int], d: int) -> StrictPartition:
    """Split sorted S at every gap of at least d."""
    if not subset:
        raise ParameterError("cannot partition the empty set")
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")
    ordered = sorted(set(subset))
    blocks: List[List[int]] = [[ordered[0]]]
    for prev, cur in zip(ordered, ordered[1:]):
        if cur - prev >= d:
            blocks.append([cur])
        else:
            blocks[-1].append(cur)
    return StrictPartition(tuple(tuple(b) for b in blocks))


def satisfies_window(partition: StrictPartition, d: int) -> bool:
    """Inner gaps at most d-1 and gaps between blocks at least d."""
    inner = all(
        b - a <= d - 1 for block in partition.blocks for a, b in zip(block, block[1:])
    )
    outer = all(
        right[0] - left[-1] >= d for left, right in zip(partition.blocks, partition.blocks[1:])
    )
    return inner and outer


def strict_partitions(subset: Sequence[int]) -> Iterator[StrictPartition]:
    """Every strictly ordered partition of S: one per choice of cut points."""
    ordered = sorted(set(subset))
    cuts = len(ordered) - 1
    for mask in range(1 << max(cuts, 0)):
        blocks: List[List[int]] = [[ordered[0]]]
        for k, value in enumerate(ordered[1:]):
            if mask >> k & 1:
                blocks.append([value])
            else:
                blocks[-1].append(value)
        yield StrictPartition(tuple(tuple(b) for b in blocks))


def compositions(m: int) -> Iterator[Weight]:
    """Ordered weights (n_1, ..., n_l) summing to m, one per subset of the m-1 cut points."""
    if m < 1:
        return
    for mask in range(1 << (m - 1)):
        parts = []
        run = 1
        for k in range(m - 1):
            if mask >> k & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def weight_counts(t: int, d: int) -> Dict[Weight, int]:
    """f(w) for every weight w: subsets of {1..t} whose canonical d-partition has weight w."""
    if t < 1 or d < 1:
        raise ParameterError("t and d must be positive")
    check_lattice_cap(t)
    counts: Counter = Counter()
    for mask in range(1, 1 << t):
        counts[canonical_partition(indices_of(mask), d).weight] += 1
    return dict(counts)


@typechecked
def count_by_weight(t: int, d: int, weight: Sequence[int]) -> int:
    if any(n < 1 for n in weight):
        raise ParameterError("weights must be positive")
    return weight_counts(t, d).get(tuple(weight), 0)


@typechecked
def closed_form_d2(t: int, m: int, l: int) -> int:
    """C(t-m+1, l): subsets of size m split into l runs when d = 2."""
    if not 1 <= l <= m <= t:
        raise ParameterError(f"need 1 <= l <= m <= t, got t={t}, m={m}, l={l}")
    return comb(t - m + 1, l)


@typechecked
def remark_identity_check(t: int, m: int) -> bool:
    """Sum over compositions of m with l parts of C(t-m+1, l) equals C(t, m)."""
    if not 1 <= m <= t:
        raise ParameterError(f"need 1 <= m <= t, got t={t}, m={m}")
    total = sum(comb(t - m + 1, len(w)) for w in compositions(m))
    return total == comb(t, m)


def weight_table(t: int, d: int) -> pd.DataFrame:
    """One row per weight with its f-count; the d = 2 closed form alongside."""
    rows = []
    for weight, count in weight_counts(t, d).items():
        size, length = sum(weight), len(weight)
        rows.append(
            {
                "weight": ",".join(str(n) for n in weight),
                "length": length,
                "size": size,
                "count": count,
                "closed_form": closed_form_d2(t, size, length) if d == 2 else None,
            }
        )
    frame = pd.DataFrame(rows, columns=["weight", "length", "size", "count", "closed_form"])
    frame = frame.sort_values(["size", "length", "weight"]).reset_index(drop=True)
    log.debug("weight table", t=t, d=d, rows=len(frame))
    return frame
