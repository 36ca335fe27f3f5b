"""Langfield-Smith/Wirth distance ratio between causal maps.

The distance ratio compares two maps cell by cell over the union of their
node sets.  Entries in cells touching a node that is not common to both maps
are capped to +-1 before differencing; the summed absolute differences are
divided by the maximum difference attainable for the same element partition,
so the ratio always lies in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NumericalError
from .maps import CausalMap, adjacency
from .vocabulary import SES_ID


@dataclass(frozen=True)
class ElementPartition:
    """Node ids split into common and per-map unique sets (ses is always
    common; other pseudo-nodes are excluded entirely)."""

    common: frozenset[str]
    unique_a: frozenset[str]
    unique_b: frozenset[str]

    @property
    def p(self) -> int:
        return len(self.common) + len(self.unique_a) + len(self.unique_b)


@dataclass(frozen=True)
class DistanceMatrix:
    ids: tuple[str, ...]
    values: np.ndarray  # symmetric, zero diagonal, entries in [0, 1]

    def index(self, respondent_id: str) -> int:
        return self.ids.index(respondent_id)

    def to_csv(self, path: str | Path) -> None:
        """Header row of respondent ids, then rows of decimal values."""
        lines = [",".join(self.ids)]
        for row in self.values:
            lines.append(",".join(format(v, ".17g") for v in row))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def partition_elements(a: CausalMap, b: CausalMap) -> ElementPartition:
    ids_a = a.comparable_ids()
    ids_b = b.comparable_ids()
    return ElementPartition(
        common=frozenset(ids_a & ids_b),
        unique_a=frozenset(ids_a - ids_b),
        unique_b=frozenset(ids_b - ids_a),
    )


def capped_entry(value: int, involves_unique: bool) -> int:
    """Cap a cell entry to +-1 when the cell touches a non-common node."""
    if involves_unique and value > 0:
        return 1
    if involves_unique and value < 0:
        return -1
    return value


def max_difference(p_common: int, p_unique_a: int, p_unique_b: int) -> int:
    """Maximum achievable summed cell difference for an element partition."""
    return (6 * p_common ** 2
            + 2 * p_common * (p_unique_a + p_unique_b)
            + p_unique_a ** 2 + p_unique_b ** 2
            - (6 * p_common + p_unique_a + p_unique_b))


def lsw(a: CausalMap, b: CausalMap) -> float:
    """Distance ratio in [0, 1]; 0 for identical maps."""
    for m in (a, b):
        if not (m.comparable_ids() - {SES_ID}):
            raise ValueError(f"map {m.respondent_id!r} has no non-ses construct")
    part = partition_elements(a, b)
    order = sorted(part.common | part.unique_a | part.unique_b)
    mat_a = adjacency(a, order).entries
    mat_b = adjacency(b, order).entries

    common_mask = np.array([nid in part.common for nid in order])
    cell_unique = ~(common_mask[:, None] & common_mask[None, :])
    capped_a = np.where(cell_unique, np.sign(mat_a), mat_a)
    capped_b = np.where(cell_unique, np.sign(mat_b), mat_b)

    numerator = int(np.abs(capped_a - capped_b).sum())
    denominator = max_difference(len(part.common), len(part.unique_a), len(part.unique_b))
    if denominator <= 0:
        raise NumericalError(
            f"degenerate distance denominator {denominator} for "
            f"{a.respondent_id!r} vs {b.respondent_id!r}")
    return numerator / denominator


def distance_matrix(dataset: list[CausalMap]) -> DistanceMatrix:
    """Pairwise distance ratios; each pair is evaluated once, so the result
    is exactly symmetric regardless of evaluation order."""
    if len(dataset) < 2:
        raise ValueError("distance matrix needs at least two maps")
    ids = tuple(m.respondent_id for m in dataset)
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate respondent ids in dataset")
    n = len(dataset)
    values = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            try:
                d = lsw(dataset[i], dataset[j])
            except (ValueError, NumericalError) as exc:
                raise NumericalError(
                    f"distance failed for pair ({ids[i]!r}, {ids[j]!r}): {exc}") from exc
            values[i, j] = d
            values[j, i] = d
    return DistanceMatrix(ids=ids, values=values)
