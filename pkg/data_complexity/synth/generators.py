from dataclasses import dataclass, asdict
from typing import Iterator
import logging

import numpy as np

from data_complexity.models.dataset import Dataset, validate_dataset
from data_complexity.utils.random_utils import derive_seed, make_rng

logger = logging.getLogger(__name__)

CLASS_1 = "c1"
CLASS_2 = "c2"
KINDS = ("random-labeling", "linear-margin", "checkerboard", "rings")

# Give up on a margin when fewer than one draw in a thousand is accepted
MIN_ACCEPTANCE_RATE = 0.001


class GeneratorError(ValueError):
    """Invalid generator parameters or an unattainable construction."""


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Full description of one synthetic problem.

    Identical specs always produce bit-identical datasets.

    Core Parameters:
        kind: One of KINDS
        dim: Feature dimensionality (rings are always 2-D)
        n_per_class: Points in each class
        seed: Generator seed

    Kind Parameters:
        margin: Gap width around the hyperplane (linear-margin)
        cells_per_side: Grid resolution (checkerboard)
        r_inner: Outer radius of the inner ring (rings)
        r_outer: Outer radius of the outer ring (rings)
        gap: Radial gap between the rings (rings)
    """
    kind: str
    dim: int = 2
    n_per_class: int = 100
    seed: int = 0
    margin: float = 0.1
    cells_per_side: int = 4
    r_inner: float = 1.0
    r_outer: float = 2.0
    gap: float = 0.5

    def __post_init__(self):
        """Validate all parameters."""
        if self.kind not in KINDS:
            raise GeneratorError(f"Unknown generator kind {self.kind!r}; expected one of {KINDS}")
        for name in ("dim", "n_per_class", "seed", "cells_per_side"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an integer")
        if self.dim < 1:
            raise GeneratorError("dim must be at least 1")
        if self.n_per_class < 1:
            raise GeneratorError("n_per_class must be at least 1")
        if self.seed < 0:
            raise GeneratorError("seed must be non-negative")
        if self.margin < 0:
            raise GeneratorError("margin must be non-negative")
        if self.cells_per_side < 2:
            raise GeneratorError("cells_per_side must be at least 2")
        if self.kind == "rings":
            if self.dim != 2:
                raise GeneratorError("rings are two-dimensional")
            if not 0 < self.r_inner or not self.gap > 0 or not self.r_inner + self.gap < self.r_outer:
                raise GeneratorError("rings need 0 < r_inner, gap > 0 and r_inner + gap < r_outer")

    @property
    def name(self) -> str:
        return f"{self.kind}-d{self.dim}-n{self.n_per_class}-s{self.seed}"

    def asdict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, spec_dict: dict) -> 'GeneratorSpec':
        return cls(**spec_dict)


def _balanced(points: np.ndarray, first: np.ndarray, n_per_class: int, name: str) -> Dataset:
    """Keep the first n_per_class draws of each class, in draw order."""
    keep_first = np.flatnonzero(first)[:n_per_class]
    keep_second = np.flatnonzero(~first)[:n_per_class]
    keep = np.sort(np.concatenate([keep_first, keep_second]))
    labels = [CLASS_1 if first[i] else CLASS_2 for i in keep]
    return validate_dataset(points[keep], labels, name=name)


def gen_random_labeling(d: int, n_per_class: int, seed: int) -> Dataset:
    """
    Uniform points in [0,1]^d with fair-coin labels, rebalanced to exactly
    n_per_class per class by relabeling randomly chosen excess points.
    """
    spec = GeneratorSpec(kind="random-labeling", dim=d, n_per_class=n_per_class, seed=seed)
    rng = make_rng(seed)
    total = 2 * n_per_class
    points = rng.random((total, d))
    first = rng.random(total) < 0.5
    excess = int(first.sum()) - n_per_class
    if excess != 0:
        pool = np.flatnonzero(first) if excess > 0 else np.flatnonzero(~first)
        flip = rng.choice(pool, size=abs(excess), replace=False)
        first[flip] = ~first[flip]
    labels = [CLASS_1 if f else CLASS_2 for f in first]
    return validate_dataset(points, labels, name=spec.name)


def gen_linear_margin(d: int, n_per_class: int, margin: float, seed: int) -> Dataset:
    """
    Uniform points in [0,1]^d split by a random hyperplane through the box center.

    Points closer than margin/2 to the hyperplane are rejected and redrawn.

    Raises:
        GeneratorError: If the margin leaves (almost) no room in the box
    """
    spec = GeneratorSpec(kind="linear-margin", dim=d, n_per_class=n_per_class, margin=margin, seed=seed)
    rng = make_rng(seed)
    normal = rng.standard_normal(d)
    while not np.any(normal):
        normal = rng.standard_normal(d)
    normal /= np.linalg.norm(normal)
    center = np.full(d, 0.5)

    batch = max(1000, 4 * n_per_class)
    accepted = []
    drawn = 0
    counts = np.zeros(2, dtype=int)
    while counts.min() < n_per_class:
        candidates = rng.random((batch, d))
        drawn += batch
        offsets = (candidates - center) @ normal
        ok = (np.abs(offsets) >= margin / 2) & (offsets != 0)
        accepted.append((candidates[ok], offsets[ok] > 0))
        counts += [int(np.sum(offsets[ok] > 0)), int(np.sum(offsets[ok] < 0))]
        if counts.sum() < MIN_ACCEPTANCE_RATE * drawn:
            raise GeneratorError(
                f"margin {margin} rejects more than {100 * (1 - MIN_ACCEPTANCE_RATE):.1f}% of draws in {d}-D"
            )
    points = np.vstack([p for p, _ in accepted])
    first = np.concatenate([f for _, f in accepted])
    return _balanced(points, first, n_per_class, spec.name)


def checkerboard_label(point, cells_per_side: int) -> str:
    """Class of a point by the parity of its grid-cell indices."""
    cells = np.clip(np.floor(np.asarray(point) * cells_per_side), 0, cells_per_side - 1)
    return CLASS_1 if int(cells.sum()) % 2 == 0 else CLASS_2


def gen_checkerboard(cells_per_side: int, n_per_class: int, seed: int, d: int = 2) -> Dataset:
    """Uniform points in [0,1]^d labeled by checkerboard cell parity, balanced by truncation."""
    spec = GeneratorSpec(
        kind="checkerboard", dim=d, n_per_class=n_per_class, cells_per_side=cells_per_side, seed=seed
    )
    rng = make_rng(seed)
    batch = max(1000, 4 * n_per_class)
    chunks = []
    flags = []
    counts = np.zeros(2, dtype=int)
    while counts.min() < n_per_class:
        candidates = rng.random((batch, d))
        cells = np.clip(np.floor(candidates * cells_per_side), 0, cells_per_side - 1)
        first = cells.sum(axis=1).astype(int) % 2 == 0
        chunks.append(candidates)
        flags.append(first)
        counts += [int(first.sum()), int((~first).sum())]
    return _balanced(np.vstack(chunks), np.concatenate(flags), n_per_class, spec.name)


def gen_rings(
    n_per_class: int,
    seed: int,
    r_inner: float = 1.0,
    r_outer: float = 2.0,
    gap: float = 0.5
) -> Dataset:
    """
    Two concentric rings in 2-D: class c1 has radii in [r_inner/2, r_inner],
    class c2 radii in [r_inner + gap, r_outer]. Angles and radii are uniform.
    """
    spec = GeneratorSpec(
        kind="rings", dim=2, n_per_class=n_per_class, seed=seed,
        r_inner=r_inner, r_outer=r_outer, gap=gap
    )
    rng = make_rng(seed)
    bands = [(r_inner / 2, r_inner), (r_inner + gap, r_outer)]
    points = []
    labels = []
    for (low, high), label in zip(bands, (CLASS_1, CLASS_2)):
        radius = rng.uniform(low, high, n_per_class)
        angle = rng.uniform(0.0, 2 * np.pi, n_per_class)
        points.append(np.column_stack([radius * np.cos(angle), radius * np.sin(angle)]))
        labels.extend([label] * n_per_class)
    return validate_dataset(np.vstack(points), labels, name=spec.name)


def generate(spec: GeneratorSpec) -> Dataset:
    """Build the dataset a spec describes."""
    logger.debug(f"generating {spec.name}")
    if spec.kind == "random-labeling":
        return gen_random_labeling(spec.dim, spec.n_per_class, spec.seed)
    if spec.kind == "linear-margin":
        return gen_linear_margin(spec.dim, spec.n_per_class, spec.margin, spec.seed)
    if spec.kind == "checkerboard":
        return gen_checkerboard(spec.cells_per_side, spec.n_per_class, spec.seed, d=spec.dim)
    return gen_rings(spec.n_per_class, spec.seed, spec.r_inner, spec.r_outer, spec.gap)


def random_labeling_suite(
    max_dim: int = 100,
    n_per_class: int = 1000,
    seed: int = 0,
    min_dim: int = 1
) -> Iterator[Dataset]:
    """Random labelings with 1..max_dim features; problem k has k features."""
    for d in range(min_dim, max_dim + 1):
        yield gen_random_labeling(d, n_per_class, derive_seed(seed, f"random-labeling-{d}"))
