"""Shared test utilities: dataset generators and independent oracles."""

import numpy as np

from rcbs import WeightedDataset


def rel_close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def random_complex_dataset(rng, n_max=16, span=10.0) -> WeightedDataset:
    n = int(rng.integers(1, n_max + 1))
    a = rng.uniform(-span, span, n) + 1j * rng.uniform(-span, span, n)
    b = rng.uniform(-span, span, n) + 1j * rng.uniform(-span, span, n)
    w = rng.uniform(0.0, 1.0, n) + 1e-3
    return WeightedDataset(a, b, w)


def random_positive_dataset(rng, n_max=12, lo=0.1, hi=10.0) -> WeightedDataset:
    n = int(rng.integers(2, n_max + 1))
    a = rng.uniform(lo, hi, n)
    b = rng.uniform(lo, hi, n)
    w = rng.uniform(0.1, 2.0, n)
    return WeightedDataset(a, b, w)


def brute_min_disk(points) -> tuple[float, float, float]:
    """Exhaustive pair/triple enclosing-disk oracle.

    The optimal center is a pair midpoint or a triple circumcenter; for each
    candidate center the needed radius is the max distance to all points,
    and the answer minimizes that. Independent of the incremental algorithm.
    """
    xs = np.array([z.real for z in points], dtype=float)
    ys = np.array([z.imag for z in points], dtype=float)
    n = len(xs)
    if n == 1:
        return float(xs[0]), float(ys[0]), 0.0

    def needed_radius(cx, cy):
        return float(np.sqrt((xs - cx) ** 2 + (ys - cy) ** 2).max())

    best = None
    for i in range(n):
        for j in range(i + 1, n):
            cx = (xs[i] + xs[j]) / 2.0
            cy = (ys[i] + ys[j]) / 2.0
            r = needed_radius(cx, cy)
            if best is None or r < best[2]:
                best = (cx, cy, r)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                c = _circumcenter(
                    xs[i], ys[i], xs[j], ys[j], xs[k], ys[k]
                )
                if c is None:
                    continue
                cx, cy = c
                r = needed_radius(cx, cy)
                if r < best[2]:
                    best = (cx, cy, r)
    return best


def _circumcenter(ax, ay, bx, by, cx, cy):
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    na = ax * ax + ay * ay
    nb = bx * bx + by * by
    nc = cx * cx + cy * cy
    ux = (na * (by - cy) + nb * (cy - ay) + nc * (ay - by)) / d
    uy = (na * (cx - bx) + nb * (ax - cx) + nc * (bx - ax)) / d
    return ux, uy
