from __future__ import annotations

import numpy as np

from trimode import (
    DimensionlessParams,
    build_drift,
    collective_cooperativities,
    stability_eigen,
)


def draw_stable(
    rng: np.random.Generator,
    *,
    c0_range: tuple[float, float] = (-1.0, 3.0),
    c1_range: tuple[float, float] = (-2.0, 2.0),
    max_ratio: float = 0.7,
    thermal: bool = False,
) -> DimensionlessParams | None:
    """One random parameter draw inside the stable region, or None.

    Cooperativity exponents are uniform in log10; modulation depths are a
    random fraction of the per-point ceilings (xi_d against the ceiling at
    xi_m = 0, then xi_m against the ceiling at that xi_d).  The caller
    retries on None: a draw is discarded when the eigenvalues disagree
    with the ceiling heuristic, so every returned draw is Hurwitz-stable
    by construction.
    """
    c0 = 10.0 ** rng.uniform(*c0_range)
    c1 = 10.0 ** rng.uniform(*c1_range)
    bounds = collective_cooperativities(DimensionlessParams(c0=c0, c1=c1))
    xi_d = rng.uniform(0.0, max_ratio) * max(bounds.xi_d_max, 0.0)
    bounds = collective_cooperativities(
        DimensionlessParams(c0=c0, c1=c1, xi_d=xi_d)
    )
    xi_m = rng.uniform(0.0, max_ratio) * max(bounds.xi_m_max, 0.0)
    kwargs = {}
    if thermal:
        kwargs = {
            "nbar_a": rng.uniform(0.0, 2.0),
            "nbar_m": rng.uniform(0.0, 200.0),
            "nbar_d": rng.uniform(0.0, 5.0),
        }
    d = DimensionlessParams(c0=c0, c1=c1, xi_m=xi_m, xi_d=xi_d, **kwargs)
    if not stability_eigen(build_drift(d)).hurwitz:
        return None
    return d


def stable_draws(seed: int, count: int, **kwargs) -> list[DimensionlessParams]:
    rng = np.random.default_rng(seed)
    out: list[DimensionlessParams] = []
    while len(out) < count:
        d = draw_stable(rng, **kwargs)
        if d is not None:
            out.append(d)
    return out
