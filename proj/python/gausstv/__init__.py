"""Total variation distance between Gaussians, to relative error."""

from ._core import (
    GaussTVError,
    delta_bound,
    disprod_tv,
    erf_approx,
    exact_product_tv,
    mult_gaussian_tv,
    oracle,
    whiten,
)

__all__ = [
    "GaussTVError",
    "delta_bound",
    "disprod_tv",
    "erf_approx",
    "exact_product_tv",
    "mult_gaussian_tv",
    "oracle",
    "whiten",
]
