"""Contrastive PCA bindings."""

from ._core import (
    KernelModel,
    Model,
    NumericError,
    ValidationError,
    auto_select,
    certify,
    fit,
    fit_kernel,
    four_groups,
    kernel_toy,
    log_grid,
    random_pair,
    subspace_affinity,
)

__all__ = [
    "KernelModel",
    "Model",
    "NumericError",
    "ValidationError",
    "auto_select",
    "certify",
    "fit",
    "fit_kernel",
    "four_groups",
    "kernel_toy",
    "log_grid",
    "random_pair",
    "subspace_affinity",
]
