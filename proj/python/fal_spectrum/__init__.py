"""Exact calculus of FAL volume densities."""

from ._core import (
    CapExceededError,
    Catalog,
    ConfigError,
    DomainError,
    FalError,
    ParseError,
    __version__,
    approximate,
    best_rational_approximations,
    bounds,
    certify,
    classify,
    constants,
    density,
    load_catalog,
    load_catalog_file,
    lobachevsky,
    run_cli,
    scan_csv,
    validate,
)

__all__ = [
    "CapExceededError",
    "Catalog",
    "ConfigError",
    "DomainError",
    "FalError",
    "ParseError",
    "__version__",
    "approximate",
    "best_rational_approximations",
    "bounds",
    "certify",
    "classify",
    "constants",
    "density",
    "load_catalog",
    "load_catalog_file",
    "lobachevsky",
    "run_cli",
    "scan_csv",
    "validate",
]
