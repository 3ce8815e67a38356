"""Radial semilinear problems on Euclidean and Damek-Ricci spaces."""

from ._radiant import (
    SCHEMA_VERSION,
    Nonlinearity,
    RadiantError,
    Solution,
    Space,
    bounded_solution,
    classify,
    find_lambda,
    green_ball,
    green_whole,
    harnack_scan,
    keller_osserman,
    large_solution,
    log_grid,
    log_volume_density,
    radial_drift,
    solve_ball,
    solve_shooting,
    three_g_ratio,
    verify_green_estimates,
    volume_density,
)

__version__ = "0.1.0"
