"""Periodic homogenization toolkit for linear elasticity with inclusion
lattices and Robin-damped inclusion boundaries.

The heavy lifting lives in the C++ extension ``perihom._core``; this package
re-exports its public surface.
"""

__version__ = "0.1.0"

from perihom._core import (
    CellGeometry,
    ConfigError,
    CorrectorSet,
    EffectiveModel,
    FineSolution,
    InvariantError,
    LatticeIndexSet,
    LoadSpec,
    MacroGeometry,
    MacroSolution,
    MaterialSpec,
    Mesh,
    RunConfig,
    SolverError,
    Vec2,
    build_effective_model,
    generate_cell_mesh,
    generate_macro_mesh,
    generate_plain_mesh,
    lattice_cells,
    periodic_wrap,
    refine,
    run_pipeline,
    solve_correctors,
    solve_fine,
    solve_homogenized,
    surface_measure_deficit,
)

__all__ = [
    "CellGeometry",
    "ConfigError",
    "CorrectorSet",
    "EffectiveModel",
    "FineSolution",
    "InvariantError",
    "LatticeIndexSet",
    "LoadSpec",
    "MacroGeometry",
    "MacroSolution",
    "MaterialSpec",
    "Mesh",
    "RunConfig",
    "SolverError",
    "Vec2",
    "build_effective_model",
    "generate_cell_mesh",
    "generate_macro_mesh",
    "generate_plain_mesh",
    "lattice_cells",
    "periodic_wrap",
    "refine",
    "run_pipeline",
    "solve_correctors",
    "solve_fine",
    "solve_homogenized",
    "surface_measure_deficit",
]
