"""Cut-and-project quasicrystals from Coxeter-plane projections of root and weight lattices."""

from .coxeter_core import (
    Basis,
    GroupId,
    LatticeVector,
    Orbit,
    RootSystemData,
    basis_convert,
    cartan_inverse,
    cartan_matrix,
    dihedral_elements,
    group_order,
    inner_product,
    metric_tensor,
    simple_reflection,
    weyl_orbit,
)
from .errors import (
    BudgetExceededError,
    ConfigError,
    QuasiprojError,
    SpectralError,
    UnsupportedError,
    VerificationError,
)
from .export import export_points, load_json, render_svg
from .lattice_window import (
    LatticeKind,
    VoronoiSpec,
    WindowSpec,
    enumerate_lattice,
    lattice_array,
    voronoi_vertices,
    window_radius,
)
from .pipeline import RunConfig, Summary, run_pipeline
from .projector import (
    ComponentVector,
    EdgeSet,
    ProjectedPointSet,
    components,
    cut_and_project,
    detect_symmetry_order,
    dihedral_closure,
    minimal_edges,
)
from .spectral_frame import (
    CoxeterPlane,
    SpectralFrame,
    coxeter_plane_pairs,
    coxeter_rotation_angles,
    eigensystem,
    orthonormal_frame,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BudgetExceededError",
    "ComponentVector",
    "ConfigError",
    "CoxeterPlane",
    "EdgeSet",
    "GroupId",
    "LatticeKind",
    "LatticeVector",
    "Orbit",
    "ProjectedPointSet",
    "QuasiprojError",
    "RootSystemData",
    "RunConfig",
    "SpectralError",
    "SpectralFrame",
    "Summary",
    "UnsupportedError",
    "VerificationError",
    "VoronoiSpec",
    "WindowSpec",
    "basis_convert",
    "cartan_inverse",
    "cartan_matrix",
    "components",
    "coxeter_plane_pairs",
    "coxeter_rotation_angles",
    "cut_and_project",
    "detect_symmetry_order",
    "dihedral_closure",
    "dihedral_elements",
    "eigensystem",
    "enumerate_lattice",
    "export_points",
    "group_order",
    "inner_product",
    "lattice_array",
    "load_json",
    "metric_tensor",
    "minimal_edges",
    "orthonormal_frame",
    "render_svg",
    "run_pipeline",
    "simple_reflection",
    "voronoi_vertices",
    "weyl_orbit",
    "window_radius",
]
