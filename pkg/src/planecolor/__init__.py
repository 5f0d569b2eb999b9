"""Defective colorings, reducible configurations and discharging on plane graphs."""

from .plane_graph import (
    PlaneGraph,
    RootedPlaneGraph,
    build_from_rotation,
    check_family_membership,
    contract_sets,
    cycles_up_to,
    is_separating,
    root_at,
    trace_faces,
)

__version__ = "0.1.0"
