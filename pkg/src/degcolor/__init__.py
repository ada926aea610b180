"""Exact edge-coloring invariants of small multigraphs and degree-colorings."""

from .degreecoloring import (
    CoverViolation,
    check_cover_condition,
    check_degree_condition,
    check_matching_condition,
    color_class,
    find_unrealizable_degree_coloring,
    is_degree_coloring,
    tau,
    tau_regular_shortcut,
)
from .edgecoloring import (
    EdgeColoring,
    EdgeInstance,
    chromatic_index,
    exists_coloring_with_palette,
    is_proper,
    palette,
)
from .invariants import (
    coloring_lower_bound,
    density,
    fractional_chromatic_index,
    maximum_matching,
    omega_star,
    pi,
)
from .multigraph import (
    Multigraph,
    ParseError,
    canonical_form,
    enumerate_multigraphs,
    parse_multigraph,
    serialize_multigraph,
)
from .palettes import PaletteAssignment, parse_palette, serialize_palette
from .regularization import RegularizationResult, regularize, verify_regularization

__version__ = "0.1.0"
