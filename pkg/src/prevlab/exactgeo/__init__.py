"""Exact rational arithmetic, linear programming and PL sign certification."""

from .arrangement import (
    EXACT_MAX_DIM,
    Cell,
    ExactModeBoundError,
    Negative,
    Nonneg,
    expression_cells,
    expression_vertices,
    simplex_cells,
    simplex_extremum,
    simplex_vertices,
    verify_nonneg_ph_pl,
)
from .grid import delta_grid, simplex_grid
from .lp import Constraint, Infeasible, LinExpr, Optimal, Unbounded, constraint, lp_solve
from .phpl import Expr, Lin, Max, Min, Scaled, Sum, emax, emin, evaluate, kink_forms, lin, local_form, piece_forms, restrict, substitute
from .rational import (
    INF,
    DimensionError,
    Point,
    Rat,
    dot,
    fmt_point,
    fmt_rat,
    mass,
    ones,
    parse_point,
    point,
    rat,
    unit,
    vadd,
    vec,
    vscale,
    vsub,
    zeros,
)
