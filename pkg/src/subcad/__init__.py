"""Exact cylindrical algebraic decomposition with layered and variety sub-decompositions."""

from .analysis import (
    Distribution,
    check_layer_consistency,
    distribution,
    plot_distribution,
    verify_sign_invariance,
)
from .errors import (
    CADError,
    DegreeTooLow,
    ECNotInMainVariable,
    IdenticallyZero,
    MalformedEC,
    NotWellOriented,
    ParseError,
    ProvenanceMismatch,
    UnknownVariable,
    ZeroPolynomial,
)
from .lifting import (
    Cell,
    LayerSpec,
    Section,
    Sector,
    Stack,
    SubCadResult,
    cad_full,
    dimension,
    eccad,
    generate_stack,
    lcad,
    lcad_next_layer,
    lvcad,
    vcad,
)
from .parser import ProblemSpec, parse_order, parse_poly, parse_problem
from .poly import (
    MultiPoly,
    VarOrder,
    content_primpart,
    discriminant,
    finest_squarefree_basis,
    format_poly,
    psc_chain,
    resultant,
)
from .projection import (
    ECInput,
    ProjectionTable,
    ProjOpKind,
    proj_collins,
    proj_ec,
    proj_mccallum,
    projection_phase,
)
from .realalg import (
    AlgebraicNumber,
    compare,
    isolate_real_roots,
    refine,
    roots_over_sample,
    sign_at,
)
from .render import emit_records, parse_records, render_piecewise

__version__ = "0.1.0"
