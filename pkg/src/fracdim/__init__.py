"""Mixed Riemann-Liouville fractional integrals and box-counting dimension of surface graphs."""

from .dimension import (
    DimensionEstimate,
    HolderEstimate,
    box_count,
    cell_ranges,
    estimate_box_dimension,
    holder_exponent,
    sandwich_bounds,
)
from .errors import (
    ConfigError,
    FracdimError,
    NumericDomainError,
    SurfaceFormatError,
)
from .frint import (
    FracOrder,
    IntegralResult,
    kernel_moment,
    mixed_rl_integral,
    monomial_integral_closed_form,
    rl_integral_1d,
    semigroup_defect,
)
from .surface import (
    UNIT_SQUARE,
    Constant,
    Domain,
    GridSpec,
    Monomial,
    SampledSurface,
    SeparableSine,
    UVFunctionM,
    Weierstrass,
    branch_index,
    eval_M,
    eval_theta,
    make_grid,
    read_surface_csv,
    sample,
    sample_function,
    write_surface_csv,
)
from .variation import (
    VariationReport,
    arzela_variation_lb,
    is_bimonotone,
    line_variation,
    m_resolving_grid,
)

__version__ = "0.1.0"
