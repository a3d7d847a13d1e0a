"""Content ideals of power series over k[x1..xn] and Dedekind-Mertens certificates."""

__version__ = "0.1.0"

from .algebra import GF, QQ, Field, Polynomial, RationalPoint, RingSpec, poly_add, poly_mul, shift_to_origin
from .groebner import (
    Ideal,
    MembershipCertificate,
    contains,
    groebner_basis,
    ideal_equal,
    ideal_power,
    ideal_product,
    ideal_sum,
    lift,
    minimal_generators_at,
    mu_at_point,
    normal_form,
    reduction_number,
)
from .series import (
    TruncatedSeries,
    UnitSeries,
    UnitTailSeries,
    content,
    expand,
    pdeg_upper_bound,
    series_mul,
    stabilization_index,
    truncated_content,
    unit_inverse,
    unit_tail_rewrite,
)
from .dmcheck import (
    DMReport,
    dm_check,
    dm_exponent,
    dm_min_exponent,
    generic_counterexample,
    mingen_perturbation_check,
    reduction_corollary_check,
    rush_example_check,
    unit_content_identity_check,
)
from .exprio import dump_report, load_report, load_series, parse_poly, print_poly
