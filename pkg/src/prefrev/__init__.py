"""Exact verification of strategy-proofness and preference reversal.

The package represents preference domains and social choice functions
exactly, decides individual and group strategy-proofness and the
(almost) preference-reversal properties with machine-checkable witnesses,
constructs resolvents, decides domain completeness, and brute-force
verifies the equivalence theorems connecting all of these on desk-scale
instances.
"""

from .errors import (
    ArgumentError,
    ConstructionError,
    ParseError,
    PrefrevError,
    ResourceGuardError,
)
from .orders import (
    AlternativeSet,
    Axis,
    Relation,
    WeakOrder,
    enumerate_single_peaked,
    enumerate_strict_orders,
    enumerate_weak_orders,
    format_order,
    is_single_peaked,
    parse_alternatives,
    parse_order,
    peak_position,
    prefers,
    weak_order_from_levels,
)
from .domains import (
    CompletenessReport,
    Domain,
    FeasibleSet,
    ResolventGap,
    admissible_pair,
    find_resolvent,
    format_domain,
    is_complete,
    is_resolvent,
    make_sp_resolvent,
    make_w_ab,
    make_w_prime,
    parse_domain_file,
    parse_domain_text,
    resolves_indifference_at,
    with_w_ab_completion,
)
from .scf import (
    Profile,
    Rule,
    Scf,
    builtin,
    evaluate,
    iter_profiles,
    load_scf,
    profile_at,
    profile_index,
    range_of,
    save_scf,
    scf_from_dict,
    scf_to_dict,
    tabulate,
)
from .properties import (
    ManipulationWitness,
    PropertyReport,
    PrViolation,
    check_apr,
    check_dictator,
    check_gsp,
    check_isp,
    check_pr,
    check_pr_apr,
    report_to_dict,
    revalidate_witness,
)
from .harness import (
    EnumerationSpec,
    QuotientResult,
    TheoremVerdict,
    enumerate_scfs,
    quotient_reduce,
    search_isp_not_pr,
    verdict_to_dict,
    verify_prop_apr_gsp,
    verify_summary_equivalence,
    verify_thm_complete,
    verify_thm_infinite,
    verify_thm_range3,
)

__version__ = "0.1.0"
