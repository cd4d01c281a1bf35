"""Motzkin paths, three-rowed standard Young tableaux and skew-strip formulas."""

__version__ = "0.1.0"

from .algebra import (
    LaurentPoly,
    MExpression,
    MotzkinCombo,
    eval_combo,
    extract_combo,
    parse_expr,
    reduce,
    series_expand,
    x_formula,
    x_gf,
)
from .bijection import LabelTrace, MotzkinPath, label_trace, phi, phi_inv
from .enumeration import (
    closed_form,
    count_entry_restricted,
    count_grounded_level_paths,
    count_skew_bruteforce,
    count_strip,
    enumerate_paths,
    enumerate_words3,
    motzkin,
    x_count,
)
from .identities import (
    PrefixClassTable,
    calibrate_prefix_classes,
    canonical_filler,
    catalog,
    derive_entry_combo,
    derive_skew_combo,
    fit_combo,
    forced_prefix,
)
from .tableaux import (
    Partition,
    StandardTableau,
    YamanouchiWord,
    chi,
    chi_inv,
    hook_count,
    is_yamanouchi,
)
from .walks import StepSet, check_conjecture, count_even_walks, count_odd_walks
