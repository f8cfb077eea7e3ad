"""fdl: exact-arithmetic toolkit for the factorial Diophantine equation
a!b! = c! -- search, modular screening, irreducibility certificates, and
equidistribution statistics of frac(a!^(1/k))."""

from .arith import (
    FixedFrac,
    digit_sum,
    factorial,
    falling_factorial,
    integer_kth_root,
    kth_root_fixed,
    nu_p_factorial,
    verify_analytic_bounds,
)
from .search import (
    NotASolutionError,
    RootHit,
    Solution,
    bound_check,
    brute_force_search,
    classify,
    digit_sum_identity_check,
    interval_search,
    root_hits_up_to,
)
from .modular import (
    CountBoundReport,
    DensityReport,
    ScreenOutcome,
    Verdict,
    class2_residue_test,
    class4_residue_test,
    count_bound_report,
    falling_roots_mod_p,
    legendre_symbol,
    no_root_density,
    primes_up_to,
    screen_class_k,
    wilson_check,
)
from .polyfact import (
    IntPoly,
    IrredStatus,
    IrredVerdict,
    ScanResult,
    exception_scan,
    factor_degrees_mod_p,
    falling_to_monomial,
    is_irreducible_over_Z,
    rational_root,
)
from .equidist import (
    CriticalHitsReport,
    CriticalInterval,
    SampleSet,
    conjecture_report,
    critical_hits,
    generate_samples,
    interval_count,
    load_samples,
    save_samples,
    star_discrepancy,
)

__version__ = "0.1.0"
