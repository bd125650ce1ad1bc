"""wheel7: mod-30 wheel sieve, seven-prime tuples, and the counting machinery
needed to check the related identities and inequalities at desk scale."""

__version__ = "0.1.0"

from .constellation import (
    GapSet,
    TupleReport,
    count_sevens,
    enumerate_sevens,
    gap_pairs,
    tuple_report,
)
from .errors import CapExceededError, TableRangeError
from .merges import (
    MergeCountResult,
    catalan,
    diagonal_identity_check,
    merge_count,
    merge_enumerate_oracle,
)
from .phi3 import Factorization, factorize, phi3_bruteforce, phi3_formula
from .products import (
    LogValue,
    check_eq7_factor,
    check_prime_growth,
    density_upto,
    divergence_partial_sum,
    find_n0,
    ratio,
    s7_construction_oracle,
    s7_count,
)
from .sieve import (
    PrimeTable,
    Segment,
    load_cache,
    primes_stream,
    save_cache,
    sieve_range,
)
from .verify import (
    DensityComparison,
    VerificationRow,
    density_comparison,
    induction_budget_check,
    lemma43_check,
    scan_main,
    struck_count,
    verify_main,
)

__all__ = [
    "__version__",
    "CapExceededError",
    "TableRangeError",
    "PrimeTable",
    "Segment",
    "sieve_range",
    "primes_stream",
    "save_cache",
    "load_cache",
    "TupleReport",
    "GapSet",
    "tuple_report",
    "count_sevens",
    "enumerate_sevens",
    "gap_pairs",
    "Factorization",
    "factorize",
    "phi3_bruteforce",
    "phi3_formula",
    "MergeCountResult",
    "merge_count",
    "merge_enumerate_oracle",
    "diagonal_identity_check",
    "catalan",
    "LogValue",
    "s7_count",
    "s7_construction_oracle",
    "density_upto",
    "ratio",
    "find_n0",
    "check_eq7_factor",
    "check_prime_growth",
    "divergence_partial_sum",
    "VerificationRow",
    "DensityComparison",
    "verify_main",
    "scan_main",
    "lemma43_check",
    "struck_count",
    "induction_budget_check",
    "density_comparison",
]
