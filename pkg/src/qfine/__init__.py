"""qfine: exact q-series algebra in (q, a, b, t) and a verification
harness for finite Fine-function identities."""

from .algebra import (Polynomial, Rational, RationalFunction, compose_monomial,
                      eval_at, poly_arith, poly_gcd, rat_arith, rational,
                      substitute)
from .errors import (ConstraintViolation, DivisionByZero, Exhausted,
                     IdenticallyZeroDenominator, InternalError, NegativeQDegree,
                     NonInvertibleAtQZero, ParseError, PoleError, QfineError)
from .fine import (Phi32Spec, andrews_bell_F, fine_N, fine_args,
                   partial_fraction_rhs, phi32, r1N, rogers_fine_finite_rhs)
from .qkernel import check_elem_shift, check_gr11, poch_cleared, qbinom, qpoch
from .registry import (Identity, catalog, catalog_by_id, run_passed,
                       verify_all, verify_entry, verify_sampled, verify_symbolic)
from .report import VerificationReport
from .series import (TruncatedQSeries, fine_series, fine_series_args, limit_ids,
                     qpoch_inf, series_from_ratfunc, stabilization_check,
                     verify_limit)

__version__ = "0.1.0"

__all__ = [
    "Polynomial", "Rational", "RationalFunction", "compose_monomial", "eval_at",
    "poly_arith", "poly_gcd", "rat_arith", "rational", "substitute",
    "QfineError", "DivisionByZero", "PoleError", "IdenticallyZeroDenominator",
    "NonInvertibleAtQZero", "NegativeQDegree", "ConstraintViolation",
    "Exhausted", "InternalError", "ParseError",
    "Phi32Spec", "andrews_bell_F", "fine_N", "fine_args", "partial_fraction_rhs",
    "phi32", "r1N", "rogers_fine_finite_rhs",
    "check_elem_shift", "check_gr11", "poch_cleared", "qbinom", "qpoch",
    "Identity", "catalog", "catalog_by_id", "run_passed", "verify_all",
    "verify_entry", "verify_sampled", "verify_symbolic", "VerificationReport",
    "TruncatedQSeries", "fine_series", "fine_series_args", "limit_ids",
    "qpoch_inf", "series_from_ratfunc", "stabilization_check", "verify_limit",
    "__version__",
]
