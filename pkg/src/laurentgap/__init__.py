"""Exact and certified-numeric tools for divisibility in Z[x1^+-1, ..., xd^+-1]."""

__version__ = "0.1.0"

from .division import (CosetRep, check_divisibility, divide, divides, normal_form, normal_forms,
                       normalize, same_coset)
from .gap import GapCertificate, ProofTrace, gap_constant, gap_radius, proof_trace, split_and_verify
from .lattice import IntLaurentPoly, RealSummableArray, SupportSet, dist, mul, round_to_int
from .parse import parse_poly
from .quasi_inverse import QuasiInverse, attach_user_h, compute_empty_variety, tail_mass
from .torus import (adjoint_atorality_hint, classify_d1, empty_variety_certificate, eval_on_torus,
                    unitary_variety_sample)

__all__ = [
    "CosetRep", "GapCertificate", "IntLaurentPoly", "ProofTrace", "QuasiInverse", "RealSummableArray",
    "SupportSet", "adjoint_atorality_hint", "attach_user_h", "check_divisibility", "classify_d1",
    "compute_empty_variety", "dist", "divide", "divides", "empty_variety_certificate", "eval_on_torus",
    "gap_constant", "gap_radius", "mul", "normal_form", "normal_forms", "normalize", "parse_poly",
    "proof_trace", "round_to_int", "same_coset", "split_and_verify", "tail_mass", "unitary_variety_sample",
]
