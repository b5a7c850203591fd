"""Exact re-execution of the boundary residue computation for the J-twisted Dirac operator."""
from __future__ import annotations

from .exact import GaussianRational
from .ratfun import PoleRational
from .clifford import Multivector
from .jets import JJet, random_jjet
from .pipeline import CaseReport, PiVolScalar, phi_case, phi_total
from .closed_forms import (
    eval_constant,
    interior_integrand,
    phi_case_form,
    phi_d_form,
    phi_final_form,
    theorem_boundary_integrand,
)

__all__ = [
    "GaussianRational",
    "PoleRational",
    "Multivector",
    "JJet",
    "random_jjet",
    "CaseReport",
    "PiVolScalar",
    "phi_case",
    "phi_total",
    "eval_constant",
    "phi_case_form",
    "phi_d_form",
    "phi_final_form",
    "theorem_boundary_integrand",
    "interior_integrand",
]
