"""Tikhonov regularization with oversmoothing penalties in diagonal Hilbert scales."""
from .hilbert_scale import DiagonalScale, apply_B_power, apply_G_filter, norm_tau
from .model import (Kind, NoisySample, ProblemSpec, build_linear_problem, build_model_problem,
                    forward, generate_noise, verify_norm_equivalence)
from .solver import RegResult, minimize_tikhonov, misfit_at, solve_linear_fractional
from .auxiliary import AuxDiagnostics, auxiliary_element, error_bound, rate_functions
from .param_choice import (APriori, Branch, ChoiceOutcome, Discrepancy, NoCrossingError,
                           choose_apriori, choose_discrepancy)
from .rates import LogIndexFunction, phi_eval, psi_inverse, qualification_check, rate_ratio

__version__ = "0.1.0"
