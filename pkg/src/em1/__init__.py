"""Proof checking and realizer extraction for PRA with Sigma-1 excluded middle."""

from __future__ import annotations

from .errors import Em1Error
from .extraction import Forcing, Witness, extract_realizer, extract_witness, forces_check
from .kernel import backend_name
from .program import Program, load_program, parse_program, show_proof
from .proofs import check_proof, derive, eq_axiom_check, pra_axiom_check, tautology_check
from .realizer import (
    LearningTrace,
    MergePolicy,
    Realizer,
    check_realizer_contract,
    chi_realizer,
    find_prefix_point,
    induction_realizer,
    merge,
    merge_lifted,
    trivial_realizer,
)
from .semantics import (
    BoolIndividual,
    Environment,
    Individual,
    WISequence,
    const,
    denote_formula,
    denote_term,
    is_global_at,
    sem_chi,
    sem_phi,
    stabilization_point,
)
from .standard import StandardModel
from .state import BOTTOM, Atom, State, compatible, join, leq, lookup_witness, try_insert
from .syntax import free_vars, show, substitute

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "BOTTOM",
    "BoolIndividual",
    "Em1Error",
    "Environment",
    "Forcing",
    "Individual",
    "LearningTrace",
    "MergePolicy",
    "Program",
    "Realizer",
    "StandardModel",
    "State",
    "WISequence",
    "Witness",
    "backend_name",
    "check_proof",
    "check_realizer_contract",
    "chi_realizer",
    "compatible",
    "const",
    "denote_formula",
    "denote_term",
    "derive",
    "eq_axiom_check",
    "extract_realizer",
    "extract_witness",
    "find_prefix_point",
    "forces_check",
    "free_vars",
    "induction_realizer",
    "is_global_at",
    "join",
    "leq",
    "load_program",
    "lookup_witness",
    "merge",
    "merge_lifted",
    "parse_program",
    "pra_axiom_check",
    "sem_chi",
    "sem_phi",
    "show",
    "show_proof",
    "stabilization_point",
    "substitute",
    "tautology_check",
    "trivial_realizer",
    "try_insert",
]
