from brtjurina.errors import (
    BrTjurinaError, ConsistencyError, HypothesisError, InputError,
    ParseError, VerificationError
)
from brtjurina.invariants import CaseComputation, CaseInput, NotFound
from brtjurina.parser import parse_case, parse_case_sweep
from brtjurina.polynomial import OneForm, Polynomial, Ring
