"""Sum builders: the theorem/lemma families, Watson's transformation, vanishing indices."""

from .families import (
    MUTATIONS,
    Assembled,
    Family,
    SumSpec,
    TermRatio,
    assemble,
    assemble_residue,
    lemma_m,
    proof_identity_2_6,
    term,
    terms,
    theorem_L,
    theorem_spec,
)
from .vanishing import min_vanishing_index, vanishing_chain
from .watson import watson_check_random, watson_check_symbolic, watson_sides

__all__ = [
    "MUTATIONS",
    "Assembled",
    "Family",
    "SumSpec",
    "TermRatio",
    "assemble",
    "assemble_residue",
    "lemma_m",
    "proof_identity_2_6",
    "term",
    "terms",
    "theorem_L",
    "theorem_spec",
    "min_vanishing_index",
    "vanishing_chain",
    "watson_sides",
    "watson_check_random",
    "watson_check_symbolic",
]
