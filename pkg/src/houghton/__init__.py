"""The pure graph Houghton group as a group of eventually rigid free-group automorphisms."""

from .autom import (EventuallyRigidAut, apply, compose, equal, flux_offsets, identity, invert,
                    is_permutational, is_pure, make_generator, support)
from .folding import corank, flux_via_corank, fold, subgroup_rank
from .groupword import GroupWord, evaluate, parse_group_word, syntactic_flux
from .presentation import verify, verify_all
from .rewrite import is_trivial, measure_growth, rewrite_to_compact
from .words import GeneratorIndex, Word, free_reduce, invert_word, parse_basis_word, word_concat

__all__ = [
    "EventuallyRigidAut", "GeneratorIndex", "GroupWord", "Word",
    "apply", "compose", "corank", "equal", "evaluate", "flux_offsets", "flux_via_corank",
    "fold", "free_reduce", "identity", "invert", "invert_word", "is_permutational", "is_pure",
    "is_trivial", "make_generator", "measure_growth", "parse_basis_word", "parse_group_word",
    "rewrite_to_compact", "subgroup_rank", "support", "syntactic_flux", "verify", "verify_all",
    "word_concat",
]
