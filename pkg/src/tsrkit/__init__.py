"""Transition systems with responses: refinement, safety and language checks."""
from .core import (ActionTable, DuplicateName, DuplicateTransition, MissingInitial,
                   MixTs, Tsr, TsrError, UndeclaredName, UnknownAction, ValidationError,
                   build_mixts, build_tsr, is_modal, may_set, reachable_states,
                   validate, validate_mixts, validate_tsr)
from .analysis import (DeadlockReport, accepting_states, check_modal_deadlock_lemma,
                       deadlock_states, is_deadlock_free)
from .refine import (Counterexample, RefinementReport, Violation, check_mixts_refinement,
                     check_refinement, check_safe_refinement, greatest_refinement_relation,
                     is_mixts_refinement, is_refinement)
from ._align import AlphabetMismatch
from .convert import (NotARefinement, canonicalize, iso_check, lift_refinement_to_mixts, mr,
                      rm, transfer_refinement_to_tsr)
from .language import (LanguageVerdict, ResourceLimit, accepts, enumerate_words, equivalent,
                       includes, is_empty)
from .textio import (ParseError, SystemDoc, dumps, export_dot, export_json, load,
                     load_fixture, loads, parse, serialize)

__version__ = "0.1.0"
