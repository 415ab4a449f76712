"""Exact arithmetic for rational base number systems.

Representations of integers in base p/q, the automata T and T-hat that
recognise them, the derived transducer sending each minimal word to the next
one, and enclosures of the spans of the nodes of the representation tree.
"""
from .automata import (DigitStream, LazyAutomaton, StateInterval, accepts, find_that_unreachable,
                       maximal_word, minimal_word, reachable_interval, tree_T, tree_That)
from .errors import (DigitNotInAq, DigitNotInB, InternalInconsistency, NotAccepted, NotCoprime,
                     OrderViolation, PreconditionViolated, RatBaseError)
from .numeration import (RationalBase, evaluate, format_word, new_base, parse_word, represent,
                         tau)
from .spans import (RatInterval, SpanValue, density_report, map_m, max_letter,
                    prefix_extension_search, rho_truncate, span, span_word, value_witness,
                    verify_dpq_to_spq, verify_that_complete)
from .transducer import (DerivedTransducer, apply, apply_stream, omega, omega_bar,
                         step_closed_form, step_substitution, verify_shift_property)

__version__ = "0.1.0"
