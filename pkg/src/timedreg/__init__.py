"""Alternating timed and register automata, braid encodings and translations."""
from .words import (
    TICK,
    DataMap,
    DataWord,
    Letter,
    TimeIsomorphism,
    TimedWord,
    apply_data_map,
    apply_time_isomorphism,
    data_isomorphic,
    is_m_bounded,
    is_m_decreasing,
    ordered_partition,
    parse_data_word,
    parse_timed_word,
    time_isomorphic,
    validate_data_word,
    validate_timed_word,
)
from .automata import (
    RegisterAutomaton,
    Rule,
    TimedAutomaton,
    check_partition,
    complete_with_sink,
    dualize,
    intersect,
    is_order_blind,
    max_constant,
    mode_of,
    product_nondet,
    union,
)
from .braids import (
    data_braid_to_timed_braid,
    encode_data_as_timed,
    encode_timed_as_data,
    instrument_data,
    instrument_timed,
    is_data_braid,
    is_timed_braid,
    recover_data_word,
    recover_timed_word,
    timed_braid_to_data_braid,
    trim,
)
from .translate import (
    braid_automaton,
    non_data_braid_automaton,
    non_timed_braid_automaton,
    register_to_timed,
    timed_to_register,
)
from .reduce import ReducedInstance, reduce_register_problem, reduce_timed_problem
from .semantics import accepts, accepts_register, accepts_timed, explain, replay
from .textio import format_automaton, load_automaton, parse_automaton, save_automaton

__version__ = "0.1.0"
