"""Query synthesis: reducers, evolution, LCU / block-encoding, measurement, adders."""

from .adders import adder_ladder, adder_matrix, adder_qft, zadd, zadd_matrix
from .evolution import TrotterPlan, hs_exact, term_evolution, trotter, trotter_step
from .lcu import (
    BlockEncoding,
    UnitaryCombination,
    block_encode,
    lch_to_lcu,
    lch_to_lcu_all,
    nonhermitian_split,
    prep,
    qubitize,
    select,
    walk_cosines,
)
from .measure import MeasurementProgram, measurement_program
from .reducer import (
    Reducer,
    combine_reducers,
    controlled_in_subspace,
    reduced_operator,
    reducer_from_string,
    term_weight,
)

__all__ = [
    "BlockEncoding",
    "MeasurementProgram",
    "Reducer",
    "TrotterPlan",
    "UnitaryCombination",
    "adder_ladder",
    "adder_matrix",
    "adder_qft",
    "block_encode",
    "combine_reducers",
    "controlled_in_subspace",
    "hs_exact",
    "lch_to_lcu",
    "lch_to_lcu_all",
    "measurement_program",
    "nonhermitian_split",
    "prep",
    "qubitize",
    "reduced_operator",
    "reducer_from_string",
    "select",
    "term_evolution",
    "term_weight",
    "trotter",
    "trotter_step",
    "walk_cosines",
    "zadd",
    "zadd_matrix",
]
