# Order first, fuzziness second.
__all__ = (
    '__version__',
    'UpcutError',
    'Logger',
    'silent_logger',
    'console_logger',
    'Poset',
    'SetFamily',
    'IsoWitness',
    'relation_poset',
    'build_poset',
    'antichain_poset',
    'chain_poset',
    'set_family',
    'family_poset',
    'principal_filter',
    'is_up_set',
    'enumerate_up_sets',
    'poset_isomorphism',
    'verify_isomorphism',
    'FiniteLattice',
    'FamilyLattice',
    'as_lattice',
    'family_lattice',
    'lattice_from_family',
    'meet_irreducibles',
    'is_distributive',
    'birkhoff_representation',
    'find_bound_preserving_embedding',
    'ClosureOperator',
    'ClosureViolation',
    'validate_closure',
    'axiom_report',
    'closure_from_moore_family',
    'moore_families',
    'find_closure_for_target',
    'enumerate_closure_operators',
    'quotient_by_closure',
    'compose_closures',
    'restriction_candidate',
    'all_posets',
    'all_lattices',
    'FuzzyMap',
    'fuzzy_map',
    'p_cut',
    'cut_family',
    'is_fuzzy_up_set',
    'approx_closure',
    'approx_quotient',
    'representable',
    'restrict_cut_family',
    'powerset_witness',
    'Refutation',
    'monotone_maps',
    'realizing_map',
    'Mode',
    'enumerate_realizable_families',
    'quotient_is_complete_lattice',
    'powerset_quotient_is_complete',
    'embed_upset_quotient',
    'closure_for_family',
    'birkhoff_embedding_driver',
    'interval_isomorphism',
    'parse_document',
    'emit_document',
    'emit_dot',
    'run_fixtures',
    'run_cli',
)

__version__ = "0.1"

# Errors and logging
from .error import UpcutError
from .log import console_logger, Logger, silent_logger

# Posets, lattices, and closure operators
from .order.poset import (
    antichain_poset,
    build_poset,
    chain_poset,
    enumerate_up_sets,
    family_poset,
    is_up_set,
    IsoWitness,
    Poset,
    poset_isomorphism,
    principal_filter,
    relation_poset,
    set_family,
    SetFamily,
    verify_isomorphism,
)
from .order.lattice import (
    as_lattice,
    birkhoff_representation,
    family_lattice,
    FamilyLattice,
    find_bound_preserving_embedding,
    FiniteLattice,
    is_distributive,
    lattice_from_family,
    meet_irreducibles,
)
from .order.closure import (
    axiom_report,
    closure_from_moore_family,
    ClosureOperator,
    ClosureViolation,
    compose_closures,
    enumerate_closure_operators,
    find_closure_for_target,
    moore_families,
    quotient_by_closure,
    restriction_candidate,
    validate_closure,
)
from .order.generate import all_lattices, all_posets

# L-fuzzy up-sets and their cuts
from .fuzzy import (
    approx_closure,
    approx_quotient,
    cut_family,
    fuzzy_map,
    FuzzyMap,
    is_fuzzy_up_set,
    p_cut,
    powerset_witness,
    Refutation,
    representable,
    restrict_cut_family,
)
from .oracle import monotone_maps, realizing_map
from .quotient import (
    birkhoff_embedding_driver,
    closure_for_family,
    embed_upset_quotient,
    enumerate_realizable_families,
    interval_isomorphism,
    Mode,
    powerset_quotient_is_complete,
    quotient_is_complete_lattice,
)

# Documents and the command line
from .document.ingest import parse_document
from .document.export import emit_document, emit_dot
from .fixture import run_fixtures
from .main import run_cli
