"""Arithmetic in the abstract commensurators of F2 and the genus-2 surface group."""
from .words import (
    GroupPresentation,
    Word,
    WordError,
    free_group,
    is_trivial,
    surface_group,
    words_equal,
)
from .subgroups import (
    CosetTable,
    DomainError,
    EnumerationError,
    FiniteAbelianTarget,
    enumerate_by_oracle,
    intersect,
    kernel_table,
    reidemeister_rewrite,
    schreier,
)
from .stallings import NotMember, fold, membership_with_witness
from .iso import IsoError, SubgroupIso, define_iso, load_iso, restrict
from .comm import (
    Commensurator,
    bs_kernel_witness_check,
    build_bs_pair,
    compose,
    decide_comm_word,
    identity,
    inner,
    inverse,
    is_identity,
    load_letters,
    power,
    sequential_evaluate,
)

__version__ = "0.1.0"
