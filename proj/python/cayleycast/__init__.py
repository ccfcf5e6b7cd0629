"""Broadcast networks on Cayley graphs.

Group, generator and scheme arguments use the same text forms as the
command-line tool, e.g. ``CayleyGraph("dihedral(7)", "(1,0),(1,1),(1,3)")``.
"""

from ._core import (
    CayleyGraph,
    Error,
    Graph,
    Group,
    GroupTooLarge,
    InvalidGenerators,
    InvalidGraph,
    InvalidGroup,
    NotAMember,
    ParseError,
    SchemeMismatch,
    bound_table,
    catalog_update,
    exact_broadcast_time,
    exact_schedule,
    greedy_upper_bound,
    log2_lower_bound,
    moore_bound,
    moore_f,
    search,
    seed_catalog,
    verify_family,
    verify_record,
)

__all__ = [name for name in dir() if not name.startswith("_")]
