"""orbitcalc: exact computation of symmetric-subgroup orbit posets and
torus-equivariant classes on flag varieties, parametrized by clans."""

__version__ = "0.1.0"

from .clans import (  # noqa: F401
    CaseId,
    Clan,
    ClanError,
    RankTable,
    case_from_params,
    clan_from_rank_table,
    covering_moves,
    covering_successors,
    enumerate_case_clans,
    enumerate_clans,
    in_case_family,
    is_skew_symmetric,
    is_symmetric,
    leq,
    make_clan,
    parse_clan,
    rank_table,
    underlying_involution,
)
