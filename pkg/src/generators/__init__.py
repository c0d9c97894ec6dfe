"""Instance families, the Turing machine encoding and random programs."""

from .families import gen_depth_family, gen_guarded_lower, gen_linear_lower, gen_sl_lower
from .random_gen import RandomParams, gen_random, is_acyclic_instance
from .tm import TmSpec, gen_tm, parse_tm_spec, read_tm_spec, tm_rules

__all__ = [
    "gen_sl_lower",
    "gen_linear_lower",
    "gen_guarded_lower",
    "gen_depth_family",
    "RandomParams",
    "gen_random",
    "is_acyclic_instance",
    "TmSpec",
    "gen_tm",
    "parse_tm_spec",
    "read_tm_spec",
    "tm_rules",
]
