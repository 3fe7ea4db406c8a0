"""Composition series of finite groups and of profinite groups given as towers
of finite quotients, with brute-force checks of the surrounding structure
theory (Jordan-Hölder, prosolvability, sections, power words)."""
from .builtins import (alternating, cyclic, dihedral, direct_product, parse_group, psl2,
                       sl2, symmetric)
from .errors import (Ambiguous, BoundExceeded, GroupError, IncompatibleSubgroup, InvalidHom,
                     InvalidMap, NotNormal, NotSimple, NotSolvable, NotSurjective, ParseError,
                     PreconditionViolated, TrivialGroup)
from .groups import FiniteGroup, GroupHom, Subgroup, quotient
from .series import composition_series, factor_multiset, jh_verify
from .simple import SimpleType, identify

__version__ = "0.1.0"
