"""Exact relative Frobenius counting for finite groups acting on finite sets."""

from .chartable import CharacterTable, ClassFunction, character_table, convolve, multiplicity, permutation_character
from .errors import (
    InternalInconsistency,
    NonPolynomial,
    NotRational,
    ParseError,
    RelFrobError,
    TooLarge,
    WorkBoundExceeded,
    ZeroBase,
)
from .fock_goncharov import SurfaceType, framed_count, framed_count_brute, groupoid_volume, topology_invariance_check
from .frobenius import (
    RelativeInstance,
    classic_commutator_count,
    hom_count_closed_surface,
    main_sph_check,
    relative_count_brute,
    relative_count_chars,
    spherical_character,
)
from .gelfand import commutator_criterion, f_equivalence_check, f_stat, is_multiplicity_free
from .gln import build_gl_flag, fg_epoly, fg_vol_closed, partitions, specht_dim, unipotent_dim
from .groups import FiniteGroup, GSet, coset_gset, group_from_perm_generators
from .numerics import Cyclotomic, LaurentPoly, Rational

__version__ = "0.1.0"
