"""Exact verification of autodual ADHM data and their monads."""

from .exactnum import GaussRational, as_scalar, parse_scalar
from .polyring import Poly, PolyRing, chern_series
from .groebner import GroebnerConfig, Ideal, ideal_equal, ideal_member, projective_empty, radical_member
from .matpoly import Matrix, Subspace
from .adhm import AdhmDatum, ExtendedDatum, StructureKind, build_monad, classify_structure, mu
from .regularity import RegularityReport, closure_check, fibre_ranks, global_regularity
from .certify import Certificate, moduli_dimension, run_certificate, search_witness

__version__ = "0.1.0"
