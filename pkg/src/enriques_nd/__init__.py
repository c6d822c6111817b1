"""Lower bounds and exact values of the non-degeneracy invariant of Enriques
surfaces from E10 lattice data."""
from .action import GeneratorSet, OrbitWord, apply_word, check_relations, expand_orbit
from .certificates import Certificate, CertificateEntry, verify_certificate, verify_corpus
from .configs import EllipticConfiguration, enumerate_configurations
from .curves import CurveSystem, build_system, spans_full_rank
from .data_io import load_case, load_certificates
from .halffibers import HalfFiberClass, build_hf_set, classify
from .lattice import GRAM, dot, halve, is_two_divisible, rank_of_gram, validate_isometry
from .proof145 import case145_exclusion_proof
from .quasipoly import QuasiPolynomial, fit_quasipolynomial, integer_solutions_equal
from .solver import compute_cnd, verify_sequence

__version__ = "0.1.0"
