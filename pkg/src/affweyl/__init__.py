"""Exact affine Weyl group computations: enumeration, Poincare series,
straight elements, explicit factorizations and Hecke determinant checks."""

from ._kernels import backend
from .errors import VerificationError
from .factorizations import build_factor_sets, build_T, factor_index, region_membership, verify_factorization
from .group import (
    AffineWeylElement,
    Ball,
    CapacityError,
    ball,
    braid_order,
    finite_parabolic,
    generator,
    length,
    reduced_word,
    translation,
    word_to_element,
)
from .hecke import HeckeRep, load_rep, sign_rep, trivial_rep, twisted_series, verify_conjecture_b
from .index_calculus import IndexVector, alternating_index, iota_parabolic
from .rootdata import RootDatum, build_root_datum, dominant_representative, inner
from .series import MatrixSeries, TruncSeries, alternating_product, matrix_series_det, poincare_series, series_inverse
from .tubes import AffineSubspace, DriftData, avoids_walls, drift, is_straight, min_set, stabilizes_tube, tube_degree

__version__ = "0.1.0"

__all__ = [
    "AffineSubspace",
    "AffineWeylElement",
    "alternating_index",
    "alternating_product",
    "avoids_walls",
    "backend",
    "ball",
    "Ball",
    "braid_order",
    "build_factor_sets",
    "build_root_datum",
    "build_T",
    "CapacityError",
    "dominant_representative",
    "drift",
    "DriftData",
    "factor_index",
    "finite_parabolic",
    "generator",
    "HeckeRep",
    "IndexVector",
    "inner",
    "iota_parabolic",
    "is_straight",
    "length",
    "load_rep",
    "matrix_series_det",
    "MatrixSeries",
    "min_set",
    "poincare_series",
    "reduced_word",
    "region_membership",
    "RootDatum",
    "series_inverse",
    "sign_rep",
    "stabilizes_tube",
    "translation",
    "trivial_rep",
    "TruncSeries",
    "tube_degree",
    "twisted_series",
    "VerificationError",
    "verify_conjecture_b",
    "verify_factorization",
    "word_to_element",
]
