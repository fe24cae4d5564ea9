"""Constructions that certify bad behaviour of differentiation bases."""

from .lemmas import GridConstruction, default_shape, lemma31_ratio, lemma32_shift, lemma33_build
from .nonlocal_bases import prop41_certificate, prop42_certificate
from .theorem import schedule, theorem31_assemble
from .translates import prop31_certificate, prop32_assemble, prop32_certificate

__all__ = [
    "GridConstruction",
    "default_shape",
    "lemma31_ratio",
    "lemma32_shift",
    "lemma33_build",
    "prop31_certificate",
    "prop32_assemble",
    "prop32_certificate",
    "prop41_certificate",
    "prop42_certificate",
    "schedule",
    "theorem31_assemble",
]
