"""Universally decodable matrices over finite fields: construction, verification and erasure coding."""

from udmkit.gf import FieldElement, FieldSpec, make_field
from udmkit.poly import INFINITY, Finite, Poly
from udmkit.udm import MatrixGF, UdmFamily, VerificationReport, construct, verify

__all__ = [
    "FieldElement",
    "FieldSpec",
    "Finite",
    "INFINITY",
    "MatrixGF",
    "Poly",
    "UdmFamily",
    "VerificationReport",
    "construct",
    "make_field",
    "verify",
]
