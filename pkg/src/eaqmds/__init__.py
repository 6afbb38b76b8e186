"""Entanglement-assisted quantum MDS codes from cyclic codes over GF(q^2)."""

from eaqmds.constructions import (
    FamilyInput,
    certify_family,
    family_a_defining_set,
    family_a_params,
    family_b_defining_set,
    family_b_params,
    scan_families,
)
from eaqmds.cosets import CosetContext, DefiningSet, decompose_defining_set, max_consecutive_run, neg_q_image
from eaqmds.engine import Certificate, EAParams, certify, ea_singleton_defect, eaqec_params
from eaqmds.field import make_field, primitive_nth_root

__all__ = [
    "Certificate",
    "CosetContext",
    "DefiningSet",
    "EAParams",
    "FamilyInput",
    "certify",
    "certify_family",
    "decompose_defining_set",
    "ea_singleton_defect",
    "eaqec_params",
    "family_a_defining_set",
    "family_a_params",
    "family_b_defining_set",
    "family_b_params",
    "make_field",
    "max_consecutive_run",
    "neg_q_image",
    "primitive_nth_root",
    "scan_families",
]
