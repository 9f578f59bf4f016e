"""Congruent number certification from genus class number parities."""
from .arith import PrimeProfile, factor_squarefree, jacobi, root_number
from .certify import Options, Status, Verdict, classify, density_report, scan
from .classgroup import (
    ClassGroupData,
    QuadraticForm,
    class_group,
    genus_number,
    genus_parity_redei,
    two_rank,
)
from .errors import CnumError, NotSquarefree
from .parity import Convention, corollary_classify, theorem1_parity, theorem2_sums

__all__ = [
    "ClassGroupData", "CnumError", "Convention", "NotSquarefree", "Options",
    "PrimeProfile", "QuadraticForm", "Status", "Verdict", "class_group",
    "classify", "corollary_classify", "density_report", "factor_squarefree",
    "genus_number", "genus_parity_redei", "jacobi", "root_number", "scan",
    "theorem1_parity", "theorem2_sums", "two_rank",
]
