"""Exact computations of (strong) n-torsion clean indices of finite rings."""

from .analysis import (
    corner_is_field,
    idempotents,
    is_abelian,
    is_boolean,
    is_commutative,
    is_reduced,
    jacobson_radical,
    nil_index,
    primitive_central_idempotents,
    structure_report,
    units,
)
from .ffield import FieldElem, FieldSpec, field_elem_order, field_make
from .rings import RingElem, ring_char, ring_elements, ring_make
from .theorems import CheckResult, run_suite
from .torsion import (
    Certificate,
    IndexReport,
    OrderSet,
    decompose,
    order_set,
    similarity_classes,
    torsion_clean_index,
    verify_certificate,
)

__version__ = "0.1.0"
