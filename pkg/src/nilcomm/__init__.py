"""Exact finite-field computations on the restricted nilpotent commuting variety of gl(n).

Submodules:

* :mod:`nilcomm.ff` - GF(p^k) arithmetic on integer-encoded elements
* :mod:`nilcomm.matff` - immutable matrices over GF(q), rank/kernel/inverse, packed GF(2)
* :mod:`nilcomm.nilpotent` - Jordan types, the representatives e_i, centralizers, orbit sizes
* :mod:`nilcomm.variety` - commuting pairs, exact point counts, strata and components, p = 7 checks
* :mod:`nilcomm.modvar` - the module view: fingerprints, decomposition, duality, isomorphism
* :mod:`nilcomm.cli` - ``nilcomm`` command line
"""

from .errors import (BudgetExceeded, DimensionMismatch, FieldError, FieldMismatch,
                     InvariantViolation, NilcommError, NotNilpotent, SingularMatrix)
from .ff import FieldCtx, make_field
from .matff import Mat
from .modvar import LambdaModule, classify_indec, decompose, dualize, fingerprint, iso_test
from .nilpotent import Partition, canonical_e, centralizer_basis, orbit_size
from .variety import (CommPair, ComponentId, count_C, count_cent_nil, estimate_dim,
                      generic_component_rep, is_comm_pair)

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "DimensionMismatch", "FieldError", "FieldMismatch",
           "InvariantViolation", "NilcommError", "NotNilpotent", "SingularMatrix",
           "FieldCtx", "make_field", "Mat", "LambdaModule", "classify_indec", "decompose",
           "dualize", "fingerprint", "iso_test", "Partition", "canonical_e", "centralizer_basis",
           "orbit_size", "CommPair", "ComponentId", "count_C", "count_cent_nil", "estimate_dim",
           "generic_component_rep", "is_comm_pair"]
