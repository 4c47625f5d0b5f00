"""rankgrad: exact verification of generator and torsion bounds for
finite-index subgroups of direct products, plus the supporting
computational group theory (coset enumeration, subgroup rewriting,
Smith normal form, Schur multipliers, Witt-number tables)."""

from .config import Caps, DEFAULT_CAPS
from .errors import (
    CapExceeded,
    DomainError,
    EnumerationOverflow,
    IncompleteTable,
    NotNormal,
    NotSurjective,
    RankgradError,
    SpecFileError,
    UnknownSuite,
)
from .groups import (
    FiberProductData,
    FiniteGroup,
    Homomorphism,
    SubgroupHandle,
    SubgroupLattice,
    closure,
    commutator_subgroup,
    d_min,
    d_normal_min,
    direct_product,
    fiber_product,
    normal_closure,
    quotient,
    sylow_subgroup,
)
from .presentations import Presentation, SubgroupPresentation
from .smith import AbelianInvariants, IntMatrix, abelian_invariants, abelian_invariants_finite, smith_normal_form
from .words import free_reduce, parse_word

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "Caps",
    "CapExceeded",
    "DEFAULT_CAPS",
    "DomainError",
    "EnumerationOverflow",
    "FiberProductData",
    "FiniteGroup",
    "Homomorphism",
    "IncompleteTable",
    "IntMatrix",
    "NotNormal",
    "NotSurjective",
    "Presentation",
    "RankgradError",
    "SpecFileError",
    "SubgroupHandle",
    "SubgroupLattice",
    "SubgroupPresentation",
    "UnknownSuite",
    "abelian_invariants",
    "abelian_invariants_finite",
    "closure",
    "commutator_subgroup",
    "d_min",
    "d_normal_min",
    "direct_product",
    "fiber_product",
    "free_reduce",
    "normal_closure",
    "parse_word",
    "quotient",
    "smith_normal_form",
    "sylow_subgroup",
    "__version__",
]
