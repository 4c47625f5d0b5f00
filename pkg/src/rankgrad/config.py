"""Size caps and run configuration defaults."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    """Hard limits for the exact brute-force layer.

    brute_force_cap : largest group order accepted by minimal-generation
        searches.
    table_cap       : largest Cayley table built by direct_product.
    homology_cap    : largest group order accepted by the bar-resolution
        multiplier computation (default 16, stretchable to 32).
    max_cosets      : coset enumeration allocation limit.
    """

    brute_force_cap: int = 512
    table_cap: int = 4096
    homology_cap: int = 16
    max_cosets: int = 10**6


DEFAULT_CAPS = Caps()
