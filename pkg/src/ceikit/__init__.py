"""ceikit: exact computer algebra for cyclic A-infinity categories.

Hochschild and cyclic homology, strong homotopy inner products and the
constructive Darboux cyclicization, ribbon-graph TCFT evaluation (Mukai and
higher-residue pairings), Hodge-filtration splittings, and closed-form
categorical enumerative invariants of Frobenius algebras.  All arithmetic is
exact over Q.
"""

from ceikit.linalg import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
