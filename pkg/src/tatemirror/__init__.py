"""Exact verification laboratory for the torus mirror correspondence.

The package realizes, over Z and Z[q]/(q^K) with no floating point anywhere:

* the canonical section basis of the Tate curve and its closed-form
  multiplication rule (``theta``);
* perturbed lattice-point counts in the product triangles, the independent
  oracle for the multiplication exponents (``lattice``);
* combinatorial Floer products between lines on the torus, the exact
  twisted-line multiplication table, and the recovery of the Tate curve's
  Weierstrass equation from the degree-6 relation (``fukaya``);
* Weierstrass coordinate changes, discriminants, fiber classification and
  normal forms, plus the Lie algebra of the reparametrization group
  (``weierstrass``);
* Hochschild cohomology of the affine cuspidal and nodal cubics via a
  Koszul resolution dga (``hochschild``);
* batch verification suites with JSON reports (``cli``).
"""

from . import exactnum, fukaya, hochschild, lattice, theta, weierstrass
from .errors import (InvariantError, NonUnitError, NormalizationFailure,
                     RingMismatchError, StabilizationError, VerificationFailure)

__all__ = [
    "exactnum", "fukaya", "hochschild", "lattice", "theta", "weierstrass",
    "InvariantError", "NonUnitError", "NormalizationFailure",
    "RingMismatchError", "StabilizationError", "VerificationFailure",
]

__version__ = "0.1.0"
