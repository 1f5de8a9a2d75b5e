"""Exception types raised by the lcft engine.

Every failure mode is loud and typed; silent fallbacks would corrupt the
downstream cocycle and symbol computations.
"""


class LcftError(Exception):
    """Base class for all engine errors."""


class InvalidBase(LcftError):
    """Base field description is inconsistent (q not a power of p, ...)."""


class ResidueBudgetExceeded(LcftError):
    """A computation needs a residue-field degree above the configured cap."""


class PrecisionLoss(LcftError):
    """The pi-adic digit budget cannot certify the requested result."""


class HenselFails(LcftError):
    """Hensel hypothesis |f(a)| < |f'(a)|^2 cannot be certified."""


class NotEisenstein(LcftError):
    """Polynomial offered as Eisenstein fails the valuation criteria."""


class UnsupportedDegree(LcftError):
    """Extension degrees exceed the configured desk-scale caps."""


class NotGalois(LcftError):
    """Fewer automorphisms than the degree were found at working precision."""


class NotInvertible(LcftError):
    """Element (or some split component) is zero to working precision."""


class ZeroComponent(LcftError):
    """A split component is indistinguishable from zero; valuation undefined."""


class NonzeroSlope(LcftError):
    """solve_sigma requires w(gamma) = 0; no solution exists otherwise."""


class NotInL(LcftError):
    """Value expected to descend to L fails sigma-fixedness or constancy."""


class NotUnramifiedShape(LcftError):
    """Cocycle table is not of the single-generator unramified form."""


class IncompatibleTower(LcftError):
    """Tower levels do not embed compatibly (wrong degrees or no root)."""


class Unstable(LcftError):
    """Norm-class lattice failed to stabilize within the depth budget."""


class NotBijective(LcftError):
    """eta is not injective on G^ab; signals a bug or precision failure."""


class NotInWeilGroup(LcftError):
    """Pair (beta, s) fails the defining relation at tolerance."""


class AmbientMismatch(LcftError):
    """Group operation on Weil elements from different ambients."""


class GroupsNotIsomorphic(LcftError):
    """Extension-equivalence search failed; falsifies the comparison."""


class ConfigError(LcftError):
    """Run configuration is malformed."""
