"""Exception types shared by every module.

Each class name doubles as the machine-readable error tag printed by the CLI.
"""


class CpnError(Exception):
    """Base class for all domain errors raised by this package."""


class GroupMismatch(CpnError):
    pass


class LevelOutOfRange(CpnError):
    pass


class NotASublattice(CpnError):
    pass


class NoSolution(CpnError):
    pass


class DivisibilityViolation(CpnError):
    pass


class MisalignedBlock(CpnError):
    pass


class NotInBurnsideImage(CpnError):
    pass


class AugmentationObstruction(CpnError):
    def __init__(self, residue, modulus):
        super().__init__(f"augmentation is {residue} mod {modulus}, expected 0")
        self.residue = residue
        self.modulus = modulus


class ZeroElement(CpnError):
    pass


class TheoremViolation(CpnError):
    """A computed quantity landed somewhere the closed-form theory forbids.

    This always indicates a bug, never bad input.
    """
