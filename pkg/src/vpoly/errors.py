"""Exception hierarchy shared across the package.

Everything raised on purpose derives from VpolyError so the CLI can map
domain failures to exit code 1 and leave genuine bugs to traceback.
"""


class VpolyError(Exception):
    """Base class for all domain errors."""


class InputError(VpolyError):
    """Malformed or out-of-contract input (unknown ids, bad sizes, composite prime, ...)."""


class ContractLoopError(VpolyError):
    """Contraction was asked for on a looping edge; use the loop rule instead."""


class CapExceededError(VpolyError):
    """A configured resource cap (edge count, recursion depth, counting budget) would be exceeded."""


class EvaluationError(VpolyError):
    """Numeric evaluation failed (float overflow / non-finite intermediate)."""
