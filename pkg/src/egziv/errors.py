"""Exception hierarchy shared across the package."""


class EgzivError(Exception):
    """Base class for all package errors."""


class PreconditionError(EgzivError, ValueError):
    """An argument violates an operation's stated precondition."""


class GroupAxiomError(PreconditionError):
    """A Cayley table fails a group axiom (Latin square, identity, associativity)."""


class SchemaError(EgzivError, ValueError):
    """A JSON document does not match the expected schema."""


class StructureError(EgzivError, ValueError):
    """A complex lacks the structure an operation requires (e.g. not a pseudomanifold)."""


class NonOrientableError(StructureError):
    """Orientation sign propagation reached a contradiction."""


class DegenerateMapError(EgzivError, ValueError):
    """A simplicial map collapses every facet, so no degree is defined."""


class InconsistentDegreeError(EgzivError, ValueError):
    """Per-facet preimage counts disagree; the map is not a map of pseudomanifolds."""


class TheoremViolationError(EgzivError, RuntimeError):
    """A theorem-guaranteed witness was not found.

    This always indicates an implementation bug, never a legal outcome;
    the CLI maps it to its own exit code so verification suites can
    distinguish it from a legitimately absent witness.
    """
