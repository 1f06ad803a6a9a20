"""Error types shared across the package."""


class InternalInconsistencyError(RuntimeError):
    """A computed result contradicts an identity that must hold.

    Raised when two routes to the same value disagree (e.g. a closed-form
    classification against the tableau invariants) or when an assembled
    tableau violates its defining conditions.  These are never swallowed:
    the verification sweep records them and the CLI exits with status 3.
    """


class IterationCapExceeded(InternalInconsistencyError):
    """The pair-rewriting loop did not reach a fixpoint within its cap."""
