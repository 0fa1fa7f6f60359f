"""Exceptions raised by wlim.

Mathematical absence (no limit, a counterexample, no filler) is never an
exception; those come back as ``None`` or a :class:`wlim.report.Verdict`.
"""

from typing import Optional


class WlimError(Exception):
    """Base class for all wlim errors."""


class ParameterError(WlimError):
    """An argument is outside its documented range."""


class CompositionError(WlimError):
    """Maps do not compose: mismatched sources or targets."""


class StructureError(WlimError):
    """An object violates its structural invariants.

    ``where`` names the offending generator or morphism, ``indices`` the
    face/degeneracy indices involved (if any).
    """

    def __init__(self, message: str, where: Optional[str] = None, indices: tuple = ()):
        super().__init__(message)
        self.where = where
        self.indices = tuple(indices)


class SchemaError(WlimError):
    """A document does not match the expected schema.

    ``path`` is a JSON pointer to the failing location.
    """

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"


class EnumerationLimitError(WlimError):
    """The candidate-extension budget of a map enumeration was exceeded."""

    def __init__(self, cap: int):
        super().__init__(f"enumeration exceeded {cap} candidate extensions (WLIM_MAX_CELLS)")
        self.cap = cap
