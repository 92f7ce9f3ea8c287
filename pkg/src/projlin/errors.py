"""Exception types raised across the package.

Each class names the condition that was violated, so callers (and the CLI)
can report failures by name without string matching.
"""


class ProjlinError(Exception):
    """Base class for every error raised by this package."""


class BadRoot(ProjlinError):
    """The designated root is not a usable vertex of the tree."""


class MultipleHeads(ProjlinError):
    """Some vertex was given more than one parent."""


class CycleDetected(ProjlinError):
    """The parent links contain a directed cycle."""


class Disconnected(ProjlinError):
    """Not every vertex is reachable from the root."""


class SizeMismatch(ProjlinError):
    """A tree and an arrangement do not cover the same vertex set."""


class OutOfRange(ProjlinError):
    """A numeric argument is outside its documented domain."""


class UnsupportedSize(ProjlinError):
    """A tree-class constructor cannot produce a tree of the requested size."""


class CapExceeded(ProjlinError):
    """The requested computation exceeds a configured safety cap."""


class ZeroExact(ProjlinError):
    """A relative error was requested against an exact value of zero."""


class MalformedLine(ProjlinError):
    """A token line does not follow the expected 10-column format."""
