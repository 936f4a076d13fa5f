"""Exception types raised across the package."""


class LamspaceError(Exception):
    """Base class for every error raised by lamspace."""


class ParseError(LamspaceError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class ValidationError(LamspaceError):
    """Raised with the full list of failed checks."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class CoincidentEndpoints(LamspaceError):
    pass


class NullInput(LamspaceError):
    pass


class NotHyperbolic(LamspaceError):
    pass


class BadTangent(LamspaceError):
    pass


class BasepointOnLeaf(LamspaceError):
    pass


class QueryOnLeaf(LamspaceError):
    pass


class NotInSupport(LamspaceError):
    pass


class OutsideDomain(LamspaceError):
    pass


class NotInvariant(LamspaceError):
    pass


class ImageOnLeaf(LamspaceError):
    pass


class DomainOfT(LamspaceError):
    pass


class TimeNotAboveOne(DomainOfT):
    pass


class TimeNotBelowOne(DomainOfT):
    pass


class NotOnLevelOne(LamspaceError):
    pass


class BadBranch(LamspaceError):
    pass


class TooCloseToBreakLocus(LamspaceError):
    pass


class Elliptic(LamspaceError):
    pass


class BranchAmbiguity(LamspaceError):
    pass


class BadRange(LamspaceError):
    pass


class TimeRange(LamspaceError):
    pass


class RadiusRange(LamspaceError):
    pass


class DegenerateLattice(LamspaceError):
    pass
