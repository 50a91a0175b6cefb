"""Exception hierarchy shared by every module.

Domain errors map to CLI exit code 2, tolerance failures to exit code 3.
"""


class EndBundleError(Exception):
    exit_code = 2

    @property
    def code(self):
        return type(self).__name__


class DomainError(EndBundleError):
    exit_code = 2


class ToleranceExceeded(EndBundleError):
    exit_code = 3


# seqcalc
class NotTrivial(DomainError):
    pass


class NotPeriodic(DomainError):
    pass


# bandop
class WindowTooNarrow(DomainError):
    pass


class NotUnitary(DomainError):
    pass


class NotInteger(DomainError):
    pass


# bundle
class UnboundedExponents(DomainError):
    pass


class WrongBase(DomainError):
    pass


class NotPeriodicEnd(DomainError):
    pass


class UnsupportedInvariant(WrongBase):
    pass


# fourier
class NotInChart(DomainError):
    pass


class NotInOverlap(DomainError):
    pass


# oscillator
class GridTooCoarse(DomainError):
    pass


class NotHermitianUnitary(DomainError):
    pass


class OutOfDisc(DomainError):
    pass


class WrongHemisphere(DomainError):
    pass


class WindingUnstable(ToleranceExceeded):
    pass


# shared
class InvalidParameter(DomainError):
    pass
