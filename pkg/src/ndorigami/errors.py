"""Exception hierarchy shared by every module of the package."""


class OrigamiError(Exception):
    """Base class for all errors raised by ndorigami."""


class ZeroVectorError(OrigamiError, ValueError):
    pass


class DimensionMismatch(OrigamiError, ValueError):
    pass


class SameDirection(OrigamiError, ValueError):
    pass


class NonRationalScalar(OrigamiError, TypeError):
    """An eta-dependent value showed up where only rationals are allowed."""


class EtaDegreeCapExceeded(OrigamiError, OverflowError):
    pass


class RankDeficient(OrigamiError, ValueError):
    pass


class DegenerateTau(OrigamiError, ValueError):
    pass


class CollidingDirections(OrigamiError, ValueError):
    pass


class MissingUnitDirection(OrigamiError, ValueError):
    pass


class TooFewAngles(OrigamiError, ValueError):
    pass


class DuplicateAngles(OrigamiError, ValueError):
    pass


class DepthOutOfRange(OrigamiError, IndexError):
    pass


class ZeroQuaternion(OrigamiError, ZeroDivisionError):
    pass


class CannotTriangularize(OrigamiError, ValueError):
    pass


class ConfigError(OrigamiError, ValueError):
    pass
