"""Exception hierarchy shared by all modules."""


class GeometryError(ValueError):
    """Base class for every error raised by constangle."""


# numerical kernels
class DomainExceeded(GeometryError):
    pass


class NoConvergence(GeometryError):
    pass


class NotMonotone(GeometryError):
    pass


class NotBracketed(GeometryError):
    pass


# curves
class CurvatureVanishes(GeometryError):
    pass


class NotArcLength(GeometryError):
    pass


class SingularParametrization(GeometryError):
    pass


class NotSpherical(GeometryError):
    pass


# surfaces and analysis
class DegenerateNormal(GeometryError):
    pass


class AllSingular(GeometryError):
    pass


class DegenerateFit(GeometryError):
    pass


class GridMismatch(GeometryError):
    pass


class IncompleteGrid(GeometryError):
    pass
