class TwoPhotonError(Exception):
    pass


class ParameterError(TwoPhotonError, ValueError):
    pass


class PoleProximity(TwoPhotonError, ArithmeticError):
    """Spectral variable x sits on (or within 1e-12 of) the pole x = n."""

    def __init__(self, n, x):
        self.n = n
        self.x = x
        super().__init__("x = %r is within pole tolerance of n = %d" % (x, n))


class NotConverged(TwoPhotonError, ArithmeticError):
    """Iteration cap reached. ``partial`` holds the best value so far."""

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class NegativeDiscriminant(TwoPhotonError, ArithmeticError):
    pass


class NoInteriorMinimum(TwoPhotonError, ArithmeticError):
    pass


class NumericalWarning(UserWarning):
    pass
