"""Exception hierarchy shared by all modules."""


class HyperprobError(Exception):
    """Base class for every error raised by the package."""


# algebra

class NotInGroup(HyperprobError, ValueError):
    """Element has non-positive square modulus, so it has no polar form."""


class NotInvertible(HyperprobError, ZeroDivisionError):
    """Element lies on the light cone (square modulus 0)."""


# hyperbolic Hilbert module

class BasisMismatch(HyperprobError, ValueError):
    pass


class NotDecomposable(HyperprobError, ValueError):
    """A coordinate has negative square modulus; Born probabilities are undefined."""


class BasisNotOrthonormal(HyperprobError, ValueError):
    pass


# probability spaces

class SpaceFormatError(HyperprobError, ValueError):
    """Malformed space document."""


class WeightSumError(SpaceFormatError):
    pass


class DuplicateAtomId(SpaceFormatError):
    pass


class UnknownContextName(HyperprobError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown context"


class ZeroConditioningContext(HyperprobError, ZeroDivisionError):
    pass


class DegenerateContext(HyperprobError, ValueError):
    pass


class CompatibleVariables(HyperprobError, ValueError):
    """Some joint cell P(a=y, b=x) is empty, so a and b are not incompatible."""


# interference / representation

class ZeroDenominator(HyperprobError, ZeroDivisionError):
    pass


class MixedClassUnsupported(HyperprobError, ValueError):
    pass


class NotHyperbolicContext(HyperprobError, ValueError):
    pass


class NotDoubleStochastic(HyperprobError, ValueError):
    pass


class NotGUnitary(HyperprobError, ValueError):
    pass


class NotDecomposableOutput(NotDecomposable):
    """A G-unitary change of basis moved a coordinate out of the positive cone."""


# simulation

class InsufficientData(HyperprobError, ValueError):
    pass
