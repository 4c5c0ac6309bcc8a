'''
Errors.py

Exception hierarchy shared by every module of the package.

All exceptions derive from GeometryError so that the drivers can separate
numerical failures from configuration problems (ConfigError) when they map
outcomes onto exit codes.
'''

class GeometryError(Exception):
    pass

###################################################################################
## Expression language
class ExprError(GeometryError):
    pass

class ExprSyntaxError(ExprError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__('%s at offset %d' % (message, offset))

class UnknownIdentifierError(ExprSyntaxError):
    pass

class ArityError(ExprSyntaxError):
    pass

class UnboundVariableError(ExprError):
    pass

class ExprDomainError(ExprError):
    pass

###################################################################################
## Charts and curves
class DomainError(GeometryError):
    '''Point outside the chart domain of a surface.'''
    pass

class DomainExitError(DomainError):
    def __init__(self, message, arclength):
        self.arclength = arclength
        super().__init__('%s (exit at arclength %.6g)' % (message, arclength))

class NonFiniteStateError(GeometryError):
    pass

class CurveSpeedError(GeometryError):
    pass

###################################################################################
## Product structure and immersions
class BaseMismatchError(GeometryError):
    pass

class DegenerateFrameError(GeometryError):
    pass

class DegenerateMetricError(GeometryError):
    pass

class NonLagrangianError(GeometryError):
    pass

class RankError(GeometryError):
    pass

class ImmersionKindError(GeometryError):
    pass

###################################################################################
## Second variation
class SupportError(GeometryError):
    pass

class EmptySampleError(GeometryError):
    pass

###################################################################################
## Configuration
class ConfigError(GeometryError):
    pass
