class GapCertError(Exception):
    """Base class for every error raised by gapcert."""


class DomainError(GapCertError, ValueError):
    """An argument lies outside the range an operation is defined on."""


class EvaluationError(GapCertError):

    def __init__(self, message, decision=None, index=None):
        super().__init__(message)
        self.decision = decision
        self.index = index


class CapacityError(GapCertError):

    def __init__(self, cardinality, limit):
        super().__init__(f"exact enumeration of {cardinality} decisions exceeds the limit of {limit}")
        self.cardinality = cardinality
        self.limit = limit


class OracleError(GapCertError):

    def __init__(self, message, instance_seed=None, best=None):
        super().__init__(message)
        self.instance_seed = instance_seed
        self.best = best


class SamplingError(GapCertError):
    """A rejection sampler gave up before accepting a draw."""


class ConfigError(GapCertError):

    def __init__(self, message, fields=None):
        super().__init__(message)
        # field path -> message
        self.fields = fields or {}
