class ClassGroupError(Exception):
    """Custom exception class for class group computation errors"""
    pass

class ElementSearchError(Exception):
    """Custom exception class for failed searches of principal generators"""
    pass

class NotIntegralError(Exception):
    """Custom exception class for reductions of elements that are not integral at a place"""
    pass

class ResidueFieldError(Exception):
    """Custom exception class for residue field contract violations"""
    pass

class SearchBoundExceededError(Exception):
    """Custom exception class for place searches that ran out of their bound"""

    def __init__(self, message: str, inspected: int = 0):
        super().__init__(message)
        self.inspected = inspected

class InconsistentSystemError(Exception):
    """Custom exception class for linear systems over Z/eZ without a solution"""
    pass

class NotInvertibleError(Exception):
    """Custom exception class for matrices that are not invertible modulo e"""
    pass

class InvariantBreachError(Exception):
    """Custom exception class for broken construction invariants"""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step

class RamifiedPlaceError(Exception):
    """Custom exception class for Artin symbols requested at ramified places"""
    pass

class SUnitError(Exception):
    """Custom exception class for elements that are not S-units"""
    pass

class PrecisionError(Exception):
    """Custom exception class for Gaussian periods that did not round to integers"""

    def __init__(self, message: str, suggested_precision: int | None = None):
        super().__init__(message)
        self.suggested_precision = suggested_precision

class DegenerateGroupError(Exception):
    """Custom exception class for the trivial group, where L = K"""
    pass
