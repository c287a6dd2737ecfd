class MatrixException(Exception):
    pass


class HafnianException(Exception):
    pass


class CircuitException(Exception):
    pass


class UnphysicalStateException(Exception):
    pass


class NumericalException(Exception):
    pass


class SamplerException(Exception):
    pass


class FormatException(Exception):
    pass
