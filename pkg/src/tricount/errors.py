class TricountError(Exception):
    pass


class ParseError(TricountError, ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class CapacityError(TricountError, OverflowError):
    pass


class InvalidGraphError(TricountError, ValueError):
    pass


class ContractViolation(TricountError, ValueError):
    """A caller broke a documented precondition."""


class UnknownAlgorithmError(TricountError, KeyError):
    pass


class CountMismatchError(TricountError, RuntimeError):
    def __init__(self, graph: str, key_a: str, count_a: int, key_b: str, count_b: int):
        super().__init__(
            f"{graph}: {key_a} counted {count_a} triangles but {key_b} counted {count_b}"
        )
        self.graph = graph
        self.keys = (key_a, key_b)
        self.counts = (count_a, count_b)
