"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class TorsionCleanError(Exception):
    exit_code = 1


class NonPrime(TorsionCleanError, ValueError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class DegreeOutOfRange(TorsionCleanError, ValueError):
    def __init__(self, k):
        super().__init__(f"field degree must be >= 1, got {k}")
        self.k = k


class NotIrreducible(TorsionCleanError, ValueError):
    pass


class SizeGuardExceeded(TorsionCleanError):
    exit_code = 4

    def __init__(self, size, limit):
        # astronomically large sizes would trip int->str limits, so print ~2^bits
        shown = size if size < 10**30 else f"~2^{size.bit_length() - 1}"
        super().__init__(f"carrier size {shown} exceeds the size guard {limit}")
        self.size = size
        self.limit = limit


class SpecMismatch(TorsionCleanError, ValueError):
    pass


class HandleMismatch(TorsionCleanError, ValueError):
    pass


class ZeroElement(TorsionCleanError, ValueError):
    pass


class DivisionByZero(TorsionCleanError, ZeroDivisionError):
    pass


class ParseError(TorsionCleanError, ValueError):
    exit_code = 2

    def __init__(self, text, position, expected):
        super().__init__(f"parse error at position {position} in {text!r}: expected {expected}")
        self.text = text
        self.position = position
        self.expected = expected


class ZeroRing(TorsionCleanError, ValueError):
    exit_code = 2


class ElementOutOfRange(TorsionCleanError, ValueError):
    exit_code = 2


class NotNil(TorsionCleanError, ValueError):
    def __init__(self, witness):
        super().__init__(f"element {witness} is not nilpotent")
        self.witness = witness


class NotCentralIdempotent(TorsionCleanError, ValueError):
    pass


class NoDecomposition(TorsionCleanError):
    exit_code = 3

    def __init__(self, witness):
        super().__init__(f"element {witness} has no strongly clean decomposition")
        self.witness = witness
