"""
Errors raised by the verification layer
"""


class VerificationError(ValueError):
    """Base class for every error the verifiers raise on bad input."""


class ExponentError(VerificationError):
    def __init__(self, j: int, exponent, context: str = ""):
        self.j = j
        self.exponent = exponent
        where = f" in {context}" if context else ""
        super().__init__(f"exponent {exponent} at j={j}{where} is not a nonnegative integer")


class NonIntegerExponent(ExponentError):
    pass


class NegativeExponent(ExponentError):
    pass


class UnknownIdentity(VerificationError, KeyError):
    def __init__(self, identity_id: str):
        self.identity_id = identity_id
        super().__init__(f"unknown identity {identity_id!r}")

    def __str__(self) -> str:
        return self.args[0]


class MissingParam(VerificationError):
    def __init__(self, identity_id: str, name: str):
        self.identity_id = identity_id
        self.name = name
        super().__init__(f"identity {identity_id!r} needs parameter {name!r}")


class PruningBoundUnavailable(VerificationError):
    def __init__(self, identity_id: str, index: int):
        self.identity_id = identity_id
        self.index = index
        super().__init__(
            f"term exponents of {identity_id!r} stop growing along summation index {index}; "
            "cannot bound the enumeration"
        )
