from collections.abc import Sequence


class UpcutError(ValueError):
    """The base class for all errors raised on invalid input."""


# --------------------------------------------------------------------------------------
# Posets and Families


class DuplicateElement(UpcutError):
    def __init__(self, name: str) -> None:
        super().__init__(f'element "{name}" is declared more than once')
        self.name = name


class UnknownName(UpcutError):
    def __init__(self, name: str, where: str = 'poset') -> None:
        super().__init__(f'"{name}" is not an element of the {where}')
        self.name = name


class InvalidName(UpcutError):
    def __init__(self, name: str) -> None:
        super().__init__(f'"{name}" is not a valid element name')
        self.name = name


class CycleDetected(UpcutError):
    def __init__(self, x: str, y: str) -> None:
        super().__init__(f'"{x}" and "{y}" are distinct yet below each other')
        self.witness = (x, y)


class NotAPartialOrder(UpcutError):
    pass


class CapExceeded(UpcutError):
    def __init__(self, what: str, cap: int, lower_bound: int) -> None:
        super().__init__(
            f'{what} exceeds the cap of {cap:,d} (at least {lower_bound:,d})'
        )
        self.cap = cap
        self.lower_bound = lower_bound


class NotIntersectionClosed(UpcutError):
    def __init__(self, left: str, right: str) -> None:
        super().__init__(
            f'family lacks the intersection of {left} and {right}'
        )
        self.witness = (left, right)


class MissingFullSet(UpcutError):
    def __init__(self) -> None:
        super().__init__('family does not contain the full base set')


# --------------------------------------------------------------------------------------
# Lattices and Closures


class NotALattice(UpcutError):
    def __init__(self, reason: str, witness: Sequence[str] = ()) -> None:
        super().__init__(reason)
        self.witness = tuple(witness)


class NotDistributive(UpcutError):
    def __init__(self, x: str, y: str, z: str) -> None:
        super().__init__(
            f'"{x}" ∧ ("{y}" ∨ "{z}") differs from ("{x}" ∧ "{y}") ∨ ("{x}" ∧ "{z}")'
        )
        self.witness = (x, y, z)


class NotMooreFamily(UpcutError):
    def __init__(self, reason: str, witness: Sequence[str] = ()) -> None:
        super().__init__(reason)
        self.witness = tuple(witness)


class CarrierMismatch(UpcutError):
    pass


class PreconditionViolated(UpcutError):
    pass


class PreconditionUnmet(UpcutError):
    pass


# --------------------------------------------------------------------------------------
# Documents and Fixtures


class DocumentError(UpcutError):
    def __init__(self, message: str, line: None | int = None) -> None:
        where = '' if line is None else f'line {line}: '
        super().__init__(f'{where}{message}')
        self.line = line


class DocumentSyntaxError(DocumentError):
    pass


class DocumentSemanticError(DocumentError):
    pass


class FixtureMissing(UpcutError):
    def __init__(self, name: str) -> None:
        super().__init__(f'bundled fixture document "{name}" is missing')
        self.name = name
