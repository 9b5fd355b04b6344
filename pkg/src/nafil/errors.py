"""Exception hierarchy shared by every module.

All errors derive from :class:`LoopError`. Input problems (bad files, bad
subsets, unknown ids) additionally derive from :class:`InputError` so the
command line can map them to exit status 2.
"""

from __future__ import annotations


class LoopError(Exception):
    """Base class for every error raised by this package."""


class InputError(LoopError, ValueError):
    """The caller handed us something malformed."""


# -- parsing -----------------------------------------------------------------


class ParseError(InputError):
    pass


class EmptyInput(ParseError):
    def __init__(self) -> None:
        super().__init__("empty input: no table order found")


class BadHeader(ParseError):
    def __init__(self, token: str, reason: str = "expected the table order") -> None:
        self.token = token
        super().__init__(f"bad header token {token!r}: {reason}")


class NotSquare(ParseError):
    def __init__(self, n: int, row: int, found: int) -> None:
        self.n, self.row, self.found = n, row, found
        if found < 0:
            msg = f"table of order {n} has only {row - 1} rows"
        else:
            msg = f"row {row} has {found} entries, expected {n}"
        super().__init__(msg)


class EntryOutOfRange(ParseError):
    def __init__(self, i: int, j: int, value: object) -> None:
        self.i, self.j, self.value = i, j, value
        super().__init__(f"entry at row {i}, column {j} is {value!r}, outside 1..n")

    @property
    def args_tuple(self) -> tuple[int, int, object]:
        return (self.i, self.j, self.value)


# -- structural preconditions ------------------------------------------------


class NoIdentity(InputError):
    def __init__(self, what: str = "table") -> None:
        super().__init__(f"{what} has no two-sided identity")


class NotALoop(InputError):
    def __init__(self, what: str = "table") -> None:
        super().__init__(f"{what} is not a loop")


class NotInvertibleLoop(InputError):
    def __init__(self, what: str = "table") -> None:
        super().__init__(f"{what} is not an invertible loop")


class NotAQuasigroup(InputError):
    def __init__(self, what: str = "table") -> None:
        super().__init__(f"{what} is not a quasigroup (not a Latin square)")


class EmptySeed(InputError):
    def __init__(self) -> None:
        super().__init__("closure needs a non-empty seed")


class BadElement(InputError):
    def __init__(self, element: object, n: int) -> None:
        self.element = element
        super().__init__(f"element {element!r} is outside 1..{n}")


class NotASubsystem(InputError):
    def __init__(self, subset) -> None:
        self.subset = subset
        super().__init__(f"{{{', '.join(map(str, sorted(subset)))}}} is not closed under the operation")


class BadMapRange(InputError):
    pass


# -- products ----------------------------------------------------------------


class ShapeMismatch(InputError):
    pass


class PhiNotQuasigroup(InputError):
    def __init__(self, p: int, q: int) -> None:
        self.p, self.q = p, q
        super().__init__(f"local operation phi[{p}][{q}] is not a quasigroup")


class NotNormal(InputError):
    def __init__(self, subset) -> None:
        self.subset = subset
        super().__init__(f"{{{', '.join(map(str, sorted(subset)))}}} is not a normal subloop")


class OrderMismatch(InputError):
    pass


class InconsistentDecomposition(LoopError):
    pass


# -- search / catalog --------------------------------------------------------


class UnsupportedOrder(InputError):
    def __init__(self, n: int, cap: int) -> None:
        super().__init__(f"order {n} is not supported by the census (max {cap})")


class BadConstraints(InputError):
    pass


class UnknownId(InputError, KeyError):
    def __init__(self, name: str, valid) -> None:
        self.name = name
        self.valid = tuple(valid)
        super().__init__(f"unknown catalog id {name!r}; valid ids: {', '.join(self.valid)}")

    def __str__(self) -> str:  # KeyError would quote the whole message
        return self.args[0]
