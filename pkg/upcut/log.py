import sys
from typing import Protocol


class Logger(Protocol):
    """
    A logger is a function that reports progress. Its message uses `str.format`
    placeholders, which are filled in with the positional arguments. Searches
    call their logger only a few times per run, never per candidate.
    """

    def __call__(self, message: str, *args: object) -> None:
        ...


def silent_logger(message: str, *args: object) -> None:
    pass


def console_logger(message: str, *args: object) -> None:
    print(message.format(*args), file=sys.stderr)
