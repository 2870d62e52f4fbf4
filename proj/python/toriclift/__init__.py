"""Exact toric-variety computations: quotient presentations, lifting of toric
morphisms, and fan isomorphism."""

from ._core import (
    DomainError,
    Fan,
    InputError,
    ResourceError,
    __version__,
    isomorphism,
    lift,
    parse_fan,
    presentation,
    read_fan,
    run,
)

__all__ = [
    "DomainError",
    "Fan",
    "InputError",
    "ResourceError",
    "__version__",
    "isomorphism",
    "lift",
    "parse_fan",
    "presentation",
    "read_fan",
    "run",
]
