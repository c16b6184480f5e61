#!/usr/bin/env python3
"""
FreeKnots Custom Exceptions

Centralized exception definitions to avoid circular imports.
"""


class ConfigurationError(Exception):
    """Configuration-related errors"""
    pass


class ValidationError(Exception):
    """Schema validation errors"""
    pass


class InputError(Exception):
    """Base class for malformed user input"""
    pass


class GaussCodeError(InputError):
    """Gauss code text cannot be parsed"""
    pass


class TokenCountError(GaussCodeError):
    """A chord identifier does not occur exactly twice"""

    def __init__(self, token: str, count: int):
        super().__init__(f"Chord '{token}' occurs {count} times, expected 2")
        self.token = token
        self.count = count


class EmptyInputError(GaussCodeError):
    """No components in the input"""
    pass


class MultiComponentError(InputError):
    """Operation needs a link with exactly one component"""
    pass


class SameChordError(InputError):
    """Linking asked for a chord with itself"""
    pass


class UnknownChordError(InputError):
    """Chord identifier not present in the link"""
    pass


class UnknownLetterError(InputError):
    """Letter outside {a, b, b'}"""
    pass


class WordSyntaxError(InputError):
    """Group word text cannot be parsed"""
    pass


class NonZeroFirstCoordinateError(InputError):
    """Cayley point off the x = 0 column"""
    pass


class NotACycleError(InputError):
    """Edge set is not a Z2-cycle of the framed 4-graph"""
    pass


class SiteInvalidError(InputError):
    """Move or event site does not match the link"""
    pass


class DeathOnNonTrivialCircleError(SiteInvalidError):
    """Death event on a component that still has chord endpoints"""
    pass


class MovieFormatError(InputError):
    """Movie document is malformed"""
    pass


class GenusError(Exception):
    """Genus accounting is not possible for a movie"""
    pass


class FinalLevelNonEmptyError(GenusError):
    """Movie does not end with the empty link"""
    pass


class InitialNotKnotError(GenusError):
    """Movie does not start from a single component"""
    pass


class NonIntegralGenusError(GenusError):
    """Euler characteristic gives a half-integer genus"""
    pass


class NegativeGenusError(GenusError):
    """Euler characteristic gives a negative genus"""
    pass


class PreconditionNotMetError(Exception):
    """Operation called on a movie that does not verify"""
    pass


class LabellingError(PreconditionNotMetError):
    """No lifetime labelling makes a projected movie pass its local checks"""
    pass


class BudgetExceededError(Exception):
    """Bounded search ran out of nodes"""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else set()
