"""Exception taxonomy shared by all modules.

Exit-code mapping used by the command line front end:
  DomainError          -> 1  (malformed or out-of-contract input)
  HypothesisViolation  -> 2  (input violates a standing mathematical hypothesis)
  Falsification        -> 3  (an exact identity that must always hold failed)
"""


class DomainError(ValueError):
    """Input outside an operation's stated domain."""


class HypothesisViolation(DomainError):
    """Input violates a standing hypothesis (cuspidal model, non-coprime pair, ...)."""


class Falsification(RuntimeError):
    """An internal exact identity failed.  Must never occur on valid builds."""
