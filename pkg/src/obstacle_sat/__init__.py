"""Obstacle-number lower bounds by SAT, with an exact drawing verifier."""

__version__ = "0.1.0"
