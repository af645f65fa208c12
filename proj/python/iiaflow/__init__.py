"""SU(3)-structure torsion analysis and the source-free Type IIA flow on
six-dimensional Lie algebras."""

from ._core import *  # noqa: F401,F403
from ._core import catalog  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
