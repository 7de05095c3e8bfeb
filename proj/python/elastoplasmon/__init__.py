"""Quasi-static elastic plasmon resonances on spheres and shells."""

from ._elastoplasmon import *  # noqa: F401,F403
from ._elastoplasmon import __version__  # noqa: F401
