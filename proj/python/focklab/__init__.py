"""Weighted Fock space numerics: ladder operators, Berezin transforms,
Bergman and Szego kernels, verified against quadrature oracles."""

from focklab._focklab import *  # noqa: F401,F403
from focklab._focklab import __version__  # noqa: F401
