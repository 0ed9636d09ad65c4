"""Order-theoretic decision-making toolkit: majorization, preorder
representations, maximum entropy, fluctuation theorems, and desk-scale
domain theory."""

from _ordlab import *  # noqa: F401,F403
from _ordlab import __version__  # noqa: F401
