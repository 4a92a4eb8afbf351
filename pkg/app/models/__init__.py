from .arith import Factorization
from .sets import FiniteSet, RepFunction

__all__ = ["Factorization", "FiniteSet", "RepFunction"]
