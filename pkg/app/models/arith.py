from dataclasses import dataclass
from typing import Dict, Tuple
import math


@dataclass(frozen=True)
class Factorization:
    """Fatoração prima: pares (primo, expoente) com primos crescentes"""
    factors: Tuple[Tuple[int, int], ...] = ()

    def value(self) -> int:
        """Recompõe o inteiro fatorado"""
        return math.prod(p ** e for p, e in self.factors)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
