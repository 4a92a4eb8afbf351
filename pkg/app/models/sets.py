from bisect import bisect_left
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Tuple, Union

Number = Union[int, Fraction]


class FiniteSet:
    """
    Conjunto finito de racionais: sequência estritamente crescente,
    sem repetições, imutável após a construção.
    """

    __slots__ = ("_elements",)

    def __init__(self, elements: Iterable[Number] = ()):
        self._elements: Tuple[Fraction, ...] = tuple(sorted({Fraction(x) for x in elements}))

    @classmethod
    def from_sorted(cls, elements: Iterable[Fraction]) -> "FiniteSet":
        """Constrói a partir de racionais já ordenados e distintos"""
        instance = cls.__new__(cls)
        instance._elements = tuple(elements)
        return instance

    @property
    def elements(self) -> Tuple[Fraction, ...]:
        return self._elements

    @property
    def cardinality(self) -> int:
        return len(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._elements)

    def __getitem__(self, index: int) -> Fraction:
        return self._elements[index]

    def __contains__(self, value: object) -> bool:
        try:
            value = Fraction(value)
        except (TypeError, ValueError):
            return False
        i = bisect_left(self._elements, value)
        return i < len(self._elements) and self._elements[i] == value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FiniteSet):
            return self._elements == other._elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        inner = ", ".join(str(x) for x in self._elements[:12])
        if len(self._elements) > 12:
            inner += f", ... (+{len(self._elements) - 12})"
        return f"FiniteSet({{{inner}}})"

    @property
    def contains_zero(self) -> bool:
        return 0 in self

    def is_positive(self) -> bool:
        return bool(self._elements) and self._elements[0] > 0

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._elements)

    def nonzero(self) -> "FiniteSet":
        """A* = A \\ {0}"""
        return FiniteSet.from_sorted(x for x in self._elements if x != 0)

    def union(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self._elements + other._elements)

    def dilate(self, factor: Number) -> "FiniteSet":
        """λA = {λa : a ∈ A}"""
        factor = Fraction(factor)
        return FiniteSet(factor * x for x in self._elements)


class RepFunction:
    """Função de representação: valor -> número de pares ordenados"""

    __slots__ = ("_entries", "_total", "mode")

    def __init__(self, entries: Mapping[Fraction, int], mode: str):
        self._entries = MappingProxyType(dict(entries))
        self._total = sum(self._entries.values())
        self.mode = mode

    @property
    def entries(self) -> Mapping[Fraction, int]:
        return self._entries

    @property
    def total(self) -> int:
        return self._total

    def __getitem__(self, value: Number) -> int:
        return self._entries.get(Fraction(value), 0)

    def __len__(self) -> int:
        return len(self._entries)

    def energy(self) -> int:
        """Σ r(x)²"""
        return sum(count * count for count in self._entries.values())

    def support(self) -> FiniteSet:
        return FiniteSet.from_sorted(sorted(self._entries))

    def __repr__(self) -> str:
        return f"RepFunction(mode={self.mode!r}, support={len(self._entries)}, total={self._total})"
