from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from app.models.common import RationalField
from app.models.sets import FiniteSet


class GroupSpec(BaseModel):
    """Subgrupo multiplicativo de ℚ* gerado por `generators`, com −1 implícito"""
    generators: List[RationalField] = Field(..., description="Geradores não nulos")

    @field_validator('generators')
    @classmethod
    def validate_nonzero(cls, v):
        if any(g == 0 for g in v):
            raise ValueError('Geradores devem ser não nulos')
        return v

    @property
    def rank(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class ExponentLattice:
    """
    Base de primos e matriz de expoentes (linhas = primos, colunas =
    geradores). `echelon` guarda uma base escalonada do reticulado das
    colunas, indexada pela coluna de pivô.
    """
    primes: Tuple[int, ...]
    matrix: Tuple[Tuple[int, ...], ...]
    echelon: Dict[int, Tuple[int, ...]] = field(compare=False, repr=False)

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    @property
    def rank(self) -> int:
        return len(self.echelon)


@dataclass(frozen=True)
class DiffGraph:
    """Grafo não orientado sobre A com aresta {a₁, a₂} sse a₁ − a₂ ∈ Γ"""
    vertices: FiniteSet
    adjacency: Tuple[FrozenSet[int], ...]

    @classmethod
    def from_edges(cls, vertices: FiniteSet, edges: Iterable[Tuple[Fraction, Fraction]]) -> "DiffGraph":
        """Grafo com arestas explícitas dadas por pares de valores de vértices"""
        index = {v: i for i, v in enumerate(vertices)}
        neighbours: List[set] = [set() for _ in vertices]
        for a, b in edges:
            i, j = index[Fraction(a)], index[Fraction(b)]
            if i != j:
                neighbours[i].add(j)
                neighbours[j].add(i)
        return cls(vertices=vertices, adjacency=tuple(frozenset(s) for s in neighbours))

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adjacency) // 2

    @property
    def ordered_pair_count(self) -> int:
        return 2 * self.edge_count

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def min_degree(self) -> int:
        return min((len(s) for s in self.adjacency), default=0)

    def degree_histogram(self) -> Dict[int, int]:
        histogram: Dict[int, int] = {}
        for s in self.adjacency:
            histogram[len(s)] = histogram.get(len(s), 0) + 1
        return dict(sorted(histogram.items()))

    def edges(self) -> List[Tuple[Fraction, Fraction]]:
        return [
            (self.vertices[i], self.vertices[j])
            for i, s in enumerate(self.adjacency)
            for j in sorted(s)
            if i < j
        ]


class PathCount(BaseModel):
    """Caminhos não degenerados de k arestas a partir de um vértice"""
    source: RationalField
    k: int
    total: int
    per_endpoint: Dict[str, int] = Field(default_factory=dict)
    lower_bound: Optional[int] = Field(None, description="∏(δ − 2ˡ + 1) para o grau mínimo δ")
    best_endpoint: Optional[RationalField] = None


class EpsilonParams(BaseModel):
    """k = ⌈2/ε⌉ e c(ε) = 1/(5·k⁵·ln(8k))"""
    epsilon: RationalField
    k: int
    c: float


class SUnitReport(BaseModel):
    """Relatório do subcomando sunit"""
    size: int
    generators: List[RationalField]
    rank: int
    prime_basis: List[int]
    ordered_pairs: int
    edges: int
    degree_histogram: Dict[int, int]
    pruned_threshold: Optional[int] = None
    pruned_vertices: Optional[int] = None
    pruned_edges: Optional[int] = None
    removed_edges: Optional[int] = None
    min_degree: int
    paths: Optional[PathCount] = None
