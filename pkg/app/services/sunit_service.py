"""
Pares de A com diferença num subgrupo finitamente gerado Γ de ℚ*.

Γ = ⟨α₁, ..., α_r⟩ ⊂ ℚ* com −1 ∈ Γ. Como a torção de ℚ* é {±1}, a
pertinência de |x| em Γ reduz-se à pertinência do vetor de expoentes
primos de |x| no reticulado inteiro gerado pelas colunas da matriz de
expoentes dos geradores.
"""
from collections import deque
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple
import math
import time

from app.core.config import settings
from app.core.exceptions import CapacityException, DomainException, PreconditionException
from app.core.logging import get_logger
from app.models.sets import FiniteSet
from app.models.sunit import DiffGraph, ExponentLattice, GroupSpec, PathCount, EpsilonParams, SUnitReport
from app.services.arith_service import factorize, format_rational

logger = get_logger(__name__)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """x, y, g com x·a + y·b = g"""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def _insert_vector(echelon: Dict[int, List[int]], vector: Sequence[int]) -> None:
    """
    Acrescenta `vector` ao reticulado mantendo uma base escalonada (forma de
    Hermite por linhas, sem redução acima do pivô). Transformações 2×2
    unimodulares preservam o reticulado gerado.
    """
    vec = list(vector)
    for j in range(len(vec)):
        if vec[j] == 0:
            continue
        row = echelon.get(j)
        if row is None:
            echelon[j] = vec
            return
        a, b = row[j], vec[j]
        if b % a == 0:
            q = b // a
            for jj in range(j, len(vec)):
                vec[jj] -= q * row[jj]
        elif a % b == 0:
            row[j:], vec[j:] = vec[j:], row[j:]
            q = a // b
            for jj in range(j, len(vec)):
                vec[jj] -= q * row[jj]
        else:
            x, y, g = _xgcd(a, b)
            ag, mbg = a // g, -b // g
            for jj in range(j, len(vec)):
                aa, bb = row[jj], vec[jj]
                row[jj] = x * aa + y * bb
                vec[jj] = mbg * aa + ag * bb


def _in_lattice(echelon: Dict[int, Tuple[int, ...]], vector: Sequence[int]) -> bool:
    vec = list(vector)
    for j in range(len(vec)):
        if vec[j] == 0:
            continue
        row = echelon.get(j)
        if row is None or vec[j] % row[j]:
            return False
        q = vec[j] // row[j]
        for jj in range(j, len(vec)):
            vec[jj] -= q * row[jj]
    return True


def build_lattice(spec: GroupSpec, bound: Optional[int] = None) -> ExponentLattice:
    """Base de primos dos geradores e matriz de expoentes (linhas = primos)"""
    columns: List[Dict[int, int]] = []
    for g in spec.generators:
        exponents = factorize(abs(g.numerator), bound).as_dict()
        for p, e in factorize(g.denominator, bound).factors:
            exponents[p] = exponents.get(p, 0) - e
        columns.append(exponents)
    primes = tuple(sorted({p for column in columns for p in column}))
    matrix = tuple(tuple(column.get(p, 0) for column in columns) for p in primes)

    echelon: Dict[int, List[int]] = {}
    for column in columns:
        _insert_vector(echelon, [column.get(p, 0) for p in primes])

    logger.debug(
        "Reticulado de expoentes construído",
        extra={"rank": spec.rank, "primes": list(primes), "lattice_rank": len(echelon)}
    )
    return ExponentLattice(
        primes=primes,
        matrix=matrix,
        echelon={j: tuple(row) for j, row in echelon.items()}
    )


def exponent_vector(x: Fraction, lattice: ExponentLattice) -> Optional[Tuple[int, ...]]:
    """Expoentes de |x| sobre a base de primos; None se outro primo aparece"""
    num, den = abs(x.numerator), x.denominator
    exponents = []
    for p in lattice.primes:
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        exponents.append(e)
    if num != 1 or den != 1:
        return None
    return tuple(exponents)


def gamma_member(x: Fraction, lattice: ExponentLattice) -> bool:
    """x ∈ Γ, ignorando o sinal (−1 ∈ Γ)"""
    if x == 0:
        raise DomainException("0 não pertence a nenhum subgrupo de ℚ*")
    vector = exponent_vector(Fraction(x), lattice)
    if vector is None:
        return False
    return _in_lattice(lattice.echelon, vector)


def build_diff_graph(A: FiniteSet, spec: GroupSpec, lattice: Optional[ExponentLattice] = None) -> DiffGraph:
    """Aresta {a₁, a₂} sse a₁ − a₂ ∈ Γ"""
    lattice = lattice or build_lattice(spec)
    n = len(A)
    neighbours: List[set] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if gamma_member(A[j] - A[i], lattice):
                neighbours[i].add(j)
                neighbours[j].add(i)
    graph = DiffGraph(vertices=A, adjacency=tuple(frozenset(s) for s in neighbours))
    logger.info(
        "Grafo de diferenças construído",
        extra={"vertices": n, "edges": graph.edge_count, "rank": spec.rank}
    )
    return graph


def prune_min_degree(graph: DiffGraph, t: int) -> DiffGraph:
    """Remove, um a um, vértices de grau < t até que o grau mínimo seja ≥ t"""
    if t < 0:
        raise PreconditionException("Limiar de poda deve ser ≥ 0", details={"t": t})
    alive = [True] * len(graph.vertices)
    degree = [len(s) for s in graph.adjacency]
    queue = deque(i for i, d in enumerate(degree) if d < t)
    while queue:
        i = queue.popleft()
        if not alive[i]:
            continue
        alive[i] = False
        for j in graph.adjacency[i]:
            if alive[j]:
                degree[j] -= 1
                if degree[j] == t - 1:
                    queue.append(j)

    kept = [i for i, flag in enumerate(alive) if flag]
    reindex = {old: new for new, old in enumerate(kept)}
    adjacency = tuple(
        frozenset(reindex[j] for j in graph.adjacency[i] if alive[j])
        for i in kept
    )
    return DiffGraph(
        vertices=FiniteSet.from_sorted(graph.vertices[i] for i in kept),
        adjacency=adjacency
    )


def _subset_sums(diffs: Sequence[Fraction]) -> List[Fraction]:
    """Somas indexadas por máscara de bits: sums[m] = Σ diffs[i] para i em m"""
    sums = [Fraction(0)]
    for d in diffs:
        sums += [s + d for s in sums]
    return sums


def is_nondegenerate_path(diffs: Sequence[Fraction]) -> bool:
    """Soma total ≠ 0 e nenhum subconjunto próprio não vazio soma zero"""
    if not diffs:
        raise PreconditionException("Sequência de diferenças vazia")
    sums = _subset_sums([Fraction(d) for d in diffs])
    full = len(sums) - 1
    return sums[full] != 0 and all(sums[m] != 0 for m in range(1, full))


def count_nondeg_paths(
    graph: DiffGraph,
    source: Fraction,
    k: int,
    max_k: Optional[int] = None
) -> Tuple[int, Dict[Fraction, int]]:
    """
    Passeios de k arestas a partir de `source` (vértices podem repetir) cuja
    sequência de diferenças xᵢ = vᵢ − vᵢ₊₁ é não degenerada. Estende o
    passeio mantendo as somas de subconjuntos: uma aresta é ruim quando
    anula alguma soma que a contém.
    """
    max_k = max_k or settings.MAX_PATH_LENGTH
    if not 1 <= k <= max_k:
        raise CapacityException(f"k deve estar em [1, {max_k}]", limit=max_k, details={"k": k})
    source = Fraction(source)
    if source not in graph.vertices:
        raise PreconditionException(
            f"Vértice {format_rational(source)} não pertence ao grafo",
            details={"source": format_rational(source)}
        )
    vertices = graph.vertices
    start = vertices.elements.index(source)
    per_endpoint: Dict[int, int] = {}

    def walk(current: int, depth: int, sums: List[Fraction]) -> None:
        if depth == k:
            per_endpoint[current] = per_endpoint.get(current, 0) + 1
            return
        for nxt in graph.adjacency[current]:
            d = vertices[current] - vertices[nxt]
            extended = [s + d for s in sums]
            if any(s == 0 for s in extended):
                continue
            walk(nxt, depth + 1, sums + extended)

    walk(start, 0, [Fraction(0)])
    total = sum(per_endpoint.values())
    return total, {vertices[i]: c for i, c in sorted(per_endpoint.items())}


def pigeonhole_endpoint(per_endpoint: Dict[Fraction, int]) -> Optional[Fraction]:
    """Extremo w com mais caminhos não degenerados (o menor em empate)"""
    if not per_endpoint:
        return None
    return max(sorted(per_endpoint), key=lambda w: per_endpoint[w])


def path_count_lower_bound(delta: int, k: int) -> int:
    """∏_{l=0}^{k−1} max(δ − 2ˡ + 1, 0)"""
    if delta < 0 or k < 1:
        raise PreconditionException("Exige δ ≥ 0 e k ≥ 1", details={"delta": delta, "k": k})
    return math.prod(max(delta - 2 ** l + 1, 0) for l in range(k))


def subspace_bound_exponent(k: int, r: int) -> int:
    """Expoente 4k⁴(k + kr + 1) da cota (8k)^{...}"""
    if k < 1 or r < 0:
        raise PreconditionException("Exige k ≥ 1 e r ≥ 0", details={"k": k, "r": r})
    return 4 * k ** 4 * (k + k * r + 1)


def subspace_bound_digits(k: int, r: int, digit_budget: Optional[int] = None) -> int:
    """
    Número de dígitos decimais de (8k)^{4k⁴(k+kr+1)}.

    A estimativa por log10 só decide longe de uma potência de dez; perto
    dela, e dentro do orçamento de dígitos, a comparação é inteira.
    """
    digit_budget = digit_budget or settings.SUBSPACE_DIGIT_BUDGET
    exponent = subspace_bound_exponent(k, r)
    estimate = exponent * math.log10(8 * k)
    boundary = round(estimate)
    if abs(estimate - boundary) > 1e-6 or boundary > digit_budget:
        return math.floor(estimate) + 1
    return boundary + 1 if (8 * k) ** exponent >= 10 ** boundary else boundary


def subspace_bound(k: int, r: int, digit_budget: Optional[int] = None) -> int:
    """A(k, r) ≤ (8k)^{4k⁴(k + kr + 1)}, valor inteiro exato"""
    digit_budget = digit_budget or settings.SUBSPACE_DIGIT_BUDGET
    digits = subspace_bound_digits(k, r, digit_budget)
    if digits > digit_budget:
        raise CapacityException(
            f"Cota com ~{digits} dígitos excede o orçamento de {digit_budget}",
            limit=digit_budget,
            details={"k": k, "r": r, "digits": digits}
        )
    return (8 * k) ** subspace_bound_exponent(k, r)


def epsilon_params(epsilon: Fraction) -> EpsilonParams:
    """k = ⌈2/ε⌉ exato e c(ε) = 1/(5·k⁵·ln(8k)) em ponto flutuante"""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise DomainException("ε deve estar em (0, 1)", details={"epsilon": format_rational(epsilon)})
    k = math.ceil(2 / epsilon)
    c = 1.0 / (5 * k ** 5 * math.log(8 * k))
    return EpsilonParams(epsilon=epsilon, k=k, c=c)


def log_chain_check(k: int, r: int) -> Dict[str, Any]:
    """
    Lados da cadeia de logaritmos (4k⁵ + 4k⁵r + 4k⁴)·ln(8k) + k·ln 4 < 5k⁵r·ln(8k),
    que vale sempre que r > 16.
    """
    log8k = math.log(8 * k)
    lhs = (4 * k ** 5 + 4 * k ** 5 * r + 4 * k ** 4) * log8k + k * math.log(4)
    rhs = 5 * k ** 5 * r * log8k
    return {"lhs": lhs, "rhs": rhs, "holds": lhs < rhs}


def path_statistics(graph: DiffGraph, source: Fraction, k: int) -> PathCount:
    """Contagem, cota inferior pelo grau mínimo e extremo do pombal"""
    total, per_endpoint = count_nondeg_paths(graph, source, k)
    return PathCount(
        source=source,
        k=k,
        total=total,
        per_endpoint={format_rational(w): c for w, c in per_endpoint.items()},
        lower_bound=path_count_lower_bound(graph.min_degree(), k),
        best_endpoint=pigeonhole_endpoint(per_endpoint)
    )


def sunit_report(
    A: FiniteSet,
    spec: GroupSpec,
    prune: Optional[int] = None,
    source: Optional[Fraction] = None,
    k: Optional[int] = None
) -> SUnitReport:
    """Relatório do subcomando sunit: pares, histograma, poda e caminhos"""
    started = time.perf_counter()
    lattice = build_lattice(spec)
    graph = build_diff_graph(A, spec, lattice)
    working = graph
    pruned: Dict[str, int] = {}
    if prune is not None:
        working = prune_min_degree(graph, prune)
        pruned = {
            "pruned_threshold": prune,
            "pruned_vertices": len(working.vertices),
            "pruned_edges": working.edge_count,
            "removed_edges": graph.edge_count - working.edge_count,
        }
    paths = None
    if k is not None:
        if source is None:
            if not len(working.vertices):
                raise PreconditionException("Grafo vazio: não há vértice de origem")
            source = working.vertices[0]
        paths = path_statistics(working, source, k)

    logger.info(
        "Relatório sunit gerado",
        extra={
            "size": len(A),
            "rank": spec.rank,
            "edges": graph.edge_count,
            "elapsed_ms": int((time.perf_counter() - started) * 1000)
        }
    )
    return SUnitReport(
        size=len(A),
        generators=spec.generators,
        rank=spec.rank,
        prime_basis=list(lattice.primes),
        ordered_pairs=graph.ordered_pair_count,
        edges=graph.edge_count,
        degree_histogram=graph.degree_histogram(),
        min_degree=working.min_degree(),
        paths=paths,
        **pruned
    )
