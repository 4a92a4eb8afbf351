"""
Aritmética de conjuntos finitos, funções de representação e energias exatas.

Conjuntos somados, subtraídos, multiplicados ou divididos seguem a
quantificação independente: X ∘ Y = {x ∘ y : x ∈ X, y ∈ Y}. Em conjuntos
razão divisores nulos são ignorados, nunca sinalizados.
"""
from collections import Counter
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union
import math
import operator

import numpy as np

from app.core.config import settings
from app.core.exceptions import CapacityException, DomainException, ValidationException
from app.core.logging import get_logger
from app.models.sets import FiniteSet, RepFunction
from app.services.arith_service import format_rational, parse_rational

logger = get_logger(__name__)

SetOperation = Callable[[Fraction, Fraction], Fraction]

REP_MODES = ("sum", "difference", "product", "ratio")
ENERGY_MODES = ("sum", "product")


# Pares por bloco no caminho inteiro vetorizado
_BLOCK_PAIRS = 1 << 21
# |v| < 2⁶² mantém somas, diferenças e trocas de sinal dentro de int64
_INT64_SAFE = 1 << 62
# Fatores < 2³¹ mantêm produtos dentro de int64
_INT64_FACTOR = 1 << 31


def _capacity_error(name: str, budget: int, A: FiniteSet, B: FiniteSet) -> CapacityException:
    return CapacityException(
        f"Conjunto derivado {name} excede o orçamento de {budget} elementos",
        limit=budget,
        details={"operation": name, "left": len(A), "right": len(B)}
    )


def _combine(
    A: FiniteSet,
    B: FiniteSet,
    op: SetOperation,
    name: str,
    budget: int,
    skip_zero_divisor: bool = False
) -> FiniteSet:
    divisors = [b for b in B if b != 0] if skip_zero_divisor else list(B)
    out = set()
    for a in A:
        out.update(op(a, b) for b in divisors)
        if len(out) > budget:
            raise _capacity_error(name, budget, A, B)
    return FiniteSet.from_sorted(sorted(out))


def _scaled_integers(A: FiniteSet) -> Tuple[List[int], int, int]:
    """
    Escreve A = {g·v/L : v} com L o mmc dos denominadores e g o mdc dos
    numeradores resultantes (g = 1 se todos forem nulos).
    """
    L = math.lcm(*(x.denominator for x in A))
    scaled = [x.numerator * (L // x.denominator) for x in A]
    g = math.gcd(*scaled) or 1
    return [v // g for v in scaled], g, L


def _int64(values: Sequence[int], bound: int) -> Optional[np.ndarray]:
    if max(map(abs, values)) >= bound:
        return None
    return np.array(values, dtype=np.int64)


def _row_starts(left: np.ndarray, right: np.ndarray) -> Iterator[slice]:
    rows = max(1, _BLOCK_PAIRS // len(right))
    for start in range(0, len(left), rows):
        yield slice(start, start + rows)


def _integer_values(
    A: FiniteSet,
    B: FiniteSet,
    ufunc: np.ufunc,
    name: str,
    budget: int
) -> Optional[FiniteSet]:
    """A+B, A−B ou AB por broadcasting sobre numeradores inteiros"""
    if not settings.USE_NUMPY or not len(A) or not len(B):
        return None
    a, ga, la = _scaled_integers(A)
    b, gb, lb = _scaled_integers(B)
    if ufunc is np.multiply:
        numerator, denominator, bound = ga * gb, la * lb, min(settings.NUMPY_INT_LIMIT, _INT64_FACTOR)
    else:
        # soma exige denominador e fator comuns
        denominator = math.lcm(la, lb)
        numerator = math.gcd(ga * (denominator // la), gb * (denominator // lb))
        a = [v * ga * (denominator // la) // numerator for v in a]
        b = [v * gb * (denominator // lb) // numerator for v in b]
        bound = _INT64_SAFE
    left, right = _int64(a, bound), _int64(b, bound)
    if left is None or right is None:
        return None

    acc = np.empty(0, dtype=np.int64)
    for rows in _row_starts(left, right):
        acc = np.union1d(acc, ufunc(left[rows, None], right[None, :]))
        if len(acc) > budget:
            raise _capacity_error(name, budget, A, B)
    return FiniteSet.from_sorted(Fraction(v * numerator, denominator) for v in acc.tolist())


def _unique_pairs(p: np.ndarray, q: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((q, p))
    p, q = p[order], q[order]
    keep = np.ones(len(p), dtype=bool)
    keep[1:] = (p[1:] != p[:-1]) | (q[1:] != q[:-1])
    return p[keep], q[keep]


def _integer_quotients(
    A: FiniteSet,
    B: FiniteSet,
    name: str,
    budget: int
) -> Optional[Tuple[np.ndarray, np.ndarray, Fraction]]:
    """
    A/B como pares (p, q) distintos, com mdc(p, q) = 1 e q > 0, e uma escala
    positiva c tal que A/B = {c·p/q}. None quando o caminho não se aplica.
    """
    divisors = B.nonzero()
    if not settings.USE_NUMPY or not len(A) or not len(divisors):
        return None
    a, ga, la = _scaled_integers(A)
    b, gb, lb = _scaled_integers(divisors)
    left, right = _int64(a, _INT64_SAFE), _int64(b, _INT64_SAFE)
    if left is None or right is None:
        return None

    P = Q = np.empty(0, dtype=np.int64)
    for rows in _row_starts(left, right):
        num, den = left[rows, None], right[None, :]
        g = np.gcd(num, den)
        p, q = (num // g).ravel(), (den // g).ravel()
        sign = np.where(q < 0, -1, 1)
        P, Q = _unique_pairs(np.concatenate([P, p * sign]), np.concatenate([Q, q * sign]))
        if len(P) > budget:
            raise _capacity_error(name, budget, A, B)
    return P, Q, Fraction(ga * lb, gb * la)


def _quotients_to_set(P: np.ndarray, Q: np.ndarray, scale: Fraction) -> FiniteSet:
    # ordem aproximada em float64; o sort exato final é quase linear
    order = np.argsort(P / Q, kind="stable")
    values = [Fraction(p, q) for p, q in zip(P[order].tolist(), Q[order].tolist())]
    values.sort()
    if scale != 1:
        values = [scale * v for v in values]
    return FiniteSet.from_sorted(values)


def sumset(A: FiniteSet, B: FiniteSet, budget: Optional[int] = None) -> FiniteSet:
    """A + B"""
    budget = budget or settings.MEM_BUDGET
    fast = _integer_values(A, B, np.add, "A+B", budget)
    return fast if fast is not None else _combine(A, B, operator.add, "A+B", budget)


def diffset(A: FiniteSet, B: FiniteSet, budget: Optional[int] = None) -> FiniteSet:
    """A - B"""
    budget = budget or settings.MEM_BUDGET
    fast = _integer_values(A, B, np.subtract, "A-B", budget)
    return fast if fast is not None else _combine(A, B, operator.sub, "A-B", budget)


def productset(A: FiniteSet, B: FiniteSet, budget: Optional[int] = None) -> FiniteSet:
    """AB"""
    budget = budget or settings.MEM_BUDGET
    fast = _integer_values(A, B, np.multiply, "AB", budget)
    return fast if fast is not None else _combine(A, B, operator.mul, "AB", budget)


def ratioset(A: FiniteSet, B: FiniteSet, budget: Optional[int] = None) -> FiniteSet:
    """A/B com b ≠ 0; ratioset(A, {0}) é vazio"""
    budget = budget or settings.MEM_BUDGET
    quotients = _integer_quotients(A, B, "A/B", budget)
    if quotients is not None:
        return _quotients_to_set(*quotients)
    return _combine(A, B, operator.truediv, "A/B", budget, skip_zero_divisor=True)


def ratioset_size(A: FiniteSet, B: FiniteSet, budget: Optional[int] = None) -> int:
    """|A/B| sem materializar os racionais quando o caminho inteiro se aplica"""
    budget = budget or settings.MEM_BUDGET
    quotients = _integer_quotients(A, B, "A/B", budget)
    if quotients is not None:
        return len(quotients[0])
    return len(_combine(A, B, operator.truediv, "A/B", budget, skip_zero_divisor=True))


_PAIR_OPS: Dict[str, SetOperation] = {
    "sum": operator.add,
    "difference": operator.sub,
    "product": operator.mul,
    "ratio": operator.truediv,
}


def rep_function(A: FiniteSet, mode: str = "product", B: Optional[FiniteSet] = None) -> RepFunction:
    """
    Conta pares ordenados (a, b) ∈ A × B por valor de a∘b.

    Com B omitido usa B = A, e o total é |A|². No modo razão os pares com
    b = 0 são descartados.
    """
    if mode not in _PAIR_OPS:
        raise DomainException(f"Modo inválido: {mode!r}", details={"modes": list(REP_MODES)})
    op = _PAIR_OPS[mode]
    right = A if B is None else B
    if mode == "ratio":
        right = right.nonzero()
    counts: Counter = Counter()
    for a in A:
        counts.update(op(a, b) for b in right)
    return RepFunction(counts, mode)


def _numpy_eligible(A: FiniteSet) -> bool:
    if not settings.USE_NUMPY or not A.is_integral() or len(A) == 0:
        return False
    if len(A) * len(A) > settings.MEM_BUDGET:
        return False
    limit = settings.NUMPY_INT_LIMIT
    return -limit < A[0] and A[-1] < limit


def _integer_energy(A: FiniteSet, mode: str) -> int:
    """Σ r² vetorizado para conjuntos de inteiros pequenos"""
    values = np.fromiter((int(x) for x in A), dtype=np.int64, count=len(A))
    table = np.add.outer(values, values) if mode == "sum" else np.multiply.outer(values, values)
    _, counts = np.unique(table.ravel(), return_counts=True)
    return int(np.dot(counts, counts))


def _energy(A: FiniteSet, mode: str) -> int:
    if _numpy_eligible(A):
        return _integer_energy(A, mode)
    return rep_function(A, mode).energy()


def mult_energy(A: FiniteSet) -> int:
    """E*(A): quádruplas (a, b, c, d) ∈ A⁴ com ab = cd, como Σ r_produto(x)²"""
    return _energy(A, "product")


def add_energy(A: FiniteSet) -> int:
    """E⁺(A): quádruplas com a + b = c + d, como Σ r_soma(x)²"""
    return _energy(A, "sum")


def energy_bruteforce(A: FiniteSet, mode: str = "product", limit: Optional[int] = None) -> int:
    """Oráculo O(n⁴): enumeração literal das quádruplas"""
    if mode not in ENERGY_MODES:
        raise DomainException(f"Modo inválido: {mode!r}", details={"modes": list(ENERGY_MODES)})
    limit = limit or settings.BRUTEFORCE_LIMIT
    if len(A) > limit:
        raise CapacityException(
            f"Força bruta limitada a |A| ≤ {limit}, recebido {len(A)}",
            limit=limit
        )
    op = _PAIR_OPS[mode]
    return sum(1 for a, b, c, d in product(A, repeat=4) if op(a, b) == op(c, d))


def is_sidon(A: FiniteSet) -> bool:
    """Apenas soluções triviais de a + b = c + d: E⁺(A) = 2|A|² − |A|"""
    n = len(A)
    return add_energy(A) == 2 * n * n - n


def energy_trivial_bounds(A: FiniteSet) -> Tuple[int, int]:
    """|A|² ≤ E*(A) ≤ |A|³ + 4|A|² (diagonal e nota sobre o zero)"""
    n = len(A)
    return n * n, n ** 3 + 4 * n * n


def parse_set_text(text: str, source: str = "<texto>") -> Tuple[FiniteSet, int]:
    """
    Lê o formato de arquivo de conjuntos: um racional por linha, '#' inicia
    comentário, linhas em branco ignoradas. Retorna o conjunto e o número
    de duplicatas descartadas.
    """
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(parse_rational(line))
        except ValidationException as e:
            raise ValidationException(
                f"{source}:{lineno}: {e.message}",
                field="set",
                details={"source": source, "line": lineno}
            )
    result = FiniteSet(values)
    duplicates = len(values) - len(result)
    if duplicates:
        logger.warning(
            "Elementos duplicados descartados",
            extra={"source": source, "duplicates": duplicates}
        )
    return result, duplicates


def load_set_file(path: Union[str, Path]) -> FiniteSet:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationException(f"Não foi possível ler {path}: {e}", field="set")
    result, _ = parse_set_text(text, source=str(path))
    logger.info("Conjunto carregado", extra={"path": str(path), "size": len(result)})
    return result


def format_set(A: FiniteSet, header: Optional[str] = None) -> str:
    """Serializa no formato de arquivo de conjuntos"""
    lines = [f"# {header}"] if header else []
    lines.extend(format_rational(x) for x in A)
    return "\n".join(lines) + "\n"


def set_from_values(values: Iterable[Union[str, int, Fraction]]) -> FiniteSet:
    return FiniteSet(parse_rational(v) for v in values)
