"""
Verificações exatas das desigualdades e construções do problema soma-produto.

Apenas desigualdades com constante explícita são asserções (Ungar, Balog,
Cauchy-Schwarz, a contagem (n/3)⁵). Afirmações assintóticas com constantes
não especificadas são medidas e reportadas por `structural_probe`.
"""
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import math
import time

from app.core.exceptions import CapacityException, DomainException, PreconditionException, RangeException
from app.core.logging import get_logger
from app.models.checks import CheckResult, GpEnergyReport, ProbeRecord
from app.models.sets import FiniteSet
from app.services import expression_service, set_service
from app.services.arith_service import format_rational

logger = get_logger(__name__)

Octuple = Tuple[int, int, int, int, int, int, int, int]

# Expressões medidas pela sonda estrutural
PROBE_EXPRESSIONS: Dict[str, str] = {
    "card_sumset": "A+A",
    "card_diffset": "A-A",
    "card_ratio_of_sumsets": "(A+A)/(A+A)",
    "card_ratio_of_diffsets": "(A-A)/(A-A)",
    "card_prod_of_diffsets": "(A-A)(A-A)",
    "card_prod_of_sumsets": "(A+A)(A+A)",
    "card_sumset_times_3a": "(A+A)(A+A+A)",
    "card_quad_sumset": "A+A+A+A",
    "card_a_times_4a": "A(A+A+A+A)",
}

# GP pequenos o bastante para a contagem literal de octuplas
OCTUPLE_COUNT_LIMIT = 6


def _describe(A: FiniteSet) -> Dict[str, object]:
    return {"set": [format_rational(x) for x in A]}


def check_ungar(A: FiniteSet, budget: Optional[int] = None) -> CheckResult:
    """|(A−A)/(A−A)| ≥ |A|² − 2 para |A| ≥ 2"""
    n = len(A)
    if n < 2:
        raise PreconditionException("Ungar exige |A| ≥ 2", details={"size": n})
    diffs = set_service.diffset(A, A, budget=budget)
    card = set_service.ratioset_size(diffs, diffs, budget=budget)
    return CheckResult.compare("ungar", card, n * n - 2, witness=_describe(A), size=n)


def check_balog(A: FiniteSet, budget: Optional[int] = None) -> CheckResult:
    """|(A+A)/(A+A)| ≥ 2|A|² − 1 para A de racionais positivos"""
    n = len(A)
    if n < 1:
        raise PreconditionException("Balog exige |A| ≥ 1", details={"size": n})
    if not A.is_positive():
        raise PreconditionException(
            "Balog exige elementos estritamente positivos",
            details={"min": format_rational(A[0])}
        )
    quotient = expression_service.evaluate_text("(A+A)/(A+A)", {"A": A}, budget)
    return CheckResult.compare("balog", len(quotient), 2 * n * n - 1, witness=_describe(A), size=n)


def check_cauchy_schwarz(B: FiniteSet, mode: str = "ratio", budget: Optional[int] = None) -> CheckResult:
    """E*(B)·|B/B| ≥ |B|⁴ (modo razão) ou E*(B)·|BB| ≥ |B|⁴ (modo produto)"""
    n = len(B)
    if n < 1:
        raise PreconditionException("Cauchy-Schwarz exige |B| ≥ 1")
    if mode == "ratio":
        if B.contains_zero:
            raise PreconditionException("Modo razão exige 0 ∉ B")
        derived = set_service.ratioset(B, B, budget=budget)
    elif mode == "product":
        derived = set_service.productset(B, B, budget=budget)
    else:
        raise DomainException(f"Modo inválido: {mode!r}", details={"modes": ["ratio", "product"]})
    energy = set_service.mult_energy(B)
    return CheckResult.compare(
        f"cauchy_schwarz_{mode}",
        energy * len(derived),
        n ** 4,
        witness=_describe(B),
        energy=energy,
        derived_size=len(derived)
    )


def check_energy_upper_bound(A: FiniteSet) -> CheckResult:
    """E*(A) ≤ |A|³ + 4|A|², escrito como (|A|³ + 4|A|²) ≥ E*(A)"""
    lower, upper = set_service.energy_trivial_bounds(A)
    energy = set_service.mult_energy(A)
    return CheckResult.compare(
        "energy_trivial_bounds",
        upper,
        energy,
        witness=_describe(A),
        holds=lower <= energy <= upper,
        energy=energy,
        lower=lower
    )


def gp_set(n: int) -> FiniteSet:
    """{2¹, ..., 2ⁿ}"""
    if n < 1:
        raise PreconditionException("gp_set exige n ≥ 1", details={"n": n})
    return FiniteSet.from_sorted(Fraction(2 ** i) for i in range(1, n + 1))


def _middle_third(n: int) -> range:
    return range(n // 3, 2 * n // 3)


def octuple_from_quintuple(quintuple: Sequence[int], n: int) -> Octuple:
    """
    (n₁, ..., n₅) do terço central -> (n₁, n₂, n₃, n₄, n₅, n₂+n₅−n₁, n₁+n₃−n₅, n₁+n₄−n₅),
    que satisfaz n₁+n₃ = n₅+n₇, n₁+n₄ = n₅+n₈, n₂+n₃ = n₆+n₇, n₂+n₄ = n₆+n₈.
    """
    if n <= 0 or n % 3:
        raise RangeException("n deve ser múltiplo positivo de 3", details={"n": n})
    if len(quintuple) != 5:
        raise RangeException("São necessários exatamente cinco índices", details={"given": len(quintuple)})
    middle = _middle_third(n)
    outside = [x for x in quintuple if x not in middle]
    if outside:
        raise RangeException(
            f"Índices fora do terço central [{middle.start}, {middle.stop - 1}]",
            details={"outside": outside, "n": n}
        )
    n1, n2, n3, n4, n5 = quintuple
    octuple = (n1, n2, n3, n4, n5, n2 + n5 - n1, n1 + n3 - n5, n1 + n4 - n5)
    n6, n7, n8 = octuple[5:]
    equations = (n1 + n3 == n5 + n7, n1 + n4 == n5 + n8, n2 + n3 == n6 + n7, n2 + n4 == n6 + n8)
    if not all(equations) or not all(1 <= x <= n for x in octuple):
        raise DomainException(
            "Octupla não satisfaz as equações de índices",
            details={"quintuple": list(quintuple), "octuple": list(octuple), "n": n}
        )
    return octuple


def trivial_octuples(n: int) -> Iterator[Octuple]:
    """As (n/3)⁵ octuplas geradas por todas as quíntuplas do terço central"""
    middle = _middle_third(n)
    for quintuple in product(middle, repeat=5):
        yield octuple_from_quintuple(quintuple, n)


def satisfies_product_identity(octuple: Octuple) -> bool:
    """(2^n₁+2^n₂)(2^n₃+2^n₄) = (2^n₅+2^n₆)(2^n₇+2^n₈)"""
    n1, n2, n3, n4, n5, n6, n7, n8 = octuple
    return (2 ** n1 + 2 ** n2) * (2 ** n3 + 2 ** n4) == (2 ** n5 + 2 ** n6) * (2 ** n7 + 2 ** n8)


def count_octuple_solutions(n: int) -> int:
    """
    Contagem literal das octuplas com n₁≤n₂, n₃≤n₄, n₅≤n₆, n₇≤n₈ em [n]⁸ que
    satisfazem a identidade expandida de quatro potências. Como {2, ..., 2ⁿ}
    é Sidon, cada soma tem um único par não ordenado e a contagem coincide
    com E*(A+A).
    """
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    expanded: Dict[Tuple[int, int, int, int], int] = {}
    for (n1, n2), (n3, n4) in product(pairs, repeat=2):
        expanded[(n1, n2, n3, n4)] = 2 ** (n1 + n3) + 2 ** (n1 + n4) + 2 ** (n2 + n3) + 2 ** (n2 + n4)
    values = list(expanded.values())
    return sum(1 for left in values for right in values if left == right)


def check_gp_energy(n: int, budget: Optional[int] = None) -> GpEnergyReport:
    """E*(A+A) ≥ (n/3)⁵ para A = {2, ..., 2ⁿ}, com hipótese de Sidon e octuplas"""
    if n <= 0 or n % 3:
        raise PreconditionException("check_gp_energy exige n múltiplo positivo de 3", details={"n": n})
    started = time.perf_counter()
    A = gp_set(n)
    sums = set_service.sumset(A, A, budget=budget)
    energy = set_service.mult_energy(sums)
    rhs = (n // 3) ** 5
    sidon = set_service.is_sidon(A)

    octuples = set(trivial_octuples(n))
    identity_ok = all(satisfies_product_identity(o) for o in octuples)
    solutions = count_octuple_solutions(n) if n <= OCTUPLE_COUNT_LIMIT else None

    holds = energy >= rhs and sidon and identity_ok and len(octuples) == rhs
    if solutions is not None:
        holds = holds and solutions == energy
    check = CheckResult.compare(
        "gp_energy",
        energy,
        rhs,
        witness={"n": n, "sidon": sidon, "octuples": len(octuples), "octuple_solutions": solutions},
        holds=holds,
        n=n
    )
    logger.info(
        "Construção GP verificada",
        extra={
            "n": n,
            "energy": energy,
            "rhs": rhs,
            "holds": holds,
            "elapsed_ms": int((time.perf_counter() - started) * 1000)
        }
    )
    return GpEnergyReport(
        n=n,
        check=check,
        sidon=sidon,
        card_sumset=len(sums),
        trivial_octuples=len(octuples),
        octuples_satisfy_identity=identity_ok,
        octuple_solutions=solutions,
        energy_over_n5=Fraction(energy, n ** 5)
    )


def structural_probe(A: FiniteSet, descriptor: str = "", budget: Optional[int] = None) -> ProbeRecord:
    """
    Mede todas as quantidades do ProbeRecord; nenhuma asserção. Uma
    quantidade que excede o orçamento fica None e não interrompe as demais.
    """
    n = len(A)
    if n < 1:
        raise PreconditionException("A sonda estrutural exige A não vazio", details={"size": n})
    evaluator = expression_service.ExpressionEvaluator({"A": A}, budget)
    capacity: List[str] = []

    def measure(src: str) -> Optional[FiniteSet]:
        try:
            return evaluator.evaluate(expression_service.parse(src))
        except CapacityException as e:
            overflow = e.details.get("expression", src)
            if overflow not in capacity:
                capacity.append(overflow)
            return None

    cards = {}
    for key, src in PROBE_EXPRESSIONS.items():
        derived = measure(src)
        cards[key] = None if derived is None else len(derived)
    sums, diffs = measure("A+A"), measure("A-A")
    energy_sums = None if sums is None else set_service.mult_energy(sums)
    energy_diffs = None if diffs is None else set_service.mult_energy(diffs)

    def over(value: Optional[int], denominator: int) -> Optional[Fraction]:
        return None if value is None else Fraction(value, denominator)

    if capacity:
        logger.warning(
            "Sonda estrutural parcial",
            extra={"descriptor": descriptor, "size": n, "capacity": capacity}
        )
    return ProbeRecord(
        descriptor=descriptor or f"custom(n={n})",
        size=n,
        energy_mult_sumset=energy_sums,
        energy_mult_diffset=energy_diffs,
        doubling=over(cards["card_sumset"], n),
        ratio_of_sumsets_over_n2=over(cards["card_ratio_of_sumsets"], n * n),
        a_times_4a_over_n2=over(cards["card_a_times_4a"], n * n),
        energy_sumset_over_n5=over(energy_sums, n ** 5),
        sumset_over_n_three_halves=None if sums is None else len(sums) / math.pow(n, 1.5),
        capacity=capacity,
        **cards
    )
