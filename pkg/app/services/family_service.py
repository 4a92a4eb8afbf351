"""
Geradores determinísticos das famílias de conjuntos da sondagem
"""
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from app.core.exceptions import ConfigurationException
from app.core.logging import get_logger
from app.models.sets import FiniteSet
from app.models.survey import FamilyKind, FamilySpec

logger = get_logger(__name__)

DEFAULT_SIZES = (4, 8, 12, 16)


def _progression(n: int, start: Fraction, step: Fraction) -> FiniteSet:
    if step == 0:
        raise ConfigurationException("Razão da PA deve ser não nula", details={"step": str(step)})
    return FiniteSet(start + i * step for i in range(n))


def _geometric(n: int, ratio: Fraction) -> FiniteSet:
    if ratio == 0 or abs(ratio) == 1:
        raise ConfigurationException(
            "Razão da PG deve ter módulo diferente de 0 e 1",
            details={"ratio": str(ratio)}
        )
    return FiniteSet(ratio ** i for i in range(1, n + 1))


def _random_subset(n: int, universe: int, seed: int) -> FiniteSet:
    if universe < n:
        raise ConfigurationException(
            f"random_subset exige M ≥ n (M={universe}, n={n})",
            details={"universe": universe, "n": n}
        )
    rng = np.random.default_rng(seed)
    picked = rng.choice(universe, size=n, replace=False) + 1
    return FiniteSet(int(x) for x in picked)


def gen_family(spec: FamilySpec) -> FiniteSet:
    """Conjunto determinístico para (spec, seed)"""
    n = spec.n
    if spec.kind == FamilyKind.INTERVAL:
        result = FiniteSet(range(1, n + 1))
    elif spec.kind == FamilyKind.ARITHMETIC:
        result = _progression(n, spec.start, spec.step)
    elif spec.kind == FamilyKind.GEOMETRIC:
        result = _geometric(n, spec.ratio)
    elif spec.kind == FamilyKind.RANDOM_SUBSET:
        result = _random_subset(n, spec.universe or 10 * n, spec.seed)
    elif spec.kind == FamilyKind.UNION_DILATE:
        if spec.dilation == 0:
            raise ConfigurationException("λ deve ser não nulo")
        base = _progression(n, spec.start, spec.step)
        result = base.union(base.dilate(spec.dilation))
    else:
        raise ConfigurationException(f"Família desconhecida: {spec.kind}")

    logger.debug("Família gerada", extra={"family": spec.descriptor, "size": len(result)})
    return result


def default_families(sizes: Sequence[int] = DEFAULT_SIZES, seed: int = 0) -> List[FamilySpec]:
    """Intervalos, PAs, PGs de razão 2 e 3, subconjuntos aleatórios de [1, 10n] e A₀ ∪ 2A₀"""
    families: List[FamilySpec] = []
    for n in sizes:
        families.extend([
            FamilySpec(kind=FamilyKind.INTERVAL, n=n),
            FamilySpec(kind=FamilyKind.ARITHMETIC, n=n, start=3, step=5),
            FamilySpec(kind=FamilyKind.GEOMETRIC, n=n, ratio=2),
            FamilySpec(kind=FamilyKind.GEOMETRIC, n=n, ratio=3),
            FamilySpec(kind=FamilyKind.RANDOM_SUBSET, n=n, seed=seed + n),
            FamilySpec(kind=FamilyKind.UNION_DILATE, n=n, start=1, step=1, dilation=2),
        ])
    return families
