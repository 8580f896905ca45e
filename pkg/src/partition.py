"""Quadratize n-variable functions one 4-variable group at a time."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

from src.baselines import rosenberg, termwise
from src.errors import DegreeExceededError
from src.polynomial import DEFAULT_TOLERANCE, Monomial, Polynomial, degree_split
from src.quad4 import Quadratization, quadratize_4var
from src.schema import thread_limit

Method = Literal["theorem1", "rosenberg", "termwise"]
MAX_GROUP_SIZE = 4


@dataclass
class TermGroup:
    """Super-quadratic terms sharing one support of at most 4 variables."""

    support: tuple[int, ...]
    part: Polynomial


def group_terms(p: Polynomial, max_degree: int = 4) -> tuple[list[TermGroup], Polynomial]:
    """Greedy cover of the degree >= 3 terms by supports of at most 4 variables.

    The highest-degree uncovered term (ties by support) seeds a group; every
    later uncovered term that keeps the support within 4 variables joins it.

    Returns:
        (groups, residual) where residual is the degree <= 2 part of p

    Raises:
        DegreeExceededError: If p has degree above ``max_degree``
    """
    if p.degree > max_degree:
        raise DegreeExceededError(f"degree {p.degree} exceeds {max_degree}")
    residual, high = degree_split(p)
    pending: list[tuple[Monomial, float]] = sorted(
        high.items(), key=lambda item: (-len(item[0]), item[0])
    )

    groups: list[TermGroup] = []
    while pending:
        (seed, seed_coeff), *rest = pending
        support = set(seed)
        members = {seed: seed_coeff}
        pending = []
        for mon, coeff in rest:
            if len(support | set(mon)) <= MAX_GROUP_SIZE:
                support |= set(mon)
                members[mon] = coeff
            else:
                pending.append((mon, coeff))
        groups.append(TermGroup(tuple(sorted(support)), Polynomial(members, epsilon=p.epsilon)))
    return groups, residual


def quadratize_n(
    p: Polynomial,
    method: Method = "theorem1",
    tol: float = DEFAULT_TOLERANCE,
    threads: int | None = None,
) -> Quadratization:
    """Quadratize a degree <= 4 function.

    With ``theorem1`` each group gets one fresh auxiliary, numbered after the
    largest original variable in group order; the result is the residual plus
    the sum of the group gadgets.
    """
    if method == "rosenberg":
        return rosenberg(p, tol=tol)
    if method == "termwise":
        return termwise(p, tol=tol)
    if method != "theorem1":
        raise ValueError(f"unknown method: {method}")

    groups, residual = group_terms(p)
    first_aux = max(p.variables, default=-1) + 1
    jobs = [(g.part, first_aux + k) for k, g in enumerate(groups)]
    workers = threads if threads is not None else thread_limit()

    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: quadratize_4var(*job, tol=tol), jobs))
    else:
        results = [quadratize_4var(part, aux, tol=tol) for part, aux in jobs]

    quadratic = residual
    aux_vars: list[int] = []
    provenance = []
    for result in results:
        quadratic = quadratic + result.quadratic
        aux_vars.extend(result.aux_vars)
        provenance.extend(result.provenance)
    return Quadratization(quadratic, aux_vars, provenance, tol)
