"""Exact two-phase simplex with Bland's rule.

The primal ``min c.x  s.t.  r_i.x >= b_i, e_j.x = d_j`` (x free) is solved
through its dual in standard form, so the optimal dual weights come straight
out of the basis and the primal point out of the reduced costs. Every result
is checked against its own certificate before it is returned.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from src.RationalMatrix import RatMatrix, Vector, as_vector, dot
from src.exceptions import DimensionMismatchError, DualExtractionError

logger = logging.getLogger(__name__)

OPTIMAL = 'OPTIMAL'
INFEASIBLE = 'INFEASIBLE'
UNBOUNDED = 'UNBOUNDED'

GE = '>='
EQ = '='


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    sense: str = GE
    name: str = ''


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    duals: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None
    names: tuple[str, ...] = field(default_factory=tuple)

    def dual_for(self, name: str) -> Fraction:
        return self.duals[self.names.index(name)]

    def to_dict(self) -> dict:
        result = {'status': self.status}
        if self.value is not None:
            result['value'] = str(self.value)
        if self.x is not None:
            result['x'] = ' '.join(str(v) for v in self.x)
        return result


class LinearProgram:
    """Rows are collected first, then solved for any number of objectives"""

    def __init__(self, n_vars: int):
        self.n_vars = n_vars
        self.constraints: list[Constraint] = []

    def _add(self, coeffs: Sequence, rhs, sense: str, name: str) -> None:
        coeffs = as_vector(coeffs)
        if len(coeffs) != self.n_vars:
            raise DimensionMismatchError(self.n_vars, len(coeffs))
        self.constraints.append(Constraint(coeffs, Fraction(rhs), sense, name or f"row{len(self.constraints)}"))

    def add_ge(self, coeffs: Sequence, rhs, name: str = '') -> None:
        self._add(coeffs, rhs, GE, name)

    def add_eq(self, coeffs: Sequence, rhs, name: str = '') -> None:
        self._add(coeffs, rhs, EQ, name)

    def minimize(self, objective: Sequence) -> LPResult:
        objective = as_vector(objective)
        if len(objective) != self.n_vars:
            raise DimensionMismatchError(self.n_vars, len(objective))
        result = _solve(objective, self.constraints)
        result.names = tuple(c.name for c in self.constraints)
        check_result(objective, self.constraints, result)
        return result


class _Tableau:
    """Standard form G w = rhs, w >= 0, with one artificial column per row"""

    def __init__(self, columns: list[Vector], rhs: list[Fraction]):
        self.m = len(rhs)
        self.n_struct = len(columns)
        # artificials sit at n_struct .. n_struct + m - 1
        self.rows = [[col[r] for col in columns] + [Fraction(int(r == k)) for k in range(self.m)]
                     for r in range(self.m)]
        self.rhs = list(rhs)
        self.basis = [self.n_struct + r for r in range(self.m)]
        self.pivots = 0

    @property
    def width(self) -> int:
        return self.n_struct + self.m

    def reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        costs = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                for j in range(self.width):
                    if row[j]:
                        costs[j] -= cb * row[j]
        return costs

    def objective(self, cost: list[Fraction]) -> Fraction:
        return sum((cost[b] * self.rhs[r] for r, b in enumerate(self.basis)), Fraction(0))

    def pivot(self, r: int, q: int) -> None:
        row = self.rows[r]
        p = row[q]
        self.rows[r] = row = [v / p for v in row]
        self.rhs[r] /= p
        for i in range(self.m):
            f = self.rows[i][q]
            if i != r and f:
                self.rows[i] = [v - f * w if w else v for v, w in zip(self.rows[i], row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = q
        self.pivots += 1
        logger.debug("pivot %d: column %d enters at row %d", self.pivots, q, r)

    def run(self, cost: list[Fraction]) -> int | None:
        """
        Bland's rule on the structural columns

        :return: None at optimality, else the entering column of an unbounded edge
        """
        while True:
            d = self.reduced_costs(cost)
            try:
                q = min(j for j in range(self.n_struct) if d[j] < 0)
            except ValueError:
                return None
            try:
                _, _, r = min((self.rhs[i] / self.rows[i][q], self.basis[i], i)
                              for i in range(self.m) if self.rows[i][q] > 0)
            except ValueError:
                return q
            self.pivot(r, q)

    def drive_out_artificials(self) -> None:
        for r in range(self.m):
            if self.basis[r] < self.n_struct:
                continue
            q = next((j for j in range(self.n_struct) if self.rows[r][j]), None)
            if q is not None:
                self.pivot(r, q)

    def edge_direction(self, q: int) -> list[Fraction]:
        w = [Fraction(0)] * self.width
        w[q] = Fraction(1)
        for r, b in enumerate(self.basis):
            w[b] -= self.rows[r][q]
        return w

    def values(self) -> list[Fraction]:
        w = [Fraction(0)] * self.width
        for r, b in enumerate(self.basis):
            w[b] = self.rhs[r]
        return w


def _dual_columns(constraints: list[Constraint]) -> tuple[list[Vector], list[Fraction], list[tuple[int, int]]]:
    """Columns and costs of the standard-form dual; ``owners`` maps a column to (constraint, sign)"""
    columns, costs, owners = [], [], []
    for index, c in enumerate(constraints):
        columns.append(c.coeffs)
        costs.append(-c.rhs)
        owners.append((index, 1))
        if c.sense == EQ:
            columns.append(tuple(-v for v in c.coeffs))
            costs.append(c.rhs)
            owners.append((index, -1))
    return columns, costs, owners


def _collect(w: list[Fraction], owners: list[tuple[int, int]], count: int) -> tuple[Fraction, ...]:
    y = [Fraction(0)] * count
    for (index, sign), value in zip(owners, w):
        y[index] += sign * value
    return tuple(y)


def _phase_one(columns: list[Vector], objective: Vector) -> tuple[_Tableau, list[int], bool]:
    signs = [-1 if v < 0 else 1 for v in objective]
    normalized = [tuple(s * v for s, v in zip(signs, col)) for col in columns]
    tableau = _Tableau(normalized, [s * v for s, v in zip(signs, objective)])
    cost = [Fraction(0)] * tableau.n_struct + [Fraction(1)] * tableau.m
    tableau.run(cost)
    feasible = tableau.objective(cost) == 0
    return tableau, signs, feasible


def _solve(objective: Vector, constraints: list[Constraint]) -> LPResult:
    n = len(objective)
    columns, costs, owners = _dual_columns(constraints)
    tableau, signs, dual_feasible = _phase_one(columns, objective)
    if not dual_feasible:
        cost = [Fraction(0)] * tableau.n_struct + [Fraction(1)] * tableau.m
        d = tableau.reduced_costs(cost)
        ray = tuple(-s * (1 - d[tableau.n_struct + j]) for j, s in enumerate(signs))
        feasibility = _solve(tuple(Fraction(0) for _ in range(n)), constraints)
        if feasibility.status == INFEASIBLE:
            return LPResult(INFEASIBLE, farkas=feasibility.farkas)
        return LPResult(UNBOUNDED, x=feasibility.x, ray=ray)
    tableau.drive_out_artificials()
    cost = list(costs) + [Fraction(0)] * tableau.m
    q = tableau.run(cost)
    if q is not None:
        direction = tableau.edge_direction(q)[:tableau.n_struct]
        return LPResult(INFEASIBLE, farkas=_collect(direction, owners, len(constraints)))
    d = tableau.reduced_costs(cost)
    x = tuple(s * d[tableau.n_struct + j] for j, s in enumerate(signs))
    w = tableau.values()[:tableau.n_struct]
    y = _collect(w, owners, len(constraints))
    logger.debug("optimal after %d pivots", tableau.pivots)
    return LPResult(OPTIMAL, value=-tableau.objective(cost), x=x, duals=y)


def check_result(objective: Vector, constraints: list[Constraint], result: LPResult) -> None:
    """
    Re-verify a solver result against its certificate

    :raises DualExtractionError: If the certificate does not prove the result
    """
    n = len(objective)
    if result.status == OPTIMAL:
        _check_feasible(constraints, result.x)
        for c, y in zip(constraints, result.duals):
            if c.sense == GE and y < 0:
                raise DualExtractionError(f"negative weight {y} on {c.name}")
        combined = [sum((y * c.coeffs[k] for c, y in zip(constraints, result.duals)), Fraction(0)) for k in range(n)]
        if tuple(combined) != tuple(objective):
            raise DualExtractionError("dual weights do not reproduce the objective")
        bound = sum((y * c.rhs for c, y in zip(constraints, result.duals)), Fraction(0))
        if bound != result.value or dot(objective, result.x) != result.value:
            raise DualExtractionError(f"objective {result.value} differs from dual bound {bound}")
    elif result.status == INFEASIBLE:
        y = result.farkas
        if any(c.sense == GE and v < 0 for c, v in zip(constraints, y)):
            raise DualExtractionError("Farkas weights must be nonnegative on inequalities")
        if any(sum((v * c.coeffs[k] for c, v in zip(constraints, y)), Fraction(0)) for k in range(n)):
            raise DualExtractionError("Farkas combination is not zero")
        if sum((v * c.rhs for c, v in zip(constraints, y)), Fraction(0)) <= 0:
            raise DualExtractionError("Farkas combination has nonpositive right-hand side")
    else:
        _check_feasible(constraints, result.x)
        ray = result.ray
        for c in constraints:
            value = dot(c.coeffs, ray)
            if (c.sense == GE and value < 0) or (c.sense == EQ and value != 0):
                raise DualExtractionError(f"ray leaves {c.name}")
        if dot(objective, ray) >= 0:
            raise DualExtractionError("ray does not decrease the objective")


def _check_feasible(constraints: list[Constraint], x: Vector) -> None:
    for c in constraints:
        value = dot(c.coeffs, x)
        if (c.sense == GE and value < c.rhs) or (c.sense == EQ and value != c.rhs):
            raise DualExtractionError(f"point violates {c.name}")


def brute_force_minimum(objective: Vector, constraints: list[Constraint]) -> Fraction | None:
    """Minimum over the vertices of a bounded polyhedron, None if it is empty"""
    n = len(objective)
    best = None
    for subset in itertools.combinations(range(len(constraints)), n):
        square = RatMatrix([constraints[i].coeffs for i in subset], n)
        if square.rank() < n:
            continue
        point = square.solve([constraints[i].rhs for i in subset])
        try:
            _check_feasible(constraints, point)
        except DualExtractionError:
            continue
        value = dot(objective, point)
        if best is None or value < best:
            best = value
    return best


def random_box_lp(rng: random.Random) -> tuple[Vector, LinearProgram]:
    n = rng.choice((2, 3))
    lp = LinearProgram(n)
    for k in range(n):
        unit = [0] * n
        unit[k] = 1
        lp.add_ge(unit, -10, f"lower{k}")
        lp.add_ge([-v for v in unit], -10, f"upper{k}")
    for k in range(rng.randint(2, 4)):
        lp.add_ge([rng.randint(-5, 5) for _ in range(n)], rng.randint(-10, 10), f"random{k}")
    objective = as_vector(rng.randint(-5, 5) for _ in range(n))
    return objective, lp


def random_self_test(count: int = 50, seed: int = 0) -> list[str]:
    """
    Cross-check the solver on random bounded programs against vertex enumeration

    :return: descriptions of disagreements, empty when all agree
    """
    rng = random.Random(seed)
    failures = []
    for index in range(count):
        objective, lp = random_box_lp(rng)
        result = lp.minimize(objective)
        expected = brute_force_minimum(objective, lp.constraints)
        if expected is None and result.status != INFEASIBLE:
            failures.append(f"case {index}: expected infeasible, got {result.status}")
        elif expected is not None and (result.status != OPTIMAL or result.value != expected):
            failures.append(f"case {index}: expected {expected}, got {result.status} {result.value}")
    return failures
