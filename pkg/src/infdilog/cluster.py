"""Y-seed mutation at evaluated points, skew-symmetrizers, and periodicity.

A seed is an n x n integer exchange matrix B together with an n-tuple of unit
series (the evaluated y-values).  Mutation in direction k (0-indexed) acts by

    y'_k = 1 / y_k
    y'_i = y_i * y_k^max(b_ki, 0) * (1 + y_k)^(-b_ki)      for i != k
    b'_ij = -b_ij                  if k in {i, j}
    b'_ij = b_ij + sgn(b_ik) * max(b_ik * b_kj, 0)          otherwise

The exponent placement is pinned by the rank-2 test vector: mutating the seed
with B = [[0, -1], [1, 0]] in direction 0 must send (y1, y2) to
(1/y1, y2(1 + y1)).  Evaluation points where a required inversion fails lie in
the excluded locus and surface as InvalidPointError, to be resampled by
callers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, Field
from .series import NonUnitError, TruncatedSeries, random_series

__all__ = [
    "BUILTIN_PATTERNS",
    "ExchangeMatrix",
    "InvalidPointError",
    "MutationSchedule",
    "NotSkewSymmetrizableError",
    "PeriodicityVerdict",
    "Trajectory",
    "TrajectoryStep",
    "YSeed",
    "builtin_pattern",
    "check_periodicity",
    "pattern_from_dict",
    "run_schedule",
    "skew_symmetrizer",
]


class NotSkewSymmetrizableError(ValueError):
    """The matrix admits no positive integer skew-symmetrizer."""


class InvalidPointError(ValueError):
    """A mutation step needed an inversion that fails at this evaluation point."""

    def __init__(self, message: str, step: int | None = None, direction: int | None = None):
        super().__init__(message)
        self.step = step
        self.direction = direction


class ExchangeMatrix:
    """An integer exchange matrix, validated to be sign-skew-symmetric."""

    __slots__ = ("rows",)

    def __init__(self, rows) -> None:
        rows = tuple(tuple(entry for entry in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("exchange matrix must be square and nonempty")
        for i in range(n):
            for j in range(n):
                entry = rows[i][j]
                if not isinstance(entry, int) or isinstance(entry, bool):
                    raise ValueError(f"matrix entry ({i},{j}) is not an integer: {entry!r}")
        for i in range(n):
            if rows[i][i] != 0:
                raise ValueError(f"diagonal entry ({i},{i}) must be 0, got {rows[i][i]}")
            for j in range(i + 1, n):
                a, b = rows[i][j], rows[j][i]
                if (a == 0) != (b == 0) or a * b > 0:
                    raise ValueError(
                        f"sign-skew-symmetry violated at ({i},{j}): {a} vs {b}"
                    )
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def mutate(self, k: int) -> "ExchangeMatrix":
        """Matrix mutation in direction k."""
        n = self.n
        if not 0 <= k < n:
            raise IndexError(f"direction {k} out of range for rank {n}")
        old = self.rows
        new = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == k or j == k:
                    row.append(-old[i][j])
                else:
                    extra = old[i][k] * old[k][j]
                    if extra > 0:
                        sign = 1 if old[i][k] > 0 else -1
                        row.append(old[i][j] + sign * extra)
                    else:
                        row.append(old[i][j])
            new.append(row)
        return ExchangeMatrix(new)

    def permuted(self, nu: tuple[int, ...]) -> "ExchangeMatrix":
        """Apply a permutation to rows and columns: result[nu[i]][nu[j]] = self[i][j]."""
        n = self.n
        new = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                new[nu[i]][nu[j]] = self.rows[i][j]
        return ExchangeMatrix(new)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"ExchangeMatrix({[list(r) for r in self.rows]})"


def skew_symmetrizer(matrix: ExchangeMatrix) -> tuple[int, ...]:
    """Componentwise-minimal positive integers theta with theta_j b_ij = -theta_i b_ji.

    Ratios propagate along the graph of nonzero entries; each connected
    component is normalized by clearing denominators and dividing by the gcd.
    """
    n = matrix.n
    ratios: list[Fraction | None] = [None] * n
    for root in range(n):
        if ratios[root] is not None:
            continue
        component = [root]
        ratios[root] = Fraction(1)
        queue = [root]
        while queue:
            i = queue.pop()
            for j in range(n):
                b_ij = matrix.entry(i, j)
                if j == i or b_ij == 0:
                    continue
                # theta_j * b_ij = -theta_i * b_ji
                required = ratios[i] * Fraction(-matrix.entry(j, i), b_ij)
                if required <= 0:
                    raise NotSkewSymmetrizableError(
                        f"entries ({i},{j}) force a non-positive weight ratio"
                    )
                if ratios[j] is None:
                    ratios[j] = required
                    component.append(j)
                    queue.append(j)
                elif ratios[j] != required:
                    raise NotSkewSymmetrizableError(
                        f"inconsistent weight constraints around index {j}"
                    )
        scale = math.lcm(*(r.denominator for r in (ratios[i] for i in component)))
        scaled = {i: int(ratios[i] * scale) for i in component}
        common = math.gcd(*scaled.values())
        for i in component:
            ratios[i] = Fraction(scaled[i] // common)
    theta = tuple(int(r) for r in ratios)
    for i in range(n):
        for j in range(n):
            if theta[j] * matrix.entry(i, j) != -theta[i] * matrix.entry(j, i):
                raise NotSkewSymmetrizableError(
                    f"no positive integer skew-symmetrizer: condition fails at ({i},{j})"
                )
    return theta


@dataclass(frozen=True)
class MutationSchedule:
    """Directions (0-indexed), the closing permutation nu, optional weights theta."""

    directions: tuple[int, ...]
    nu: tuple[int, ...]
    theta: tuple[int, ...] | None = None

    def validate(self, matrix: ExchangeMatrix) -> None:
        n = matrix.n
        for r in self.directions:
            if not isinstance(r, int) or not 0 <= r < n:
                raise ValueError(f"direction {r} out of range for rank {n}")
        if sorted(self.nu) != list(range(n)):
            raise ValueError(f"nu {list(self.nu)} is not a permutation of 0..{n - 1}")
        if self.theta is not None:
            if len(self.theta) != n or any(t < 1 or not isinstance(t, int) for t in self.theta):
                raise ValueError("theta must be an n-tuple of positive integers")
            for i in range(n):
                for j in range(n):
                    if self.theta[j] * matrix.entry(i, j) != -self.theta[i] * matrix.entry(j, i):
                        raise ValueError("theta does not skew-symmetrize the matrix")

    def resolved_theta(self, matrix: ExchangeMatrix) -> tuple[int, ...]:
        return self.theta if self.theta is not None else skew_symmetrizer(matrix)

    @property
    def length(self) -> int:
        return len(self.directions)


@dataclass(frozen=True)
class YSeed:
    """An exchange matrix paired with evaluated y-values (unit series)."""

    matrix: ExchangeMatrix
    ys: tuple[TruncatedSeries, ...]

    def __post_init__(self) -> None:
        if len(self.ys) != self.matrix.n:
            raise ValueError(f"rank mismatch: matrix {self.matrix.n}, point {len(self.ys)}")

    def mutate(self, k: int) -> "YSeed":
        n = self.matrix.n
        if not 0 <= k < n:
            raise IndexError(f"direction {k} out of range for rank {n}")
        yk = self.ys[k]
        try:
            yk_inv = yk.invert()
        except NonUnitError as exc:
            raise InvalidPointError(f"y_{k + 1} is not invertible here", direction=k) from exc
        one_plus = 1 + yk
        new_ys = list(self.ys)
        new_ys[k] = yk_inv
        for i in range(n):
            if i == k:
                continue
            b = self.matrix.entry(k, i)
            if b == 0:
                continue
            try:
                factor = yk ** max(b, 0) * one_plus ** (-b)
            except NonUnitError as exc:
                raise InvalidPointError(
                    f"1 + y_{k + 1} is not invertible here", direction=k
                ) from exc
            new_ys[i] = new_ys[i] * factor
        return YSeed(self.matrix.mutate(k), tuple(new_ys))

    def permuted(self, nu: tuple[int, ...]) -> "YSeed":
        new_ys: list[TruncatedSeries | None] = [None] * len(self.ys)
        for i, y in enumerate(self.ys):
            new_ys[nu[i]] = y
        return YSeed(self.matrix.permuted(nu), tuple(new_ys))


@dataclass(frozen=True)
class TrajectoryStep:
    direction: int
    value: TruncatedSeries  # the mutated-direction y-value before the step
    seed_after: YSeed


@dataclass(frozen=True)
class Trajectory:
    steps: tuple[TrajectoryStep, ...]
    final: YSeed

    def values(self) -> tuple[TruncatedSeries, ...]:
        return tuple(step.value for step in self.steps)


def run_schedule(
    matrix: ExchangeMatrix,
    point: tuple[TruncatedSeries, ...],
    schedule: MutationSchedule,
) -> Trajectory:
    """Mutate along the schedule, recording each y_{r_j} before its step."""
    schedule.validate(matrix)
    seed = YSeed(matrix, tuple(point))
    steps = []
    for j, r in enumerate(schedule.directions):
        value = seed.ys[r]
        try:
            seed = seed.mutate(r)
        except InvalidPointError as exc:
            raise InvalidPointError(str(exc), step=j, direction=r) from exc
        steps.append(TrajectoryStep(r, value, seed))
    return Trajectory(tuple(steps), seed)


@dataclass(frozen=True)
class PeriodicityVerdict:
    periodic: bool
    matrix_ok: bool
    points_checked: int
    failure: str | None = None


def check_periodicity(
    matrix: ExchangeMatrix,
    schedule: MutationSchedule,
    field: Field = QQ,
    trials: int = 50,
    height_bound: int = 10,
    seed: int = 0,
    precision: int = 2,
) -> PeriodicityVerdict:
    """Certify nu-periodicity: exact matrix return plus y-agreement at points.

    The matrix condition is exact.  The y-condition is polynomial identity
    testing: exact equality at `trials` random valid points, which is correct
    with overwhelming probability for rational-function identities.
    """
    schedule.validate(matrix)
    mat = matrix
    for r in schedule.directions:
        mat = mat.mutate(r)
    matrix_ok = mat == matrix.permuted(schedule.nu)
    if not matrix_ok:
        return PeriodicityVerdict(False, False, 0, "matrix does not return to nu of itself")

    rng = random.Random(seed)
    checked = 0
    attempts = 0
    max_attempts = max(1, trials) * 100
    while checked < trials and attempts < max_attempts:
        attempts += 1
        point = tuple(random_series(field, precision, rng, height_bound) for _ in range(matrix.n))
        try:
            trajectory = run_schedule(matrix, point, schedule)
        except InvalidPointError:
            continue
        expected = YSeed(matrix, point).permuted(schedule.nu)
        if trajectory.final.ys != expected.ys:
            return PeriodicityVerdict(
                False,
                True,
                checked,
                f"y-values disagree at point {[str(y) for y in point]}",
            )
        checked += 1
    if checked < trials:
        return PeriodicityVerdict(
            False, True, checked, f"only {checked} valid points found in {attempts} attempts"
        )
    return PeriodicityVerdict(True, True, checked)


# Built-in patterns.  B2's closing permutation is the identity: six alternating
# mutations return the seed exactly, which check_periodicity certifies.
BUILTIN_PATTERNS: dict[str, dict] = {
    "A1": {"name": "A1", "B": [[0]], "sequence": [0, 0], "nu": [0]},
    "A2": {"name": "A2", "B": [[0, -1], [1, 0]], "sequence": [0, 1, 0, 1, 0], "nu": [1, 0]},
    "B2": {"name": "B2", "B": [[0, -1], [2, 0]], "sequence": [0, 1, 0, 1, 0, 1], "nu": [0, 1]},
}


def pattern_from_dict(config: dict) -> tuple[ExchangeMatrix, MutationSchedule]:
    """Validate a pattern config with keys B, sequence, nu, optional theta."""
    for key in ("B", "sequence", "nu"):
        if key not in config:
            raise ValueError(f"pattern config is missing the key {key!r}")
    matrix = ExchangeMatrix(config["B"])
    theta = config.get("theta")
    schedule = MutationSchedule(
        directions=tuple(config["sequence"]),
        nu=tuple(config["nu"]),
        theta=tuple(theta) if theta is not None else None,
    )
    schedule.validate(matrix)
    skew_symmetrizer(matrix)  # reject non-symmetrizable matrices outright
    return matrix, schedule


def builtin_pattern(name: str) -> tuple[ExchangeMatrix, MutationSchedule]:
    if name not in BUILTIN_PATTERNS:
        known = ", ".join(sorted(BUILTIN_PATTERNS))
        raise ValueError(f"unknown pattern {name!r}; built-ins are {known}")
    return pattern_from_dict(BUILTIN_PATTERNS[name])
