"""Exhaustive check of the cyclic-cone counting inequality.

Around a saddle, ``n`` stable cones and ``n`` unstable cones alternate in
cyclic order ``s+_0, s-_0, s+_1, s-_1, ...``.  Unstable cone ``s-_k`` sits
right after ``s+_k`` and right before ``s+_{k+1}``.  ``omega`` labels the
unstable cones, ``alpha`` the stable ones.  Only the partition a labelling
induces matters, so labellings are enumerated as restricted growth strings.

For a label class ``J`` of ``omega``, a stable cone is *adjacent* to ``J``
when exactly one of its two unstable neighbours lies in ``J``.  The
hypothesis asks that every cone adjacent to ``J`` share its ``alpha`` label
with some other cone adjacent to ``J``; the claim is then
``#labels(alpha) + #labels(omega) <= n + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

MAX_N = 6


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ConeInstance:
    n: int
    alpha: tuple[int, ...]
    omega: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.alpha) != self.n or len(self.omega) != self.n:
            raise ValueError("alpha and omega must both label n >= 1 cones")

    def neighbours(self, k: int) -> tuple[int, int]:
        """Indices of the unstable cones just before and just after stable cone ``k``."""
        return (k - 1) % self.n, k

    def adjacent(self, label: int) -> list[int]:
        out = []
        for k in range(self.n):
            before, after = self.neighbours(k)
            if (self.omega[before] == label) != (self.omega[after] == label):
                out.append(k)
        return out

    def satisfies_hypothesis(self) -> bool:
        for label in set(self.omega):
            adj = self.adjacent(label)
            for k in adj:
                if not any(m != k and self.alpha[m] == self.alpha[k] for m in adj):
                    return False
        return True

    def image_count(self) -> int:
        return len(set(self.alpha)) + len(set(self.omega))

    def inequality_holds(self) -> bool:
        return self.image_count() <= self.n + 1


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``n``."""
    if n == 0:
        yield ()
        return

    def rec(prefix: list[int], top: int):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for label in range(top + 2):
            prefix.append(label)
            yield from rec(prefix, max(top, label))
            prefix.pop()

    yield from rec([0], 0)


def verify_instance(inst: ConeInstance) -> bool | None:
    """True/False for the inequality on a hypothesis-satisfying instance, None if excluded."""
    if not inst.satisfies_hypothesis():
        return None
    return inst.inequality_holds()


@dataclass
class ConeReport:
    n_max: int
    examined: int
    admissible: int
    counterexample: ConeInstance | None


def check_cone_lemma(n_max: int, sizes: Sequence[int] | None = None) -> ConeReport:
    """Enumerate every instance with ``n <= n_max`` and return the first violation, if any."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if n_max > MAX_N:
        raise BudgetExceeded(f"n_max={n_max} exceeds the enumeration budget {MAX_N}")
    examined = admissible = 0
    for n in sizes or range(1, n_max + 1):
        omegas = list(set_partitions(n))
        for omega in omegas:
            for alpha in omegas:
                inst = ConeInstance(n, alpha, omega)
                examined += 1
                verdict = verify_instance(inst)
                if verdict is None:
                    continue
                admissible += 1
                if not verdict:
                    return ConeReport(n_max, examined, admissible, inst)
    return ConeReport(n_max, examined, admissible, None)
