"""Built-in groups, Hopf algebras and torsor data used by the suites."""
from __future__ import annotations

import itertools
from fractions import Fraction

from . import kosmos as K
from .hopf import CommAlgObj, FinGroupObj, RatHopfObj, validate_comm_alg, validate_group, validate_hopf


def _from_elements(elements, op, name: str, labels=None) -> FinGroupObj:
    index = {g: k for k, g in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    unit = next(k for k, g in enumerate(elements) if all(op(g, h) == h for h in elements))
    inv = [next(index[h] for h in elements if index[op(g, h)] == unit) for g in elements]
    return validate_group(table, unit, inv, labels or [str(g) for g in elements], name)


def cyclic(n: int) -> FinGroupObj:
    return _from_elements(list(range(n)), lambda a, b: (a + b) % n, "trivial" if n == 1 else f"Z/{n}")


def trivial_group() -> FinGroupObj:
    return cyclic(1)


def klein() -> FinGroupObj:
    elements = [(a, b) for a in range(2) for b in range(2)]
    return _from_elements(elements, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), "Z/2xZ/2",
                          [f"{a}{b}" for a, b in elements])


def symmetric3() -> FinGroupObj:
    """S3 as permutations of {0,1,2} in lexicographic order; product is composition ``a o b``."""
    elements = list(itertools.permutations(range(3)))
    return _from_elements(elements, lambda a, b: tuple(a[b[i]] for i in range(3)), "S3",
                          ["".join(map(str, p)) for p in elements])


def galois_roster() -> list[FinGroupObj]:
    return [trivial_group(), cyclic(2), cyclic(3), cyclic(4), klein(), symmetric3()]


def function_algebra(g: FinGroupObj, name: str | None = None) -> RatHopfObj:
    """Functions on a finite group in the idempotent basis ``e_g``."""
    n = g.order
    nn = n * n
    mul = [[0] * nn for _ in range(n)]
    for a in range(n):
        mul[a][a * n + a] = 1
    unit = [[1] for _ in range(n)]
    comul = [[0] * n for _ in range(nn)]
    for h in range(n):
        for k in range(n):
            comul[h * n + k][g.m(h, k)] = 1
    counit = [[1 if a == g.unit else 0 for a in range(n)]]
    antipode = [[1 if b == g.i(a) else 0 for b in range(n)] for a in range(n)]
    label = name or ("kappa" if n == 1 else f"O({g.name})")
    return validate_hopf(n, mul, unit, comul, counit, antipode, label,
                         [f"e{lab}" for lab in g.carrier.labels] if g.carrier.labels else None)


def grothendieck_roster() -> list[RatHopfObj]:
    return [function_algebra(trivial_group()), function_algebra(cyclic(2)),
            function_algebra(cyclic(3)), function_algebra(symmetric3())]


def oz2_grouplike() -> RatHopfObj:
    """Functions on Z/2 in the basis {1, t} with t group-like and t*t = 1."""
    mul = [[1, 0, 0, 1], [0, 1, 1, 0]]
    unit = [[1], [0]]
    comul = [[1, 0], [0, 0], [0, 0], [0, 1]]
    counit = [[1, 1]]
    antipode = [[1, 0], [0, 1]]
    return validate_hopf(2, mul, unit, comul, counit, antipode, "O(Z/2)[1,t]", ["1", "t"])


def quadratic_algebra(c: int | str | Fraction, name: str | None = None) -> CommAlgObj:
    """``Q[x]/(x^2 - c)`` in the basis {1, x}."""
    mul = [[1, 0, 0, c], [0, 1, 1, 0]]
    return validate_comm_alg(2, mul, [[1], [0]], name or f"Q[x]/(x^2-{c})", ["1", "x"])


def split_algebra() -> CommAlgObj:
    """``kappa x kappa`` in its idempotent basis."""
    return validate_comm_alg(2, [[1, 0, 0, 0], [0, 0, 0, 1]], [[1], [1]], "QxQ")


def sqrt2_coaction() -> list[list[int]]:
    """Left coaction ``x -> t (x) x`` on Q[x]/(x^2-2); rows indexed by the basis of pi (x) p."""
    return [[1, 0], [0, 0], [0, 0], [0, 1]]
