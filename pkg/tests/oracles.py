"""Independent reference computations for the tests.

Nothing here calls into the library's morphism layer: tables are plain lists, matrices are
lists of Fractions, and isomorphism questions are settled by exhaustive search.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy


# ---------------------------------------------------------------------------
# finite groups


def is_group(table, unit, inv) -> bool:
    n = len(table)
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return False
    return all(table[unit][a] == a == table[a][unit] and table[a][inv[a]] == unit == table[inv[a]][a]
               for a in range(n))


def group_isomorphisms(t1, t2, limit: int = 6):
    """Every bijection ``f`` with ``f(ab) = f(a)f(b)``, by brute force over permutations."""
    n = len(t1)
    if n != len(t2):
        return []
    if n > limit:
        raise ValueError(f"exhaustive search capped at order {limit}")
    out = []
    for perm in itertools.permutations(range(n)):
        if all(perm[t1[a][b]] == t2[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            out.append(perm)
    return out


def isomorphic(t1, t2, limit: int = 6) -> bool:
    return bool(group_isomorphisms(t1, t2, limit))


def orbits(n_points: int, elements, act) -> int:
    """Number of orbits of ``act(g, i)`` by flood fill."""
    seen, count = set(), 0
    for i in range(n_points):
        if i in seen:
            continue
        count += 1
        stack = [i]
        while stack:
            j = stack.pop()
            if j not in seen:
                seen.add(j)
                stack.extend(act(g, j) for g in elements)
    return count


def burnside(order: int, n_points: int, act) -> Fraction:
    """Orbit count as the average number of fixed points."""
    return Fraction(sum(sum(1 for i in range(n_points) if act(g, i) == i) for g in range(order)), order)


def equivariant_maps(order, n, m, act_x, act_y) -> int:
    """Count functions ``x -> y`` commuting with the actions."""
    return sum(1 for f in itertools.product(range(m), repeat=n)
               if all(f[act_x(g, i)] == act_y(g, f[i]) for g in range(order) for i in range(n)))


# ---------------------------------------------------------------------------
# exact matrices as lists of Fractions


def frac_rows(rows):
    return [[Fraction(v) for v in row] for row in rows]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def kron(a, b):
    return [[a[i][j] * b[k][l] for j in range(len(a[0])) for l in range(len(b[0]))]
            for i in range(len(a)) for k in range(len(b))]


def gauss_inverse(a):
    """Gauss-Jordan inverse over Fractions, or None when singular."""
    n = len(a)
    m = [list(row) + identity(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                c = m[r][col]
                m[r] = [v - c * w for v, w in zip(m[r], m[col])]
    return [row[n:] for row in m]


def rank(a) -> int:
    """Row-echelon rank over Fractions."""
    m = [list(map(Fraction, row)) for row in a]
    r = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            c = m[i][col] / m[r][col]
            m[i] = [v - c * w for v, w in zip(m[i], m[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# commutative Hopf algebras through their characters


def characters(mul, unit):
    """All algebra maps to Q: common left eigenvectors of the multiplication operators, normalized at the unit.

    Eigenvectors of one generic multiplication operator are found with sympy's Matrix; each candidate
    is kept only if it is multiplicative on every basis pair.
    """
    n = len(unit)
    mul = frac_rows(mul)
    unit = [Fraction(u) for u in unit]
    rng = random.Random(7)
    coeffs = [rng.randint(1, 97) for _ in range(n)]
    # L[r][i] = coefficient of basis r in (generic element) * basis i
    L = [[sum(coeffs[k] * mul[r][k * n + i] for k in range(n)) for i in range(n)] for r in range(n)]
    out = []
    for value, mult, vecs in sympy.Matrix(L).T.eigenvects():
        if not value.is_rational:
            continue
        for v in vecs:
            chi = [Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v]
            at_unit = sum(c * u for c, u in zip(chi, unit))
            if at_unit == 0:
                continue
            chi = [c / at_unit for c in chi]
            if all(sum(chi[r] * mul[r][i * n + j] for r in range(n)) == chi[i] * chi[j]
                   for i in range(n) for j in range(n)):
                if chi not in out:
                    out.append(chi)
    return sorted(out)


def character_table(comul, counit, chars):
    """Group table of characters under ``(chi (x) psi) o comul``, plus the unit index."""
    comul = frac_rows(comul)
    n = len(chars[0])
    index = {tuple(c): k for k, c in enumerate(chars)}
    table = []
    for chi in chars:
        row = []
        for psi in chars:
            prod = tuple(sum(chi[i] * psi[j] * comul[i * n + j][c] for i in range(n) for j in range(n))
                         for c in range(n))
            row.append(index[prod])
        table.append(row)
    unit = index[tuple(Fraction(v) for v in counit)]
    return table, unit


def hopf_character_group(mul, unit, comul, counit):
    chars = characters(mul, unit)
    table, e = character_table(comul, counit, chars)
    return chars, table, e


def invariant_dim(coaction, unit) -> int:
    """dim of ``{v : coaction(v) = v (x) 1}`` for a coaction given as (m*n) x m rows."""
    coaction = frac_rows(coaction)
    m = len(coaction[0])
    u = [[Fraction(x)] for x in unit]
    diff = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(coaction, kron(identity(m), u))]
    return m - rank(diff)
