"""Finite sets and exact-rational vector spaces as strict symmetric monoidal categories.

Tensor products use the row-major pairing ``(i, j) -> i*|y| + j``.  With this
encoding the associator and both unitors are identities on the nose, while the
symmetry is a genuine permutation.  Finite sets carry reflexive coequalizers
(union-find quotients); vector spaces carry coreflexive equalizers (kernels
with a reduced column-echelon inclusion basis).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from scipy.cluster.hierarchy import DisjointSet
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import (
    NotCoequalizing,
    NotEqualizing,
    RetractionInvalid,
    SectionInvalid,
    ShapeMismatch,
)

Scalar = Union[int, str, Fraction]


def rat(value: Scalar) -> Fraction:
    """Parse ``"p/q"``, ``"n"``, an int or a Fraction into a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def rat_str(q) -> str:
    q = _to_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    return Fraction(int(q.numerator), int(q.denominator))


def _qq(q: Scalar):
    q = rat(q)
    return QQ(q.numerator, q.denominator)


# ---------------------------------------------------------------------------
# objects and morphisms


def _check_labels(labels, n: int) -> tuple[str, ...] | None:
    if labels is None:
        return None
    labels = tuple(str(s) for s in labels)
    if len(labels) != n:
        raise ShapeMismatch(f"{len(labels)} labels for {n} elements")
    if len(set(labels)) != n:
        raise ShapeMismatch("labels must be pairwise distinct")
    return labels


@dataclass(frozen=True)
class FinObj:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 0:
            raise ShapeMismatch("negative size")
        object.__setattr__(self, "labels", _check_labels(self.labels, self.size))

    def __len__(self) -> int:
        return self.size


@dataclass(frozen=True)
class RatObj:
    dim: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise ShapeMismatch("negative dimension")
        object.__setattr__(self, "labels", _check_labels(self.labels, self.dim))

    def __len__(self) -> int:
        return self.dim


KAPPA_FIN = FinObj(1)
KAPPA_RAT = RatObj(1)


@dataclass(frozen=True, eq=False)
class FinMap:
    """A function between finite sets, stored as an index table."""

    dom: FinObj
    cod: FinObj
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(t) for t in self.table)
        if len(table) != self.dom.size:
            raise ShapeMismatch(f"table has {len(table)} entries, domain has {self.dom.size}")
        n = self.cod.size
        for t in table:
            if not 0 <= t < n:
                raise ShapeMismatch(f"table entry {t} outside codomain of size {n}")
        object.__setattr__(self, "table", table)

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __matmul__(self, other: FinMap) -> FinMap:
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinMap) and equals(self, other)

    def __hash__(self):
        return hash((self.dom.size, self.cod.size, self.table))

    def __repr__(self) -> str:
        return f"FinMap({self.dom.size}->{self.cod.size}, {list(self.table)})"


class RatMap:
    """A linear map between exact-rational spaces: a ``cod.dim x dom.dim`` matrix."""

    __slots__ = ("dom", "cod", "dm")

    def __init__(self, dom: RatObj, cod: RatObj, dm: DomainMatrix):
        if dm.shape != (cod.dim, dom.dim):
            raise ShapeMismatch(f"matrix shape {dm.shape} does not match {cod.dim}x{dom.dim}")
        self.dom = dom
        self.cod = cod
        self.dm = dm.to_sparse()

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        dod = self.dm.to_dod()
        return tuple(
            tuple(_to_fraction(dod.get(i, {}).get(j, 0)) for j in range(self.dom.dim))
            for i in range(self.cod.dim)
        )

    def column(self, j: int) -> tuple[Fraction, ...]:
        dod = self.dm.to_dod()
        return tuple(_to_fraction(dod.get(i, {}).get(j, 0)) for i in range(self.cod.dim))

    def entry(self, i: int, j: int) -> Fraction:
        return _to_fraction(self.dm.to_dod().get(i, {}).get(j, 0))

    def nonzero(self) -> Iterable[tuple[int, int, Fraction]]:
        for i, row in self.dm.to_dod().items():
            for j, v in row.items():
                yield i, j, _to_fraction(v)

    def __matmul__(self, other: RatMap) -> RatMap:
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMap) and equals(self, other)

    __hash__ = None

    def __repr__(self) -> str:
        rows = [[rat_str(v) for v in row] for row in self.matrix]
        return f"RatMap({self.dom.dim}->{self.cod.dim}, {rows})"


Obj = Union[FinObj, RatObj]
Mor = Union[FinMap, RatMap]


def fin_map(dom: FinObj | int, cod: FinObj | int, table: Sequence[int] | Callable[[int], int]) -> FinMap:
    dom = dom if isinstance(dom, FinObj) else FinObj(dom)
    cod = cod if isinstance(cod, FinObj) else FinObj(cod)
    if callable(table):
        table = [table(i) for i in range(dom.size)]
    return FinMap(dom, cod, tuple(table))


def rat_map(dom: RatObj | int, cod: RatObj | int, rows: Sequence[Sequence[Scalar]]) -> RatMap:
    dom = dom if isinstance(dom, RatObj) else RatObj(dom)
    cod = cod if isinstance(cod, RatObj) else RatObj(cod)
    if len(rows) != cod.dim or any(len(r) != dom.dim for r in rows):
        raise ShapeMismatch(f"expected {cod.dim} rows of length {dom.dim}")
    dod = {}
    for i, row in enumerate(rows):
        entries = {j: _qq(v) for j, v in enumerate(row) if rat(v) != 0}
        if entries:
            dod[i] = entries
    return RatMap(dom, cod, DomainMatrix.from_dod(dod, (cod.dim, dom.dim), QQ))


def rat_map_dod(dom: RatObj | int, cod: RatObj | int, dod: dict) -> RatMap:
    """Build from ``{row: {col: value}}``; zero entries are dropped."""
    dom = dom if isinstance(dom, RatObj) else RatObj(dom)
    cod = cod if isinstance(cod, RatObj) else RatObj(cod)
    clean = {}
    for i, row in dod.items():
        entries = {j: _qq(v) for j, v in row.items() if rat(v) != 0}
        if entries:
            clean[i] = entries
    return RatMap(dom, cod, DomainMatrix.from_dod(clean, (cod.dim, dom.dim), QQ))


def _same_kind(*items) -> type:
    kinds = {FinObj if isinstance(t, (FinObj, FinMap)) else RatObj for t in items}
    if len(kinds) != 1:
        raise ShapeMismatch("cannot mix finite sets and vector spaces")
    return kinds.pop()


def size(x: Obj) -> int:
    return x.size if isinstance(x, FinObj) else x.dim


def unit_object(like: Obj | Mor) -> Obj:
    return KAPPA_FIN if isinstance(like, (FinObj, FinMap)) else KAPPA_RAT


# ---------------------------------------------------------------------------
# category structure


def identity(x: Obj) -> Mor:
    if isinstance(x, FinObj):
        return FinMap(x, x, tuple(range(x.size)))
    return RatMap(x, x, DomainMatrix.eye(x.dim, QQ))


def compose(*fs: Mor) -> Mor:
    """``compose(f, g, h) = f o g o h``."""
    if not fs:
        raise ShapeMismatch("nothing to compose")
    _same_kind(*fs)
    out = fs[-1]
    for f in reversed(fs[:-1]):
        if size(f.dom) != size(out.cod):
            raise ShapeMismatch(f"cannot compose {size(out.dom)}->{size(out.cod)} with {size(f.dom)}->{size(f.cod)}")
        if isinstance(f, FinMap):
            t = f.table
            out = FinMap(out.dom, f.cod, tuple(t[i] for i in out.table))
        else:
            out = RatMap(out.dom, f.cod, f.dm.matmul(out.dm))
    return out


def equals(f: Mor, g: Mor) -> bool:
    _same_kind(f, g)
    if size(f.dom) != size(g.dom) or size(f.cod) != size(g.cod):
        raise ShapeMismatch("morphisms do not share domain and codomain")
    if isinstance(f, FinMap):
        return f.table == g.table
    return f.dm == g.dm


# ---------------------------------------------------------------------------
# monoidal structure


def _tensor_labels(a, b):
    if a.labels is None or b.labels is None:
        return None
    return tuple(f"{p}*{q}" for p in a.labels for q in b.labels)


def tensor_obj(*xs: Obj) -> Obj:
    if not xs:
        raise ShapeMismatch("empty tensor product needs a kind; use unit_object")
    kind = _same_kind(*xs)
    out = xs[0]
    for y in xs[1:]:
        if size(y) == 1 and y.labels is None:
            continue
        if size(out) == 1 and out.labels is None:
            out = y
            continue
        n = size(out) * size(y)
        out = kind(n, _tensor_labels(out, y))
    return out


def _kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    ra, ca = a.shape
    rb, cb = b.shape
    da, db = a.to_dod(), b.to_dod()
    out = {}
    for i, row in da.items():
        for k, brow in db.items():
            r = out.setdefault(i * rb + k, {})
            for j, v in row.items():
                for l, w in brow.items():
                    r[j * cb + l] = v * w
    return DomainMatrix.from_dod(out, (ra * rb, ca * cb), QQ)


def tensor_map(*fs: Mor) -> Mor:
    _same_kind(*fs)
    out = fs[0]
    for g in fs[1:]:
        dom = tensor_obj(out.dom, g.dom)
        cod = tensor_obj(out.cod, g.cod)
        if isinstance(out, FinMap):
            m, n = g.dom.size, g.cod.size
            gt = g.table
            out = FinMap(dom, cod, tuple(a * n + gt[j] for a in out.table for j in range(m)))
        else:
            out = RatMap(dom, cod, _kron(out.dm, g.dm))
    return out


def _perm_matrix(dom: RatObj, cod: RatObj, table: Sequence[int]) -> RatMap:
    dod = {}
    for j, i in enumerate(table):
        dod.setdefault(i, {})[j] = QQ(1)
    return RatMap(dom, cod, DomainMatrix.from_dod(dod, (cod.dim, dom.dim), QQ))


def symmetry(x: Obj, y: Obj) -> Mor:
    """The swap ``x (x) y -> y (x) x``: ``i*|y| + j -> j*|x| + i``."""
    nx, ny = size(x), size(y)
    table = [j * nx + i for i in range(nx) for j in range(ny)]
    dom, cod = tensor_obj(x, y), tensor_obj(y, x)
    if isinstance(x, FinObj):
        return FinMap(dom, cod, tuple(table))
    return _perm_matrix(dom, cod, table)


def coherence(kind: str, *objs: Obj) -> Mor:
    """Associator / unitors; identities because the encoding is strict."""
    if kind not in ("assoc", "left-unit", "right-unit"):
        raise ValueError(f"unknown coherence kind {kind!r}")
    expected = 3 if kind == "assoc" else 1
    if len(objs) != expected:
        raise ShapeMismatch(f"{kind} takes {expected} object(s)")
    return identity(tensor_obj(*objs))


# ---------------------------------------------------------------------------
# cartesian structure of finite sets


def diagonal(x: FinObj) -> FinMap:
    n = x.size
    return FinMap(x, tensor_obj(x, x), tuple(i * n + i for i in range(n)))


def terminal(x: FinObj) -> FinMap:
    return FinMap(x, KAPPA_FIN, (0,) * x.size)


def point(x: FinObj, i: int) -> FinMap:
    return FinMap(KAPPA_FIN, x, (i,))


# ---------------------------------------------------------------------------
# reflexive coequalizers of finite sets


@dataclass(frozen=True)
class CoeqResult:
    obj: FinObj
    proj: FinMap
    f: FinMap
    g: FinMap


def reflexive_coequalizer(f: FinMap, g: FinMap, s: FinMap) -> CoeqResult:
    if f.dom.size != g.dom.size or f.cod.size != g.cod.size:
        raise ShapeMismatch("coequalizer needs a parallel pair")
    if s.dom.size != f.cod.size or s.cod.size != f.dom.size:
        raise ShapeMismatch("section has the wrong shape")
    for b in range(f.cod.size):
        if f(s(b)) != b or g(s(b)) != b:
            raise SectionInvalid(f"section fails at {b}", witness=b)
    classes = DisjointSet(range(f.cod.size))
    for a in range(f.dom.size):
        classes.merge(f(a), g(a))
    reps = {}
    for b in range(f.cod.size):
        reps.setdefault(classes[b], b)
    order = sorted(reps.values())
    index = {r: k for k, r in enumerate(order)}
    table = tuple(index[reps[classes[b]]] for b in range(f.cod.size))
    obj = FinObj(len(order), tuple(str(r) for r in order))
    return CoeqResult(obj, FinMap(f.cod, obj, table), f, g)


def factor_through_surjection(q: FinMap, h: FinMap) -> FinMap:
    """The unique ``u`` with ``u o q = h``; ``q`` must be surjective."""
    if q.dom.size != h.dom.size:
        raise ShapeMismatch("q and h must share a domain")
    image = [None] * q.cod.size
    for a in range(q.dom.size):
        c = q(a)
        if image[c] is None:
            image[c] = h(a)
        elif image[c] != h(a):
            raise NotCoequalizing(f"h is not constant on the fibre over {c}", witness=a)
    if any(v is None for v in image):
        raise ShapeMismatch("factoring map is not surjective")
    return FinMap(q.cod, h.cod, tuple(image))


def coeq_factor(res: CoeqResult, h: FinMap) -> FinMap:
    if h.dom.size != res.f.cod.size:
        raise ShapeMismatch("h must start at the coequalizer's target")
    for a in range(res.f.dom.size):
        if h(res.f(a)) != h(res.g(a)):
            raise NotCoequalizing(f"h does not coequalize at {a}", witness=a)
    return factor_through_surjection(res.proj, h)


# ---------------------------------------------------------------------------
# coreflexive equalizers of vector spaces


@dataclass(frozen=True, eq=False)
class EqResult:
    obj: RatObj
    incl: RatMap
    f: RatMap
    g: RatMap
    pivots: tuple[int, ...]


def _rref_rows(dm: DomainMatrix) -> tuple[DomainMatrix, tuple[int, ...]]:
    if dm.shape[0] == 0 or dm.shape[1] == 0:
        return dm, ()
    r, pivots = dm.rref()
    return r, tuple(pivots)


def kernel(f: RatMap) -> tuple[RatMap, tuple[int, ...]]:
    """Inclusion of ``ker f`` in reduced column-echelon form, with its pivot rows."""
    n = f.dom.dim
    if n == 0:
        basis = DomainMatrix.zeros((0, 0), QQ)
        pivots: tuple[int, ...] = ()
    elif f.cod.dim == 0:
        basis, pivots = DomainMatrix.eye(n, QQ), tuple(range(n))
    else:
        rows = f.dm.to_sparse().nullspace()
        rows, pivots = _rref_rows(rows)
        basis = rows.transpose()
        k = len(pivots)
        basis = DomainMatrix.from_dod(basis.to_dod(), (n, k), QQ)
    k = len(pivots)
    return RatMap(RatObj(k), f.dom, basis), pivots


def coreflexive_equalizer(f: RatMap, g: RatMap, r: RatMap) -> EqResult:
    if f.dom.dim != g.dom.dim or f.cod.dim != g.cod.dim:
        raise ShapeMismatch("equalizer needs a parallel pair")
    if r.dom.dim != f.cod.dim or r.cod.dim != f.dom.dim:
        raise ShapeMismatch("retraction has the wrong shape")
    ident = identity(f.dom)
    for name, m in (("f", f), ("g", g)):
        rm = compose(r, m)
        if not equals(rm, ident):
            j = _first_bad_column(rm, ident)
            raise RetractionInvalid(f"retraction fails on {name} at basis vector {j}", witness=j)
    diff = RatMap(f.dom, f.cod, f.dm.sub(g.dm))
    incl, pivots = kernel(diff)
    return EqResult(incl.dom, incl, f, g, pivots)


def _first_bad_column(a: RatMap, b: RatMap) -> int:
    da, db = a.dm.to_dod(), b.dm.to_dod()
    cols = set()
    for i in set(da) | set(db):
        ra, rb = da.get(i, {}), db.get(i, {})
        for j in set(ra) | set(rb):
            if ra.get(j, 0) != rb.get(j, 0):
                cols.add(j)
    return min(cols)


def eq_factor(res: EqResult, h: RatMap) -> RatMap:
    if h.cod.dim != res.f.dom.dim:
        raise ShapeMismatch("h must land in the equalizer's source")
    fh, gh = compose(res.f, h), compose(res.g, h)
    if not equals(fh, gh):
        j = _first_bad_column(fh, gh)
        raise NotEqualizing(f"h does not equalize at basis vector {j}", witness=j)
    # the pivot rows of a reduced column-echelon basis form an identity block
    dod = h.dm.to_dod()
    u = {k: dod[p] for k, p in enumerate(res.pivots) if p in dod}
    out = RatMap(h.dom, res.obj, DomainMatrix.from_dod(u, (res.obj.dim, h.dom.dim), QQ))
    if not equals(compose(res.incl, out), h):
        raise NotEqualizing("h does not lie in the equalizer")
    return out


def factor_through_injection(i: RatMap, h: RatMap) -> RatMap:
    """The unique ``u`` with ``i o u = h``; ``i`` must be injective."""
    if i.cod.dim != h.cod.dim:
        raise ShapeMismatch("i and h must share a codomain")
    k, m = i.dom.dim, h.dom.dim
    if k == 0 or m == 0:
        out = RatMap(h.dom, i.dom, DomainMatrix.zeros((k, m), QQ))
        if not equals(compose(i, out), h):
            raise NotEqualizing("h does not factor through i")
        return out
    aug = i.dm.to_sparse().hstack(h.dm.to_sparse())
    r, pivots = _rref_rows(aug)
    if tuple(pivots[:k]) != tuple(range(k)):
        raise ShapeMismatch("factoring map is not injective")
    if len(pivots) > k:
        raise NotEqualizing("h does not factor through i", witness=pivots[k] - k)
    dod = r.to_dod()
    u = {}
    for row in range(k):
        entries = {j - k: v for j, v in dod.get(row, {}).items() if j >= k}
        if entries:
            u[row] = entries
    return RatMap(h.dom, i.dom, DomainMatrix.from_dod(u, (k, m), QQ))


# ---------------------------------------------------------------------------
# small helpers used throughout


def is_surjective(f: FinMap) -> bool:
    return len(set(f.table)) == f.cod.size


def rank(f: RatMap) -> int:
    if f.dom.dim == 0 or f.cod.dim == 0:
        return 0
    return f.dm.to_sparse().rank()


def zero_map(dom: RatObj, cod: RatObj) -> RatMap:
    return RatMap(dom, cod, DomainMatrix.zeros((cod.dim, dom.dim), QQ))


def add(f: RatMap, g: RatMap) -> RatMap:
    return RatMap(f.dom, f.cod, f.dm.add(g.dm))


def sub(f: RatMap, g: RatMap) -> RatMap:
    return RatMap(f.dom, f.cod, f.dm.sub(g.dm))


def scale(c: Scalar, f: RatMap) -> RatMap:
    return RatMap(f.dom, f.cod, f.dm.mul(_qq(c)))


def permutation_map(dom: Obj, cod: Obj, table: Sequence[int]) -> Mor:
    """Finite-set map, or the matching 0/1 matrix on vector spaces."""
    if isinstance(dom, FinObj):
        return FinMap(dom, cod, tuple(table))
    return _perm_matrix(dom, cod, table)
