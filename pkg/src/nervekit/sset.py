"""Truncated simplicial sets with exact, table-backed operators.

The central class stores every cell of every level 0..D explicitly,
including degenerate ones, together with complete face and degeneracy
tables. Everything downstream (nerves, products, map enumeration,
homology) reduces to finite lookups in these tables, so all structural
laws can be checked exactly by enumeration.

Conventions
-----------
* Levels run 0..D inclusive. Requesting data beyond D raises
  ``TruncationError`` instead of guessing.
* Cells at each level are integers ``0..card(n)-1`` in a canonical
  order fixed by the builder.
* ``faces[n][i][x]`` is ``d_i(x)`` for ``x`` at level n >= 1,
  0 <= i <= n.
* ``degens[n][i][x]`` is ``s_i(x)`` for ``x`` at level n < D,
  0 <= i <= n.
* Equality of simplicial sets compares truncation, cardinalities and
  operator tables; labels are documentation and are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Optional, Sequence

from .reporting import ValidationReport


class TruncationError(Exception):
    """An operation needed simplicial data beyond the stored truncation."""


class SimplicialSet:
    """A simplicial set truncated at level ``D``.

    Parameters
    ----------
    D : int
        Truncation level; cells and operators are stored for levels
        0..D. Degeneracies are stored for levels 0..D-1 (they land one
        level up).
    cards : sequence of int
        ``cards[n]`` is the number of cells at level n; length D+1.
    faces : sequence
        ``faces[n][i]`` is the table of ``d_i`` on level n, for
        1 <= n <= D. ``faces[0]`` must be empty.
    degens : sequence
        ``degens[n][i]`` is the table of ``s_i`` on level n, for
        0 <= n <= D-1. ``degens[D]`` must be empty.
    labels : sequence, optional
        ``labels[n][x]`` is an arbitrary printable tag for cell x at
        level n. Ignored by equality.
    name : str, optional
        Used in validation reports.
    """

    def __init__(self, D: int, cards, faces, degens, labels=None, name: str = ""):
        if D < 0:
            raise ValueError("truncation level must be >= 0")
        if len(cards) != D + 1:
            raise ValueError("cards must have length D+1")
        if len(faces) != D + 1 or len(degens) != D + 1:
            raise ValueError("faces and degens must have length D+1")
        self.D = D
        self.cards = [int(c) for c in cards]
        self.faces = [[list(row) for row in faces[n]] for n in range(D + 1)]
        self.degens = [[list(row) for row in degens[n]] for n in range(D + 1)]
        self.labels = None if labels is None else [list(l) for l in labels]
        self.name = name
        self._nondeg: list[Optional[list[bool]]] = [None] * (D + 1)
        self._label_idx: list[Optional[dict]] = [None] * (D + 1)

    @classmethod
    def empty(cls, D: int, name: str = "empty") -> "SimplicialSet":
        z = [0] * (D + 1)
        faces = [[[] for _ in range(n + 1)] if n else [] for n in range(D + 1)]
        degens = [[[] for _ in range(n + 1)] if n < D else [] for n in range(D + 1)]
        return cls(D, z, faces, degens, labels=[[] for _ in z], name=name)

    def card(self, n: int) -> int:
        if n > self.D:
            raise TruncationError(f"level {n} beyond truncation {self.D}")
        return self.cards[n]

    def face(self, n: int, i: int, x: int) -> int:
        if n > self.D:
            raise TruncationError(f"level {n} beyond truncation {self.D}")
        return self.faces[n][i][x]

    def degen(self, n: int, i: int, x: int) -> int:
        if n >= self.D:
            raise TruncationError(f"degeneracy out of level {n} needs truncation > {n}")
        return self.degens[n][i][x]

    def label(self, n: int, x: int):
        if self.labels is None:
            return None
        return self.labels[n][x]

    def index_of(self, n: int, label) -> int:
        """Index of the cell at level n carrying this label."""
        if self.labels is None:
            raise ValueError("simplicial set has no labels")
        if self._label_idx[n] is None:
            self._label_idx[n] = {l: i for i, l in enumerate(self.labels[n])}
        return self._label_idx[n][label]

    def is_degenerate(self, n: int, x: int) -> bool:
        if n == 0:
            return False
        flags = self._nondeg[n]
        if flags is None:
            flags = [self._degenerate(n, x) for x in range(self.cards[n])]
            self._nondeg[n] = flags
        return flags[x]

    def _degenerate(self, n: int, x: int) -> bool:
        # x is degenerate iff s_i(d_{i+1} x) == x for some i
        for i in range(n):
            if self.degens[n - 1][i][self.faces[n][i + 1][x]] == x:
                return True
        return False

    def nondegenerate_cells(self, n: int) -> list[int]:
        return [x for x in range(self.card(n)) if not self.is_degenerate(n, x)]

    def counts(self) -> tuple[int, ...]:
        return tuple(self.cards)

    def nondeg_counts(self) -> tuple[int, ...]:
        return tuple(len(self.nondegenerate_cells(n)) for n in range(self.D + 1))

    def data_key(self):
        return (
            self.D,
            tuple(self.cards),
            tuple(tuple(tuple(r) for r in lvl) for lvl in self.faces),
            tuple(tuple(tuple(r) for r in lvl) for lvl in self.degens),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return self.data_key() == other.data_key()

    def __hash__(self):
        return hash(self.data_key())

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<SimplicialSet{tag} D={self.D} cards={self.cards}>"


def sset_data_equal(X, Y) -> bool:
    """Levelwise comparison of two cell-table interfaces, labels ignored."""
    if X.D != Y.D:
        return False
    for n in range(X.D + 1):
        if X.card(n) != Y.card(n):
            return False
    for n in range(1, X.D + 1):
        for i in range(n + 1):
            for x in range(X.card(n)):
                if X.face(n, i, x) != Y.face(n, i, x):
                    return False
    for n in range(X.D):
        for i in range(n + 1):
            for x in range(X.card(n)):
                if X.degen(n, i, x) != Y.degen(n, i, x):
                    return False
    return True


def materialize(V, name: str = "") -> SimplicialSet:
    """Copy any cell-table interface (e.g. a lazy view) into explicit tables."""
    D = V.D
    cards = [V.card(n) for n in range(D + 1)]
    faces = [[] for _ in range(D + 1)]
    degens = [[] for _ in range(D + 1)]
    for n in range(1, D + 1):
        faces[n] = [[V.face(n, i, x) for x in range(cards[n])] for i in range(n + 1)]
    for n in range(D):
        degens[n] = [[V.degen(n, i, x) for x in range(cards[n])] for i in range(n + 1)]
    labels = None
    if getattr(V, "labels", None) is not None or hasattr(V, "label"):
        try:
            labels = [[V.label(n, x) for x in range(cards[n])] for n in range(D + 1)]
        except (ValueError, NotImplementedError):
            labels = None
    if labels is not None and all(l is None for lvl in labels for l in lvl):
        labels = None
    return SimplicialSet(D, cards, faces, degens, labels=labels, name=name or getattr(V, "name", ""))


class ProductSset:
    """Lazy levelwise product of two cell-table interfaces.

    The pair (a, b) at level n is the single index a * B.card(n) + b,
    so the first factor is the major digit. Operators act
    componentwise.
    """

    def __init__(self, A, B, name: str = ""):
        self.A = A
        self.B = B
        self.D = min(A.D, B.D)
        self.name = name

    def card(self, n: int) -> int:
        return self.A.card(n) * self.B.card(n)

    def split(self, n: int, x: int) -> tuple[int, int]:
        b = self.B.card(n)
        return x // b, x % b

    def pair(self, n: int, a: int, b: int) -> int:
        return a * self.B.card(n) + b

    def face(self, n: int, i: int, x: int) -> int:
        a, b = self.split(n, x)
        return self.A.face(n, i, a) * self.B.card(n - 1) + self.B.face(n, i, b)

    def degen(self, n: int, i: int, x: int) -> int:
        a, b = self.split(n, x)
        return self.A.degen(n, i, a) * self.B.card(n + 1) + self.B.degen(n, i, b)

    def label(self, n: int, x: int):
        a, b = self.split(n, x)
        la, lb = self.A.label(n, a), self.B.label(n, b)
        if la is None and lb is None:
            return None
        return (la, lb)

    def is_degenerate(self, n: int, x: int) -> bool:
        if n == 0:
            return False
        for i in range(n):
            if self.degen(n - 1, i, self.face(n, i + 1, x)) == x:
                return True
        return False

    def nondegenerate_cells(self, n: int) -> list[int]:
        return [x for x in range(self.card(n)) if not self.is_degenerate(n, x)]


class PowerSset:
    """Lazy m-fold power K^m of a cell-table interface.

    A cell is an m-tuple of K-cells of the same level, encoded as one
    integer in base card(n) with coordinate 0 as the most significant
    digit. Concatenation of tuples therefore agrees with the pairing
    rule of `ProductSset`: the index of (u ++ v) equals
    index(u) * card(n)**len(v) + index(v). The zeroth power is a point.
    """

    def __init__(self, K, m: int, name: str = ""):
        if m < 0:
            raise ValueError("power must be >= 0")
        self.K = K
        self.m = m
        self.D = K.D
        self.name = name

    def card(self, n: int) -> int:
        return self.K.card(n) ** self.m

    def coords(self, n: int, x: int) -> tuple[int, ...]:
        c = self.K.card(n)
        out = []
        for _ in range(self.m):
            out.append(x % c)
            x //= c
        return tuple(reversed(out))

    def index(self, n: int, coords: Sequence[int]) -> int:
        c = self.K.card(n)
        x = 0
        for u in coords:
            x = x * c + u
        return x

    def face(self, n: int, i: int, x: int) -> int:
        cs = self.coords(n, x)
        c = self.K.card(n - 1)
        y = 0
        for u in cs:
            y = y * c + self.K.face(n, i, u)
        return y

    def degen(self, n: int, i: int, x: int) -> int:
        cs = self.coords(n, x)
        c = self.K.card(n + 1)
        y = 0
        for u in cs:
            y = y * c + self.K.degen(n, i, u)
        return y

    def label(self, n: int, x: int):
        if self.m == 0:
            return ()
        return tuple(self.K.label(n, u) for u in self.coords(n, x))

    def is_degenerate(self, n: int, x: int) -> bool:
        if n == 0:
            return False
        for i in range(n):
            if self.degen(n - 1, i, self.face(n, i + 1, x)) == x:
                return True
        return False

    def nondegenerate_cells(self, n: int) -> list[int]:
        return [x for x in range(self.card(n)) if not self.is_degenerate(n, x)]


def product(X, Y, name: str = "") -> SimplicialSet:
    """Materialized levelwise product."""
    return materialize(ProductSset(X, Y), name=name)


def product_with_projections(X, Y, name: str = ""):
    """Product together with its two projection maps."""
    P = product(X, Y, name=name)
    D = P.D
    p1 = [[x // Y.card(n) for x in range(P.card(n))] for n in range(D + 1)]
    p2 = [[x % Y.card(n) for x in range(P.card(n))] for n in range(D + 1)]
    return P, SimplicialMap(P, X, values=p1), SimplicialMap(P, Y, values=p2)


def act(X, n: int, x: int, f: Sequence[int]) -> int:
    """Apply an arbitrary monotone operator to a cell.

    ``f`` is a weakly increasing tuple of length m+1 with values in
    0..n, read as a map [m] -> [n]; the result is the image of ``x``
    under the induced map level n -> level m. The operator is factored
    into faces (one per value missing from the image, largest first)
    followed by degeneracies (doubled positions, smallest first), which
    is exactly the unique surjection-after-injection factorization.
    """
    f = tuple(f)
    m = len(f) - 1
    if m < 0:
        raise ValueError("operator must be nonempty")
    if any(f[t] > f[t + 1] for t in range(m)) or f[0] < 0 or f[-1] > n:
        raise ValueError(f"not a monotone map into [{n}]: {f}")
    if m > X.D:
        raise TruncationError(f"operator lands in level {m} beyond truncation {X.D}")
    image = set(f)
    g = list(f)
    y, k = x, n
    for j in range(n, -1, -1):
        if j in image:
            continue
        y = X.face(k, j, y)
        k -= 1
        for t in range(m + 1):
            if g[t] > j:
                g[t] -= 1
    return _act_surjective(X, k, y, g)


def _act_surjective(X, k: int, y: int, g: list[int]) -> int:
    m = len(g) - 1
    if m == k:
        return y
    t = next(t for t in range(m) if g[t] == g[t + 1])
    z = _act_surjective(X, k, y, g[: t + 1] + g[t + 2 :])
    return X.degen(m - 1, t, z)


def vertices(X, n: int, x: int) -> tuple[int, ...]:
    """Vertex tuple of a cell, via the operators picking out each value."""
    return tuple(act(X, n, x, (t,)) for t in range(n + 1))


def _chain_nerve(m: int, leq: Callable[[int, int], bool], D: int, element_labels=None) -> SimplicialSet:
    # Level n cells are the weakly increasing (n+1)-chains in lexicographic
    # order; face drops an entry, degeneracy repeats one.
    cells: list[list[tuple[int, ...]]] = [[(i,) for i in range(m)]]
    for n in range(1, D + 1):
        cells.append([c + (j,) for c in cells[n - 1] for j in range(m) if leq(c[-1], j)])
    idx = [{c: i for i, c in enumerate(lvl)} for lvl in cells]
    cards = [len(lvl) for lvl in cells]
    faces: list[list[list[int]]] = [[] for _ in range(D + 1)]
    degens: list[list[list[int]]] = [[] for _ in range(D + 1)]
    for n in range(1, D + 1):
        faces[n] = [[idx[n - 1][c[:i] + c[i + 1 :]] for c in cells[n]] for i in range(n + 1)]
    for n in range(D):
        degens[n] = [[idx[n + 1][c[: i + 1] + c[i:]] for c in cells[n]] for i in range(n + 1)]
    if element_labels is None:
        labels = [[c for c in lvl] for lvl in cells]
    else:
        labels = [[tuple(element_labels[j] for j in c) for c in lvl] for lvl in cells]
    return SimplicialSet(D, cards, faces, degens, labels=labels)


@lru_cache(maxsize=None)
def standard_simplex(n: int, D: int) -> SimplicialSet:
    """The n-simplex truncated at level D.

    Cells at level k are the weakly increasing (k+1)-tuples with values
    in 0..n, in lexicographic order; the label of a cell is that tuple.
    The result is cached and must be treated as immutable.
    """
    X = _chain_nerve(n + 1, lambda a, b: a <= b, D)
    X.name = f"simplex({n})"
    return X


class FinitePoset:
    """A finite poset given by generating relations.

    Elements keep their given order (used for canonical cell order in
    the nerve). The reflexive-transitive closure of the relations is
    computed up front; antisymmetry failures raise ``ValueError``.
    """

    def __init__(self, elements: Sequence, relations=()):
        self.elements = list(elements)
        self._idx = {e: i for i, e in enumerate(self.elements)}
        if len(self._idx) != len(self.elements):
            raise ValueError("duplicate poset elements")
        m = len(self.elements)
        leq = [[i == j for j in range(m)] for i in range(m)]
        for a, b in relations:
            leq[self._idx[a]][self._idx[b]] = True
        for k in range(m):
            for i in range(m):
                if leq[i][k]:
                    row_i, row_k = leq[i], leq[k]
                    for j in range(m):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(m):
            for j in range(i + 1, m):
                if leq[i][j] and leq[j][i]:
                    raise ValueError(
                        f"antisymmetry fails: {self.elements[i]!r} and {self.elements[j]!r}"
                    )
        self._leq = leq

    def __len__(self):
        return len(self.elements)

    def index(self, e) -> int:
        return self._idx[e]

    def leq(self, a, b) -> bool:
        return self._leq[self._idx[a]][self._idx[b]]


def poset_nerve(P: FinitePoset, D: int, name: str = "") -> SimplicialSet:
    """Nerve of a finite poset: level n cells are weakly increasing chains."""
    X = _chain_nerve(len(P), lambda i, j: P._leq[i][j], D, element_labels=P.elements)
    X.name = name or "poset_nerve"
    return X


def vertex_induced_map(NP: SimplicialSet, NQ: SimplicialSet, vfun) -> "SimplicialMap":
    """Map of chain nerves induced by applying ``vfun`` to every chain entry.

    Both arguments must be labelled with chains (tuples); ``vfun`` must
    be monotone for the result to be simplicial.
    """
    if NQ.D < NP.D:
        raise TruncationError("target truncated below source")
    vals = []
    for n in range(NP.D + 1):
        vals.append([NQ.index_of(n, tuple(vfun(a) for a in NP.label(n, x))) for x in range(NP.card(n))])
    return SimplicialMap(NP, NQ, values=vals)


def subcomplex(X: SimplicialSet, seeds) -> tuple[SimplicialSet, "SimplicialMap"]:
    """Smallest subobject containing the seed cells, with its inclusion.

    ``seeds`` is an iterable of (level, cell). Closure goes down along
    faces and up along degeneracies.
    """
    keep: list[set[int]] = [set() for _ in range(X.D + 1)]
    stack = [(int(n), int(x)) for n, x in seeds]
    while stack:
        n, x = stack.pop()
        if x in keep[n]:
            continue
        keep[n].add(x)
        if n >= 1:
            for i in range(n + 1):
                stack.append((n - 1, X.face(n, i, x)))
        if n < X.D:
            for i in range(n + 1):
                stack.append((n + 1, X.degen(n, i, x)))
    old = [sorted(keep[n]) for n in range(X.D + 1)]
    new_idx = [{x: i for i, x in enumerate(old[n])} for n in range(X.D + 1)]
    cards = [len(old[n]) for n in range(X.D + 1)]
    faces: list[list[list[int]]] = [[] for _ in range(X.D + 1)]
    degens: list[list[list[int]]] = [[] for _ in range(X.D + 1)]
    for n in range(1, X.D + 1):
        faces[n] = [[new_idx[n - 1][X.face(n, i, x)] for x in old[n]] for i in range(n + 1)]
    for n in range(X.D):
        degens[n] = [[new_idx[n + 1][X.degen(n, i, x)] for x in old[n]] for i in range(n + 1)]
    labels = None
    if X.labels is not None:
        labels = [[X.label(n, x) for x in old[n]] for n in range(X.D + 1)]
    S = SimplicialSet(X.D, cards, faces, degens, labels=labels, name=f"sub({X.name})")
    incl = SimplicialMap(S, X, values=[list(old[n]) for n in range(X.D + 1)])
    return S, incl


def boundary_simplex(n: int, D: Optional[int] = None) -> SimplicialSet:
    """Boundary of the n-simplex: cells whose vertices miss some value."""
    if D is None:
        D = max(n - 1, 0)
    full = set(range(n + 1))
    Delta = standard_simplex(n, D)
    seeds = [
        (m, x)
        for m in range(D + 1)
        for x in range(Delta.card(m))
        if set(Delta.label(m, x)) != full
    ]
    S, _ = subcomplex(Delta, seeds)
    S.name = f"boundary({n})"
    return S


def horn(n: int, k: int, D: Optional[int] = None) -> SimplicialSet:
    """The (n, k)-horn: cells whose vertices miss some value other than k."""
    if not 0 <= k <= n:
        raise ValueError("horn index out of range")
    if D is None:
        D = max(n - 1, 0)
    Delta = standard_simplex(n, D)
    seeds = [
        (m, x)
        for m in range(D + 1)
        for x in range(Delta.card(m))
        if any(j != k and j not in Delta.label(m, x) for j in range(n + 1))
    ]
    S, _ = subcomplex(Delta, seeds)
    S.name = f"horn({n},{k})"
    return S


class SimplicialMap:
    """A levelwise map of truncated simplicial sets.

    Values are stored as explicit per-level tables, or computed by a
    function ``fn(n, x)`` for lazy sources. ``L`` is the top level the
    map is defined on (defaults to the source truncation).
    """

    def __init__(self, source, target, values=None, fn=None, L: Optional[int] = None):
        if (values is None) == (fn is None):
            raise ValueError("exactly one of values, fn required")
        self.source = source
        self.target = target
        self.values = None if values is None else [list(row) for row in values]
        self.fn = fn
        if L is None:
            L = source.D if values is None else len(values) - 1
        if L > source.D or L > target.D:
            raise TruncationError("map level exceeds a truncation")
        self.L = L

    def apply(self, n: int, x: int) -> int:
        if n > self.L:
            raise TruncationError(f"map not defined at level {n}")
        if self.values is not None:
            return self.values[n][x]
        return self.fn(n, x)

    def key(self):
        return tuple(
            tuple(self.apply(n, x) for x in range(self.source.card(n))) for n in range(self.L + 1)
        )

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return self.L == other.L and self.key() == other.key()

    def __hash__(self):
        return hash((self.L, self.key()))

    def __repr__(self):
        return f"<SimplicialMap L={self.L}>"


def identity_map(X) -> SimplicialMap:
    return SimplicialMap(X, X, fn=lambda n, x: x, L=X.D)


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    L = min(f.L, g.L)
    vals = [[g.apply(n, f.apply(n, x)) for x in range(f.source.card(n))] for n in range(L + 1)]
    return SimplicialMap(f.source, g.target, values=vals, L=L)


def maps_equal(f: SimplicialMap, g: SimplicialMap) -> bool:
    return f.L == g.L and f.key() == g.key()


def validate_map(f: SimplicialMap, subject: str = "map", max_level: Optional[int] = None) -> ValidationReport:
    """Check that a map commutes with every face and degeneracy in range.

    ``max_level`` bounds the levels visited, for lazy sources too large
    to sweep in full.
    """
    rep = ValidationReport(subject)
    A, X = f.source, f.target
    L = f.L if max_level is None else min(f.L, max_level)
    for n in range(L + 1):
        for x in range(A.card(n)):
            v = f.apply(n, x)
            if not 0 <= v < X.card(n):
                rep.add("value range", (n, x), f"value {v} outside target level {n}")
    if rep.violations:
        return rep
    for n in range(1, L + 1):
        for i in range(n + 1):
            for x in range(A.card(n)):
                lhs = f.apply(n - 1, A.face(n, i, x))
                rhs = X.face(n, i, f.apply(n, x))
                rep.checked += 1
                if lhs != rhs:
                    rep.add("f d_i = d_i f", (n, i, x), f"{lhs} != {rhs}")
    for n in range(min(L, A.D - 1, X.D - 1) + 1):
        if n + 1 > f.L:
            break
        for i in range(n + 1):
            for x in range(A.card(n)):
                lhs = f.apply(n + 1, A.degen(n, i, x))
                rhs = X.degen(n, i, f.apply(n, x))
                rep.checked += 1
                if lhs != rhs:
                    rep.add("f s_i = s_i f", (n, i, x), f"{lhs} != {rhs}")
    return rep


def yoneda_map(X, n: int, x: int, L: Optional[int] = None) -> SimplicialMap:
    """The map out of the n-simplex classifying cell x, as explicit tables.

    Level m sends the monotone tuple labelling a simplex cell to the
    action of that operator on x.
    """
    if L is None:
        L = X.D
    Delta = standard_simplex(n, L)
    vals = [
        [act(X, n, x, Delta.label(m, c)) for c in range(Delta.card(m))] for m in range(L + 1)
    ]
    return SimplicialMap(Delta, X, values=vals)


def enumerate_maps(A, X, _first_filter=None) -> list[SimplicialMap]:
    """All simplicial maps A -> X, in canonical order, by backtracking.

    Nondegenerate cells of A are assigned level by level in index
    order, candidate values ascending; each candidate is pruned against
    the already-assigned faces. Degenerate cells are forced from one
    level down through a degeneracy witness, so the search space is
    exactly the nondegenerate cells. The output order is lexicographic
    in the full value tables (level-major, then cell index).

    ``_first_filter`` optionally restricts the candidate values of the
    first assigned cell; it exists for the chunked variant.
    """
    if X.D < A.D:
        raise TruncationError("target truncated below source")
    D = A.D
    nd = [A.nondegenerate_cells(n) for n in range(D + 1)]
    wit: list[dict[int, tuple[int, int]]] = [{} for _ in range(D + 1)]
    for n in range(1, D + 1):
        for x in range(A.card(n)):
            if A.is_degenerate(n, x):
                for i in range(n):
                    y = A.face(n, i + 1, x)
                    if A.degen(n - 1, i, y) == x:
                        wit[n][x] = (i, y)
                        break
    values = [[-1] * A.card(n) for n in range(D + 1)]
    out: list[list[list[int]]] = []
    first_cell = next(((n, cells[0]) for n, cells in enumerate(nd) if cells), None)

    def faces_ok(n: int, x: int, v: int) -> bool:
        for i in range(n + 1):
            if X.face(n, i, v) != values[n - 1][A.face(n, i, x)]:
                return False
        return True

    def rec(n: int, pos: int) -> None:
        if n > D:
            out.append([row[:] for row in values])
            return
        cells = nd[n]
        if pos == len(cells):
            for x, (i, y) in wit[n].items():
                values[n][x] = X.degen(n - 1, i, values[n - 1][y])
            rec(n + 1, 0)
            return
        x = cells[pos]
        cands = range(X.card(n))
        if _first_filter is not None and (n, x) == first_cell:
            cands = [v for v in cands if _first_filter(v)]
        for v in cands:
            if n == 0 or faces_ok(n, x, v):
                values[n][x] = v
                rec(n, pos + 1)

    rec(0, 0)
    return [SimplicialMap(A, X, values=tab) for tab in out]


def enumerate_maps_chunked(A, X, jobs: int) -> list[SimplicialMap]:
    """Split `enumerate_maps` into independent chunks and merge canonically.

    The candidate values of the first assigned cell are dealt
    round-robin to the chunks; each chunk enumerates independently and
    the results are merged by sorting on the full value tables, which
    reproduces the sequential order whatever the schedule.
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if jobs == 1:
        return enumerate_maps(A, X)
    found: list[SimplicialMap] = []
    for c in range(jobs):
        found.extend(enumerate_maps(A, X, _first_filter=lambda v, c=c: v % jobs == c))
    found.sort(key=lambda f: f.key())
    return found


@dataclass
class MarkedSimplicialSet:
    """A simplicial set with a distinguished set of level-1 cells."""

    space: SimplicialSet
    marked: frozenset[int]

    def validate(self, subject: str = "marked simplicial set") -> ValidationReport:
        rep = ValidationReport(subject)
        if self.space.D < 1:
            rep.add("marking level", (), "marking needs level 1 data")
            return rep
        for e in self.marked:
            if not 0 <= e < self.space.card(1):
                rep.add("marked cell range", (1, e), "marked cell out of range")
        for e in range(self.space.card(1)):
            rep.checked += 1
            if self.space.is_degenerate(1, e) and e not in self.marked:
                rep.add("degenerate edges marked", (1, e), "identity edge left unmarked")
        return rep


def validate_sset(X, subject: str = "", max_level: Optional[int] = None) -> ValidationReport:
    """Check every simplicial identity that fits inside the truncation.

    Covers table shapes and ranges, the face-face and
    degeneracy-degeneracy exchange laws, and all mixed relations.
    Violations name the identity, the operator indices and the cell.
    ``max_level`` bounds the cell levels swept, for lazy views.
    """
    rep = ValidationReport(subject or getattr(X, "name", "") or "simplicial set")
    D = X.D
    cap = D if max_level is None else min(D, max_level)
    ranged = True
    if isinstance(X, SimplicialSet):
        for n in range(1, D + 1):
            if len(X.faces[n]) != n + 1 or any(len(r) != X.cards[n] for r in X.faces[n]):
                rep.add("table shape", (n,), "face tables misshapen")
                ranged = False
        for n in range(D):
            if len(X.degens[n]) != n + 1 or any(len(r) != X.cards[n] for r in X.degens[n]):
                rep.add("table shape", (n,), "degeneracy tables misshapen")
                ranged = False
        if not ranged:
            return rep
        for n in range(1, D + 1):
            for i in range(n + 1):
                for x in range(X.cards[n]):
                    v = X.faces[n][i][x]
                    if not 0 <= v < X.cards[n - 1]:
                        rep.add("face range", (n, i, x), f"d_{i} lands at {v}")
                        ranged = False
        for n in range(D):
            for i in range(n + 1):
                for x in range(X.cards[n]):
                    v = X.degens[n][i][x]
                    if not 0 <= v < X.cards[n + 1]:
                        rep.add("degeneracy range", (n, i, x), f"s_{i} lands at {v}")
                        ranged = False
        if not ranged:
            return rep
    for n in range(2, cap + 1):
        for j in range(n + 1):
            for i in range(j):
                for x in range(X.card(n)):
                    lhs = X.face(n - 1, i, X.face(n, j, x))
                    rhs = X.face(n - 1, j - 1, X.face(n, i, x))
                    rep.checked += 1
                    if lhs != rhs:
                        rep.add("d_i d_j = d_{j-1} d_i", (n, i, j, x), f"{lhs} != {rhs}")
    for n in range(min(D - 1, cap + 1)):
        for j in range(n + 1):
            for i in range(j + 1):
                for x in range(X.card(n)):
                    lhs = X.degen(n + 1, i, X.degen(n, j, x))
                    rhs = X.degen(n + 1, j + 1, X.degen(n, i, x))
                    rep.checked += 1
                    if lhs != rhs:
                        rep.add("s_i s_j = s_{j+1} s_i", (n, i, j, x), f"{lhs} != {rhs}")
    for n in range(min(D, cap + 1)):
        for j in range(n + 1):
            for x in range(X.card(n)):
                sx = X.degen(n, j, x)
                for i in range(n + 2):
                    got = X.face(n + 1, i, sx)
                    rep.checked += 1
                    if i == j or i == j + 1:
                        if got != x:
                            rep.add("d_j s_j = id = d_{j+1} s_j", (n, i, j, x), f"{got} != {x}")
                    elif i < j:
                        want = X.degen(n - 1, j - 1, X.face(n, i, x))
                        if got != want:
                            rep.add("d_i s_j = s_{j-1} d_i", (n, i, j, x), f"{got} != {want}")
                    else:
                        want = X.degen(n - 1, j, X.face(n, i - 1, x))
                        if got != want:
                            rep.add("d_i s_j = s_j d_{i-1}", (n, i, j, x), f"{got} != {want}")
    return rep
