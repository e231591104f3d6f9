"""Finite Coxeter groups as permutation groups on their root systems.

Elements are interned permutations of the full root system, written in the
basis of simple roots with exact coordinates (rationals for crystallographic
types, Q(sqrt 5) for H3 and I2(5)).  Length and descent queries reduce to
sign tests on image roots, so they are cheap and exact.

Supported types: A1..A5, B2..B4, D4, I2(m) for m in {3,4,5,6}, H3.
Generators are 0-based; in type B the generator 0 carries the bond of order 4,
in H3 the generator 0 carries the bond of order 5.

A type string names a group, e.g. "A3", "I2(5)", or "B3:2,1,1" where the
suffix lists the weight L(s) of each generator in generator order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce

from .scalars import GOLDEN, Sqrt5

_ROOT_BOUND = 2000


class CoxeterDatum:
    """Generators, Coxeter matrix and a positive integral weight function."""

    def __init__(self, coxeter_matrix, weights=None, name=""):
        n = len(coxeter_matrix)
        if any(len(row) != n for row in coxeter_matrix):
            raise ValueError("Coxeter matrix must be square")
        for i in range(n):
            if coxeter_matrix[i][i] != 1:
                raise ValueError("Coxeter matrix must have 1 on the diagonal")
            for j in range(i + 1, n):
                if coxeter_matrix[i][j] != coxeter_matrix[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if coxeter_matrix[i][j] < 2:
                    raise ValueError("off-diagonal Coxeter entries must be >= 2")
        self.rank = n
        self.coxeter_matrix = [list(row) for row in coxeter_matrix]
        self.weights = list(weights) if weights is not None else [1] * n
        if len(self.weights) != n:
            raise ValueError("need one weight per generator")
        if any(not isinstance(w, int) or w <= 0 for w in self.weights):
            raise ValueError("weights must be positive integers")
        self.name = name
        self._check_weight_conjugacy()

    def _check_weight_conjugacy(self):
        # generators joined by an odd bond are conjugate and need equal weight
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.coxeter_matrix[i][j]
                if m % 2 == 1 and m >= 3 and self.weights[i] != self.weights[j]:
                    raise ValueError(
                        f"generators {i} and {j} are conjugate (bond {m} is odd) "
                        f"but have different weights"
                    )

    @property
    def generators(self):
        return range(self.rank)

    def is_equal_parameter(self) -> bool:
        return len(set(self.weights)) == 1


class Element:
    """A group element, realized as a permutation of the root system."""

    __slots__ = ("engine", "perm", "index", "_length", "_inv_perm", "_left_desc")

    def __init__(self, engine, perm: tuple):
        self.engine = engine
        self.perm = perm
        self.index = -1
        self._length = None
        self._inv_perm = None
        self._left_desc = None

    def __mul__(self, other: "Element") -> "Element":
        if self.engine is not other.engine:
            raise ValueError("elements of different groups")
        p, q = self.perm, other.perm
        return self.engine._intern(tuple(p[q[i]] for i in range(len(p))))

    def __eq__(self, other):
        return isinstance(other, Element) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        word = "".join(str(s) for s in self.engine.reduced_word(self))
        return f"<{word or 'e'}>"

    def inverse_perm(self) -> tuple:
        if self._inv_perm is None:
            inv = [0] * len(self.perm)
            for i, j in enumerate(self.perm):
                inv[j] = i
            self._inv_perm = tuple(inv)
        return self._inv_perm

    def inverse(self) -> "Element":
        return self.engine._intern(self.inverse_perm())

    def length(self) -> int:
        if self._length is None:
            neg_from = self.engine.n_positive
            self._length = sum(
                1 for i in range(neg_from) if self.perm[i] >= neg_from
            )
        return self._length

    def is_identity(self) -> bool:
        return self.length() == 0


def _bond_entries(m):
    """Cartan-style entries (A_ij, A_ji) with A_ij*A_ji = 4cos^2(pi/m)."""
    if m == 2:
        return Fraction(0), Fraction(0)
    if m == 3:
        return Fraction(-1), Fraction(-1)
    if m == 4:
        return Fraction(-2), Fraction(-1)
    if m == 5:
        return -GOLDEN, -GOLDEN
    if m == 6:
        return Fraction(-3), Fraction(-1)
    raise ValueError(f"unsupported bond order {m}")


class GroupEngine:
    """Fully enumerated finite Coxeter group with canonical element indexing.

    The element table is ordered breadth-first along the canonical
    left-ascent spanning tree (ties by generator index); that order is the
    canonical indexing used by every table and JSON output downstream.
    """

    def __init__(self, datum: CoxeterDatum):
        self.datum = datum
        self._build_roots()
        n = datum.rank
        self._simple_root_indices = []
        for i in range(n):
            coords = [Fraction(0)] * n
            coords[i] = Fraction(1)
            self._simple_root_indices.append(self._root_index[tuple(coords)])
        self._cache: dict[tuple, Element] = {}
        self.identity = self._intern(tuple(range(len(self.roots))))
        self.simple = [
            self._intern(self._simple_perm(i)) for i in range(datum.rank)
        ]
        self._enumerate()

    # -- root system ----------------------------------------------------------

    def _build_roots(self):
        n = self.datum.rank
        cartan = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    cartan[i][j] = Fraction(2)
                else:
                    a, b = _bond_entries(self.datum.coxeter_matrix[i][j])
                    # orientation: the smaller index gets the first entry
                    cartan[i][j] = a if i < j else b
        self.cartan = cartan

        def reflect(i, root):
            coeff = reduce(
                lambda acc, jx: acc + cartan[i][jx[0]] * jx[1],
                enumerate(root),
                root[i] * 0,
            )
            new = list(root)
            new[i] = new[i] - coeff
            return tuple(new)

        zero = Fraction(0)
        simple_roots = []
        for i in range(n):
            coords = [zero] * n
            coords[i] = Fraction(1)
            simple_roots.append(tuple(coords))

        seen = set(simple_roots)
        queue = list(simple_roots)
        while queue:
            root = queue.pop()
            for i in range(n):
                img = reflect(i, root)
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
                    if len(seen) > _ROOT_BOUND:
                        raise ValueError("root system is not finite (bound hit)")

        positives = sorted(
            (r for r in seen if _root_sign(r) > 0), key=_root_sort_key
        )
        negatives = [tuple(-c for c in r) for r in positives]
        self.roots = positives + negatives
        self.n_positive = len(positives)
        self._root_index = {r: i for i, r in enumerate(self.roots)}
        self._reflect = reflect

    def _simple_perm(self, i) -> tuple:
        return tuple(
            self._root_index[self._reflect(i, r)] for r in self.roots
        )

    # -- elements ---------------------------------------------------------------

    def _intern(self, perm: tuple) -> Element:
        el = self._cache.get(perm)
        if el is None:
            el = Element(self, perm)
            self._cache[perm] = el
        return el

    def _enumerate(self):
        self.elements = [self.identity]
        self.identity.index = 0
        queue = [self.identity]
        while queue:
            nxt = []
            for w in queue:
                for s in self.canonical_left_ascent_set(w):
                    child = self.simple[s] * w
                    child.index = len(self.elements)
                    self.elements.append(child)
                    nxt.append(child)
            queue = nxt
        self.order = len(self.elements)
        self.w0 = self.elements[-1]
        if self.w0.length() != self.n_positive:
            raise AssertionError("longest element does not flip all positives")

    # -- length/descent queries -------------------------------------------------

    def right_descent_set(self, w: Element) -> frozenset:
        neg_from = self.n_positive
        return frozenset(
            s
            for s in range(self.datum.rank)
            if w.perm[self._simple_root_indices[s]] >= neg_from
        )

    def left_descent_set(self, w: Element) -> frozenset:
        if w._left_desc is None:
            neg_from = self.n_positive
            inv = w.inverse_perm()
            w._left_desc = frozenset(
                s
                for s in range(self.datum.rank)
                if inv[self._simple_root_indices[s]] >= neg_from
            )
        return w._left_desc

    def canonical_left_ascent_set(self, w: Element) -> list:
        """Successors of w in the canonical spanning tree rooted at 1.

        These are the s_i with s_i w > w such that no s_j with j < i is a
        descent of s_i w; every element is reached exactly once this way.
        """
        out = []
        dl = self.left_descent_set(w)
        for i in range(self.datum.rank):
            if i in dl:
                continue
            child = self.simple[i] * w
            cdl = self.left_descent_set(child)
            if all(j not in cdl for j in range(i)):
                out.append(i)
        return out

    # -- words and weights --------------------------------------------------------

    def reduced_word(self, w: Element) -> list:
        """Canonical reduced word: strip the smallest left descent repeatedly."""
        word = []
        while True:
            dl = self.left_descent_set(w)
            if not dl:
                return word
            s = min(dl)
            word.append(s)
            w = self.simple[s] * w

    def from_word(self, word) -> Element:
        w = self.identity
        for s in word:
            w = w * self.simple[s]
        return w

    def weight(self, w: Element) -> int:
        return sum(self.datum.weights[s] for s in self.reduced_word(w))

    def generator_weight(self, s: int) -> int:
        return self.datum.weights[s]

    def support(self, w: Element) -> frozenset:
        """Generators occurring in any (hence every) reduced word of w."""
        return frozenset(self.reduced_word(w))

    # -- Bruhat order ----------------------------------------------------------------

    def bruhat_le(self, y: Element, w: Element) -> bool:
        """Decide y <= w via the lifting property."""
        leny, lenw = y.length(), w.length()
        while 0 < leny and leny < lenw:
            s = min(self.left_descent_set(w))
            w = self.simple[s] * w
            lenw -= 1
            if s in self.left_descent_set(y):
                y = self.simple[s] * y
                leny -= 1
        if leny == 0:
            return True
        return y == w

    def bruhat_subword(self, y: Element, w: Element):
        """A reduced word of w together with flags selecting a subword equal to y.

        Returns (flags, word) with flags[i] marking the letters of the
        canonical descent-stripping word of w that form a reduced expression
        of y, or None when y is not below w.
        """
        flags: list[bool] = []
        word: list[int] = []
        leny, lenw = y.length(), w.length()
        while 0 < leny and leny < lenw:
            s = min(self.left_descent_set(w))
            w = self.simple[s] * w
            lenw -= 1
            word.append(s)
            if s in self.left_descent_set(y):
                y = self.simple[s] * y
                leny -= 1
                flags.append(True)
            else:
                flags.append(False)
        if leny == 0:
            while lenw > 0:
                s = min(self.left_descent_set(w))
                w = self.simple[s] * w
                lenw -= 1
                word.append(s)
                flags.append(False)
            return flags, word
        if y != w:
            return None
        while lenw > 0:
            s = min(self.left_descent_set(w))
            w = self.simple[s] * w
            lenw -= 1
            word.append(s)
            flags.append(True)
        return flags, word

    def bruhat_interval(self, y: Element, w: Element) -> set:
        """The full interval {z : y <= z <= w}, rebuilt from a subword run."""
        sub = self.bruhat_subword(y, w)
        if sub is None:
            return set()
        flags, word = sub
        interval = {self.identity}
        u = self.identity
        for i in range(len(word) - 1, -1, -1):
            s = self.simple[word[i]]
            grown = {
                s * x for x in interval if (s * x).length() > x.length()
            }
            if flags[i]:
                u = s * u
                interval = {x for x in interval if self.bruhat_le(u, x)} | grown
            else:
                interval = interval | grown
        return interval

    # -- distinguished elements ------------------------------------------------------

    def longest_element(self, J=None) -> Element:
        """The longest element of the standard parabolic subgroup W_J."""
        if J is None:
            return self.w0
        w = self.identity
        while True:
            for s in sorted(J):
                if s not in self.left_descent_set(w):
                    w = self.simple[s] * w
                    break
            else:
                return w

    def element_by_index(self, i: int) -> Element:
        return self.elements[i]


def _root_sign(root):
    for c in root:
        if isinstance(c, Sqrt5):
            s = c.sign()
        else:
            s = (c > 0) - (c < 0)
        if s:
            return s
    return 0


def _root_sort_key(root):
    # deterministic order on roots; exact, so independent of the platform
    key = []
    for c in root:
        if isinstance(c, Sqrt5):
            key.append((c.a, c.b))
        else:
            key.append((Fraction(c), Fraction(0)))
    return key


# -- type strings -------------------------------------------------------------

_TYPE_RE = re.compile(r"^([ABDH])(\d+)$|^I2\((\d+)\)$")

_SUPPORTED = {
    "A": range(1, 6),
    "B": range(2, 5),
    "D": (4,),
    "H": (3,),
}

_ORDERS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120, ("A", 5): 720,
    ("B", 2): 8, ("B", 3): 48, ("B", 4): 384,
    ("D", 4): 192,
    ("H", 3): 120,
}


def coxeter_matrix_for(family: str, rank: int):
    m = [[2] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 1
    if family == "A":
        for i in range(rank - 1):
            m[i][i + 1] = m[i + 1][i] = 3
    elif family == "B":
        m[0][1] = m[1][0] = 4
        for i in range(1, rank - 1):
            m[i][i + 1] = m[i + 1][i] = 3
    elif family == "D":
        if rank != 4:
            raise ValueError("only D4 is shipped")
        for a, b in ((0, 2), (1, 2), (2, 3)):
            m[a][b] = m[b][a] = 3
    elif family == "H":
        if rank != 3:
            raise ValueError("only H3 is shipped")
        m[0][1] = m[1][0] = 5
        m[1][2] = m[2][1] = 3
    else:
        raise ValueError(f"unknown family {family!r}")
    return m


def parse_type_string(type_string: str):
    """Split a type string into (name, coxeter_matrix, weights)."""
    base, _, wpart = type_string.partition(":")
    base = base.strip()
    mm = _TYPE_RE.match(base)
    if not mm:
        raise ValueError(f"cannot parse group type {type_string!r}")
    if mm.group(3) is not None:
        order = int(mm.group(3))
        if order not in (3, 4, 5, 6):
            raise ValueError(f"I2({order}) is not shipped; m must be 3..6")
        matrix = [[1, order], [order, 1]]
        rank = 2
    else:
        family, rank = mm.group(1), int(mm.group(2))
        if rank not in _SUPPORTED[family]:
            raise ValueError(f"type {base} is not in the shipped catalogue")
        matrix = coxeter_matrix_for(family, rank)
    if wpart:
        try:
            weights = [int(x) for x in wpart.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad weight list in {type_string!r}") from exc
        if len(weights) != rank:
            raise ValueError(
                f"expected {rank} weights in {type_string!r}, got {len(weights)}"
            )
    else:
        weights = [1] * rank
    return base, matrix, weights


def recognize_type(matrix) -> tuple[str, tuple[int, ...]] | None:
    """Match a Coxeter matrix against the shipped catalogue.

    Returns (base_type, perm) with perm[new] = old such that relabeling the
    input by perm yields the catalogue matrix, or None if the diagram is not
    shipped (e.g. disconnected parabolics).
    """
    from itertools import permutations

    rank = len(matrix)
    candidates: list[str] = []
    if rank == 1:
        candidates = ["A1"]
    elif rank == 2:
        candidates = ["A2", "I2(4)", "I2(5)", "I2(6)", "B2"]
    elif rank == 3:
        candidates = ["A3", "B3", "H3"]
    elif rank == 4:
        candidates = ["A4", "B4", "D4"]
    elif rank == 5:
        candidates = ["A5"]
    for ts in candidates:
        _, cmat, _ = parse_type_string(ts)
        for perm in permutations(range(rank)):
            if all(
                cmat[i][j] == matrix[perm[i]][perm[j]]
                for i in range(rank)
                for j in range(rank)
            ):
                return ts, perm
    return None


def build_group(type_string: str) -> GroupEngine:
    """Build a fully enumerated engine from a type string like "B3:2,1,1"."""
    name, matrix, weights = parse_type_string(type_string)
    datum = CoxeterDatum(matrix, weights, name=name)
    engine = GroupEngine(datum)
    mm = _TYPE_RE.match(name)
    if mm.group(3) is not None:
        expected = 2 * int(mm.group(3))
    else:
        expected = _ORDERS[(mm.group(1), int(mm.group(2)))]
    if engine.order != expected:
        raise AssertionError(
            f"enumerated order {engine.order} != classification order {expected}"
        )
    return engine
