"""W-graphs, their Hecke matrices, validation, constructions and the
idempotent/arrow matrices of the associated path-algebra action.

A W-graph is a vertex list with label sets I(x) in S and generator-indexed
edge weights m^s_{xy}, subject to the support condition
m^s_{xy} != 0  =>  s in I(x) \\ I(y).  The induced generator matrix has
-v_s^-1 on labeled diagonal entries, v_s elsewhere, and the weights off the
diagonal.  Braid relations are checked along two routes: the Chebyshev-style
commutator identity (tau route) and direct alternating products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .coxeter import CoxeterDatum, Element, GroupEngine, build_group
from .graphs import condensation_reachability, tarjan_scc
from .kl import KLContext
from .laurent import (
    ONE,
    ZERO,
    LaurentMatrix,
    LaurentPoly,
    format_laurent,
    is_bar_invariant,
    parse_laurent,
)
from .linalg import laurent_kernel, laurent_rank


@dataclass
class WGraph:
    """Vertex labels and generator-indexed edge weights over one group."""

    engine: GroupEngine
    labels: list[frozenset[int]]
    #: (s, x, y) -> m^s_{xy}, nonzero entries only
    edges: dict[tuple[int, int, int], LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.labels = [frozenset(l) for l in self.labels]
        self.edges = {k: w for k, w in self.edges.items() if w}

    @property
    def size(self) -> int:
        return len(self.labels)

    def weight(self, s: int, x: int, y: int) -> LaurentPoly:
        return self.edges.get((s, x, y), ZERO)

    def label_multiset(self) -> dict[frozenset, int]:
        out: dict[frozenset, int] = {}
        for l in self.labels:
            out[l] = out.get(l, 0) + 1
        return out


class Representation:
    """Generator matrices rho(T_s) of a Hecke-algebra module over one group."""

    def __init__(self, engine: GroupEngine, gens: list[LaurentMatrix]):
        if len(gens) != engine.datum.rank:
            raise ValueError("need one matrix per generator")
        dim = gens[0].rows
        for g in gens:
            if g.rows != dim or g.cols != dim:
                raise ValueError("generator matrices must be square, equal size")
        self.engine = engine
        self.dim = dim
        self.gens = gens

    def gen_inverse(self, s: int) -> LaurentMatrix:
        """rho(T_s)^-1 = rho(T_s) - (v_s - v_s^-1)."""
        ls = self.engine.generator_weight(s)
        zeta = LaurentPoly({ls: 1, -ls: -1})
        return self.gens[s] - LaurentMatrix.identity(self.dim).scale(zeta)

    def t_matrix(self, w: Element) -> LaurentMatrix:
        m = LaurentMatrix.identity(self.dim)
        for s in self.engine.reduced_word(w):
            m = m @ self.gens[s]
        return m

    def character(self, w: Element) -> LaurentPoly:
        return self.t_matrix(w).trace()

    def walk(self):
        """Yield (w, rho(T_w)) over all of W, depth-first along the canonical
        ascent tree, touching one running matrix."""
        eng = self.engine
        stack = [(eng.identity, iter(eng.canonical_left_ascent_set(eng.identity)))]
        m = LaurentMatrix.identity(self.dim)
        yield eng.identity, m
        path = [m]
        while stack:
            w, it = stack[-1]
            advanced = False
            for s in it:
                child = eng.simple[s] * w
                m = self.gens[s] @ path[-1]
                path.append(m)
                yield child, m
                stack.append((child, iter(eng.canonical_left_ascent_set(child))))
                advanced = True
                break
            if not advanced:
                stack.pop()
                path.pop()

    def direct_sum(self, other: "Representation") -> "Representation":
        if self.engine is not other.engine:
            raise ValueError("direct sum needs a common group")
        n, m = self.dim, other.dim
        gens = []
        for a, b in zip(self.gens, other.gens):
            g = LaurentMatrix(n + m, n + m)
            for i in range(n):
                for j in range(n):
                    g.entries[i][j] = a.entries[i][j]
            for i in range(m):
                for j in range(m):
                    g.entries[n + i][n + j] = b.entries[i][j]
            gens.append(g)
        return Representation(self.engine, gens)

    def conjugate(self, p: LaurentMatrix, p_inv: LaurentMatrix) -> "Representation":
        return Representation(self.engine, [p_inv @ g @ p for g in self.gens])


@dataclass
class OmegaMatrices:
    """Idempotent and arrow matrices of a W-graph module."""

    e: dict[int, LaurentMatrix]
    x: dict[int, LaurentMatrix]
    E: dict[frozenset, LaurentMatrix]
    X: dict[tuple[frozenset, frozenset, int], LaurentMatrix]


# -- matrices of a W-graph -----------------------------------------------------


def wgraph_matrices(g: WGraph) -> Representation:
    """The generator matrices rho(T_s) induced by a W-graph."""
    eng = g.engine
    d = g.size
    _check_support(g)
    gens = []
    for s in range(eng.datum.rank):
        ls = eng.generator_weight(s)
        m = LaurentMatrix(d, d)
        for i in range(d):
            m.entries[i][i] = LaurentPoly({-ls: -1} if s in g.labels[i] else {ls: 1})
        for (es, x, y), wgt in g.edges.items():
            if es == s:
                m.entries[x][y] = wgt
        gens.append(m)
    return Representation(eng, gens)


def _check_support(g: WGraph):
    for (s, x, y), wgt in g.edges.items():
        if wgt and s not in (g.labels[x] - g.labels[y]):
            raise ValueError(
                f"support condition violated at s={s}, edge {y}->{x}: "
                f"s must lie in I(x) minus I(y)"
            )


# -- braid commutators ----------------------------------------------------------


def tau_poly(r: int) -> list[int]:
    """Coefficients [a_0, ..., a_r] of the monic degree-r commutator polynomial,
    defined by tau_-1 = 0, tau_0 = 1, tau_r = X tau_{r-1} - tau_{r-2}."""
    if r < -1:
        raise ValueError("r must be >= -1")
    if r == -1:
        return []
    prev, cur = [], [1]
    for _ in range(r):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def _poly_of_matrix(coeffs: list[int], m: LaurentMatrix) -> LaurentMatrix:
    """Evaluate an integer polynomial (ascending coefficients) on a matrix."""
    out = LaurentMatrix(m.rows, m.cols)
    power = LaurentMatrix.identity(m.rows)
    for i, c in enumerate(coeffs):
        if c:
            out = out + power.scale(LaurentPoly({0: c}))
        if i + 1 < len(coeffs):
            power = power @ m
    return out


def braid_commutator_tau(
    a: LaurentMatrix, b: LaurentMatrix, m: int, zeta: LaurentPoly
) -> LaurentMatrix:
    """Delta_m(a, b) via (-1)^(m-1) tau_{m-1}(a + b - zeta) (a - b)."""
    shifted = a + b - LaurentMatrix.identity(a.rows).scale(zeta)
    t = _poly_of_matrix(tau_poly(m - 1), shifted)
    out = t @ (a - b)
    if (m - 1) % 2:
        out = -out
    return out


def braid_commutator_direct(
    a: LaurentMatrix, b: LaurentMatrix, m: int
) -> LaurentMatrix:
    """Delta_m(a, b) = abab... - baba... with m factors each."""
    left = LaurentMatrix.identity(a.rows)
    right = LaurentMatrix.identity(a.rows)
    for i in range(m):
        left = left @ (a if i % 2 == 0 else b)
        right = right @ (b if i % 2 == 0 else a)
    return left - right


#: graphs up to this size get the direct-product cross-check in validation
_DIRECT_CHECK_BOUND = 24


@dataclass
class ValidationReport:
    ok: bool
    failures: list[str]
    checked_pairs: list[tuple[int, int]]

    def __bool__(self):
        return self.ok


def validate_wgraph(g: WGraph, direct_check_bound: int = _DIRECT_CHECK_BOUND) -> ValidationReport:
    """Check support condition, quadratic relations and braid relations.

    Braid commutators are evaluated through the tau identity (valid when the
    two generators carry equal weights) and, on graphs of at most
    `direct_check_bound` vertices, additionally by direct alternating
    products; the two routes must agree entrywise.
    """
    eng = g.engine
    failures: list[str] = []
    try:
        _check_support(g)
    except ValueError as exc:
        return ValidationReport(False, [str(exc)], [])
    rep = wgraph_matrices(g)
    ident = LaurentMatrix.identity(rep.dim)
    for s in range(eng.datum.rank):
        ls = eng.generator_weight(s)
        zeta = LaurentPoly({ls: 1, -ls: -1})
        lhs = rep.gens[s] @ rep.gens[s]
        rhs = ident + rep.gens[s].scale(zeta)
        if lhs != rhs:
            failures.append(f"quadratic relation fails for generator {s}")
    checked = []
    for s, t in combinations(range(eng.datum.rank), 2):
        m = eng.datum.coxeter_matrix[s][t]
        checked.append((s, t))
        ls, lt = eng.generator_weight(s), eng.generator_weight(t)
        use_direct = g.size <= direct_check_bound
        if ls != lt:
            if m % 2 == 1:
                failures.append(
                    f"generators {s},{t} share an odd bond m={m} but have "
                    f"different weights: invalid configuration"
                )
                continue
            use_direct = True
            tau_route = None
        else:
            zeta = LaurentPoly({ls: 1, -ls: -1})
            tau_route = braid_commutator_tau(rep.gens[s], rep.gens[t], m, zeta)
            if not tau_route.is_zero():
                failures.append(f"braid relation (tau route) fails for pair ({s},{t})")
        if use_direct:
            direct = braid_commutator_direct(rep.gens[s], rep.gens[t], m)
            if not direct.is_zero():
                failures.append(f"braid relation (direct route) fails for pair ({s},{t})")
            if tau_route is not None and direct != tau_route:
                failures.append(
                    f"tau and direct commutator routes disagree for pair ({s},{t})"
                )
    return ValidationReport(not failures, failures, checked)


def is_geck(g: WGraph):
    """Palindromic weights within the strict degree bound |gamma| < L(s)."""
    diagnostics = []
    for (s, x, y), wgt in g.edges.items():
        ls = g.engine.generator_weight(s)
        if not is_bar_invariant(wgt):
            diagnostics.append(f"weight at (s={s}, {y}->{x}) is not palindromic")
        if wgt and (wgt.degree() >= ls or wgt.valuation() <= -ls):
            diagnostics.append(
                f"weight at (s={s}, {y}->{x}) breaks the degree bound (-{ls}, {ls})"
            )
    return not diagnostics, diagnostics


# -- constructions -----------------------------------------------------------------


def dual_wgraph(g: WGraph) -> WGraph:
    """Complement all labels, transpose and negate all weights."""
    full = frozenset(range(g.engine.datum.rank))
    labels = [full - l for l in g.labels]
    edges = {(s, y, x): -w for (s, x, y), w in g.edges.items()}
    return WGraph(g.engine, labels, edges)


def parabolic_restrict(g: WGraph, j: frozenset[int]):
    """Restrict to the parabolic subgroup generated by J.

    Returns (sub_wgraph, sub_engine, index_map) where index_map sends the new
    generator indices 0..|J|-1 to the old ones.  When the sub-diagram is a
    shipped type, the sub-engine is built under that name (so the JSON form
    round-trips); otherwise it carries an opaque name.
    """
    from .coxeter import recognize_type

    j = sorted(j)
    if frozenset(j) == frozenset(range(g.engine.datum.rank)):
        return WGraph(g.engine, list(g.labels), dict(g.edges)), g.engine, j
    old = g.engine.datum
    matrix = [[old.coxeter_matrix[a][b] for b in j] for a in j]
    weights = [old.weights[a] for a in j]
    rec = recognize_type(matrix)
    if rec is not None:
        base, perm = rec
        order = [j[p] for p in perm]  # new index i <-> old generator order[i]
        sub_weights = [old.weights[a] for a in order]
        name = base
        if any(w != 1 for w in sub_weights):
            name = base + ":" + ",".join(str(w) for w in sub_weights)
        sub = build_group(name)
    else:
        order = list(j)
        sub = GroupEngine(CoxeterDatum(matrix, weights, name=f"{old.name}|{j}"))
    back = {a: i for i, a in enumerate(order)}
    labels = [frozenset(back[s] for s in l if s in back) for l in g.labels]
    edges = {
        (back[s], x, y): w for (s, x, y), w in g.edges.items() if s in back
    }
    return WGraph(sub, labels, edges), sub, order


def wgraph_cells(g: WGraph) -> list[tuple[WGraph, list[int]]]:
    """Strongly connected components of the edge-support digraph.

    Each component induces a W-graph on its vertex subset; returns pairs
    (cell_graph, vertex_indices) in the canonical cell order (topological in
    the condensation, lowest cells first, ties by smallest vertex index).
    """
    n = g.size
    adj: list[set[int]] = [set() for _ in range(n)]
    for (s, x, y), w in g.edges.items():
        if w and x != y:
            adj[y].add(x)
    adj_l = [sorted(a) for a in adj]
    comps = tarjan_scc(n, adj_l)
    reach = condensation_reachability(comps, adj_l)
    keyed = sorted(
        range(len(comps)),
        key=lambda ci: (-sum(1 for p in reach if p[0] == ci), min(comps[ci])),
    )
    out = []
    for ci in keyed:
        verts = sorted(comps[ci])
        pos = {v: i for i, v in enumerate(verts)}
        labels = [g.labels[v] for v in verts]
        edges = {
            (s, pos[x], pos[y]): w
            for (s, x, y), w in g.edges.items()
            if x in pos and y in pos
        }
        out.append((WGraph(g.engine, labels, edges), verts))
    return out


def kl_wgraph(kl: KLContext) -> WGraph:
    """The Kazhdan-Lusztig W-graph of the regular module in the C-basis.

    Vertices are the group elements in canonical order, labels are the left
    descent sets, and the weights are 1 on ascent edges y -> sy and the
    signed mu values on descent edges.
    """
    eng = kl.engine
    labels = [frozenset(eng.left_descent_set(w)) for w in eng.elements]
    edges: dict[tuple[int, int, int], LaurentPoly] = {}
    for s in range(eng.datum.rank):
        gen = eng.simple[s]
        for y in eng.elements:
            if s in eng.left_descent_set(y):
                continue
            sy = gen * y
            # ascent edge y -> sy carries weight 1
            edges[(s, sy.index, y.index)] = ONE
            # descent edges y -> x for sx < x < y < sy... here the roles are
            # m^s_{xy} with sx<x<y<sy, i.e. target x below source y
        for x in eng.elements:
            if s not in eng.left_descent_set(x):
                continue
            for y in eng.elements:
                if s in eng.left_descent_set(y) or y == x:
                    continue
                if x.length() < y.length() and eng.bruhat_le(x, y):
                    mu = kl.mu(x, y, s)
                    if mu:
                        sign = -1 if (x.length() + y.length() + 1) % 2 else 1
                        edges[(s, x.index, y.index)] = mu * sign
    return WGraph(eng, labels, edges)


def kl_left_cell_wgraphs(kl: KLContext) -> list[tuple[WGraph, list[Element]]]:
    """Left-cell W-graphs cut out of the full KL W-graph."""
    full = kl_wgraph(kl)
    out = []
    for cell, verts in wgraph_cells(full):
        out.append((cell, [kl.engine.elements[v] for v in verts]))
    return out


# -- Omega matrices and relations -----------------------------------------------------


def omega_matrices(g: WGraph) -> OmegaMatrices:
    """Projections e_s, arrow matrices x_s, and their refinements E_I, X^s_IJ."""
    eng = g.engine
    d = g.size
    e = {}
    x = {}
    for s in range(eng.datum.rank):
        em = LaurentMatrix(d, d)
        for i in range(d):
            if s in g.labels[i]:
                em.entries[i][i] = ONE
        e[s] = em
        xm = LaurentMatrix(d, d)
        for (es, xx, yy), w in g.edges.items():
            if es == s:
                xm.entries[xx][yy] = w
        x[s] = xm
    big_e = {}
    for rsize in range(eng.datum.rank + 1):
        for combo in combinations(range(eng.datum.rank), rsize):
            label = frozenset(combo)
            em = LaurentMatrix(d, d)
            for i in range(d):
                if g.labels[i] == label:
                    em.entries[i][i] = ONE
            big_e[label] = em
    big_x = {}
    for s in range(eng.datum.rank):
        for (es, xx, yy), w in g.edges.items():
            if es != s:
                continue
            key = (g.labels[xx], g.labels[yy], s)
            m = big_x.get(key)
            if m is None:
                m = LaurentMatrix(d, d)
                big_x[key] = m
            m.entries[xx][yy] = w
    return OmegaMatrices(e, x, big_e, big_x)


def omega_reconstruction(g: WGraph, om: OmegaMatrices | None = None) -> Representation:
    """rho(T_s) = -v_s^-1 e_s + v_s (1 - e_s) + x_s, entry by entry."""
    om = om or omega_matrices(g)
    eng = g.engine
    d = g.size
    ident = LaurentMatrix.identity(d)
    gens = []
    for s in range(eng.datum.rank):
        ls = eng.generator_weight(s)
        vs = LaurentPoly({ls: 1})
        vs_inv = LaurentPoly({-ls: 1})
        m = (
            om.e[s].scale(-vs_inv)
            + (ident - om.e[s]).scale(vs)
            + om.x[s]
        )
        gens.append(m)
    return Representation(eng, gens)


@dataclass
class RelationReport:
    ok: bool
    failures: list[str]
    checked: int

    def __bool__(self):
        return self.ok


def omega_gy_relations_check(g: WGraph) -> RelationReport:
    """Verify the path-sum relations of the one-parameter W-graph algebra.

    For every bonded generator pair s != t of equal weight and the label sets
    present in the graph, this checks the three relation families:
    (alpha) the tau-coefficient combination of alternating path sums,
    (beta) equality of the two arrow blocks on doubly-labeled edges,
    (gamma) symmetry of even-length path sums.
    """
    eng = g.engine
    if not eng.datum.is_equal_parameter():
        raise ValueError("path-sum relations are only available for equal parameters")
    om = omega_matrices(g)
    d = g.size
    present = sorted({l for l in g.labels}, key=lambda l: (len(l), sorted(l)))
    failures = []
    checked = 0

    prods: dict[tuple[int, int, int], LaurentMatrix] = {}

    def alternating(s, t, k) -> LaurentMatrix:
        # x_s x_t x_s ... with k factors, cached
        key = (s, t, k)
        m = prods.get(key)
        if m is None:
            if k == 0:
                m = LaurentMatrix.identity(d)
            else:
                m = alternating(s, t, k - 1) @ (om.x[s] if (k - 1) % 2 == 0 else om.x[t])
            prods[key] = m
        return m

    def path_sum(i_lab, j_lab, s, t, k) -> LaurentMatrix:
        # E_I x_s x_t x_s ... (k factors) E_J: mask rows/cols of the product
        base = alternating(s, t, k)
        rows_on = [lab == i_lab for lab in g.labels]
        cols_on = [lab == j_lab for lab in g.labels]
        out = LaurentMatrix(d, d)
        for i in range(d):
            if not rows_on[i]:
                continue
            for j in range(d):
                if cols_on[j]:
                    out.entries[i][j] = base.entries[i][j]
        return out

    for s, t in combinations(range(eng.datum.rank), 2):
        m = eng.datum.coxeter_matrix[s][t]
        taus = tau_poly(m - 1)
        # (alpha)
        for i_lab in present:
            if not (s in i_lab and t not in i_lab):
                continue
            for j_lab in present:
                if m % 2 == 1:
                    if not (s in j_lab and t not in j_lab):
                        continue
                else:
                    if not (s not in j_lab and t in j_lab):
                        continue
                acc = LaurentMatrix(d, d)
                for k in range(m):
                    c = taus[k] if k < len(taus) else 0
                    if k == m - 1:
                        c = 1
                    if c:
                        acc = acc + path_sum(i_lab, j_lab, s, t, k).scale(
                            LaurentPoly({0: c})
                        )
                checked += 1
                if not acc.is_zero():
                    failures.append(
                        f"(alpha) fails for s={s},t={t},I={sorted(i_lab)},J={sorted(j_lab)}"
                    )
        # (beta)
        for i_lab in present:
            for j_lab in present:
                if not ({s, t} <= i_lab and not ({s, t} & j_lab)):
                    continue
                xs = om.X.get((i_lab, j_lab, s), LaurentMatrix(d, d))
                xt = om.X.get((i_lab, j_lab, t), LaurentMatrix(d, d))
                checked += 1
                if xs != xt:
                    failures.append(
                        f"(beta) fails for s={s},t={t},I={sorted(i_lab)},J={sorted(j_lab)}"
                    )
        # (gamma)
        for i_lab in present:
            for j_lab in present:
                if not ({s, t} <= i_lab and not ({s, t} & j_lab)):
                    continue
                for r in range(2, m + 1):
                    checked += 1
                    if path_sum(i_lab, j_lab, s, t, r) != path_sum(
                        i_lab, j_lab, t, s, r
                    ):
                        failures.append(
                            f"(gamma) fails for s={s},t={t},r={r},"
                            f"I={sorted(i_lab)},J={sorted(j_lab)}"
                        )
    return RelationReport(not failures, failures, checked)


# -- compatibility graph -----------------------------------------------------------------


@dataclass
class CompatibilityGraph:
    vertices: list[frozenset]
    #: directed edges (target I, source J), i.e. "I <- J"
    edges: set[tuple[frozenset, frozenset]]
    inclusion: set[tuple[frozenset, frozenset]]
    transversal: set[tuple[frozenset, frozenset]]

    def transversal_pairs(self) -> set[frozenset]:
        return {frozenset((i, j)) for (i, j) in self.transversal}


def compatibility_graph(datum: CoxeterDatum) -> CompatibilityGraph:
    """Edge I <- J iff I\\J is nonempty and each s in I\\J bonds (m > 2)
    with each t in J\\I in the diagram."""
    n = datum.rank
    subsets = []
    for rsize in range(n + 1):
        for combo in combinations(range(n), rsize):
            subsets.append(frozenset(combo))
    edges = set()
    inclusion = set()
    transversal = set()
    for i_lab in subsets:
        for j_lab in subsets:
            diff = i_lab - j_lab
            if not diff:
                continue
            other = j_lab - i_lab
            if all(
                datum.coxeter_matrix[s][t] > 2 for s in diff for t in other
            ):
                edges.add((i_lab, j_lab))
                if other:
                    transversal.add((i_lab, j_lab))
                else:
                    inclusion.add((i_lab, j_lab))
    return CompatibilityGraph(subsets, edges, inclusion, transversal)


# -- eigenspace label multiplicities -------------------------------------------------------


def eigenspace_label_multiplicities(rep: Representation) -> dict[frozenset, int]:
    """Vertex-label multiplicities recovered from eigenspace dimensions.

    For each I the multiplicity is dim of the intersection of the
    -v_s^-1 eigenspaces over s in I, modulo the span of the deeper
    intersections with one extra generator.  All kernels are computed
    fraction-free over the Laurent ring.
    """
    eng = rep.engine
    n = eng.datum.rank
    d = rep.dim
    ident = LaurentMatrix.identity(d)

    kernels: dict[frozenset, list[list[LaurentPoly]]] = {}

    def kernel_of(i_lab: frozenset):
        if i_lab in kernels:
            return kernels[i_lab]
        if not i_lab:
            basis = [
                [ONE if j == i else ZERO for j in range(d)] for i in range(d)
            ]
            kernels[i_lab] = basis
            return basis
        rows = []
        for s in i_lab:
            ls = eng.generator_weight(s)
            cond = rep.gens[s] + ident.scale(LaurentPoly({-ls: 1}))
            rows.extend(cond.entries)
        basis = laurent_kernel(LaurentMatrix(len(rows), d, rows))
        kernels[i_lab] = basis
        return basis

    out: dict[frozenset, int] = {}
    subsets = []
    for rsize in range(n + 1):
        for combo in combinations(range(n), rsize):
            subsets.append(frozenset(combo))
    for i_lab in subsets:
        top = kernel_of(i_lab)
        dim_top = len(top)
        stacked = []
        for s in range(n):
            if s not in i_lab:
                stacked.extend(kernel_of(i_lab | {s}))
        if stacked:
            dim_sub = laurent_rank(LaurentMatrix(len(stacked), d, stacked))
        else:
            dim_sub = 0
        out[i_lab] = dim_top - dim_sub
    return {k: v for k, v in out.items() if v}


# -- JSON wire format ------------------------------------------------------------------------


def type_string_of(engine: GroupEngine) -> str:
    w = engine.datum.weights
    if all(x == 1 for x in w):
        return engine.datum.name
    return engine.datum.name + ":" + ",".join(str(x) for x in w)


def wgraph_to_json(g: WGraph) -> dict:
    verts = [
        {"id": i, "label": sorted(l)} for i, l in enumerate(g.labels)
    ]
    edges = [
        {"s": s, "from": y, "to": x, "weight": format_laurent(w)}
        for (s, x, y), w in sorted(g.edges.items())
    ]
    return {"group": type_string_of(g.engine), "vertices": verts, "edges": edges}


def wgraph_from_json(data: dict, engine: GroupEngine | None = None) -> WGraph:
    if engine is None:
        engine = build_group(data["group"])
    verts = sorted(data["vertices"], key=lambda v: v["id"])
    if [v["id"] for v in verts] != list(range(len(verts))):
        raise ValueError("vertex ids must be 0..n-1")
    labels = [frozenset(v["label"]) for v in verts]
    edges = {}
    for e in data["edges"]:
        edges[(e["s"], e["to"], e["from"])] = parse_laurent(e["weight"])
    return WGraph(engine, labels, edges)
