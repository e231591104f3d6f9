"""Block structure of H-linear operators between W-graph modules.

Rows and columns of every matrix attached to a W-graph representation are
grouped by vertex label; blocks are indexed by subsets of S and ordered by
(|I| descending, then lexicographically).  The operations here verify the
diagonal congruence of v^L(w) rho(T_w), recover the label multiset from the
character, bound the a-invariant, compute intertwiner spaces fraction-free,
and certify that residue-level intertwiners are block diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .balance import a_value
from .coxeter import Element
from .laurent import LaurentMatrix, LaurentPoly, laurent_gcd
from .linalg import f_mat_is_zero, laurent_solve_kernel_matrices
from .scalars import scalar_inv
from .wgraph import Representation, WGraph, is_geck, omega_matrices, wgraph_matrices


def block_order_key(label: frozenset):
    return (-len(label), sorted(label))


@dataclass
class CongruenceReport:
    ok: bool
    failures: list[str]
    residue: list | None

    def __bool__(self):
        return self.ok


def tw_diagonal_congruence(g: WGraph, w: Element, word=None) -> CongruenceReport:
    """Check v^L(w) omega(T_w) is integral with residue diag(+-1 or 0).

    The diagonal residue at vertex x is (-1)^l(w) when every letter of the
    reduced word lies in I(x), and zero otherwise; the condition is
    independent of the chosen reduced word, which callers may pass in.
    """
    geck, diag = is_geck(g)
    if not geck:
        return CongruenceReport(False, ["not a Geck graph: " + "; ".join(diag)], None)
    eng = g.engine
    rep = wgraph_matrices(g)
    if word is None:
        word = eng.reduced_word(w)
    else:
        if eng.from_word(word) != w or len(word) != w.length():
            return CongruenceReport(False, ["word is not a reduced word of w"], None)
    m = LaurentMatrix.identity(g.size)
    for s in word:
        vs = LaurentPoly({eng.generator_weight(s): 1})
        m = m @ rep.gens[s].scale(vs)
    failures = []
    val = m.valuation()
    if val is not None and val < 0:
        return CongruenceReport(
            False, [f"v^L(w) omega(T_w) has a pole (valuation {val})"], None
        )
    res = m.residue()
    supp = frozenset(word)
    sign = -1 if w.length() % 2 else 1
    for i in range(g.size):
        expect = Fraction(sign) if supp <= g.labels[i] else Fraction(0)
        if res[i][i] != expect:
            failures.append(
                f"diagonal residue at vertex {i}: got {res[i][i]}, expected {expect}"
            )
        for j in range(g.size):
            if i != j and res[i][j]:
                failures.append(f"off-diagonal residue at ({i},{j}) is nonzero")
    return CongruenceReport(not failures, failures, res)


def label_multiset_from_character(rep: Representation) -> dict[frozenset, int]:
    """Recover {I(x)} with multiplicities from traces at parabolic longest
    elements, by downward inclusion-exclusion over label sets."""
    eng = rep.engine
    n = eng.datum.rank
    subsets = sorted(
        (frozenset(c) for c in _powerset(range(n))), key=lambda l: -len(l)
    )
    m_of: dict[frozenset, Fraction] = {}
    for j in subsets:
        wj = eng.longest_element(j)
        tr = rep.character(wj)
        shifted = tr * LaurentPoly({eng.weight(wj): 1})
        val = shifted.valuation()
        if val is not None and val < 0:
            raise ValueError(
                f"trace at the longest element of {sorted(j)} has a pole: "
                f"not a Geck W-graph character"
            )
        sign = -1 if wj.length() % 2 else 1
        m_of[j] = shifted.constant_term() * sign
    counts: dict[frozenset, int] = {}
    for j in subsets:  # largest first
        c = m_of[j] - sum(counts[k] for k in counts if j < k)
        if c != int(c) or c < 0:
            raise ValueError(
                f"multiplicity at {sorted(j)} is {c}: not a Geck W-graph character"
            )
        counts[j] = int(c)
    return {j: c for j, c in counts.items() if c}


def _powerset(items):
    items = list(items)
    n = len(items)
    for mask in range(1 << n):
        yield [items[i] for i in range(n) if mask >> i & 1]


@dataclass
class ABoundReport:
    ok: bool
    a_value: int
    bound: int
    slack: int

    def __bool__(self):
        return self.ok


def a_bound_check(rep: Representation, labels: dict[frozenset, int]) -> ABoundReport:
    """a >= max over occurring labels I of L(w_I), with the attained slack."""
    eng = rep.engine
    a = a_value(rep)
    bound = 0
    for label, count in labels.items():
        if count:
            bound = max(bound, eng.weight(eng.longest_element(label)))
    return ABoundReport(a >= bound, a, bound, a - bound)


def intertwiner_space(r1: Representation, r2: Representation) -> list[LaurentMatrix]:
    """Basis of {A : A rho_1(T_s) = rho_2(T_s) A for all s}, normalized.

    Solved by fraction-free elimination over the Laurent ring; each basis
    matrix is divided by v^nu(A) and by the lowest term of its first nonzero
    entry, giving canonical certificates.
    """
    if r1.engine is not r2.engine:
        raise ValueError("intertwiners need a common group")
    d1, d2 = r1.dim, r2.dim
    rows = []
    for s in range(r1.engine.datum.rank):
        g1, g2 = r1.gens[s], r2.gens[s]
        for i in range(d2):
            for j in range(d1):
                row = [LaurentPoly() for _ in range(d1 * d2)]
                for k in range(d1):
                    cur = row[i * d1 + k]
                    row[i * d1 + k] = cur + g1.entries[k][j]
                for k in range(d2):
                    cur = row[k * d1 + j]
                    row[k * d1 + j] = cur - g2.entries[i][k]
                rows.append(row)
    block = LaurentMatrix(len(rows), d1 * d2, rows)
    sols = laurent_solve_kernel_matrices([block], (d2, d1))
    return [normalize_intertwiner(a) for a in sols]


def normalize_intertwiner(a: LaurentMatrix) -> LaurentMatrix:
    """Canonical representative: content 1, valuation 0, first lowest term 1."""
    content = LaurentPoly()
    for row in a.entries:
        for e in row:
            if e:
                content = laurent_gcd(content, e)
    if content and content != LaurentPoly({0: 1}):
        a = LaurentMatrix(
            a.rows,
            a.cols,
            [[e.divexact(content) if e else e for e in row] for row in a.entries],
        )
    val = a.valuation()
    if val:
        a = a.scale(LaurentPoly({-val: 1}))
    for row in a.entries:
        for e in row:
            if e:
                lt = e.lowest_term()
                if lt != 1:
                    return a.scale(LaurentPoly({0: scalar_inv(lt)}))
                return a
    return a


@dataclass
class BlockReport:
    """Residue block analysis of a matrix grouped by row/column labels."""

    blocks_rows: list[tuple[frozenset, list[int]]]
    blocks_cols: list[tuple[frozenset, list[int]]]
    offdiag_residues: dict[tuple[frozenset, frozenset], list]
    triangular: bool
    diagonal: bool

    def __bool__(self):
        return self.diagonal


def block_report(
    a: LaurentMatrix,
    labels_rows: list[frozenset],
    labels_cols: list[frozenset],
) -> BlockReport:
    """Partition the residue of `a` into label blocks and test the two flags.

    Triangularity: a nonzero residue block forces row-label containing
    column-label.   Diagonality: off-label blocks vanish identically.
    Requires nu(a) = 0 and matching index partitions.
    """
    if len(labels_rows) != a.rows or len(labels_cols) != a.cols:
        raise ValueError("label lists must match the matrix dimensions")
    val = a.valuation()
    if val is None or val != 0:
        raise ValueError("block analysis expects a matrix of valuation 0")
    res = a.residue()
    rgroups: dict[frozenset, list[int]] = {}
    for i, l in enumerate(labels_rows):
        rgroups.setdefault(l, []).append(i)
    cgroups: dict[frozenset, list[int]] = {}
    for j, l in enumerate(labels_cols):
        cgroups.setdefault(l, []).append(j)
    rlabs = sorted(rgroups, key=block_order_key)
    clabs = sorted(cgroups, key=block_order_key)
    offdiag = {}
    triangular = True
    diagonal = True
    for rl in rlabs:
        for cl in clabs:
            block = [[res[i][j] for j in cgroups[cl]] for i in rgroups[rl]]
            if rl == cl:
                continue
            offdiag[(rl, cl)] = block
            if not f_mat_is_zero(block):
                diagonal = False
                # triangularity allows a nonzero block only when the row
                # label strictly contains the column label
                if not (cl < rl):
                    triangular = False
    if diagonal and not triangular:
        raise AssertionError("flag inconsistency: diagonal but not triangular")
    return BlockReport(
        [(l, rgroups[l]) for l in rlabs],
        [(l, cgroups[l]) for l in clabs],
        offdiag,
        triangular,
        diagonal,
    )


@dataclass
class OmegaCertificate:
    matrix: LaurentMatrix
    residuals: dict[str, int]
    ok: bool
    note: str = ""

    def __bool__(self):
        return self.ok


def omega_iso_certificate(g1: WGraph, g2: WGraph) -> OmegaCertificate | None:
    """A constant intertwiner conjugating all idempotent/arrow matrices.

    Returns None when no intertwiner exists (different characters).  When an
    intertwiner exists but no normalized one is constant over F, a failed
    certificate is returned with a note (that situation would contradict the
    rigidity statement and is surfaced, never silently passed).
    """
    ok1, d1 = is_geck(g1)
    ok2, d2 = is_geck(g2)
    if not ok1 or not ok2:
        raise ValueError("both inputs must be Geck graphs: " + "; ".join(d1 + d2))
    if g1.size != g2.size:
        return None
    r1 = wgraph_matrices(g1)
    r2 = wgraph_matrices(g2)
    basis = intertwiner_space(r1, r2)
    if not basis:
        return None
    constant = [a for a in basis if a.is_constant()]
    if not constant:
        return OmegaCertificate(
            basis[0],
            {},
            False,
            "intertwiner exists but is not constant over F after "
            "normalization: H-isomorphic, Omega-certificate failed",
        )
    om1 = omega_matrices(g1)
    om2 = omega_matrices(g2)
    best = None
    for a in constant:
        residuals = {}
        n = g1.engine.datum.rank
        for s in range(n):
            diff_e = (a @ om1.e[s]) - (om2.e[s] @ a)
            diff_x = (a @ om1.x[s]) - (om2.x[s] @ a)
            residuals[f"e_{s}"] = sum(
                1 for row in diff_e.entries for e in row if e
            )
            residuals[f"x_{s}"] = sum(
                1 for row in diff_x.entries for e in row if e
            )
        cert = OmegaCertificate(a, residuals, all(v == 0 for v in residuals.values()))
        if cert.ok:
            return cert
        best = cert
    return best
