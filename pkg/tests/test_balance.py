"""Balancing: Gram forms, a-values, the degree-safe base change, leading
tables and per-block strictification."""

from fractions import Fraction

import pytest

from coxkl.balance import (
    a_value,
    balance,
    gram_invariant_form,
    is_balanced,
    leading_coefficients,
    strictify,
)
from coxkl.fixtures import catalogue, reflection_graph
from coxkl.laurent import LaurentMatrix, LaurentPoly
from coxkl.wgraph import WGraph, kl_left_cell_wgraphs, wgraph_matrices


def test_gram_form_trivial(a2):
    triv = WGraph(a2, [frozenset()], {})
    rep = wgraph_matrices(triv)
    form = gram_invariant_form(rep)
    # sum_w v^{2 l(w)}, normalized: 1 + 2v^2 + 2v^4 + v^6
    assert form.matrix.entries[0][0] == LaurentPoly({0: 1, 2: 2, 4: 2, 6: 1})
    assert not form.singular


def test_gram_form_invariance_extends_to_all_w(a2):
    g = reflection_graph(a2)
    rep = wgraph_matrices(g)
    omega = gram_invariant_form(rep).matrix
    for w in a2.elements:
        m = rep.t_matrix(w)
        mi = rep.t_matrix(w.inverse())
        assert omega @ m == mi.transpose() @ omega


def test_a_value_oracle(a2):
    # independent route: multiply the 2x2 reflection matrices explicitly and
    # minimize the trace valuation over the six elements
    g = reflection_graph(a2)
    rep = wgraph_matrices(g)
    words = [[], [0], [1], [0, 1], [1, 0], [0, 1, 0]]
    alpha = 0
    for word in words:
        m = LaurentMatrix.identity(2)
        for s in word:
            m = m @ rep.gens[s]
        v = m.trace().valuation()
        if v is not None:
            alpha = min(alpha, v)
    assert alpha == -1
    assert a_value(rep) == 1


def test_a_value_one_dims(a2):
    triv = wgraph_matrices(WGraph(a2, [frozenset()], {}))
    assert a_value(triv) == 0
    sign = wgraph_matrices(WGraph(a2, [frozenset({0, 1})], {}))
    assert a_value(sign) == a2.weight(a2.w0) == 3


def test_balance_already_balanced(a2):
    g = reflection_graph(a2)
    rep = wgraph_matrices(g)
    rep2, data = balance(rep)
    assert data.a_value == 1
    # pure residue-field step: Q is constant
    assert data.q.is_constant()
    ok, witness = is_balanced(rep2, 1)
    assert ok
    hist = data.degree_history
    assert all(a >= b for a, b in zip(hist, hist[1:]))


def test_balance_restores_scaled_conjugate(a3, kl_a3):
    for cgraph, _ in kl_left_cell_wgraphs(kl_a3):
        if cgraph.size < 2:
            continue
        rep = wgraph_matrices(cgraph)
        a = a_value(rep)
        d = rep.dim
        scale = LaurentMatrix.identity(d)
        scale_inv = LaurentMatrix.identity(d)
        scale.entries[0][0] = LaurentPoly({2: 1})
        scale_inv.entries[0][0] = LaurentPoly({-2: 1})
        twisted = rep.conjugate(scale, scale_inv)
        ok, witness = is_balanced(twisted, a)
        assert not ok and witness is not None
        rep2, data = balance(twisted)
        assert data.a_value == a
        ok2, _ = is_balanced(rep2, a)
        assert ok2
        hist = data.degree_history
        assert all(x >= y for x, y in zip(hist, hist[1:]))
        # Q Q^-1 = 1 and the conjugated form is the transported one
        assert data.q @ data.q_inv == LaurentMatrix.identity(d)
        break


def test_leading_coefficients(a2):
    triv = wgraph_matrices(WGraph(a2, [frozenset()], {}))
    table = leading_coefficients(triv, 0)
    assert set(table) == {a2.identity}
    assert table[a2.identity] == [[Fraction(1)]]
    sign = wgraph_matrices(WGraph(a2, [frozenset({0, 1})], {}))
    table = leading_coefficients(sign, 3)
    assert set(table) == {a2.w0}
    assert table[a2.w0] == [[Fraction(-1)]]
    refl = wgraph_matrices(reflection_graph(a2))
    table = leading_coefficients(refl, 1)
    s, t = a2.simple
    assert set(table) == {s, t, s * t, t * s}  # the middle two-sided cell
    with pytest.raises(ValueError):
        leading_coefficients(refl, 0)


def test_strictify_roundtrip(a2):
    # a repeated-label block: direct sum of two copies of the reflection
    # module, mixed inside one label block by a unitriangular constant matrix
    g = reflection_graph(a2)
    rep = wgraph_matrices(g)
    double = rep.direct_sum(rep)
    labels = list(g.labels) + list(g.labels)
    mix = [
        [Fraction(1), 0, Fraction(1), 0],
        [0, Fraction(1), 0, 0],
        [0, 0, Fraction(1), 0],
        [0, 0, 0, Fraction(1)],
    ]
    mix_inv = [
        [Fraction(1), 0, Fraction(-1), 0],
        [0, Fraction(1), 0, 0],
        [0, 0, Fraction(1), 0],
        [0, 0, 0, Fraction(1)],
    ]
    p = LaurentMatrix.from_scalar_rows(mix)
    p_inv = LaurentMatrix.from_scalar_rows(mix_inv)
    twisted = double.conjugate(p, p_inv)
    form = gram_invariant_form(twisted)
    res = form.matrix.residue()
    assert any(res[i][j] for i in range(4) for j in range(4) if i != j)
    rep2, form2, l_full = strictify(twisted, form, labels)
    res2 = form2.matrix.residue()
    assert all(not res2[i][j] for i in range(4) for j in range(4) if i != j)
    a = a_value(rep2)
    ok, _ = is_balanced(rep2, a)
    assert ok
    # strict-balance relation d_t c(w^-1)_{ts} = d_s c(w)_{st}
    d = [res2[i][i] for i in range(4)]
    table = leading_coefficients(rep2, a)
    for w, cw in table.items():
        cwi = table[w.inverse()]
        for s_i in range(4):
            for t_i in range(4):
                assert d[t_i] * cwi[t_i][s_i] == d[s_i] * cw[s_i][t_i]


def test_strictify_rejects_cross_block_mixing(a2):
    g = reflection_graph(a2)
    rep = wgraph_matrices(g)
    form = gram_invariant_form(rep)
    # claim a wrong grouping: both vertices share a label -> fine, block 2x2
    rep2, form2, _ = strictify(rep, form, [frozenset({0}), frozenset({0})])
    assert form2.matrix.residue()[0][1] == 0
    # but residues that genuinely cross distinct labels must be rejected
    bad = LaurentMatrix.from_scalar_rows(
        [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(2)]]
    )
    from coxkl.balance import InvariantForm

    with pytest.raises(ValueError):
        strictify(rep, InvariantForm(bad), list(g.labels))


def test_strictify_identity_on_diagonal_forms(a2):
    g = reflection_graph(a2)
    rep = wgraph_matrices(g)
    rep_b, data = balance(rep)
    rep2, form2, l_full = strictify(rep_b, data.form, list(g.labels))
    assert l_full == [[Fraction(1), 0], [0, Fraction(1)]]
    assert all(rep2.gens[s] == rep_b.gens[s] for s in range(2))


def test_a_value_invariant_under_constant_conjugation(a2):
    g = reflection_graph(a2)
    rep = wgraph_matrices(g)
    p = LaurentMatrix.from_scalar_rows([[Fraction(1), Fraction(2)], [0, Fraction(1)]])
    p_inv = LaurentMatrix.from_scalar_rows(
        [[Fraction(1), Fraction(-2)], [0, Fraction(1)]]
    )
    assert a_value(rep.conjugate(p, p_inv)) == a_value(rep)


def test_gram_block_diagonal_for_fixtures(b3):
    cat = catalogue()
    for name in ("b3_chi7", "b3_chi9", "b3_chi5"):
        g = cat[name]
        rep = wgraph_matrices(g)
        form = gram_invariant_form(rep)
        res = form.matrix.residue()
        for i in range(g.size):
            for j in range(g.size):
                if g.labels[i] != g.labels[j]:
                    assert not res[i][j], (name, i, j)
