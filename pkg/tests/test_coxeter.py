"""Group engine: enumeration, descents, Bruhat algorithms, weights.

Bruhat order facts are cross-checked against a brute-force subword oracle
that enumerates all subwords of a reduced expression.
"""

from itertools import combinations

import pytest

from coxkl.coxeter import build_group, parse_type_string, recognize_type


def subword_oracle(eng, y, w):
    """y <= w iff a subword of one fixed reduced word of w multiplies to y."""
    word = eng.reduced_word(w)
    for k in range(len(word) + 1):
        for idx in combinations(range(len(word)), k):
            if eng.from_word([word[i] for i in idx]) == y:
                return True
    return False


def test_build_group_orders():
    assert build_group("A3").order == 24
    assert build_group("I2(5)").order == 10
    g = build_group("B3:2,1,1")
    assert g.order == 48
    assert g.datum.weights == [2, 1, 1]


def test_unknown_types_rejected():
    for bad in ("E6", "Z4", "A0", "I2(7)", "H4", "B9"):
        with pytest.raises(ValueError):
            build_group(bad)
    with pytest.raises(ValueError):
        build_group("A2:1")  # wrong number of weights
    with pytest.raises(ValueError):
        build_group("A2:1,2")  # odd bond forces equal weights


def test_left_descents(a2):
    s, t = a2.simple
    assert a2.left_descent_set(a2.identity) == frozenset()
    assert a2.left_descent_set(a2.w0) == frozenset({0, 1})
    # frozen from word enumeration: the only left descent of st is s
    assert a2.left_descent_set(s * t) == frozenset({0})


def test_canonical_ascent_tree(a2, a3):
    assert sorted(a2.canonical_left_ascent_set(a2.identity)) == [0, 1]
    assert a2.canonical_left_ascent_set(a2.w0) == []
    # the tree visits each element exactly once
    for eng in (a2, a3):
        seen = {eng.identity}
        stack = [eng.identity]
        while stack:
            w = stack.pop()
            for s in eng.canonical_left_ascent_set(w):
                child = eng.simple[s] * w
                assert child not in seen
                seen.add(child)
                stack.append(child)
        assert len(seen) == eng.order


def test_bruhat_basics(a2):
    s, t = a2.simple
    for w in a2.elements:
        assert a2.bruhat_le(a2.identity, w)
        assert a2.bruhat_le(w, w)
    assert a2.bruhat_le(s, t * s * t)  # frozen from subword enumeration
    assert not a2.bruhat_le(a2.w0, s)


def test_bruhat_matches_oracle(a3):
    for y in a3.elements:
        for w in a3.elements:
            assert a3.bruhat_le(y, w) == subword_oracle(a3, y, w), (y, w)


def test_lifting_property(a3):
    for w in a3.elements:
        dl = a3.left_descent_set(w)
        if not dl:
            continue
        s = min(dl)
        sw = a3.simple[s] * w
        for y in a3.elements:
            if s in a3.left_descent_set(y):
                expected = a3.bruhat_le(a3.simple[s] * y, sw)
            else:
                expected = a3.bruhat_le(y, sw)
            assert a3.bruhat_le(y, w) == expected


def test_bruhat_subword(a2, a3):
    s, t = a2.simple
    flags, word = a2.bruhat_subword(a2.identity, a2.w0)
    assert not any(flags) and a2.from_word(word) == a2.w0
    flags, word = a2.bruhat_subword(s * t, s * t)
    assert all(flags)
    sts = s * t * s
    res = a2.bruhat_subword(s, sts)
    assert res is not None
    flags, word = res
    assert len(word) == sts.length() and a2.from_word(word) == sts
    assert a2.from_word([g for g, f in zip(word, flags) if f]) == s
    # deletion consistency on all A3 pairs
    for y in a3.elements:
        for w in a3.elements:
            res = a3.bruhat_subword(y, w)
            if res is None:
                assert not a3.bruhat_le(y, w)
                continue
            flags, word = res
            assert len(word) == w.length()
            assert a3.from_word(word) == w
            sub = [g for g, f in zip(word, flags) if f]
            assert a3.from_word(sub) == y
            assert len(sub) == y.length()


def test_bruhat_interval(a2, a3):
    s, t = a2.simple
    assert a2.bruhat_interval(a2.identity, a2.w0) == set(a2.elements)
    assert a2.bruhat_interval(s, s) == {s}
    # frozen from the subword oracle: [s, sts] = {s, st, ts, sts}
    assert a2.bruhat_interval(s, s * t * s) == {s, s * t, t * s, s * t * s}
    for y in a3.elements:
        for w in a3.elements:
            got = a3.bruhat_interval(y, w)
            expected = {
                z
                for z in a3.elements
                if a3.bruhat_le(y, z) and a3.bruhat_le(z, w)
            }
            assert got == expected, (y, w)


def test_longest_elements(a2):
    assert a2.longest_element([]) == a2.identity
    assert a2.longest_element([0]) == a2.simple[0]
    w = a2.longest_element([0, 1])
    assert w == a2.w0 and w.length() == 3  # frozen: exhaustive max over W
    assert w * w == a2.identity
    for x in a2.elements:
        assert (x * a2.w0).length() == a2.w0.length() - x.length()


def test_weights(b3w):
    assert b3w.weight(b3w.identity) == 0
    s0, s1, s2 = b3w.simple
    assert b3w.weight(s0 * s1) == 3
    # additivity on length-additive products
    for u in b3w.elements[:12]:
        for v in b3w.elements[:12]:
            uv = u * v
            if uv.length() == u.length() + v.length():
                assert b3w.weight(uv) == b3w.weight(u) + b3w.weight(v)


def test_equal_parameter_weight_is_length(a3):
    for w in a3.elements:
        assert a3.weight(w) == w.length()


def test_inverse_and_length(b3):
    for w in b3.elements:
        assert w.inverse().length() == w.length()
        assert (w * w.inverse()) == b3.identity


def test_type_string_parsing():
    assert parse_type_string("I2(5)")[0] == "I2(5)"
    name, matrix, weights = parse_type_string("B3:2,1,1")
    assert name == "B3" and weights == [2, 1, 1]
    assert matrix[0][1] == 4


def test_recognize_type():
    ts, perm = recognize_type([[1, 3], [3, 1]])
    assert ts == "A2"
    ts, perm = recognize_type([[1, 4], [4, 1]])
    assert ts in ("B2", "I2(4)")
    assert recognize_type([[1, 2], [2, 1]]) is None  # disconnected A1 x A1
