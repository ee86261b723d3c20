import pytest
from hypothesis import given, strategies as st

from qred.ordinals import (
    ZERO,
    ONE,
    OMEGA,
    Ordinal,
    block_start,
    compare,
    from_int,
    hessenberg,
    hessenberg_inv,
    limit_approx,
    omega_power,
    pair_succ,
    parse,
    sup_of,
    triple_code,
    triple_decode,
)
from oracles import cnf_add, cnf_compare, maxlex_compare_pairs, maxlex_pairs

W = omega_power


def ords(max_exp=3, max_coeff=3):
    """A small corpus of ordinals below w^4 covering shapes we care about."""
    out = [ZERO, ONE, from_int(2), from_int(5), OMEGA]
    out += [
        OMEGA + 1,
        OMEGA + 3,
        W(1, 2),
        W(1, 2) + 1,
        W(1, 3),
        W(2),
        W(2) + OMEGA,
        W(2) + W(1, 2) + 4,
        W(2, 2),
        W(2, 3) + W(1, 1) + 2,
        W(3),
        W(3, 2) + W(2) + 5,
    ]
    return out


class TestCompare:
    def test_examples(self):
        assert compare(ZERO, ZERO) == 0
        assert compare(from_int(3), OMEGA) == -1
        assert compare(W(1, 2) + 1, W(1, 3)) == -1

    def test_against_oracle(self):
        corpus = ords()
        for a in corpus:
            for b in corpus:
                assert compare(a, b) == cnf_compare(a, b), (a, b)

    def test_total_order_on_naturals(self):
        vals = [from_int(n) for n in range(30)]
        for i, a in enumerate(vals):
            for j, b in enumerate(vals):
                assert compare(a, b) == (i > j) - (i < j)


class TestAdd:
    def test_examples(self):
        assert from_int(3) + OMEGA == OMEGA
        assert OMEGA + 3 == Ordinal(((1, 1), (0, 3)))
        assert (W(1, 2) + 1) + OMEGA == W(1, 3)

    def test_against_merge_oracle(self):
        corpus = ords()
        for a in corpus:
            for b in corpus:
                assert a + b == cnf_add(a, b)

    def test_associative(self):
        corpus = ords()[:10]
        for a in corpus:
            for b in corpus:
                for c in corpus:
                    assert (a + b) + c == a + (b + c)

    @given(st.integers(0, 500), st.integers(0, 500))
    def test_matches_naturals(self, n, m):
        assert from_int(n) + from_int(m) == from_int(n + m)


class TestMul:
    def test_by_naturals(self):
        assert W(1, 2) * 2 == W(1, 4)
        assert (OMEGA + 1) * 2 == W(1, 2) + 1
        assert (W(2) + OMEGA) * 3 == W(2, 3) + OMEGA

    def test_by_omega_powers(self):
        assert W(1, 5) * OMEGA == W(2)
        assert (W(2, 2) + 3) * W(1) == W(3)

    @given(st.integers(0, 40), st.integers(0, 40))
    def test_matches_naturals(self, n, m):
        assert from_int(n) * from_int(m) == from_int(n * m)


class TestSup:
    def test_examples(self):
        assert sup_of([ZERO]) == ZERO
        assert sup_of([from_int(2), OMEGA, from_int(5)]) == OMEGA
        assert sup_of([OMEGA + 1, W(1, 2)]) == W(1, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            sup_of([])


class TestBlockStart:
    """Validate the closed form against the two defining clauses."""

    def test_naturals_by_iterated_successor_clause(self):
        acc = ZERO
        for n in range(200):
            assert block_start(from_int(n)) == acc
            acc = acc + from_int(n) * 2 + ONE

    def test_successor_clause_symbolically(self):
        for mu in ords():
            assert block_start(mu + ONE) == block_start(mu) + mu * 2 + ONE, mu

    def test_limit_clause_monotone_approach(self):
        limits = [OMEGA, W(1, 2), W(1, 3), W(2), W(2) + OMEGA, W(2, 2), W(3)]
        for lam in limits:
            vals = [block_start(limit_approx(lam, m)) for m in range(1, 12)]
            target = block_start(lam)
            for v, w in zip(vals, vals[1:]):
                assert v <= w
            assert all(v < target for v in vals)

    def test_limit_clause_dominates_probes(self):
        # every proper approximation of block_start(lam) is eventually passed
        for lam in [OMEGA, W(1, 2), W(2), W(2) + OMEGA]:
            target = block_start(lam)
            for k in range(1, 8):
                probe = limit_approx(target, k) if target.is_limit() else target.pred()
                assert any(
                    block_start(limit_approx(lam, m)) >= probe for m in range(1, 64)
                ), (lam, probe)

    def test_known_values(self):
        assert block_start(OMEGA) == OMEGA
        assert block_start(W(1, 2)) == W(2)
        assert block_start(W(2)) == W(3)


class TestPairing:
    def test_trivial(self):
        assert hessenberg(ZERO, ZERO) == ZERO

    def test_rank_oracle_on_naturals(self):
        ordered = maxlex_pairs(40)
        for rank, (a, b) in enumerate(ordered):
            assert hessenberg(from_int(a), from_int(b)) == from_int(rank), (a, b)

    def test_examples(self):
        assert hessenberg(from_int(2), ONE) == from_int(7)
        assert hessenberg(OMEGA, ONE) == W(1, 2) + 1

    def test_order_agreement(self):
        corpus = ords()
        pairs = [(a, b) for a in corpus for b in corpus]
        for p in pairs:
            for q in pairs[::3]:
                got = compare(hessenberg(*p), hessenberg(*q))
                assert got == maxlex_compare_pairs(p, q), (p, q)

    def test_dominates_components(self):
        corpus = ords()
        for a in corpus:
            for b in corpus:
                assert hessenberg(a, b) >= sup_of([a, b])

    def test_inverse_round_trip(self):
        corpus = ords()
        for a in corpus:
            for b in corpus:
                assert hessenberg_inv(hessenberg(a, b)) == (a, b)

    def test_inverse_total_on_initial_segment(self):
        for h in range(300):
            a, b = hessenberg_inv(from_int(h))
            assert hessenberg(a, b) == from_int(h)


class TestPairSucc:
    def test_examples(self):
        assert pair_succ(ZERO, ZERO) == ONE
        assert pair_succ(ONE, ONE) == from_int(4)

    def test_always_successor(self):
        for a in ords():
            for b in ords():
                assert pair_succ(a, b).is_successor()

    def test_bijection_onto_positive_naturals(self):
        hit = set()
        for a in range(40):
            for b in range(40):
                v = pair_succ(from_int(a), from_int(b))
                if v <= from_int(1600):
                    assert v.to_int() not in hit
                    hit.add(v.to_int())
        assert hit == set(range(1, 1601))


class TestTriple:
    def test_zero(self):
        assert triple_code(ZERO, ZERO, ZERO) == ZERO

    def test_example(self):
        assert triple_code(ONE, ZERO, ZERO) == hessenberg(ONE, ZERO)

    def test_round_trip(self):
        corpus = [ZERO, ONE, from_int(2), from_int(3), OMEGA, W(1, 2) + 1]
        for a in corpus:
            for b in corpus:
                for c in corpus:
                    assert triple_decode(triple_code(a, b, c)) == (a, b, c)


class TestSerialization:
    def test_text_round_trip(self):
        for x in ords():
            assert parse(x.text()) == x

    def test_text_examples(self):
        assert (W(2, 3) + OMEGA + 5).text() == "w^2*3+w+5"
        assert ZERO.text() == "0"

    def test_json_round_trip(self):
        for x in ords():
            assert Ordinal.from_json(x.to_json()) == x

    def test_invalid_rejected(self):
        with pytest.raises(ValueError):
            Ordinal(((0, 1), (1, 1)))
        with pytest.raises(ValueError):
            Ordinal(((1, 0),))
