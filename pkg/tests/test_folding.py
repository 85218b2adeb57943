import pytest

from alcovewalks.affine import AffineRoot, AffineWeylGroup, WordError, is_uminus_positive
from alcovewalks.cartan import FiniteRoot, from_label
from alcovewalks.folding import (
    CountPolynomial,
    StepKind,
    StepOptions,
    cells_by_endpoint,
    count_polynomial,
    enumerate_folded_paths,
    paths_to_json,
    step_options,
)


def a1():
    return AffineWeylGroup(from_label("A1"))


def a2():
    return AffineWeylGroup(from_label("A2"))


LONG_WALK_WORD = (2, 1, 0, 2, 0, 1, 0, 2, 0)


def test_step_options_at_identity():
    g = a2()
    assert step_options(g, g.identity(), 1) is StepOptions.BRANCH
    assert step_options(g, g.identity(), 0) is StepOptions.FORCED_POSITIVE


def test_step_options_mid_walk():
    # after the first four crossings of the long walk, the affine letter branches
    g = a2()
    v = g.from_word((2, 1, 0, 2))
    assert v.act(g.simple_affine_root(0)) == AffineRoot(FiniteRoot((1, 0)), 0)
    assert step_options(g, v, 0) is StepOptions.BRANCH


def test_single_forced_step():
    g = a1()
    paths = enumerate_folded_paths(g, (0,))
    assert len(paths) == 1
    (p,) = paths
    assert p.kinds == (StepKind.POSITIVE_CROSSING,)
    assert p.endpoint == g.simple_reflection(0)
    assert p.walls == (g.simple_affine_root(0),)


def test_single_branch_step_fold_first():
    g = a1()
    paths = enumerate_folded_paths(g, (1,))
    assert len(paths) == 2
    fold, zero = paths
    assert fold.kinds == (StepKind.FOLD,)
    assert fold.endpoint.is_identity()
    assert zero.kinds == (StepKind.ZERO_CROSSING,)
    assert zero.endpoint == g.simple_reflection(1)
    # both record the uminus-positive wall -alpha_1
    assert fold.walls == zero.walls == (AffineRoot(FiniteRoot((-1,)), 0),)


def test_alcove_sequences_follow_kinds():
    g = a2()
    for p in enumerate_folded_paths(g, (0, 1, 2)):
        assert p.alcoves[0].is_identity()
        v = g.identity()
        for step, kind in enumerate(p.kinds):
            if kind is StepKind.FOLD:
                assert p.alcoves[step + 1] == v
            else:
                v = v * g.simple_reflection(p.type_word[step])
                assert p.alcoves[step + 1] == v
        assert p.endpoint == v


def test_walls_always_uminus_positive():
    g = a2()
    for word in [(0,), (1, 0), (2, 1, 0, 2), LONG_WALK_WORD]:
        for p in enumerate_folded_paths(g, word):
            assert all(is_uminus_positive(w) for w in p.walls)


def test_long_walk_unique_path():
    g = a2()
    target = g.from_word((2, 1, 0, 2, 1, 2, 0))
    matching = [p for p in enumerate_folded_paths(g, LONG_WALK_WORD) if p.endpoint == target]
    assert len(matching) == 1
    (p,) = matching
    assert "".join(k.value for k in p.kinds) == "ZZZZFZFPZ"
    assert count_polynomial(p).coeffs == (0, 1, -2, 1)
    assert str(count_polynomial(p)) == "q^3-2q^2+q"
    assert p.dimension == 3


def test_count_polynomial_basics():
    g = a1()
    (forced,) = enumerate_folded_paths(g, (0,))
    assert str(count_polynomial(forced)) == "q"
    fold, zero = enumerate_folded_paths(g, (1,))
    assert str(count_polynomial(fold)) == "q-1"
    assert str(count_polynomial(zero)) == "1"


def test_count_polynomial_algebra():
    q = CountPolynomial.q_power(1)
    one = CountPolynomial.one()
    qm1 = q + CountPolynomial.make([-1])
    assert (qm1 * qm1).coeffs == (1, -2, 1)
    assert str(CountPolynomial.zero()) == "0"
    assert str(one) == "1"
    assert qm1.evaluate(7) == 6
    assert CountPolynomial.make([0, 1, -2, 1]).evaluate(3) == 12


def test_cells_by_endpoint_a1():
    g = a1()
    cells = cells_by_endpoint(g, (1,))
    by_word = {g.reduced_word(end): str(cell.count) for end, cell in cells.items()}
    assert by_word == {(): "q-1", (1,): "1"}
    cells0 = cells_by_endpoint(g, (0,))
    assert [str(c.count) for c in cells0.values()] == ["q"]
    assert list(cells0) == [g.simple_reflection(0)]


def test_sum_rule_small():
    for group, max_len in [(a1(), 6), (a2(), 4)]:
        for elem, ell in group.ball(max_len).items():
            for word in group.all_reduced_words(elem, cap=max_len):
                total = CountPolynomial.zero()
                for cell in cells_by_endpoint(group, word).values():
                    total = total + cell.count
                assert total == CountPolynomial.q_power(ell)


def test_endpoint_length_parity_and_fold_free_path():
    g = a2()
    for word in [(0,), (0, 1), (2, 1, 0, 2), LONG_WALK_WORD[:6]]:
        w = g.from_word(word)
        paths = enumerate_folded_paths(g, word)
        fold_free = [p for p in paths if p.count(StepKind.FOLD) == 0]
        assert len(fold_free) == 1
        assert fold_free[0].endpoint == w
        assert all(p.endpoint != w for p in paths if p.count(StepKind.FOLD) > 0)
        for p in paths:
            ell_end = g.length(p.endpoint)
            folds = p.count(StepKind.FOLD)
            assert ell_end <= len(word) - folds
            assert (ell_end - (len(word) - folds)) % 2 == 0


def test_reduced_word_independence_spot():
    g = a2()
    elem = g.from_word((0, 1, 0))  # braid-equal to (1, 0, 1)
    words = g.all_reduced_words(elem, cap=4)
    assert set(words) == {(0, 1, 0), (1, 0, 1)}
    reference = {
        end: cell.count for end, cell in cells_by_endpoint(g, words[0]).items()
    }
    for word in words[1:]:
        got = {end: cell.count for end, cell in cells_by_endpoint(g, word).items()}
        assert got == reference


def test_nonreduced_rejected_and_override():
    g = a1()
    with pytest.raises(WordError):
        enumerate_folded_paths(g, (1, 1))
    paths = enumerate_folded_paths(g, (1, 1), allow_nonreduced=True)
    assert ["".join(k.value for k in p.kinds) for p in paths] == ["FF", "FZ", "ZP"]
    doc = paths_to_json(g, (1, 1), cells_by_endpoint(g, (1, 1), allow_nonreduced=True), nonreduced=True)
    assert "warning" in doc


def test_invalid_letter():
    g = a1()
    with pytest.raises(WordError):
        enumerate_folded_paths(g, (2,))


def test_jobs_do_not_change_output():
    g = a2()
    base = enumerate_folded_paths(g, LONG_WALK_WORD)
    for jobs in (2, 4, 7):
        assert enumerate_folded_paths(g, LONG_WALK_WORD, jobs=jobs) == base
    assert cells_by_endpoint(g, LONG_WALK_WORD, jobs=3) == cells_by_endpoint(g, LONG_WALK_WORD)


def test_paths_json_shape():
    g = a1()
    doc = paths_to_json(g, (1,), cells_by_endpoint(g, (1,)))
    assert doc["type_word"] == [1]
    assert len(doc["paths"]) == 2
    for entry in doc["paths"]:
        assert set(entry) == {"kinds", "end", "walls", "count", "dim"}
    assert [e["count"] for e in doc["by_endpoint"]] == [[-1, 1], [1]]


def test_sum_rule_other_cartan_types():
    # the combinatorial layer is not limited to type A
    for label in ("B2", "G2"):
        group = AffineWeylGroup(from_label(label))
        for elem, ell in group.ball(3).items():
            for word in group.all_reduced_words(elem, cap=3):
                total = CountPolynomial.zero()
                for cell in cells_by_endpoint(group, word).values():
                    total = total + cell.count
                assert total == CountPolynomial.q_power(ell)
