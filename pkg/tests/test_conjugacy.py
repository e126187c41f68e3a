"""Block-map inference, generators, and the conjugacy relations."""

import itertools
import random

import pytest

from oxtoby_lab import (
    chi,
    chi_equiv,
    conjugacy_test,
    dkl_search,
    dp_fin,
    f_t,
    infer_block_map,
    level_word,
    oxtoby_classic,
    oxtoby_offsets,
    parts_dp,
    relabel,
    shift_spec,
    validate_spec,
    verify_witness,
    window,
)
from oxtoby_lab._kernels import blank_mask
from oxtoby_lab.conjugacy import AGGREGATE_CONJUGATE, AGGREGATE_NOT_CONJUGATE, _rotate
from oxtoby_lab.errors import NotABijection, RelabelNotRepresentable, StructureMismatch
from tests.conftest import random_conjugate_image, random_go_spec

SWAP = {"0": "1", "1": "0"}


def mismatched_pair():
    """Same tower, different hole counts per p_1-period (and at horizon)."""
    left = oxtoby_classic(2, [4, 4], ["1", "0"])
    right = validate_spec(
        {
            "alphabet": ["0", "1"],
            "periods": [1, 4, 16],
            "fills": [
                {"level": 1, "assign": {"0": "1", "1": "1", "3": "1"}},
                {"level": 2, "assign": {"2": "0", "6": "0"}},
            ],
        }
    )
    return left, right


class TestRelabel:
    def test_identity(self, sox):
        assert relabel(sox, 1, {}) == sox
        assert relabel(sox, 1, {0: {"0": "0", "1": "1"}}) == sox

    def test_flip_at_residue_zero(self, sox):
        out = relabel(sox, 1, {0: SWAP})
        # only fill symbols at absolute residues = 0 (mod 4) change
        assert window(out, 1, 0, 4) == "0□□1"
        assert window(out, 2, 0, 16) == "00010□□10□□10001"

    def test_composition_is_identity(self, sox):
        rho = {0: SWAP, 2: SWAP}
        assert relabel(relabel(sox, 1, rho), 1, rho) == sox

    def test_rejects_non_bijection(self, sox):
        with pytest.raises(NotABijection):
            relabel(sox, 1, {0: {"0": "1"}})

    def test_fine_relabel_on_fine_fills(self, sox):
        # residue 1 (mod 16) is touched only by the level-2 fill, so a
        # level-2 relabeling may treat it independently
        image = relabel(sox, 2, {1: SWAP})
        assert image.fills[0] == sox.fills[0]
        assert image.fills[1].as_dict()[1] != sox.fills[1].as_dict()[1]
        found = dkl_search(sox, image, 1, 2)
        assert found is not None and found[0] == 2

    def test_splitting_relabel_rejected(self, sox):
        # residue 0 (mod 16) sits inside the level-1 fill class {0, 4, 8, 12};
        # swapping it alone cannot be realized over the same schedule
        with pytest.raises(RelabelNotRepresentable):
            relabel(sox, 2, {0: SWAP})

    def test_cellwise_semantics(self, sox):
        # relabeled level words are the cellwise images of the originals
        rho = {r: SWAP for r in range(4) if r % 2 == 0}
        image = relabel(sox, 1, rho)
        for t in range(1, sox.horizon + 1):
            orig = level_word(sox, t)
            got = level_word(image, t)
            for i in range(orig.period):
                c = orig.cell(i)
                if c == 0xFF:
                    assert got.is_blank(i)
                elif i % 4 in rho:
                    assert got.cell(i) == 1 - c
                else:
                    assert got.cell(i) == c


class TestShiftSpec:
    def test_zero_and_full_period(self, s0):
        assert shift_spec(s0, 0) == s0
        assert shift_spec(s0, s0.periods[-1]) == s0

    def test_worked_example(self, s0):
        out = shift_spec(s0, 1)
        assert out.fills[0].as_dict() == {0: 1}
        assert out.fills[1].as_dict() == {1: 0, 2: 0}

    def test_level_words_shift(self, sox):
        rng = random.Random(2)
        for _ in range(5):
            a = rng.randrange(sox.periods[-1])
            out = shift_spec(sox, a)
            for t in range(sox.horizon + 1):
                assert level_word(out, t) == level_word(sox, t).shifted(a)


class TestInferBlockMap:
    def test_identity(self, sox):
        v = infer_block_map(sox, sox, 1)
        assert v.is_yes
        assert all(s == d for s, d in v.witness.pairs)

    def test_relabel_round_trip(self, sox):
        image = relabel(sox, 1, {0: SWAP})
        v = infer_block_map(sox, image, 1)
        assert v.is_yes
        # witness re-applies cell-by-cell
        assert v.witness.apply_cells(sox.deep_word.cells) == image.deep_word.cells

    def test_hole_count_mismatch_is_no(self):
        left, right = mismatched_pair()
        v = infer_block_map(left, right, 1)
        assert v.is_no
        assert v.witness[0] == "blank-misalign"

    def test_structure_mismatch(self, s0, sox):
        with pytest.raises(StructureMismatch):
            infer_block_map(s0, sox, 1)


class TestDklSearch:
    def test_shifted_pair_found_at_full_period(self, sox):
        y = shift_spec(sox, 2)
        found = dkl_search(sox, y, 1, 2)
        assert found is not None
        t, a, bm = found
        assert (t, a) == (2, 14)  # a = -2 (mod p_2)
        assert verify_witness(sox, y, t, a, bm)

    def test_relabel_found_at_level_one(self, sox):
        y = relabel(sox, 1, {0: SWAP})
        found = dkl_search(sox, y, 1, 2)
        assert found is not None
        assert (found[0], found[1]) == (1, 0)

    def test_mismatched_pair_absent(self):
        left, right = mismatched_pair()
        assert dkl_search(left, right) is None
        # exhaustive confirmation: every (t, a) pairing conflicts
        from oxtoby_lab.conjugacy import _infer_cells

        for t in (1, 2):
            p = left.periods[t]
            for a in range(p):
                v = _infer_cells(
                    left.deep_word.cells,
                    _rotate(right.deep_word.cells, a),
                    p,
                    t,
                    left.horizon,
                )
                assert v.is_no


class TestPartsDp:
    def test_reflexive(self, sox):
        from oxtoby_lab import parts

        for d in parts(sox, 1):
            assert parts_dp(d, d, 1).is_yes

    def test_relabel_images_match(self, sox):
        from oxtoby_lab import parts

        image = relabel(sox, 1, {0: SWAP})
        pa = parts(sox, 1)
        pb = parts(image, 1)
        for a, b in zip(pa, pb):
            assert parts_dp(a, b, 1).is_yes

    def test_blank_pattern_mismatch_is_no(self):
        from oxtoby_lab import parts

        left, right = mismatched_pair()
        for a in parts(left, 1):
            for b in parts(right, 1):
                assert parts_dp(a, b, 1).is_no

    def test_symmetry(self, sox):
        from oxtoby_lab import parts

        image = shift_spec(relabel(sox, 1, {1: SWAP}), 3)
        for a in parts(sox, 1):
            for b in parts(image, 1):
                assert parts_dp(a, b, 1).status == parts_dp(b, a, 1).status


class TestDpFin:
    def test_equal_sets(self, sox):
        members = chi(sox, 2)
        assert dp_fin(members, members, 2).is_yes

    def test_empty_sets_match(self):
        assert dp_fin([], [], 2).is_yes

    def test_cardinality_mismatch(self, sox):
        members = chi(sox, 2)
        assert dp_fin(members, [], 2).is_no
        assert dp_fin([], members, 2).is_no


class TestChiEquiv:
    def test_reflexive(self, sox):
        assert chi_equiv(sox, sox, 2).is_yes

    def test_conjugate_pair_all_levels(self, sox3):
        rng = random.Random(61)
        image, _t, _a = random_conjugate_image(rng, sox3)
        for t in range(2, sox3.horizon + 1):
            assert chi_equiv(sox3, image, t).is_yes

    def test_mismatched_pair_all_no(self):
        left, right = mismatched_pair()
        assert chi_equiv(left, right, 2).is_no


class TestFt:
    def test_reflexive_for_generalized_oxtoby(self, sox):
        v = f_t(sox, sox, 1)
        assert v.is_yes
        assert v.witness[:2] == (0, 0)

    def test_relabel_pair_all_levels(self, sox):
        image = relabel(sox, 1, {0: SWAP})
        for t in (1, 2):
            assert f_t(sox, image, t).is_yes

    def test_mismatched_no(self):
        left, right = mismatched_pair()
        for t in (1, 2):
            assert f_t(left, right, t).is_no

    def test_symmetric_on_generated_corpus(self, sox):
        rng = random.Random(67)
        corpus = [sox]
        for _ in range(3):
            corpus.append(random_conjugate_image(rng, sox)[0])
        for x, y in itertools.combinations(corpus, 2):
            for t in (1, 2):
                assert f_t(x, y, t).status == f_t(y, x, t).status

    def test_transitive_on_decided_triples(self, sox):
        rng = random.Random(71)
        corpus = [sox] + [random_conjugate_image(rng, sox)[0] for _ in range(3)]
        left, right = mismatched_pair()
        corpus += [right, shift_spec(right, 5)]
        for t in (1, 2):
            table = {}
            for i, j in itertools.product(range(len(corpus)), repeat=2):
                table[i, j] = f_t(corpus[i], corpus[j], t)
            for i, j, k in itertools.product(range(len(corpus)), repeat=3):
                if table[i, j].is_yes and table[j, k].is_yes:
                    assert table[i, k].is_yes, (i, j, k, t)


class TestConjugacyTest:
    def test_self_is_conjugate(self, sox):
        rep = conjugacy_test(sox, sox)
        assert rep.aggregate == AGGREGATE_CONJUGATE
        assert rep.witness_verified
        t, a, bm = rep.dkl
        assert (t, a) == (1, 0)
        assert all(s == d for s, d in bm.pairs)

    def test_generated_image_is_conjugate(self, sox3):
        rng = random.Random(73)
        image, _t, _a = random_conjugate_image(rng, sox3)
        rep = conjugacy_test(sox3, image)
        assert rep.aggregate == AGGREGATE_CONJUGATE
        assert rep.witness_verified

    def test_mismatched_pair_report(self):
        left, right = mismatched_pair()
        rep = conjugacy_test(left, right)
        assert rep.aggregate == AGGREGATE_NOT_CONJUGATE
        assert all(v.is_no for _t, v in rep.ft_verdicts)
        assert all(v.is_no for _t, v in rep.chi_verdicts)
        assert rep.dkl is None

    def test_report_document_shape(self, sox):
        rep = conjugacy_test(sox, sox)
        doc = rep.to_document(sox.alphabet)
        assert doc["aggregate"] == AGGREGATE_CONJUGATE
        assert doc["levels"] == [1, 2]
        assert doc["witness"]["verified"] is True
        assert "disclaimer" in doc


def test_thread_cap_keeps_reports_identical(sox, monkeypatch):
    serial = conjugacy_test(sox, shift_spec(sox, 3))
    monkeypatch.setenv("OXTOBY_LAB_THREADS", "4")
    threaded = conjugacy_test(sox, shift_spec(sox, 3))
    assert serial == threaded


class TestWitnessInvariants:
    def test_yes_implies_blank_patterns_coincide(self, sox3):
        rng = random.Random(79)
        for _ in range(10):
            image, _t, _a = random_conjugate_image(rng, sox3)
            found = dkl_search(sox3, image)
            assert found is not None
            t, a, bm = found
            assert verify_witness(sox3, image, t, a, bm)
            assert blank_mask(sox3.deep_word.cells) == blank_mask(
                _rotate(image.deep_word.cells, a)
            )

    def test_generator_completeness(self):
        rng = random.Random(83)
        for _ in range(15):
            base = random_go_spec(rng, max_levels=3)
            image, _t, _a = random_conjugate_image(rng, base)
            found = dkl_search(base, image)
            assert found is not None
            t, a, bm = found
            assert a < base.periods[t]
            assert verify_witness(base, image, t, a, bm)

    def test_ft_witness_reapplies_exactly(self, sox):
        rng = random.Random(97)
        for _ in range(10):
            image, _t, _a = random_conjugate_image(rng, sox)
            for t in (1, 2):
                v = f_t(sox, image, t)
                assert v.is_yes
                a, b, bm = v.witness
                shifted_x = _rotate(sox.deep_word.cells, a)
                shifted_y = _rotate(image.deep_word.cells, b)
                assert bm.apply_cells(shifted_x) == shifted_y

    def test_oxtoby_transport(self, sox3):
        rng = random.Random(89)
        for _ in range(5):
            image, _t, _a = random_conjugate_image(rng, sox3)
            for t in range(1, sox3.horizon + 1):
                assert oxtoby_offsets(image, t)
