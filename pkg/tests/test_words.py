import pytest

from oxtoby_lab import Alphabet, PartialWord
from oxtoby_lab.errors import UnknownSymbol
from oxtoby_lab.words import BLANK, BLANK_GLYPH


def test_alphabet_basics():
    ab = Alphabet.of("0", "1")
    assert len(ab) == 2
    assert ab.index("1") == 1
    assert ab.symbol(0) == "0"
    assert "0" in ab and "x" not in ab
    with pytest.raises(UnknownSymbol):
        ab.index("2")


def test_alphabet_rejects_blank_and_duplicates():
    with pytest.raises(ValueError):
        Alphabet.of("0", "0")
    with pytest.raises(ValueError):
        Alphabet.of("0", BLANK_GLYPH)
    with pytest.raises(ValueError):
        Alphabet(())


def test_partial_word_modular_indexing():
    ab = Alphabet.of("0", "1")
    w = PartialWord.from_symbols(ab, [None, "1", None, None])
    assert w.period == 4
    assert w.cell(1) == 1
    assert w.cell(5) == 1
    assert w.is_blank(-1) and w.is_blank(400)
    assert w.render(ab) == "□1□□"
    assert w.render(ab, -2, 2) == "□□□1"


def test_shift_and_tile():
    ab = Alphabet.of("0", "1")
    w = PartialWord.from_symbols(ab, ["1", None, None, "1"])
    assert w.shifted(1).render(ab) == "□□11"
    assert w.shifted(3).render(ab) == "11□□"
    assert w.shifted(4) == w
    assert w.tiled(8).render(ab) == "1□□11□□1"
    with pytest.raises(ValueError):
        w.tiled(6)


def test_refines_order():
    ab = Alphabet.of("0", "1")
    coarse = PartialWord.from_symbols(ab, [None, "1", None, None])
    fine = PartialWord.from_symbols(ab, [None, "1", "0", "0", None, "1", None, None])
    assert fine.refines(coarse)
    assert not coarse.tiled(8).refines(fine)
    conflicting = PartialWord.from_symbols(ab, [None, "0", None, None, None, "1", None, None])
    assert not conflicting.refines(coarse)


def test_blank_bookkeeping():
    ab = Alphabet.of("0", "1")
    w = PartialWord.from_symbols(ab, [None, "1", "0", None])
    assert w.blank_residues() == (0, 3)
    assert w.blanks_in(0, 8) == [0, 3, 4, 7]
    assert w.blanks_in(-4, 0) == [-4, -1]
    assert w.defined_count == 2
    assert not w.fully_defined
    assert PartialWord.from_symbols(ab, ["0", "1"]).fully_defined
    assert PartialWord.blank(3).cells == bytes([BLANK] * 3)
