import pytest

from rootring.abelian import FinAbGroup
from rootring.commrel import extract
from rootring.corpus import standard_corpus, zero_entry
from rootring.errors import FileFormatError, PreconditionFailed
from rootring.fileformat import (dump_commrel, dump_ring, load_commrel,
                                 load_ring, read_ring, write_ring)
from rootring.rings import FinRing, mat_ring


def test_ring_roundtrip_on_corpus():
    for entry in standard_corpus():
        text = dump_ring(entry.ring)
        back = load_ring(text)
        assert back.rank == entry.ring.rank
        assert back.modulus == entry.ring.modulus
        assert back.blocks == entry.ring.blocks
        assert back.tables == entry.ring.tables
        assert dump_ring(back) == text


def test_commrel_roundtrip_on_corpus():
    for entry in standard_corpus():
        D = extract(entry.ring)
        text = dump_commrel(D)
        back = load_commrel(text)
        assert back == D
        assert dump_commrel(back) == text


def test_canonical_line_order():
    text = dump_ring(mat_ring(3, FinRing.zmod(2)))
    lines = text.splitlines()
    assert lines[0] == "peirce rank=3 modulus=2"
    blocks = [l for l in lines if l.startswith("block")]
    mults = [l for l in lines if l.startswith("mult")]
    assert blocks == sorted(blocks)
    assert mults == sorted(mults)
    assert lines == lines[:1] + blocks + mults
    assert text.endswith("\n")


def test_reader_accepts_shuffled_lines_writer_restores_order():
    text = dump_ring(mat_ring(2, FinRing.zmod(3)))
    lines = text.splitlines()
    shuffled = "\n".join([lines[0]] + lines[:0:-1]) + "\n"
    assert dump_ring(load_ring(shuffled)) == text


def test_absent_lines_mean_zero():
    R = load_ring("peirce rank=3 modulus=4\nblock 1 2: 4\nblock 2 3: 2\n")
    assert R.blocks[(0, 1)].orders == (4,)
    assert R.blocks[(0, 0)].order == 1
    assert R.tables == {}
    x = R.embed(0, 1, (1,))
    y = R.embed(1, 2, (1,))
    assert R.mul(x, y) == R.additive.zero


def test_zero_products_are_not_written():
    text = dump_ring(zero_entry(4, 2).ring)
    assert "mult" not in text
    assert len([l for l in text.splitlines() if l.startswith("block")]) == 16


def test_missing_modules_default_to_trivial():
    D = load_commrel("commrel rank=4 modulus=2\nmodule 1 2: 2\n")
    assert D.module(0, 1).orders == (2,)
    assert D.module(2, 3).order == 1
    assert D.cmaps == {}


@pytest.mark.parametrize("text, hint", [
    ("", "line 1"),
    ("peirce rank=4\n", "line 1"),
    ("commrel rank=4 modulus=2\n", "peirce"),
    ("peirce rank=0 modulus=2\n", "rank"),
    ("peirce rank=4 modulus=1\n", "modulus"),
    ("peirce rank=4 modulus=2\nmodule 1 2: 2\n", "module"),
    ("peirce rank=4 modulus=2\nblock 1 5: 2\n", "out of range"),
    ("peirce rank=4 modulus=2\nblock 1 1: 2\nblock 1 1: 2\n", "duplicate"),
    ("peirce rank=4 modulus=2\nblock 1 1: 0\n", "positive"),
    ("peirce rank=4 modulus=2\nnonsense\n", "cannot parse"),
    ("peirce rank=4 modulus=2\nblock 1 1: 2\n"
     "mult 1 1 1: (1,1) -> 1\nmult 1 1 1: (1,1) -> 1\n", "duplicate"),
    ("peirce rank=4 modulus=2\nblock 1 1: 2\n"
     "mult 1 1 1: (2,1) -> 1\n", "out of range"),
    ("peirce rank=4 modulus=2\nblock 1 1: 2,2\n"
     "mult 1 1 1: (1,1) -> 1\n", "coordinates"),
])
def test_shape_errors(text, hint):
    with pytest.raises(FileFormatError) as exc:
        load_ring(text)
    assert hint in str(exc.value)


def test_commrel_shape_errors():
    with pytest.raises(FileFormatError, match="differ"):
        load_commrel("commrel rank=4 modulus=2\nmodule 1 1: 2\n")
    with pytest.raises(FileFormatError, match="distinct"):
        load_commrel("commrel rank=4 modulus=2\nmodule 1 2: 2\n"
                     "module 2 1: 2\ncmap 1 2 1: (1,1) -> 1\n")


def test_semantic_errors_are_preconditions():
    # associativity fails: a*a = b and a*b = a force (aa)a != a(aa)
    bad = ("peirce rank=1 modulus=2\nblock 1 1: 2,2\n"
           "mult 1 1 1: (1,1) -> 0,1\nmult 1 1 1: (1,2) -> 1,0\n")
    with pytest.raises(PreconditionFailed, match="associative"):
        load_ring(bad)
    with pytest.raises(PreconditionFailed, match="modulus"):
        load_ring("peirce rank=1 modulus=2\nblock 1 1: 4\n")


def test_values_are_reduced_on_load():
    R = load_ring("peirce rank=2 modulus=2\nblock 1 2: 2\nblock 2 1: 2\n"
                  "block 1 1: 2\nblock 2 2: 2\n"
                  "mult 1 2 1: (1,1) -> 3\nmult 2 1 2: (1,1) -> 1\n")
    assert R.tables[(0, 1, 0)] == {(0, 0): (1,)}


def test_path_helpers(tmp_path):
    R = mat_ring(4, FinRing.zmod(3))
    p = tmp_path / "m.ring"
    write_ring(R, str(p))
    assert read_ring(str(p)).tables == R.tables
    binary = tmp_path / "junk.ring"
    binary.write_bytes(b"\xff\xfe\x00")
    with pytest.raises(FileFormatError, match="text"):
        read_ring(str(binary))
