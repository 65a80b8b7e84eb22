"""Acceptance criteria, one test per criterion.

Each test prints a single pass/fail line (run pytest with -s to see them)
and enforces the stated runtime budget.  Expected values for the two
4-symbol tables were frozen from hand evaluation of their rule tables;
exhaustive claims are checked over every table of the stated family with
zero tolerated exceptions.
"""

import itertools
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from sbc import (
    Alphabet,
    BlockMap,
    InconsistentCorpusError,
    SearchConstraints,
    all_words,
    analyze,
    constant_block_map,
    corpus_from_block_map,
    cylinder_injectivity,
    derive_block_map,
    enumerate_block_maps,
    covering_degree,
    is_progressive,
    is_regressive,
    is_weakly_progressive,
    preimage_prefixes,
    reduce_to_minimal,
    shift_block_map,
    star_commute_oracle,
    weak_progressive_order,
    SampleCorpus,
    Word,
)
from conftest import REG_ORDER2_TABLE

SRC = str(Path(__file__).resolve().parent.parent / "src")


class Budget:
    def __init__(self, criterion, description, seconds):
        self.criterion = criterion
        self.description = description
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(
            f"ACCEPTANCE {self.criterion}: {self.description}: "
            f"{status} ({elapsed:.2f} s)"
        )
        if exc_type is None and self.seconds is not None:
            assert elapsed < self.seconds, (
                f"criterion {self.criterion} exceeded its {self.seconds} s budget"
            )
        return False


def tables(k, window):
    alphabet = Alphabet(k)
    for t in itertools.product(range(k), repeat=k ** window):
        yield BlockMap(alphabet, window, t)


def test_criterion_1_reg_order2_dossier(reg_order2):
    with Budget(1, "4-symbol regressive table dossier", 1.0):
        report = analyze(reg_order2)
        assert report.minimal_window == 2
        assert report.progressive is False
        witness = report.progressive_witness
        assert witness.describe(reg_order2.alphabet) == "d(00)=d(01)=0"
        assert report.regressive is True
        assert report.weak_order == 2
        assert report.star_commutes is True
        assert str(report.local_homeo) == "ProvenLH(2)"
        assert report.covering_degree == 2
        from sbc.cli import render_report

        assert render_report(report) == (
            "minimal_window: 2\n"
            "progressive: false (d(00)=d(01)=0)\n"
            "regressive: true\n"
            "weak_order: 2\n"
            "star_commutes: true\n"
            "local_homeo: ProvenLH(2)\n"
            "covering_degree: 2 (per symbol: 0=2 1=2 2=2 3=2)"
        )


def test_criterion_2_nonreg_order2_dossier(nonreg_order2):
    with Budget(2, "order-2 non-regressive dossier", 1.0):
        report = analyze(nonreg_order2)
        assert report.weak_order == 2
        assert report.regressive is False
        assert report.regressive_witness.describe(nonreg_order2.alphabet) == "d(00)=d(20)=0"
        assert report.covering_degree == 2
        assert report.star_commutes is False
        from sbc.cli import render_report

        assert render_report(report) == (
            "minimal_window: 2\n"
            "progressive: false (d(00)=d(01)=0)\n"
            "regressive: false (d(00)=d(20)=0)\n"
            "weak_order: 2\n"
            "star_commutes: false\n"
            "local_homeo: ProvenLH(2)\n"
            "covering_degree: 2 (per symbol: 0=2 1=2 2=2 3=2)"
        )


def test_criterion_3_star_commuting_equivalence_exhaustive():
    with Budget(3, "regressive <=> *-commuting oracle, 16 + 19683 tables", 30.0):
        exceptions = 0
        for k in (2, 3):
            for d in tables(k, 2):
                if is_regressive(d).holds != star_commute_oracle(d, 4):
                    exceptions += 1
        assert exceptions == 0


def test_criterion_4_order_one_equivalence_exhaustive():
    with Budget(4, "progressive <=> weak order 1, 16 + 19683 tables", 30.0):
        exceptions = 0
        for k in (2, 3):
            for d in tables(k, 2):
                if is_progressive(d).holds != is_weakly_progressive(d, 1).holds:
                    exceptions += 1
        assert exceptions == 0


def test_criterion_5_progressive_degree():
    with Budget(5, "progressive fibers and shift covering degree", 30.0):
        a2 = Alphabet(2)
        for d in tables(2, 2):
            if not is_progressive(d).holds:
                continue
            for length in range(1, 5):
                for nu in all_words(2, length):
                    assert len(preimage_prefixes(d, Word(a2, nu))) == 2
        for k in (2, 3, 4):
            sh = shift_block_map(Alphabet(k))
            assert covering_degree(sh, 1).degree == k


def test_criterion_6_weak_order_implies_cylinder_injectivity(reg_order2, nonreg_order2):
    with Budget(6, "weak order present implies injective on cylinders", 30.0):
        checked = 0
        for d in itertools.chain(tables(2, 1), tables(2, 2)):
            if weak_progressive_order(d, 6) is not None:
                assert cylinder_injectivity(d).holds
                checked += 1
        assert checked > 0
        assert cylinder_injectivity(reg_order2).holds
        assert cylinder_injectivity(nonreg_order2).holds
        failure = cylinder_injectivity(constant_block_map(Alphabet(2), 0))
        assert not failure.holds
        assert failure.witness.cycle  # lasso witness


def test_criterion_7_derivation_round_trip():
    with Budget(7, "derivation round trip and inconsistency detection", 30.0):
        a2 = Alphabet(2)
        for window in (1, 2):
            for d in tables(2, window):
                corpus = corpus_from_block_map(d, window + 2)
                got = derive_block_map(corpus, 4)
                assert got == reduce_to_minimal(d)
        flip_corpus = SampleCorpus(
            a2,
            (
                (a2.word("00000"), a2.word("1111")),
                (a2.word("00001"), a2.word("0000")),
            ),
        )
        with pytest.raises(InconsistentCorpusError) as info:
            derive_block_map(flip_corpus, 4)
        assert [c.window for c in info.value.conflicts] == [1, 2, 3, 4]


def test_criterion_8_search_counts_and_reg_order2_rediscovery():
    with Budget(8, "search counts and 4-symbol rediscovery", 60.0):
        for kwargs, expected in (
            (dict(regressive=True), 4),
            (dict(progressive=True), 4),
            (dict(progressive=True, regressive=True), 2),
        ):
            c = SearchConstraints(
                alphabet_size=2, window=2, count_only=True, **kwargs
            )
            assert enumerate_block_maps(c).count == expected
        c = SearchConstraints(
            alphabet_size=4,
            window=2,
            regressive=True,
            progressive=False,
            weak_order=2,
        )
        result = enumerate_block_maps(c)
        assert result.count > 0
        assert any(d.table == REG_ORDER2_TABLE for d in result.tables)


def test_criterion_9_byte_determinism(tmp_path, reg_order2):
    with Budget(9, "byte-identical analyze and search across runs", 60.0):
        from sbc import serialize_block_map

        table_file = tmp_path / "reg_order2.sbc"
        table_file.write_text(serialize_block_map(reg_order2))
        commands = [
            ["analyze", str(table_file)],
            [
                "search", "--alphabet", "2", "--window", "2",
                "--regressive", "yes",
            ],
        ]
        for command in commands:
            outputs = set()
            for seed in ("0", "1", "2"):
                env = dict(os.environ, PYTHONPATH=SRC, PYTHONHASHSEED=seed)
                proc = subprocess.run(
                    [sys.executable, "-m", "sbc", *command],
                    capture_output=True,
                    env=env,
                )
                assert proc.returncode == 0
                outputs.add(proc.stdout)
            assert len(outputs) == 1
