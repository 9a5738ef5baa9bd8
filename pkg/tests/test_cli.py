from __future__ import annotations

import json
import random

import pytest

from instances import random_oracle
from rclab import fixtures
from rclab.cli import main, render_table
from rclab.errors import InvalidArgument
from rclab.extraction import VoteTable
from rclab.fm import OrbitSpace, Universe, canonical_family
from rclab.implication import implication_table, verify_verdict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestFixtures:
    def test_oracle_round_trip(self, tmp_path):
        f = random_oracle(random.Random(1), range(8))
        fx = fixtures.oracle_fixture(f, p=[0, 1, 2, 3], q=[4, 5, 6, 7])
        path = tmp_path / "octet.jsonl"
        fixtures.dump(fx, path)
        text = path.read_text()
        assert fixtures.dumps(fixtures.loads(text)) == text
        g = fixtures.read_oracle(fixtures.load(path))
        assert all(g(s) == v for s, v in f.items())

    def test_votes_with_pair_keys(self):
        fx = fixtures.votes_fixture(VoteTable({frozenset({1, 2}): 3, frozenset({0, 4}): 1}))
        again = fixtures.read_votes(fixtures.loads(fixtures.dumps(fx)))
        assert again.counts == {frozenset({1, 2}): 3, frozenset({0, 4}): 1}

    def test_universe_and_orbit(self):
        u = Universe.two_prime(2, 3, 6)
        fam = canonical_family(u, (1, 1))
        text = fixtures.dumps(fixtures.universe_fixture(u, fam, coefficients=(1, 1)))
        u2, fam2 = fixtures.read_universe(fixtures.loads(text))
        assert u2 == u and fam2 == fam
        space = OrbitSpace((3, 5), (1, 1))
        space2, pts = fixtures.read_orbit(fixtures.loads(fixtures.dumps(fixtures.orbit_fixture(space, [(1, 2), (0, 0)]))))
        assert space2 == space and pts == [(0, 0), (1, 2)]

    def test_rejects_bad_headers(self):
        with pytest.raises(InvalidArgument):
            fixtures.loads("")
        with pytest.raises(InvalidArgument):
            fixtures.loads('{"kind":"votes"}\n')
        with pytest.raises(InvalidArgument):
            fixtures.loads('{"kind":"nope","schema":"rclab-fixture/1"}\n')
        with pytest.raises(InvalidArgument):
            fixtures.read_votes(fixtures.Fixture("tournament"))


class TestVerbs:
    def test_implies(self, capsys):
        code, out, _ = run(capsys, "implies", "5", "2", "--mode", "structured")
        doc = json.loads(out)
        assert code == 0 and doc["schema"] == "rclab/1"
        assert doc["holds"] is False and doc["witness"] == [2]
        assert doc["input"] == {"m": 5, "n": 2}

        code, out, _ = run(capsys, "implies", "6", "9", "--mode", "structured")
        assert json.loads(out)["holds"] is True

        code, out, _ = run(capsys, "implies", "5", "2")
        assert "fails" in out and "{2}" in out

    def test_kummer(self, capsys):
        code, out, _ = run(capsys, "kummer", "14", "6", "7", "--mode", "structured")
        assert code == 0 and json.loads(out)["valuation"] == 1
        assert run(capsys, "kummer", "14", "6", "7")[1].strip().endswith("= 1")

    def test_table(self, capsys):
        code, out, _ = run(capsys, "table", "--max", "7")
        lines = out.splitlines()
        assert code == 0 and len(lines) == 7
        cells = [line.split()[1:] for line in lines[1:]]
        assert all(cells[i][i] == "✓" for i in range(6))
        assert cells[5 - 2][3 - 2] == "✗{3}"

    def test_empty_table(self, capsys):
        assert run(capsys, "table", "--max", "1") == (0, "", "")

    def test_render_witnesses_reverify(self):
        matrix = implication_table(9, 9)
        text = render_table(matrix)
        assert text.count("✗") == sum(not v.holds for row in matrix for v in row)
        assert all(verify_verdict(v) for row in matrix for v in row)
        doc = json.loads(render_table(matrix, "structured"))
        assert doc["schema"] == "rclab/1" and len(doc["rows"]) == 8

    @pytest.mark.parametrize(
        "argv",
        [
            ["implies", "5", "2"],
            ["implies", "5", "2", "--mode", "structured"],
            ["table", "--max", "8", "--mode", "structured"],
            ["fm-census", "--mode", "structured"],
        ],
    )
    def test_deterministic(self, capsys, argv):
        assert run(capsys, *argv) == run(capsys, *argv)

    def test_extract(self, capsys, tmp_path):
        path = tmp_path / "votes.jsonl"
        fixtures.dump(fixtures.votes_fixture(VoteTable.from_sequence([3, 1, 1, 1]), p=2), path)
        code, out, _ = run(capsys, "extract", "kummer-minority", "--fixture", str(path), "--mode", "structured")
        assert code == 0 and json.loads(out)["selection"] == [1, 2, 3]
        code, out, _ = run(capsys, "extract", "minority", "--fixture", str(path))
        assert code == 0 and "{1, 2, 3}" in out

    def test_extract_octet_and_pair_blocks(self, capsys, tmp_path):
        f = random_oracle(random.Random(2), range(8))
        path = tmp_path / "octet.jsonl"
        fixtures.dump(fixtures.oracle_fixture(f, p=[0, 1, 2, 3], q=[4, 5, 6, 7]), path)
        code, out, _ = run(capsys, "extract", "octet", "--fixture", str(path), "--mode", "structured")
        doc = json.loads(out)
        assert code == 0 and doc["selection"] in range(8) and doc["stages"] in (1, 2)

        fixtures.dump(fixtures.oracle_fixture(f, blocks=[[[0, 1], [2, 3], [4, 5], [6, 7]]]), path)
        code, out, _ = run(capsys, "extract", "pair-blocks", "--fixture", str(path), "--mode", "structured")
        assert code == 0 and json.loads(out)["case"] == 4

    def test_fm_verbs(self, capsys):
        code, out, _ = run(capsys, "fm-census", "--mode", "structured")
        doc = json.loads(out)
        assert code == 0 and doc["max_choosable"] == 2 and doc["empty_support_choosable"] == 0
        code, out, _ = run(
            capsys, "fm-select", "--primes", "3", "5", "--multiplicities", "1", "1", "--point", "0,0", "--point", "1,2"
        )
        assert code == 0 and "(0, 0)" in out


class TestExitCodes:
    def test_argument_errors(self, capsys):
        assert run(capsys, "implies", "1", "2")[0] == 2
        assert run(capsys, "implies", "x", "2")[0] == 2
        assert run(capsys, "frobnicate")[0] == 2
        assert run(capsys, "extract", "octet", "--fixture", "/nonexistent.jsonl")[0] == 2
        code, _, err = run(capsys, "kummer", "5", "2", "4")
        assert code == 2 and err.startswith("rclab:")

    def test_kernel_invariant(self, capsys):
        pts = ["0,0", "1,1", "2,2", "0,3", "1,4", "2,0", "0,1"]
        argv = ["fm-select", "--primes", "3", "5", "--multiplicities", "1", "1"]
        for p in pts:
            argv += ["--point", p]
        code, out, err = run(capsys, *argv)
        assert code == 3 and out == "" and "invariant" in err
