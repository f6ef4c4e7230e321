import io
import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from pchains.cli import main, sweep_group
from pchains.report import REPORT_KEYS, VerificationReport, reports_from_json, reports_to_json


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    return code, json.loads(out), err


def test_verify_q8():
    code, data, _ = run_json("verify", "--group", "q8", "--prime", "2", "--chain", "0,1,2,3")
    assert code == 0
    assert data[0]["exact_count"] == "3"
    assert data[0]["residue"] == 1 and data[0]["passed"] is True


def test_verify_cyclic9():
    code, data, _ = run_json("verify", "--group", "cyclic:9", "--prime", "3", "--chain", "0,1,2")
    assert code == 0
    assert data[0]["exact_count"] == "1"


def test_verify_unsupported_chain():
    code, out, err = run("verify", "--group", "sym:3", "--prime", "5", "--chain", "0,1")
    assert code == 2
    assert "ChainNotSupported" in err


def test_verify_default_chain_is_full_depth():
    code, data, _ = run_json("verify", "--group", "sym:4", "--prime", "2")
    assert code == 0
    assert data[0]["exponents"] == [0, 3]
    assert data[0]["exact_count"] == "3"


def test_verify_multiple_chains_and_oracle():
    code, data, err = run_json("verify", "--group", "dihedral:4", "--prime", "2", "--oracle",
                               "--chain", "0,1", "--chain", "0,2,3")
    assert code == 0 and err == ""
    assert [d["exact_count"] for d in data] == ["5", "3"]


def test_verify_base_generators():
    # element 4 of q8 is -1, generating the centre
    code, data, _ = run_json("verify", "--group", "q8", "--prime", "2", "--chain", "1,2",
                             "--base-gens", "4")
    assert code == 0
    assert data[0]["base_subgroup_order"] == 2
    assert data[0]["exact_count"] == "3"


def test_verify_default_base_for_positive_b0():
    code, data, _ = run_json("verify", "--group", "sym:4", "--prime", "2", "--chain", "2,3")
    assert code == 0
    assert data[0]["base_subgroup_order"] == 4


@pytest.mark.parametrize("argv", [
    ("verify", "--group", "q8", "--prime", "2", "--chain", "0,1", "--base-gens", "1"),
    ("verify", "--group", "q8", "--prime", "4"),
    ("verify", "--group", "q8", "--prime", "2", "--chain", "0,0"),
    ("verify", "--group", "q8", "--prime", "2", "--chain", "a,b"),
    ("verify", "--group", "nosuch", "--prime", "2"),
    ("verify", "--group", "q8"),
    ("verify", "--group", f"file:{FIXTURES / 'missing.group'}", "--prime", "2"),
    ("count", "--group", "sym:3", "--prime", "2", "--order-exp", "2"),
    ("bogus",),
    (),
])
def test_usage_errors_exit_2(argv):
    code, _, err = run(*argv)
    assert code == 2
    assert err


def test_malformed_group_file_exits_2(tmp_path):
    bad = tmp_path / "bad.group"
    bad.write_text("format table\norder 3\nrow 0 1 2\nrow 1 2 0\nrow 2 0 0\n")
    code, _, err = run("verify", "--group", f"file:{bad}", "--prime", "3")
    assert code == 2
    assert "Error" in err or "error" in err
    bad.write_bytes(b"\xff\xfe\x00")
    assert run("verify", "--group", f"file:{bad}", "--prime", "3")[0] == 2


def test_failing_report_exits_1(monkeypatch):
    from pchains import cli
    from pchains.psub import ChainCount

    monkeypatch.setattr(cli, "chain_count", lambda G, base, spec: ChainCount(2, 0))
    code, data, _ = run_json("verify", "--group", "q8", "--prime", "2")
    assert code == 1
    assert data[0]["passed"] is False


def test_oracle_mismatch_exits_1(monkeypatch):
    from pchains import cli
    from pchains.psub import ChainCount

    monkeypatch.setattr(cli, "brute_force_chain_count", lambda G, base, spec: ChainCount(5, 1))
    code, _, err = run("verify", "--group", "q8", "--prime", "2", "--oracle")
    assert code == 1
    assert "oracle mismatch" in err


@pytest.mark.parametrize("spec, p, s, n", [("sym:4", 2, 3, 3), ("elem:2,2", 2, 1, 3),
                                           ("cyclic:12", 2, 2, 1)])
def test_count(spec, p, s, n):
    code, data, _ = run_json("count", "--group", spec, "--prime", str(p), "--order-exp", str(s))
    assert code == 0
    assert data["exact_count"] == str(n)
    assert data["residue"] == n % p
    code, out, _ = run("count", "--group", spec, "--prime", str(p), "--order-exp", str(s))
    assert f": {n} subgroups" in out


def test_catalog_listing():
    code, out, _ = run("catalog")
    assert code == 0
    for syntax in ["cyclic:n", "dihedral:n", "sym:k", "alt:k", "q8", "elem:p,k", "prod:"]:
        assert syntax in out
    code, data, _ = run_json("catalog")
    assert [d["syntax"] for d in data][:2] == ["cyclic:n", "dihedral:n"]
    code, data, _ = run_json("catalog", "--max-order", "10")
    assert all(d["examples"] for d in data)
    assert "sym:4" not in json.dumps(data)


def test_plain_text_rows_are_aligned():
    code, out, _ = run("verify", "--group", "q8", "--prime", "2", "--chain", "0,1",
                       "--chain", "0,1,2,3")
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["group", "order", "p"]
    assert len(lines) == 3
    status_col = lines[0].index("status")
    assert all(line[status_col:].startswith("PASS") for line in lines[1:])


def test_json_round_trip_is_byte_identical():
    code, out, _ = run("verify", "--group", "sym:4", "--prime", "2", "--chain", "0,1,2,3",
                       "--chain", "0,3", "--json")
    reparsed = reports_to_json(reports_from_json(out))
    assert reparsed == out
    assert json.dumps(json.loads(out), indent=2) + "\n" == out
    assert tuple(json.loads(out)[0]) == REPORT_KEYS


def test_big_counts_serialise_as_strings():
    r = VerificationReport.from_count("x", 1, 2, [0, 1], 1, 2**80 + 1, 0)
    text = reports_to_json([r])
    assert f'"exact_count": "{2**80 + 1}"' in text
    assert reports_from_json(text)[0].exact_count == 2**80 + 1
    assert reports_to_json(reports_from_json(text)) == text


def test_report_rejects_unknown_keys():
    with pytest.raises(ValueError):
        VerificationReport.from_dict({"group_name": "x"})


@pytest.mark.parametrize("catalog_spec, path, primes", [
    ("sym:3", "sym3.group", {2: 1, 3: 1}),
    ("sym:3", "sym3_table.group", {2: 1, 3: 1}),
    ("q8", "q8_table.group", {2: 3}),
])
def test_file_group_matches_catalog(catalog_spec, path, primes):
    def strip(rows):
        return [{k: v for k, v in d.items() if k not in ("group_name", "elapsed_ms")}
                for d in rows]

    for p, n in primes.items():
        chains = []
        for mask in range(2 ** n):
            chains += ["--chain", ",".join(["0"] + [str(b) for b in range(1, n + 1)
                                                    if mask >> (b - 1) & 1])]
        a = run_json("verify", "--group", catalog_spec, "--prime", str(p), *chains)
        b = run_json("verify", "--group", f"file:{FIXTURES / path}", "--prime", str(p), *chains)
        assert a[0] == b[0] == 0
        assert strip(a[1]) == strip(b[1])
        for s in range(n + 1):
            a = run_json("count", "--group", catalog_spec, "--prime", str(p), "--order-exp", str(s))
            b = run_json("count", "--group", f"file:{FIXTURES / path}", "--prime", str(p),
                         "--order-exp", str(s))
            assert a[1]["exact_count"] == b[1]["exact_count"]


def test_trust_flag_loads_table():
    code, data, _ = run_json("verify", "--group", f"file:{FIXTURES / 'q8_table.group'}",
                             "--prime", "2", "--chain", "0,2", "--trust")
    assert code == 0 and data[0]["exact_count"] == "3"


def test_cap_flag():
    code, _, err = run("verify", "--group", "sym:5", "--prime", "2", "--cap", "100")
    assert code == 2 and "cap" in err


def test_sweep_small():
    code, out, _ = run("sweep", "--max-order", "24", "--max-chain-len", "2")
    assert code == 0
    assert "0 failed" in out.splitlines()[-1]
    assert "FAIL" not in out


def test_sweep_trivial_only():
    code, data, err = run_json("sweep", "--max-order", "1")
    assert code == 0
    assert data == []
    assert "1 groups, 0 cases" in err


def test_sweep_oracle_cases_are_ordered():
    code, data, err = run_json("sweep", "--max-order", "12", "--oracle-max-order", "12")
    assert code == 0
    assert "0 oracle mismatches" in err
    keys = [(d["group_order"], d["group_name"], d["prime"], len(d["exponents"]), d["exponents"])
            for d in data]
    assert keys == sorted(keys)


def test_sweep_group_detects_lifting_oracle_disagreement(monkeypatch):
    from pchains import cli

    real = cli.brute_force_levels

    def broken(G, p, exps):
        levels = real(G, p, exps)
        levels[1] = levels[1][:-1]
        return levels

    monkeypatch.setattr(cli, "brute_force_levels", broken)
    reports, mismatches = sweep_group("sym:3", 2, True)
    assert mismatches


def test_sweep_parallel_matches_serial():
    serial = run_json("sweep", "--max-order", "16", "--max-chain-len", "3")[1]
    parallel = run_json("sweep", "--max-order", "16", "--max-chain-len", "3", "--jobs", "2")[1]
    strip = lambda rows: [{k: v for k, v in d.items() if k != "elapsed_ms"} for d in rows]
    assert strip(serial) == strip(parallel)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pchains", "verify", "--group", "q8",
                           "--prime", "2", "--chain", "0,1,2,3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
