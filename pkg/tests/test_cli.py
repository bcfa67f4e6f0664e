import json
import subprocess
import sys

import pytest

from svq.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_UNKNOWN_VOLUME, run
from svq.exactnum import PiValue


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sv_stratum_principal(capsys):
    code, out, _ = call(capsys, "sv-stratum", "--principal", "3,3")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[-1] == "total 47/22*pi^-2"
    assert [line.split()[0] for line in lines[:-1]] == ["C2", "C3", "C4"]


def test_sv_stratum_hyp(capsys):
    code, out, _ = call(capsys, "sv-stratum", "--hyp", "Type3,2,0")
    assert code == EXIT_OK and out.strip() == "c_area 51/16*pi^-2"


def test_lyapunov(capsys):
    assert call(capsys, "lyapunov", "--principal", "5,5")[1].strip() == "1025/489"
    code, out, _ = call(capsys, "lyapunov", "--stratum", "1,1,1,-1,-1,-1", "--carea", "47/22*pi^-2")
    assert code == EXIT_OK and out.strip() == "17/11"


def test_lyapunov_hyp_warns_on_bridge_disagreement(capsys):
    code, out, err = call(capsys, "lyapunov", "--hyp", "Type2,-1,0")
    assert code == EXIT_OK and out.strip() == "3/2"
    assert "warning" in err and err.strip().endswith("gives 1")
    code, out, err = call(capsys, "lyapunov", "--hyp", "Type1,1,-1")
    assert code == EXIT_OK and err == ""


def test_area_ratio(capsys):
    assert call(capsys, "area-ratio", "--single", "--dim", "6", "--p", "1/2")[1].strip() == "1/16"
    assert call(capsys, "area-ratio", "--ns", "2", "--q", "2", "--p", "1/2")[1].strip() == "1/2"


def test_volume_and_qmax(capsys):
    assert call(capsys, "volume", "--stratum", "1,1,1,-1,-1,-1")[1].strip() == "11/60*pi^6"
    assert call(capsys, "volume", "--stratum", "1^3,-1^3")[1].strip() == "11/60*pi^6"
    code, out, _ = call(capsys, "qmax", "--stratum", "4,4")
    assert code == EXIT_OK and out.splitlines() == ["qmax_tilde 2 (closed_form)", "qmax in [2, 4]"]


def test_approx_is_marked(capsys):
    _, out, _ = call(capsys, "volume", "--stratum", "2,2", "--approx")
    exact, rest = out.strip().split("  ", 1)
    assert exact == "4/3*pi^2" and rest.startswith("(approx ")


def test_json_output(capsys):
    code, out, _ = call(capsys, "sv-stratum", "--principal", "5,1", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["total"]["exact"] == "230/87*pi^-2"
    assert PiValue.parse(doc["total"]["exact"]).to_text() == doc["total"]["exact"]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["volume", "--stratum", "1,1,1,-1,-1,-1", "--component", "hyp"], EXIT_UNKNOWN_VOLUME),
        (["volume", "--stratum", "9,-1", "--component", "reg"], EXIT_UNKNOWN_VOLUME),
        (["volume", "--stratum", "9,-1", "--component", "reg", "--allow-approximate"], EXIT_OK),
        (["volume", "--stratum", "1,1,x"], EXIT_INPUT),
        (["volume", "--stratum", "1,1,1"], EXIT_INPUT),
        (["sv-stratum", "--principal", "2,6"], EXIT_INPUT),
        (["sv-stratum", "--principal", "3"], EXIT_INPUT),
        (["sv-stratum"], EXIT_INPUT),
        (["area-ratio", "--single", "--p", "1/2"], EXIT_INPUT),
        (["area-ratio", "--ns", "2", "--q", "2", "--p", "3/2"], EXIT_INPUT),
        (["qmax", "--stratum", "-1,-1,-1,-1"], EXIT_INPUT),
        (["nosuch"], EXIT_INPUT),
        ([], EXIT_INPUT),
        (["tables", "--which", "vol"], EXIT_OK),
        (["tables", "--which", "volSV"], EXIT_OK),
        (["tables", "--which", "SVLyap"], EXIT_MISMATCH),
        (["db-validate"], EXIT_OK),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert call(capsys, *argv)[0] == code


def test_tables_byte_stable(capsys):
    first = call(capsys, "tables")[1]
    second = call(capsys, "tables")[1]
    assert first == second and first.count("== ") == 3


def test_db_flag_and_env(tmp_path, capsys, monkeypatch):
    db = tmp_path / "db.json"
    db.write_text(json.dumps({"entries": [{
        "stratum": "2,2", "component": "whole", "kind": "quadratic", "area": "half", "labeled": True,
        "coeff": "4/3", "pi_exp": 2, "exact": True, "source": "test",
    }]}))
    assert call(capsys, "volume", "--stratum", "2,2", "--db", str(db))[1].strip() == "4/3*pi^2"
    assert call(capsys, "volume", "--stratum", "3,-1,-1,-1", "--db", str(db))[0] == EXIT_UNKNOWN_VOLUME
    monkeypatch.setenv("SVQ_DB", str(db))
    assert call(capsys, "volume", "--stratum", "3,-1,-1,-1")[0] == EXIT_UNKNOWN_VOLUME
    assert call(capsys, "volume", "--stratum", "2,2", "--db", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text('{"entries": [{"stratum": "2,2"}]}')
    assert call(capsys, "volume", "--stratum", "2,2", "--db", str(bad))[0] == EXIT_INPUT
    bad_db_validate = tmp_path / "wrong.json"
    bad_db_validate.write_text(db.read_text().replace("4/3", "5/3"))
    assert call(capsys, "db-validate", "--db", str(bad_db_validate))[0] == EXIT_MISMATCH


def test_sv_config(tmp_path, capsys):
    from svq.config import configuration_to_json
    from svq.families import enumerate_principal, to_configuration

    pc = [p for p in enumerate_principal(3, 3) if p.family == "C4"][0]
    path = tmp_path / "c4.json"
    path.write_text(json.dumps(configuration_to_json(to_configuration(pc))))
    code, out, _ = call(capsys, "sv-config", "--config", str(path))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["c_area"]["exact"] == "1/22*pi^-2"
    assert doc["N"] == "9/1"
    path.write_text("{not json")
    assert call(capsys, "sv-config", "--config", str(path))[0] == EXIT_INPUT
    assert call(capsys, "sv-config", "--config", str(tmp_path / "none.json"))[0] == EXIT_INPUT


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "svq", "area-ratio", "--single", "--dim", "5", "--p", "1/2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "1/8"
