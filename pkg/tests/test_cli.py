import cmath
import json
import math

import numpy as np
import pytest

from eitdisk import (
    CONDUCTIVITY,
    ArcSpec,
    ConformalMap,
    FourierRadialField,
    RadialProfile,
    conductivity_dtn,
    half_disk_data,
    psi_inverse,
)
from eitdisk import arc_data as make_arc_data
from eitdisk import io as eio
from eitdisk.cli import main


@pytest.fixture
def field_file(tmp_path):
    field = FourierRadialField(
        CONDUCTIVITY,
        {0: RadialProfile(((0, 1.0),)), 1: RadialProfile(((1, 0.25),))},
        {2: RadialProfile(((2, -0.5),))},
    )
    path = tmp_path / "field.json"
    path.write_text(eio.dumps(eio.field_to_dict(field)), encoding="utf-8")
    return path


def test_forward_then_validate_then_invert(tmp_path, field_file, capsys):
    dtn = tmp_path / "dtn.json"
    assert main(["forward", "--input", str(field_file), "--output", str(dtn), "--nmax", "4"]) == 0
    assert main(["validate", "--input", str(dtn)]) == 0
    out = capsys.readouterr().out
    assert "cc_symmetric: deviation 0 [ok]" in out

    rec = tmp_path / "rec.json"
    assert main(["invert", "--input", str(dtn), "--output", str(rec)]) == 0
    out = capsys.readouterr().out
    assert "condition k=0: 2 18 130 882" in out
    doc = json.loads(rec.read_text(encoding="utf-8"))
    assert doc["p"]["0"][0] == pytest.approx(2.0)
    assert doc["q"]["2"][0] == pytest.approx(-0.5, abs=1e-10)

    # an invertible sibling field file is produced alongside
    sibling = tmp_path / "rec.field.json"
    back = eio.field_from_dict(eio.load_json(str(sibling)))
    assert back.kind == CONDUCTIVITY
    assert dict(back.cos[1].terms)[1] == pytest.approx(0.25, abs=1e-12)


def test_forward_requires_nmax(tmp_path, field_file, capsys):
    rc = main(["forward", "--input", str(field_file), "--output", str(tmp_path / "o.json")])
    assert rc == 2
    assert "nmax" in capsys.readouterr().err


def test_forward_oracle_report(tmp_path, field_file, capsys):
    dtn = tmp_path / "dtn.json"
    rc = main(["forward", "--input", str(field_file), "--output", str(dtn), "--nmax", "4",
               "--oracle", "--quad-r", "48", "--quad-phi", "256"])
    assert rc == 0
    assert "oracle max scaled deviation" in capsys.readouterr().out
    report = json.loads((tmp_path / "dtn.oracle.json").read_text(encoding="utf-8"))
    assert report["quad"] == [48, 256]
    assert report["max_scaled_deviation"] < 1e-8


def test_roundtrip_exit_codes(tmp_path, field_file, capsys):
    assert main(["roundtrip", "--input", str(field_file), "--nmax", "4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("max coefficient error:")
    assert main(["roundtrip", "--input", str(field_file), "--nmax", "4", "--rational"]) == 0
    assert capsys.readouterr().out == "max coefficient error: 0\n"


def test_parse_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["validate", "--input", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_same_input_output_rejected(tmp_path, field_file, capsys):
    rc = main(["forward", "--input", str(field_file), "--output", str(field_file), "--nmax", "3"])
    assert rc == 2
    assert "differ" in capsys.readouterr().err


def test_shape_error_exits_3(tmp_path, field_file, capsys):
    dtn = tmp_path / "dtn.json"
    main(["forward", "--input", str(field_file), "--output", str(dtn), "--nmax", "3"])
    doc = json.loads(dtn.read_text(encoding="utf-8"))
    doc["cc"][0] = [1.0]
    dtn.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["invert", "--input", str(dtn), "--output", str(tmp_path / "r.json")]) == 3


def test_inconsistent_data_exits_4(tmp_path, field_file, capsys):
    dtn = tmp_path / "dtn.json"
    main(["forward", "--input", str(field_file), "--output", str(dtn), "--nmax", "3"])
    doc = json.loads(dtn.read_text(encoding="utf-8"))
    doc["cc"][0][1] += 1e-5
    dtn.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["invert", "--input", str(dtn), "--output", str(tmp_path / "r.json")]) == 4
    err = capsys.readouterr().err
    assert "cc_symmetric" in err
    assert "FAIL" in err
    # validate reports the same structural failure through its own exit code
    assert main(["validate", "--input", str(dtn)]) == 4


def test_outputs_byte_identical_across_runs(tmp_path, field_file):
    d1, d2 = tmp_path / "a.json", tmp_path / "b.json"
    main(["forward", "--input", str(field_file), "--output", str(d1), "--nmax", "5"])
    main(["forward", "--input", str(field_file), "--output", str(d2), "--nmax", "5"])
    assert d1.read_bytes() == d2.read_bytes()
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    main(["invert", "--input", str(d1), "--output", str(r1)])
    main(["invert", "--input", str(d2), "--output", str(r2)])
    assert r1.read_bytes() == r2.read_bytes()


def test_eval_grid_csv(tmp_path, field_file):
    out = tmp_path / "grid.csv"
    assert main(["eval", "--input", str(field_file), "--output", str(out),
                 "--nr", "2", "--nphi", "4"]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,y,value"
    assert len(lines) == 1 + 2 * 4
    x, y, v = (float(s) for s in lines[1].split(","))
    assert (x, y) == (0.5, 0.0)
    assert v == pytest.approx(1.0 + 0.25 * 0.5)


def test_half_invert_cli(tmp_path):
    field = FourierRadialField(
        CONDUCTIVITY, {0: RadialProfile(((0, 1.0),)), 2: RadialProfile(((2, 1.0),))}, {}
    )
    data = half_disk_data(field, 5)
    src = tmp_path / "half.json"
    src.write_text(eio.dumps(eio.arc_data_to_dict(data)), encoding="utf-8")
    out = tmp_path / "half.csv"
    assert main(["half-invert", "--input", str(src), "--output", str(out),
                 "--nr", "3", "--nphi", "6"]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1 + 3 * 6
    # first sample r=1/3, phi=0
    x, y, v = (float(s) for s in lines[1].split(","))
    assert x == pytest.approx(1 / 3)
    assert y == 0.0
    assert v == pytest.approx(1.0 + (1 / 3) ** 2, abs=1e-8)


def test_arc_invert_cli_with_map_debug(tmp_path):
    alpha = math.pi / 4
    cmap = ConformalMap(ArcSpec(alpha))

    def bump(rho, theta):
        z = psi_inverse(cmap, np.asarray(rho) * np.exp(1j * np.asarray(theta)))
        return z.imag**4

    data = make_arc_data(bump, cmap, 4)
    src = tmp_path / "arc.json"
    src.write_text(eio.dumps(eio.arc_data_to_dict(data, alpha=alpha)), encoding="utf-8")
    out = tmp_path / "arc.csv"
    assert main(["arc-invert", "--input", str(src), "--output", str(out),
                 "--nr", "2", "--nphi", "4", "--map-debug"]) == 0
    assert out.exists()
    debug_lines = (tmp_path / "arc.csv.mapdebug.csv").read_text(encoding="utf-8").splitlines()
    assert debug_lines[0] == "re_z,im_z,re_psi,im_psi"
    first = [float(s) for s in debug_lines[1].split(",")]
    assert first[0] == 1.0 and first[1] == 0.0
    expected = cmath.exp(1j * (math.pi / 2 - alpha))
    assert complex(first[2], first[3]) == pytest.approx(expected, abs=1e-12)


def test_arc_invert_requires_alpha(tmp_path, capsys):
    field = FourierRadialField(CONDUCTIVITY, {0: RadialProfile(((0, 1.0),))}, {})
    data = half_disk_data(field, 3)
    src = tmp_path / "arc.json"
    src.write_text(eio.dumps(eio.arc_data_to_dict(data)), encoding="utf-8")
    rc = main(["arc-invert", "--input", str(src), "--output", str(tmp_path / "o.csv")])
    assert rc == 2
    assert "alpha" in capsys.readouterr().err


def test_muntz_tables(capsys):
    assert main(["muntz", "--seq", "1/2,5/2"]) == 0
    out = capsys.readouterr().out
    assert "L_1: -1*x^1/2 2*x^5/2" in out
    assert "A[1]: 1/4 1/12" in out
    assert "R[1]: -6 12" in out
    assert main(["muntz", "--k", "1", "--nmax", "1"]) == 0
    out = capsys.readouterr().out
    assert "LM^1_1: -2*x^1 3*x^3" in out


def test_muntz_rejects_bad_sequence(capsys):
    assert main(["muntz", "--seq", "1/2,apple"]) == 2
    assert "bad exponent" in capsys.readouterr().err
