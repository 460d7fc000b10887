import json

from severi_census import kite_count, kite, polygon_from_json
from severi_census.cli import canonical_json, run
from severi_census.curves import DEFAULT_TOL
from severi_census.triangulate import triangulation_from_json
from severi_census.lattice import sublattice_from_basis


def write_polygon(path, vertices):
    path.write_text(json.dumps({"vertices": vertices}))
    return str(path)


def write_poly(path, k, k_prime, coeffs):
    doc = {"k": k, "k_prime": k_prime, "coeffs": [[c.real, c.imag] for c in map(complex, coeffs)]}
    path.write_text(json.dumps(doc))
    return str(path)


def test_kite_count_command():
    result = run(["kite-count", "--k", "0", "--kprime", "4", "--genus", "1"])
    assert result.status == "ok" and result.exit_code == 0
    assert result.payload["total"] == 2
    assert [(e["index"], e["kappas"]) for e in result.payload["entries"]] == [(1, [0]), (2, [2])]


def test_genus1_check_command():
    result = run(["genus1-check", "--k", "1", "--kprime", "3"])
    assert result.payload == {"closed_form": 2, "enumerated": 2, "match": True}


def test_polygon_bound_command(tmp_path):
    path = write_polygon(tmp_path / "tri.json", [[0, 0], [4, 1], [0, 3]])
    result = run(["polygon-bound", "--polygon", path, "--genus", "1"])
    assert result.payload["total"] == 2
    result2 = run(["polygon-bound", "--polygon", path, "--genus", "2"])
    assert result2.payload["total"] == 1


def test_polygon_bound_missing_file_is_domain_error():
    result = run(["polygon-bound", "--polygon", "missing.json", "--genus", "1"])
    assert result.status == "error" and result.exit_code == 1
    assert result.payload["code"] == "IoError"


def test_domain_error_carries_module_error_code(tmp_path):
    path = write_polygon(tmp_path / "tri.json", [[0, 0], [4, 1], [0, 3]])
    result = run(["polygon-bound", "--polygon", path, "--genus", "9"])
    assert result.exit_code == 1 and result.payload["code"] == "GenusOutOfRange"


def test_usage_error_exit_code():
    assert run(["no-such-command"]).exit_code == 2
    assert run(["kite-count", "--k", "0"]).exit_code == 2
    assert run([]).exit_code == 2


def test_admissible_command():
    result = run(["admissible", "--k", "2", "--kprime", "4", "--genus", "3"])
    assert result.payload["pairs"] == [[1, 0], [1, 2]]


def test_kite_sublattices_command():
    result = run(["kite-sublattices", "--k", "1", "--kprime", "3"])
    assert [e["index"] for e in result.payload["sublattices"]] == [1, 2]


def test_triangulate_json_round_trip(tmp_path):
    result = run(["triangulate", "--k", "1", "--kprime", "3", "--genus", "1",
                  "--index", "1", "--kappa", "0"])
    tri = triangulation_from_json(result.payload)
    assert tri.genus == 1
    assert tri.to_json_dict() == result.payload


def test_triangulate_even_index_routes_through_incremental():
    result = run(["triangulate", "--k", "2", "--kprime", "4", "--genus", "1", "--index", "2"])
    assert result.status == "ok"
    assert sublattice_from_basis(result.payload["lattice"]).index == 2


def test_triangulate_svg_artifact(tmp_path):
    svg = tmp_path / "fig.svg"
    result = run(["triangulate", "--k", "1", "--kprime", "3", "--genus", "1",
                  "--kappa", "0", "--svg", str(svg)])
    assert str(svg) in result.artifacts
    text = svg.read_text()
    assert text.count("<path") == 4 + 1  # four triangles plus the outline


def test_dual_curve_command(tmp_path):
    svg = tmp_path / "dual.svg"
    result = run(["dual-curve", "--k", "1", "--kprime", "3", "--genus", "1",
                  "--kappa", "0", "--svg", str(svg)])
    assert result.payload["genus"] == 1
    assert len(result.payload["vertices"]) == 4
    assert result.payload["vertex_lattice"] == [[1, 0], [0, 1]]
    assert svg.read_text().count('fill="#2e7d32"') == 4  # dual vertices rendered


def test_signature_command(tmp_path):
    path = write_poly(tmp_path / "p.json", 0, 3, [0, -3, 0, 1])
    result = run(["signature", "--poly", path, "--a", "1,0", "--b", "1"])
    assert result.payload == {"delta1": 1, "delta2": 1, "kappa": 0, "genus": 0}


def test_passport_command(tmp_path):
    path = write_poly(tmp_path / "p.json", 0, 3, [0, -3, 0, 1])
    result = run(["passport", "--poly", path])
    assert result.payload["partitions"] == [[2, 1], [2, 1]]


def test_amoeba_command_csv_and_svg(tmp_path):
    path = write_poly(tmp_path / "p.json", 1, 1, [1, 0, 1])
    out = tmp_path / "cloud.csv"
    svg = tmp_path / "cloud.svg"
    result = run(["amoeba", "--poly", path, "--a", "1", "--b", "1",
                  "--samples", "50", "--out", str(out), "--svg", str(svg)])
    assert result.payload["count"] > 0
    lines = out.read_text().splitlines()
    assert lines[0] == "u,v" and len(lines) == result.payload["count"] + 1
    assert "<svg" in svg.read_text()


def test_amoeba_zero_samples_gives_valid_axes_only_svg(tmp_path):
    path = write_poly(tmp_path / "p.json", 1, 1, [1, 0, 1])
    svg = tmp_path / "empty.svg"
    result = run(["amoeba", "--poly", path, "--a", "1", "--b", "1",
                  "--samples", "0", "--svg", str(svg)])
    assert result.payload["count"] == 0
    text = svg.read_text()
    assert "<svg" in text and "<circle" not in text


def test_json_outputs_are_byte_identical(tmp_path):
    argv = ["kite-count", "--k", "3", "--kprime", "9", "--genus", "2"]
    first = run(argv).to_json()
    second = run(argv).to_json()
    assert first == second
    # and payload JSON re-parses to the same in-memory census document
    payload = json.loads(first)["payload"]
    assert payload == kite_count(kite(3, 9), 2).to_json_dict()


def test_polygon_payload_round_trips(tmp_path):
    path = write_polygon(tmp_path / "tri.json", [[5, 5], [6, 5], [5, 6]])
    payload = run(["polygon-bound", "--polygon", path, "--genus", "0"]).payload
    poly = polygon_from_json(payload["polygon"])
    assert poly.to_json_dict() == payload["polygon"]
    assert payload["polygon"]["offset"] == [-5, -5]


def test_out_flag_writes_payload(tmp_path):
    out = tmp_path / "census.json"
    result = run(["kite-count", "--k", "0", "--kprime", "4", "--genus", "1",
                  "--out", str(out)])
    assert str(out) in result.artifacts
    assert json.loads(out.read_text()) == result.payload
    assert out.read_text() == canonical_json(result.payload)


def test_tolerance_sources(tmp_path, monkeypatch):
    cfg = tmp_path / "tol.json"
    cfg.write_text(json.dumps({"tol_val": 1e-5, "tol_res": 1e-9}))
    path = write_poly(tmp_path / "p.json", 0, 3, [0, -3, 0, 1])

    import severi_census.cli as cli_mod
    captured = {}
    original = cli_mod.curves_mod.nodal_partition

    def spy(poly, a, b, tol):
        captured["tol"] = tol
        return original(poly, a, b, tol)

    monkeypatch.setattr(cli_mod.curves_mod, "nodal_partition", spy)

    run(["signature", "--poly", path, "--a", "1", "--b", "1", "--config", str(cfg)])
    assert captured["tol"].val == 1e-5 and captured["tol"].res == 1e-9
    assert captured["tol"].cluster == DEFAULT_TOL.cluster

    # environment overrides the config file; flags override both
    monkeypatch.setenv("SEVERI_CENSUS_TOL_VAL", "1e-6")
    run(["signature", "--poly", path, "--a", "1", "--b", "1", "--config", str(cfg)])
    assert captured["tol"].val == 1e-6

    run(["signature", "--poly", path, "--a", "1", "--b", "1", "--config", str(cfg),
         "--tol-val", "1e-4"])
    assert captured["tol"].val == 1e-4

    monkeypatch.delenv("SEVERI_CENSUS_TOL_VAL")
    toml_cfg = tmp_path / "tol.toml"
    toml_cfg.write_text("tol_val = 1e-3\n")
    run(["signature", "--poly", path, "--a", "1", "--b", "1", "--config", str(toml_cfg)])
    assert captured["tol"].val == 1e-3


def test_table_format_smoke(capsys):
    from severi_census.cli import main
    code = main(["genus1-check", "--k", "0", "--kprime", "4", "--format", "table"])
    assert code == 0
    out = capsys.readouterr().out
    assert "closed_form" in out and "{" not in out


def test_invalid_kite_shape_is_domain_error():
    result = run(["kite-count", "--k", "3", "--kprime", "2", "--genus", "1"])
    assert result.status == "error" and result.exit_code == 1


def test_triangulate_polygon_mode(tmp_path):
    path = write_polygon(tmp_path / "tri.json", [[0, 0], [4, 1], [0, 3]])
    result = run(["triangulate", "--polygon", path, "--genus", "1", "--index", "2"])
    assert result.status == "ok"
    tri = triangulation_from_json(result.payload)
    assert tri.genus == 1 and tri.lattice.index == 2
    dual = run(["dual-curve", "--polygon", path, "--genus", "1"])
    assert dual.payload["genus"] == 1
    missing = run(["triangulate", "--genus", "1"])
    assert missing.exit_code == 2


def test_emit_svg_operation(tmp_path):
    from severi_census import dual_tropical_curve, kite, kite_triangulation
    from severi_census.cli import emit_svg

    tri = kite_triangulation(kite(1, 3), 1, 1, 0)
    target = tmp_path / "tri.svg"
    result = emit_svg(tri, str(target))
    assert result.artifacts == [str(target)]
    assert target.read_text().count("<path") == 5

    overlay = tmp_path / "overlay.svg"
    emit_svg((tri, dual_tropical_curve(tri)), str(overlay))
    assert overlay.read_text().count('fill="#2e7d32"') == 4

    empty = tmp_path / "empty.svg"
    emit_svg([], str(empty))
    text = empty.read_text()
    assert "<svg" in text and "<circle" not in text
