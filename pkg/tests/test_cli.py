import json

import pytest

from hcolkit.cli import main
from hcolkit.graphs import Graph, make_complete, make_cycle, make_empty, make_petersen, write_graph
from hcolkit.kernels import VertexCoverInstance, read_kernel_result, write_instance
from hcolkit.reductions import CnfFormula, write_dimacs, write_list_instance
from hcolkit.reps import rep_from_json


@pytest.fixture
def files(tmp_path):
    paths = {}

    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
        return str(p)

    put("petersen.g", write_graph(make_petersen()))
    put("k4.g", write_graph(make_complete(4)))
    put("c5.g", write_graph(make_cycle(5)))
    put("empty4.g", write_graph(make_empty(4)))
    inst = VertexCoverInstance(
        Graph(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]), (0, 1, 2)
    )
    put("inst.g", write_instance(inst))
    put("phi4.cnf", write_dimacs(CnfFormula(2, ((1, 2, -1, -2), (1, 1, 2, -2)))))
    put("badwidth.cnf", write_dimacs(CnfFormula(2, ((1, 2),))))
    put("lists.g", write_list_instance(make_cycle(4), {0: (0,), 2: (0, 2)}))
    paths["dir"] = str(tmp_path)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_witness_text_and_json(files, capsys):
    code, out, _ = run(capsys, "witness", files["petersen.g"])
    assert code == 0 and out.startswith("q=3 witness={")
    code, out, _ = run(capsys, "--format", "json", "witness", files["k4.g"])
    assert code == 0 and json.loads(out)["q"] == 4
    code, out, _ = run(capsys, "witness", files["empty4.g"])
    assert code == 0 and out.startswith("q=1 ")


def test_kernelize_combinatorial(files, capsys, tmp_path):
    out_path = str(tmp_path / "kern.g")
    code, out, _ = run(
        capsys,
        "kernelize", files["inst.g"],
        "--target", files["c5.g"],
        "--mode", "combinatorial", "--q", "2",
        "--verify", "--out", out_path,
    )
    assert code == 0
    stats = json.loads(out)
    assert stats["verified_equivalent"] is True
    assert stats["vertices"] <= 3 + 3 + 3  # k + C(3,1) + C(3,2)
    result = read_kernel_result(open(out_path).read())
    assert result.graph.is_vertex_cover(result.cover)


def test_kernelize_stats_file(files, capsys, tmp_path):
    out_path = str(tmp_path / "kern.g")
    stats_path = str(tmp_path / "kern.stats.json")
    code, out, _ = run(
        capsys,
        "kernelize", files["inst.g"], "--target", files["c5.g"],
        "--mode", "combinatorial", "--q", "2",
        "--out", out_path, "--stats", stats_path,
    )
    assert code == 0 and out == ""
    stats = json.loads(open(stats_path).read())
    assert stats["mode"] == "combinatorial" and "elapsed" not in stats


def test_kernelize_empty_instance(files, capsys, tmp_path):
    empty_path = str(tmp_path / "empty_inst.g")
    open(empty_path, "w").write(write_instance(VertexCoverInstance(Graph(0), ())))
    out_path = str(tmp_path / "empty_kern.g")
    code, out, _ = run(
        capsys,
        "kernelize", empty_path, "--target", files["c5.g"],
        "--mode", "combinatorial", "--q", "2", "--out", out_path,
    )
    assert code == 0
    assert json.loads(out)["vertices"] == 0
    assert read_kernel_result(open(out_path).read()).graph.n == 0


def test_kernelize_rejects_edgeless_target(files, capsys):
    code, _, err = run(
        capsys,
        "kernelize", files["inst.g"], "--target", files["empty4.g"],
        "--mode", "combinatorial", "--q", "2",
    )
    assert code == 2 and "no edges" in err


def test_kernelize_flag_validation(files, capsys):
    code, _, err = run(
        capsys,
        "kernelize", files["inst.g"], "--target", files["c5.g"],
        "--mode", "combinatorial",
    )
    assert code == 2 and "--q" in err


def test_represent_and_algebraic_kernelize(files, capsys, tmp_path):
    rep_path = str(tmp_path / "pet.json")
    code, out, _ = run(
        capsys, "represent", "--family", "kneser", "--m", "5", "--r", "2",
        "--out", rep_path,
    )
    assert code == 0 and json.loads(out)["d"] == 3
    rep = rep_from_json(open(rep_path).read(), make_petersen())
    assert rep.d == 3

    # an instance over the petersen target: map through the generated graph file
    pet_path = str(tmp_path / "pet.g")
    open(pet_path, "w").write(write_graph(rep.graph))
    inst_path = str(tmp_path / "pinst.g")
    inst = VertexCoverInstance(Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]), (0, 1, 2))
    open(inst_path, "w").write(write_instance(inst))
    kern_path = str(tmp_path / "pk.g")
    code, out, _ = run(
        capsys,
        "kernelize", inst_path, "--target", pet_path,
        "--mode", "algebraic", "--rep", rep_path,
        "--verify", "--out", kern_path,
    )
    assert code == 0
    stats = json.loads(out)
    assert stats["mode"] == "algebraic" and stats["verified_equivalent"] is True


def test_represent_vandermonde_and_ortho(files, capsys):
    code, out, _ = run(
        capsys, "represent", "--family", "vandermonde",
        "--graph", files["c5.g"], "--field", "7",
    )
    assert code == 0 and json.loads(out)["d"] == 3
    code, out, _ = run(capsys, "represent", "--family", "ortho", "--d", "3", "--field", "2")
    assert code == 0 and json.loads(out)["n"] == 4


def test_represent_graph_out_feeds_kernelize(files, capsys, tmp_path):
    # full CLI flow for an orthogonality-graph target
    rep_path = str(tmp_path / "o.json")
    graph_path = str(tmp_path / "o.g")
    code, _, _ = run(
        capsys, "represent", "--family", "ortho", "--d", "3", "--field", "2",
        "--out", rep_path, "--graph-out", graph_path,
    )
    assert code == 0
    inst_path = str(tmp_path / "oinst.g")
    inst = VertexCoverInstance(Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]), (0, 1, 2))
    open(inst_path, "w").write(write_instance(inst))
    code, out, _ = run(
        capsys,
        "--seed", "2",
        "kernelize", inst_path, "--target", graph_path,
        "--mode", "algebraic", "--rep", rep_path, "--verify",
        "--out", str(tmp_path / "okern.g"),
    )
    assert code == 0
    stats = json.loads(out)
    assert stats["verified_equivalent"] is True
    # the raw orthogonal representation over GF(2) was normalized into GF(8)
    assert stats["field_order"] == 8


def test_represent_field_too_small(files, capsys):
    code, _, err = run(
        capsys, "represent", "--family", "kneser", "--m", "5", "--r", "2",
        "--field", "7",
    )
    assert code == 2 and "threshold" in err


def test_reduce_nae_sat(files, capsys, tmp_path):
    out_path = str(tmp_path / "red.g")
    code, _, _ = run(
        capsys, "reduce", "--from", "nae-sat", "--cnf", files["phi4.cnf"],
        "--target", files["k4.g"], "--out", out_path,
    )
    assert code == 0
    from hcolkit.kernels import read_instance

    inst = read_instance(open(out_path).read())
    assert inst.k == 4 + 2 * 4 * 2  # |V_H| + 2qn, interior-free gadget


def test_reduce_width_mismatch(files, capsys):
    code, _, err = run(
        capsys, "reduce", "--from", "nae-sat", "--cnf", files["badwidth.cnf"],
        "--target", files["k4.g"],
    )
    assert code == 2 and "width" in err


def test_reduce_list_hcol(files, capsys, tmp_path):
    out_path = str(tmp_path / "plain.g")
    code, _, _ = run(
        capsys, "reduce", "--from", "list-hcol", "--instance", files["lists.g"],
        "--target", files["c5.g"], "--out", out_path,
    )
    assert code == 0
    from hcolkit.graphs import read_graph

    g = read_graph(open(out_path).read())
    assert g.n >= 4 + 5


def test_sweep_random_q(capsys):
    code, out, _ = run(
        capsys, "sweep", "--experiment", "random-q", "--sizes", "8,10", "--trials", "3"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,trials,mean_q,threshold,fraction_within"
    assert len(lines) == 3


def test_sweep_kernel_growth(capsys):
    code, out, _ = run(
        capsys, "sweep", "--experiment", "kernel-growth", "--ks", "4,5",
        "--q", "2", "--trials", "2",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,trial,vertices,vertex_bound,ratio"
    assert len(lines) == 5
    for line in lines[1:]:
        ratio = float(line.split(",")[-1])
        assert ratio <= 1.0


def test_sweep_zero_trials(capsys):
    code, out, _ = run(
        capsys, "sweep", "--experiment", "random-q", "--sizes", "8", "--trials", "0"
    )
    assert code == 0
    assert out.strip() == "n,trials,mean_q,threshold,fraction_within"


def test_commands_are_deterministic(files, capsys, tmp_path):
    args = ["--seed", "5", "sweep", "--experiment", "random-q", "--sizes", "10", "--trials", "3"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    rep1 = str(tmp_path / "r1.json")
    rep2 = str(tmp_path / "r2.json")
    run(capsys, "--seed", "9", "represent", "--family", "kneser", "--m", "4", "--r", "2", "--out", rep1)
    run(capsys, "--seed", "9", "represent", "--family", "kneser", "--m", "4", "--r", "2", "--out", rep2)
    assert open(rep1).read() == open(rep2).read()


def test_cross_process_determinism(files, tmp_path):
    # different hash seeds in different interpreters must not leak into output
    import os
    import subprocess
    import sys

    argv = [
        sys.executable, "-m", "hcolkit.cli", "--seed", "11",
        "kernelize", files["inst.g"], "--target", files["c5.g"],
        "--mode", "combinatorial", "--q", "2", "--verify",
    ]
    outputs = []
    for hash_seed in ("0", "424242"):
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        proc = subprocess.run(argv, capture_output=True, env=env, text=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]


def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "witness", "/nonexistent/path.g")
    assert code == 1


def test_help_exits_cleanly(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    for sub in ("witness", "kernelize", "represent", "reduce", "sweep"):
        with pytest.raises(SystemExit) as exc:
            main([sub, "--help"])
        assert exc.value.code == 0
        capsys.readouterr()


def test_witness_ceiling_exit_code(files, capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HCOL_WITNESS_VERTICES", "3")
    code, _, err = run(capsys, "witness", files["petersen.g"])
    assert code == 2 and "desk scale" in err


def test_reduce_gadget_search_exhaustion(files, capsys, tmp_path, monkeypatch):
    # C_6 is not a core, so no edge gadget exists; a tiny enumeration
    # ceiling makes the inconclusive search fast and the abort visible
    monkeypatch.setenv("HCOL_GADGET_VERTICES", "3")
    c6_path = str(tmp_path / "c6.g")
    open(c6_path, "w").write(write_graph(make_cycle(6)))
    cnf_path = str(tmp_path / "w3.cnf")
    open(cnf_path, "w").write(write_dimacs(CnfFormula(2, ((1, 2, -1),))))
    code, _, err = run(
        capsys, "reduce", "--from", "nae-sat", "--cnf", cnf_path,
        "--target", c6_path,
    )
    assert code == 2 and "inconclusive" in err
