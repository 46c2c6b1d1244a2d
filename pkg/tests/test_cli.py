import json

import numpy as np
import pytest

from fmodularity.blockmodel import sbm_distribution
from fmodularity.cli import main
from fmodularity.fileio import (
    read_edge_list,
    read_matrix_csv,
    write_edge_list,
    write_matrix_csv,
)
from fmodularity.network import BipartiteMultigraph

DISJOINT_EDGES = np.array(
    [
        [0, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=float,
)


def _write_csv(tmp_path, name, M):
    path = tmp_path / name
    write_matrix_csv(path, M)
    return str(path)


class TestMI:
    def test_known_value(self, tmp_path, capsys):
        path = _write_csv(tmp_path, "P.csv", [[0.4, 0.1], [0.1, 0.4]])
        assert main(["mi", "--input", path, "--family", "kl"]) == 0
        out = capsys.readouterr().out.strip()
        assert float(out) == pytest.approx(0.19274475702175753, abs=1e-15)

    def test_unknown_family_exits_2(self, tmp_path, capsys):
        path = _write_csv(tmp_path, "P.csv", [[1.0]])
        assert main(["mi", "--input", path, "--family", "nope"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_non_distribution_exits_2(self, tmp_path, capsys):
        path = _write_csv(tmp_path, "P.csv", [[1.0, 1.0]])
        assert main(["mi", "--input", path, "--family", "kl"]) == 2

    def test_missing_file_exits_2(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.csv")
        assert main(["mi", "--input", missing, "--family", "kl"]) == 2


class TestModularity:
    def _edge_file(self, tmp_path):
        counts = np.array([[6, 1, 1], [1, 5, 0], [0, 2, 4]])
        g = BipartiteMultigraph.from_count_matrix(counts)
        path = tmp_path / "g.tsv"
        write_edge_list(path, g)
        return str(path)

    def test_edges_input_and_report(self, tmp_path, capsys):
        edges = self._edge_file(tmp_path)
        out = tmp_path / "report.json"
        code = main(
            [
                "modularity",
                "--edges",
                edges,
                "--family",
                "tvd",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        value = float(capsys.readouterr().out.strip())
        assert value >= 0.0
        report = json.loads(out.read_text())
        assert report["value"] == value
        assert report["family"] == "tvd"
        assert report["method"] == "sign"
        assert report["config"]["input"] == edges
        assert report["u_labels"] == ["0", "1", "2"]

    def test_adjacency_input(self, tmp_path, capsys):
        path = _write_csv(tmp_path, "A.csv", DISJOINT_EDGES)
        out = tmp_path / "report.json"
        code = main(
            [
                "modularity",
                "--adjacency",
                path,
                "--family",
                "js",
                "--rank",
                "2",
                "--method",
                "svd",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        report = json.loads(out.read_text())
        assert report["rank_used"] == 2
        assert report["u_labels"] == ["u_0", "u_1", "u_2", "u_3"]
        assert report["v_labels"][0] == "v_0"

    def test_requires_exactly_one_input(self, tmp_path, capsys):
        edges = self._edge_file(tmp_path)
        adjacency = _write_csv(tmp_path, "A.csv", DISJOINT_EDGES)
        both = [
            "modularity",
            "--edges",
            edges,
            "--adjacency",
            adjacency,
            "--family",
            "js",
        ]
        assert main(both) == 2
        assert main(["modularity", "--family", "js"]) == 2

    def test_rank_out_of_range_exits_2(self, tmp_path):
        edges = self._edge_file(tmp_path)
        args = ["modularity", "--edges", edges, "--family", "js", "--rank", "9"]
        assert main(args) == 2


class TestNewmanAndBipartition:
    def test_newman_disjoint_edges(self, tmp_path, capsys):
        adjacency = _write_csv(tmp_path, "A.csv", DISJOINT_EDGES)
        partition = tmp_path / "part.txt"
        partition.write_text("0\n0\n1\n1\n")
        code = main(
            ["newman", "--adjacency", adjacency, "--partition", str(partition)]
        )
        assert code == 0
        assert float(capsys.readouterr().out.strip()) == 0.5

    def test_newman_partition_mismatch(self, tmp_path):
        adjacency = _write_csv(tmp_path, "A.csv", DISJOINT_EDGES)
        partition = tmp_path / "part.txt"
        partition.write_text("0\n1\n")
        code = main(
            ["newman", "--adjacency", adjacency, "--partition", str(partition)]
        )
        assert code == 2

    def test_bipartition_output(self, tmp_path, capsys):
        adjacency = _write_csv(tmp_path, "A.csv", DISJOINT_EDGES)
        code = main(
            ["bipartition", "--adjacency", adjacency, "--null", "newman"]
        )
        assert code == 0
        sign_line, value_line = capsys.readouterr().out.strip().splitlines()
        signs = [int(tok) for tok in sign_line.split()]
        assert len(signs) == 4 and set(signs) <= {-1, 1}
        assert signs[0] == signs[1] and signs[2] == signs[3]
        assert signs[0] != signs[2]
        assert float(value_line) == 1.0


class TestGenerateAndContract:
    def test_sbm_gen_writes_graph_and_dist(self, tmp_path):
        out = tmp_path / "g.tsv"
        dist = tmp_path / "P.csv"
        code = main(
            [
                "sbm-gen",
                "--m",
                "2",
                "--n",
                "2",
                "--alpha",
                "0.5",
                "--edges",
                "50",
                "--seed",
                "7",
                "--out",
                str(out),
                "--dist",
                str(dist),
            ]
        )
        assert code == 0
        g, _, _ = read_edge_list(out)
        assert g.n_edges == 50
        np.testing.assert_array_equal(
            read_matrix_csv(dist), sbm_distribution(2, 2, 0.5)
        )

    def test_generated_graph_feeds_modularity(self, tmp_path, capsys):
        out = tmp_path / "g.tsv"
        main(
            "sbm-gen --m 2 --n 2 --alpha 0.1 --edges 200 --seed 3".split()
            + ["--out", str(out)]
        )
        assert main(["modularity", "--edges", str(out), "--family", "js"]) == 0

    def test_contract(self, tmp_path, capsys):
        dist = _write_csv(tmp_path, "P.csv", sbm_distribution(2, 2, 0.0))
        groups = tmp_path / "groups.json"
        groups.write_text("[[0, 1], [2, 3]]\n")
        out = tmp_path / "P2.csv"
        groups_out = tmp_path / "groups2.json"
        code = main(
            [
                "contract",
                "--dist",
                dist,
                "--groups",
                str(groups),
                "--merge",
                "0",
                "1",
                "--out",
                str(out),
                "--groups-out",
                str(groups_out),
            ]
        )
        assert code == 0
        assert json.loads(capsys.readouterr().out) == [[0, 1, 2, 3]]
        np.testing.assert_allclose(
            read_matrix_csv(out), np.full((4, 4), 1 / 16), atol=1e-15
        )
        assert json.loads(groups_out.read_text()) == [[0, 1, 2, 3]]

    def test_contract_same_group_exits_2(self, tmp_path):
        dist = _write_csv(tmp_path, "P.csv", sbm_distribution(2, 2, 0.0))
        groups = tmp_path / "groups.json"
        groups.write_text("[[0, 1], [2, 3]]\n")
        args = [
            "contract",
            "--dist",
            dist,
            "--groups",
            str(groups),
            "--merge",
            "0",
            "0",
            "--out",
            str(tmp_path / "P2.csv"),
        ]
        assert main(args) == 2


TINY_CONFIG = {
    "families": ["tvd"],
    "alphas": [0.3],
    "m": 2,
    "n": 2,
    "edges": 64,
    "trials": 3,
    "schedule": [[0, 1]],
    "seed": 9,
}


class TestExperiment:
    def _config_file(self, tmp_path, cfg):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        return str(path)

    def test_runs_and_writes_all_outputs(self, tmp_path):
        cfg = self._config_file(tmp_path, TINY_CONFIG)
        out = tmp_path / "results.csv"
        full = tmp_path / "results.json"
        maps = tmp_path / "maps"
        code = main(
            [
                "experiment",
                "--config",
                cfg,
                "--out",
                str(out),
                "--json",
                str(full),
                "--heatmaps",
                str(maps),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("family,alpha,stage,")
        assert len(lines) == 3  # header + 2 stages
        payload = json.loads(full.read_text())
        assert len(payload["results"]) == 2
        assert (maps / "alpha_0.3" / "stage_1.csv").exists()

    def test_csv_identical_across_reruns(self, tmp_path):
        cfg = self._config_file(tmp_path, TINY_CONFIG)
        out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
        assert main(["experiment", "--config", cfg, "--out", str(out1)]) == 0
        assert main(["experiment", "--config", cfg, "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_unknown_config_key_exits_2(self, tmp_path):
        cfg = self._config_file(tmp_path, {**TINY_CONFIG, "familes": ["js"]})
        out = tmp_path / "r.csv"
        assert main(["experiment", "--config", cfg, "--out", str(out)]) == 2

    def test_malformed_config_exits_2(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        out = tmp_path / "r.csv"
        assert main(["experiment", "--config", str(path), "--out", str(out)]) == 2

    def test_infinite_divergence_exits_3(self, tmp_path, capsys):
        # alpha=0 with one vertex per block gives disjoint diagonal support,
        # so the unbiased null puts zero mass where F is positive
        bad = {
            "families": ["kl"],
            "alphas": [0.0],
            "m": 2,
            "n": 1,
            "edges": 2,
            "trials": 10,
            "schedule": [],
            "baseline_null": "unbiased",
            "seed": 1,
        }
        cfg = self._config_file(tmp_path, bad)
        out = tmp_path / "r.csv"
        assert main(["experiment", "--config", cfg, "--out", str(out)]) == 3
        assert "error:" in capsys.readouterr().err
