#!/usr/bin/env python3
"""Contract tests for the qwalk command line: schemas, exit codes, sweep files."""

import csv
import json
import math
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

QWALK = None
DOCS = None

QUARTER_PI = math.pi / 4


def run(*args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.pop("WALKER_MAX_DIM", None)
    if env:
        full_env.update(env)
    return subprocess.run([QWALK, *map(str, args)], capture_output=True, text=True, env=full_env, cwd=cwd,
                          timeout=300)


def schema(name):
    with open(os.path.join(DOCS, "schemas", name + ".schema.json")) as f:
        return json.load(f)


class Outputs(unittest.TestCase):
    cases = {
        "spectrum": [
            ["--family", "hypercube", "--d", "3", "--gamma", "0.7"],
            ["--family", "bipartite", "--p", "2", "--q", "3", "--gamma", "1", "--vectors"],
            ["--family", "circulant", "--n", "5", "--couplings", "1,0.5", "--gamma", "1", "--source", "numerical"],
        ],
        "evolve": [
            ["--family", "cycle", "--n", "4", "--gamma", "1", "--t", "0.3"],
            ["--family", "star", "--n", "5", "--gamma", "1", "--t", "0.3", "--prep", "ground"],
        ],
        "qfi": [
            ["--family", "complete", "--n", "5", "--gamma", "1", "--t", "1", "--oracle", "--N", "10"],
            ["--family", "bipartite", "--p", "2", "--q", "4", "--gamma", "1", "--t", "1", "--phi", "opt"],
        ],
        "fi": [
            ["--family", "star", "--n", "6", "--central", "--gamma", "1", "--t", "0.5", "--phi", "opt"],
            ["--family", "complete", "--n", "4", "--first-m", "1", "--gamma", "1", "--t", QUARTER_PI],
            ["--family", "cycle", "--n", "8", "--beta-O", "0.5", "--beta-E", "0.25", "--gamma", "1", "--t", "0.4"],
            ["--family", "hypercube", "--d", "3", "--face", "1", "--gamma", "1", "--t", "0.4"],
        ],
        "efficiency": [
            ["--family", "complete", "--n", "8", "--m", "2", "--gamma", "0.5", "--t", "0.3"],
            ["--family", "cycle", "--n", "8", "--beta-O", "0.5", "--beta-E", "0.5", "--gamma", "1", "--t", "0.3"],
            ["--family", "hypercube", "--d", "3", "--delta", "1", "--gamma", "1", "--t", "0.3"],
            ["--family", "star", "--n", "5", "--gamma", "1", "--t", "0.3"],
        ],
        "optimize-prep": [
            ["--family", "cycle", "--n", "7", "--gamma", "1", "--t", "0.4", "--numeric", "--restarts", "4"],
            ["--family", "hypercube", "--d", "2", "--gamma", "1", "--t", "1"],
        ],
        "optimize-n": [
            ["--family", "bipartite", "--n", "10", "--gamma", "1", "--t", "1"],
            ["--family", "star", "--regime", "small", "--gamma", "1"],
            ["--family", "star", "--regime", "large", "--gamma", "1", "--n-max", "200"],
        ],
        "estimate": [
            ["--family", "complete", "--n", "8", "--gamma-true", "0.5", "--t", math.pi / 16, "--shots", "500",
             "--reps", "10", "--bracket", "0.1,0.9"],
        ],
    }

    def test_json_outputs_match_schemas(self):
        for command, variants in self.cases.items():
            s = schema(command)
            for args in variants:
                with self.subTest(command=command, args=args):
                    r = run(command, *args)
                    self.assertEqual(r.returncode, 0, r.stderr)
                    doc = json.loads(r.stdout)
                    jsonschema.validate(doc, s)
                    self.assertEqual(doc["command"], command)

    def test_csv_numbers_round_trip(self):
        r = run("fi", "--family", "cycle", "--n", "6", "--gamma", "1", "--t", "0.5", "--format", "csv")
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = list(csv.DictReader(r.stdout.splitlines()))
        self.assertEqual(len(rows), 1)
        self.assertEqual(list(rows[0]), ["family", "n", "gamma", "t", "m", "fi", "qfi", "eta"])
        self.assertAlmostEqual(float(rows[0]["qfi"]), 4.0, places=12)

    def test_spectrum_values(self):
        doc = json.loads(run("spectrum", "--family", "complete", "--n", "4", "--gamma", "1").stdout)
        self.assertAlmostEqual(doc["eigenvalues"][0], 0.0, places=12)
        self.assertEqual([g["multiplicity"] for g in doc["groups"]], [1, 3])


class ExitCodes(unittest.TestCase):
    def assert_code(self, code, *args, env=None):
        r = run(*args, env=env)
        self.assertEqual(r.returncode, code, f"args={args}\nstdout={r.stdout}\nstderr={r.stderr}")
        if code != 0:
            self.assertTrue(r.stderr.strip(), "diagnostic expected on stderr")
        return r

    def test_usage_errors(self):
        self.assert_code(2)
        self.assert_code(2, "no-such-command")
        self.assert_code(2, "qfi", "--family", "complete", "--n", "4", "--gamma", "1", "--t", "1", "--bogus")
        self.assert_code(2, "qfi", "--family", "complete", "--n", "4", "--gamma", "1")
        self.assert_code(2, "qfi", "--family", "cycle", "--n", "4", "--d", "3", "--gamma", "1", "--t", "1")
        self.assert_code(2, "qfi", "--family", "hypercube", "--gamma", "1", "--t", "1")
        self.assert_code(2, "fi", "--family", "star", "--n", "5", "--central", "--first-m", "2", "--gamma", "1",
                         "--t", "1")
        self.assert_code(2, "fi", "--family", "cycle", "--n", "8", "--beta-O", "0.5", "--gamma", "1", "--t", "1")
        self.assert_code(2, "estimate", "--family", "complete", "--n", "4", "--gamma-true", "0.5", "--t", "1",
                         "--bracket", "0.9,0.1")

    def test_help_succeeds(self):
        r = self.assert_code(0, "--help")
        self.assertIn("sweep", r.stdout)
        self.assert_code(0, "fi", "--help")

    def test_dimension_cap(self):
        r = self.assert_code(1, "qfi", "--family", "complete", "--n", "100000", "--gamma", "1", "--t", "1")
        self.assertIn("WALKER_MAX_DIM", r.stderr)
        self.assert_code(1, "qfi", "--family", "complete", "--n", "64", "--gamma", "1", "--t", "1",
                         env={"WALKER_MAX_DIM": "32"})
        self.assert_code(0, "qfi", "--family", "complete", "--n", "64", "--gamma", "1", "--t", "1",
                         env={"WALKER_MAX_DIM": "64"})

    def test_preparation_files(self):
        base = ["evolve", "--family", "cycle", "--n", "4", "--gamma", "1", "--t", "1", "--prep"]
        self.assert_code(2, *base, "/nonexistent/prep.json")
        with tempfile.TemporaryDirectory() as tmp:
            cases = {
                "zero.json": (1, [[0, 0]] * 4),
                "short.json": (1, [[1, 0], [0, 0]]),
                "good.json": (0, [[0.6, 0], [0, 0.8], [0, 0], [0, 0]]),
            }
            for name, (code, amps) in cases.items():
                path = os.path.join(tmp, name)
                with open(path, "w") as f:
                    json.dump({"basis": "energy", "amplitudes": amps}, f)
                with self.subTest(file=name):
                    self.assert_code(code, *base, path)

    def test_config_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            bad = os.path.join(tmp, "bad.json")
            with open(bad, "w") as f:
                json.dump({"family": "cycle", "n": 8, "gamma": 1, "t": 1, "axes": [{"name": "colour"}]}, f)
            r = self.assert_code(2, "sweep", "--config", bad)
            self.assertIn("/axes/0/name", r.stderr)
            self.assert_code(2, "sweep", "--config", os.path.join(tmp, "missing.json"))


class Sweeps(unittest.TestCase):
    def test_shipped_configs(self):
        cfg_schema = schema("sweep-config")
        out_schema = schema("sweep-output")
        sweeps = os.path.join(DOCS, "sweeps")
        for name in sorted(os.listdir(sweeps)):
            with self.subTest(config=name), tempfile.TemporaryDirectory() as tmp:
                path = os.path.join(sweeps, name)
                with open(path) as f:
                    cfg = json.load(f)
                jsonschema.validate(cfg, cfg_schema)

                csv_path = os.path.join(tmp, "out.csv")
                r = run("sweep", "--config", path, "--output", csv_path, "--format", "csv")
                self.assertEqual(r.returncode, 0, r.stderr)
                with open(csv_path) as f:
                    rows = list(csv.DictReader(f))

                r = run("sweep", "--config", path, "--output", "-", "--format", "json")
                self.assertEqual(r.returncode, 0, r.stderr)
                doc = json.loads(r.stdout)
                jsonschema.validate(doc, out_schema)
                self.assertEqual(len(rows), len(doc["rows"]))

                for c, j in zip(rows, doc["rows"]):
                    for key in ("qfi", "fi", "eta"):
                        if j[key] is None:
                            self.assertEqual(c[key], "")
                        else:
                            self.assertEqual(float(c[key]), j[key])

    def test_complete_sweep_values(self):
        r = run("sweep", "--config", os.path.join(DOCS, "sweeps", "complete_n.json"), "--output", "-")
        self.assertEqual(r.returncode, 0, r.stderr)
        for row in csv.DictReader(r.stdout.splitlines()):
            n = int(row["n"])
            self.assertAlmostEqual(float(row["qfi"]) / (n * n), 1.0, places=9)

    def test_relative_output_lands_next_to_cwd(self):
        with tempfile.TemporaryDirectory() as tmp:
            r = run("sweep", "--config", os.path.join(DOCS, "sweeps", "hypercube_d.json"), cwd=tmp)
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertTrue(os.path.exists(os.path.join(tmp, "hypercube_d.csv")))


if __name__ == "__main__":
    if len(sys.argv) < 3:
        sys.exit("usage: test_cli.py <qwalk binary> <docs dir>")
    QWALK, DOCS = os.path.abspath(sys.argv[1]), os.path.abspath(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
