import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from src.app import create_app, main
from src.lib.algebra.exact_linalg import ExactMatrix
from src.models.cli.cli_config import CliConfig


def call(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    with redirect_stdout(stdout), redirect_stderr(stderr):
        code = main(list(argv))
    return code, stdout.getvalue(), stderr.getvalue()


class TestParser(unittest.TestCase):

    def test_global_flags_follow_the_command(self):
        args = create_app().parse_args(["arity5", "--prime", "32003", "--delta", "3/4", "--threads", "2"])
        self.assertEqual((args.command, args.prime, args.delta, args.threads), ("arity5", 32003, "3/4", 2))

    def test_rep_arguments(self):
        args = create_app().parse_args(["rep", "--arity", "7", "--partition", "3,2,2"])
        self.assertEqual(args.handler(args), {"arity": 7, "partition": "3,2,2"})

    def test_verify_figure2_and_its_alias(self):
        for name in ("verify-figure2", "verify-new-relation"):
            self.assertEqual(create_app().parse_args([name]).command, "verify-figure2", name)

    def test_delta_one_is_accepted(self):
        self.assertEqual(CliConfig(command="arity5", delta="1").delta, "1")


class TestMain(unittest.TestCase):

    def test_znf_json(self):
        code, out, _ = call("znf", "(ab)c", "--format", "json", "--quiet")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["schema"], 1)
        self.assertEqual(report["command"], "znf")
        self.assertEqual(report["normal_form"], "a(bc) + a(cb)")

    def test_expand_text(self):
        code, out, _ = call("expand", "[a,b,c]", "--quiet")
        self.assertEqual(code, 0)
        self.assertIn("sign_string: ++---+", out)

    def test_sanity(self):
        code, out, _ = call("sanity", "--quiet")
        self.assertEqual(code, 0)
        self.assertIn("tt_expansion_residual: 0", out)

    def test_output_and_metrics_files(self):
        with tempfile.TemporaryDirectory() as directory:
            report_path = os.path.join(directory, "report.json")
            metrics_path = os.path.join(directory, "metrics.txt")
            matrix_path = os.path.join(directory, "e3.txt")
            code, out, _ = call("sanity", "--quiet", "--format", "json", "--output", report_path,
                                "--metrics-file", metrics_path, "--dump-matrix", f"E3={matrix_path}")
            self.assertEqual(code, 0)
            self.assertEqual(out, "")
            with open(report_path, encoding="utf-8") as file:
                self.assertEqual(json.load(file)["e3_shape"], "6x3")
            with open(metrics_path, encoding="utf-8") as file:
                self.assertIn("znf_expansion_duration_seconds", file.read())
            self.assertEqual(ExactMatrix.load(matrix_path).shape, (6, 3))

    def test_rep(self):
        code, out, _ = call("rep", "--arity", "5", "--partition", "2,1,1,1", "--quiet", "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["row"]["all"], 2)


class TestExitCodes(unittest.TestCase):

    def test_malformed_monomial(self):
        code, out, err = call("znf", "(ab", "--quiet")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("MalformedInputException", err)

    def test_json_error(self):
        code, _, err = call("expand", "[a,b]", "--quiet", "--format", "json")
        self.assertEqual(code, 2)
        error = json.loads(err.strip().splitlines()[-1])["error"]
        self.assertEqual((error["kind"], error["code"]), ("MalformedInputException", 2))

    def test_bad_prime(self):
        code, _, err = call("sanity", "--prime", "100", "--quiet")
        self.assertEqual(code, 2)
        self.assertIn("not prime", err)

    def test_delta_out_of_range(self):
        for delta in ("2", "1/4", "x"):
            code, _, _ = call("arity5", "--delta", delta, "--quiet")
            self.assertEqual(code, 2, delta)

    def test_unknown_matrix_name(self):
        code, _, _ = call("sanity", "--dump-matrix", "E9=/tmp/never", "--quiet")
        self.assertEqual(code, 2)

    def test_bad_assignment(self):
        code, _, _ = call("sanity", "--dump-matrix", "E3", "--quiet")
        self.assertEqual(code, 2)

    def test_usage_errors(self):
        self.assertEqual(call()[0], 2)
        self.assertEqual(call("frobnicate")[0], 2)
        self.assertEqual(call("rep", "--arity", "6", "--partition", "6")[0], 2)

    def test_wrong_partition(self):
        code, _, _ = call("rep", "--arity", "5", "--partition", "4,3", "--quiet")
        self.assertEqual(code, 2)

    def test_help(self):
        self.assertEqual(call("--help")[0], 0)


if __name__ == "__main__":
    unittest.main()
