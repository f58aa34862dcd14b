"""``cohfilt`` command line.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 reference-example
mismatch, 5 property failure.
"""
import argparse
import json
import sys
import time

import numpy as np

from cohfilt import filtration, io, linalg, measures, oracle, sio, states, suite, transform
from cohfilt.errors import CoherenceError, ParseError, ValidationError

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_REFERENCE = 4
EXIT_PROPERTY = 5

TOL_DEFAULTS = {
    "herm_tol": states.STATE_TOL,
    "trace_tol": states.STATE_TOL,
    "psd_tol": states.STATE_TOL,
    "zero_tol": states.ZERO_TOL,
    "sio_tol": sio.SIO_TOL,
    "bisect_tol": measures.BISECT_TOL,
    "rank_tol": transform.RANK_TOL,
    "measure_tol": measures.MEASURE_TOL,
}

DEFAULT_SAMPLES = {"oracle": 100000, "suite": 200}


class CommandFailed(Exception):
    def __init__(self, code, results):
        super().__init__(code)
        self.code = code
        self.results = results


class _Timer:
    def __init__(self):
        self.timings = {}

    def phase(self, name):
        timer = self

        class _Phase:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.timings[name] = round((time.perf_counter() - self.t0) * 1000.0, 3)

        return _Phase()


def _summary(label, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {label}{': ' + detail if detail else ''}", file=sys.stderr)


def parse_tols(items):
    tols = dict(TOL_DEFAULTS)
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or name not in TOL_DEFAULTS:
            raise ParseError(f"bad --tol {item!r}; known names: {', '.join(sorted(TOL_DEFAULTS))}")
        try:
            tols[name] = float(value)
        except ValueError:
            raise ParseError(f"--tol {name} needs a number, got {value!r}") from None
    return tols


def load_state(path, tols, inputs):
    obj = io.read_json(path)
    M = io.parse_matrix(obj)
    inputs["matrix_sha256"] = io.digest(io.matrix_to_json(M))
    return states.validate_density(M, tols["herm_tol"], tols["trace_tol"], tols["psd_tol"])


def _state_from_args(args, tols, inputs, timer):
    with timer.phase("load"):
        if args.input:
            return load_state(args.input, tols, inputs)
        if args.dim is None:
            raise ParseError("need --input or --dim")
        rho = states.random_density(args.dim, args.dim, args.seed)
        inputs["matrix_sha256"] = io.digest(io.matrix_to_json(rho.mat))
        return rho


def _require_input(args):
    if not args.input:
        raise ParseError(f"'{args.command}' needs --input")


def cmd_filtrate(args, tols, inputs, timer):
    _require_input(args)
    with timer.phase("load"):
        rho = load_state(args.input, tols, inputs)
    with timer.phase("filtrate"):
        res = filtration.filtrate(rho, tols["zero_tol"])
    _summary("filtrate", True, f"max_fidelity={res.max_fidelity:.12g}")
    return {
        "dim": rho.dim,
        "max_fidelity": res.max_fidelity,
        "lambda_max": res.lambda_max,
        "achieved_fidelity": res.achieved_fidelity,
        "success_probability": res.success_probability,
        "optimal_kraus": io.matrix_to_json(res.optimal_kraus.mat),
        "output_state": io.matrix_to_json(res.output_state.mat),
    }


def cmd_measure(args, tols, inputs, timer):
    _require_input(args)
    with timer.phase("load"):
        rho = load_state(args.input, tols, inputs)
    with timer.phase("measure"):
        rep = measures.report(rho, tols["zero_tol"], tols["bisect_tol"], tols["herm_tol"])
    agree = abs(rep.robustness - rep.robustness_bisect) <= 1e-7
    _summary("robustness two-route agreement", agree,
             f"{rep.robustness:.12g} vs {rep.robustness_bisect:.12g}")
    return rep.to_dict()


def cmd_reference_examples(args, tols, inputs, timer):
    with timer.phase("compute"):
        rho1, rho2 = transform.reference_states()
        cm1, cm2 = measures.c_m(rho1), measures.c_m(rho2)
        enum1 = list(transform.enumerate_compressions(rho1, tols["rank_tol"], tols["zero_tol"]))
        reach1 = transform.pure_reachable(rho1, 2, tols["rank_tol"], tols["zero_tol"])
        reach2 = transform.pure_reachable(rho2, 2, tols["rank_tol"], tols["zero_tol"])
        counter = transform.counterexample_check()
    checks = [
        ("c_m(rho1) = 8/15", abs(cm1 - 8 / 15) <= 1e-9, f"{cm1:.12g}"),
        ("c_m(rho2) = 1/3", abs(cm2 - 1 / 3) <= 1e-9, f"{cm2:.12g}"),
        ("counterexample_check", counter, ""),
    ]
    for label, ok, detail in checks:
        _summary(label, ok, detail)
    results = {
        "c_m_rho1": cm1,
        "c_m_rho2": cm2,
        "c_m_rho1_printed": round(cm1, 3),
        "c_m_rho2_printed": round(cm2, 3),
        "counterexample_check": counter,
        "pure_reachable_rho1_r2": reach1.possible,
        "rho1_compressions": [
            {
                "indices": list(r.indices),
                "rank_one": r.rank_one,
                "coherence_rank": r.coherence_rank,
                "weight": r.weight,
            }
            for r in enum1
        ],
        "pure_reachable_rho2_r2": reach2.possible,
        "rho2_witness": list(reach2.witness.indices) if reach2.witness else None,
        "checks": [{"name": label, "passed": ok} for label, ok, _ in checks],
    }
    if not all(ok for _, ok, _ in checks):
        raise CommandFailed(EXIT_REFERENCE, results)
    return results


def cmd_suite(args, tols, inputs, timer):
    if args.dim is None:
        raise ParseError("'suite' needs --dim")
    if args.dim < 1:
        raise ParseError("--dim must be positive")
    n_states = args.samples if args.samples is not None else DEFAULT_SAMPLES["suite"]
    inputs["n_states"] = n_states
    with timer.phase("suite"):
        props = suite.run_suite(args.dim, args.seed, n_states=n_states)
    for p in props:
        _summary(p.name, p.passed, f"trials={p.trials} worst_margin={p.worst_margin:.3e}")
    results = {"dim": args.dim, "properties": [p.to_dict() for p in props],
               "all_passed": all(p.passed for p in props)}
    if not results["all_passed"]:
        raise CommandFailed(EXIT_PROPERTY, results)
    return results


def cmd_oracle(args, tols, inputs, timer):
    rho = _state_from_args(args, tols, inputs, timer)
    samples = args.samples if args.samples is not None else DEFAULT_SAMPLES["oracle"]
    with timer.phase("closed_form"):
        closed = filtration.max_fidelity(rho, tols["zero_tol"])
    with timer.phase("oracle"):
        res = oracle.random_search_fidelity(rho, samples, seed=args.seed)
    gap = closed - res.best_fidelity
    dominance = res.best_fidelity <= closed + 1e-9
    _summary("oracle dominance", dominance, f"closed={closed:.12g} best={res.best_fidelity:.12g}")
    return {
        "dim": rho.dim,
        "closed_form": closed,
        "oracle_best": res.best_fidelity,
        "gap": gap,
        "dominance": dominance,
        "samples": samples,
        "best_kraus_diag": {"re": res.best_kraus_diag.real.tolist(), "im": res.best_kraus_diag.imag.tolist()},
    }


def cmd_validate(args, tols, inputs, timer):
    _require_input(args)
    with timer.phase("validate"):
        obj = io.read_json(args.input)
        if isinstance(obj, dict) and "kraus" in obj:
            mats = io.parse_instrument(obj)
            inputs["matrix_sha256"] = io.digest(io.instrument_to_json(mats))
            ins = sio.instrument(mats, sio_tol=tols["sio_tol"], psd_tol=tols["psd_tol"])
            w = linalg.eigvalsh(ins.effect())
            results = {"kind": "instrument", "dim": ins.dim, "n_kraus": len(ins.kraus), "valid": True,
                       "trace_preserving": bool(np.max(np.abs(w - 1.0)) <= 1e-10)}
        else:
            M = io.parse_matrix(obj)
            inputs["matrix_sha256"] = io.digest(io.matrix_to_json(M))
            rho = states.validate_density(M, tols["herm_tol"], tols["trace_tol"], tols["psd_tol"])
            results = {"kind": "density_matrix", "dim": rho.dim, "valid": True,
                       "is_incoherent": states.is_incoherent(rho, tols["herm_tol"])}
    _summary("validate", True, results["kind"])
    return results


COMMANDS = {
    "filtrate": cmd_filtrate,
    "measure": cmd_measure,
    "paper-examples": cmd_reference_examples,
    "suite": cmd_suite,
    "oracle": cmd_oracle,
    "validate": cmd_validate,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="matrix or instrument JSON file")
    common.add_argument("--dim", type=int, help="dimension for generated states")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=None,
                        help="oracle: Kraus samples (default 100000); suite: number of states (default 200)")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="tolerance override, repeatable")
    common.add_argument("--output", help="write the JSON report here instead of stdout")
    parser = argparse.ArgumentParser(prog="cohfilt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _emit(report, path):
    text = json.dumps(io.normalize(report), indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    timer = _Timer()
    inputs = {"input": args.input, "dim": args.dim, "seed": args.seed, "samples": args.samples}
    report = {"schema_version": SCHEMA_VERSION, "command": args.command, "inputs": inputs}
    code = EXIT_OK
    try:
        tols = parse_tols(args.tol)
        inputs["tol"] = {k: v for k, v in tols.items() if v != TOL_DEFAULTS[k]}
        report["results"] = COMMANDS[args.command](args, tols, inputs, timer)
    except CommandFailed as exc:
        code = exc.code
        report["results"] = exc.results
    except ParseError as exc:
        code = EXIT_PARSE
        report["results"] = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    except ValidationError as exc:
        code = EXIT_VALIDATION
        report["results"] = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    except CoherenceError as exc:
        code = EXIT_VALIDATION
        report["results"] = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if "error" in report["results"]:
        err = report["results"]["error"]
        print(f"error: {err['type']}: {err['message']}", file=sys.stderr)
    report["timings"] = timer.timings
    _emit(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
