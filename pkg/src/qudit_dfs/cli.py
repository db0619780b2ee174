"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 1 internal error or a failed
invariant (verify-code).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import codes, noise_sim
from .collective import SiteConfig, StateVector, collective_set, max_dense_dim
from .dfs_finder import commutant_dimension, decompose_hilbert_space
from .serialization import dump_json, load_json, matrix_to_json
from .su_algebra import structure_constants
from .tableaux import decompose_chain, parse_factors


class UsageError(Exception):
    """Invalid user input; maps to exit code 2."""


def _config(d: int, n: int | None, kinds: str | None) -> SiteConfig:
    if kinds:
        config = SiteConfig.parse(d, kinds)
        if n is not None and n != config.n:
            raise UsageError(f"--n {n} disagrees with {config.n} entries in --kinds")
        return config
    if n is None:
        raise UsageError("give --n or --kinds")
    return SiteConfig.uniform(d, n)


def _check_size(config: SiteConfig) -> None:
    bound = max_dense_dim()
    if config.dim > bound:
        raise UsageError(
            f"Hilbert space dimension {config.dim} exceeds the dense bound {bound}; "
            "raise QDK_MAX_DIM or use matrix-free operators (collective_set(config, matrix_free=True))"
        )


def _write_json(path: str | None, data) -> None:
    if path:
        dump_json(data, path)
        print(f"wrote {path}")


def _load_state(path: str) -> StateVector:
    try:
        return StateVector.from_json(load_json(path))
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read state file {path}: {exc}") from None


def cmd_decompose(args) -> int:
    factors = parse_factors(args.factors)
    dec = decompose_chain(factors, args.d)
    print(dec.direct_sum())
    for diagram, mult in dec.terms:
        print(f"  {diagram} x{mult}")
    print(f"total dimension {dec.total_dimension}")
    _write_json(args.json, dec.to_json())
    return 0


def cmd_operators(args) -> int:
    config = _config(args.d, args.n, args.kinds)
    _check_size(config)
    ops = collective_set(config)
    dense = [ops.dense(a) for a in range(len(ops))]
    f = structure_constants(ops.site_generators[next(iter(ops.site_generators))])
    # [S^a, S^b] = 2i f_abc S^c
    resid = 0.0
    for a in range(len(dense)):
        for b in range(a + 1, len(dense)):
            lhs = dense[a] @ dense[b] - dense[b] @ dense[a]
            rhs = 2j * sum(f[a, b, c] * dense[c] for c in np.nonzero(f[a, b])[0])
            resid = max(resid, float(np.abs(lhs - rhs).max()))
    herm = max(float(np.abs(m - m.conj().T).max()) for m in dense)
    print(f"d={config.d} kinds={','.join(config.kind_codes)} dim={config.dim}")
    for a, op in enumerate(ops.ops):
        print(f"  S^{a + 1}: nnz={op.nnz}")
    print(f"hermiticity residual {herm:.3e}")
    print(f"commutation residual {resid:.3e}")
    _write_json(args.json, {
        "schema_version": 1,
        "d": config.d,
        "kinds": config.kind_codes,
        "dim": config.dim,
        "nnz": [int(op.nnz) for op in ops.ops],
        "hermiticity_residual": herm,
        "commutation_residual": resid,
    })
    return 0


def cmd_find_dfs(args) -> int:
    config = _config(args.d, args.n, args.kinds)
    _check_size(config)
    ops = collective_set(config)
    report = decompose_hilbert_space(config, ops)
    comm = commutant_dimension(ops)
    print(f"{'irrep':<16}{'d_J':>6}{'n_J':>6}")
    for s in report.sectors:
        print(f"{s.name():<16}{s.dim:>6}{s.mult:>6}")
    print(f"commutant dimension {comm} (sum n_J^2 = {sum(s.mult ** 2 for s in report.sectors)})")
    for k, v in report.residuals.items():
        print(f"  {k} residual {v:.3e}")
    for flag in report.flags:
        print(f"  flag: {flag}")
    data = report.to_json(include_v=args.include_v)
    data["commutant_dimension"] = comm
    _write_json(args.json, data)
    return 0


def cmd_verify_code(args) -> int:
    try:
        code = codes.get_code(args.code)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    results = codes.verify_code(code, args.trials, args.seed)
    print(f"code {code.name}, {args.trials} random coefficient vectors, seed {args.seed}")
    for r in results:
        extra = f"  {r.detail}" if r.detail else ""
        print(f"  {r.status:<5}{r.name:<24}residual {r.residual:.3e} (tol {r.tol:.0e}){extra}")
    failed = [r for r in results if r.passed is False]
    print("FAIL" if failed else "PASS")
    _write_json(args.json, {
        "schema_version": 1,
        "code": code.name,
        "trials": args.trials,
        "seed": args.seed,
        "results": [
            {"name": r.name, "status": r.status, "residual": r.residual, "tol": r.tol, "detail": r.detail}
            for r in results
        ],
    })
    return 1 if failed else 0


def cmd_label(args) -> int:
    rows = []
    if args.state:
        state = _load_state(args.state)
        qn = codes.compute_label(state.amplitudes, state.config, args.lam)
        rows.append(("state", qn, None))
    else:
        try:
            code = codes.get_code(args.code)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        resid = codes.label_residuals(code)
        for name, qn, r in zip(code.names, code.labels, resid):
            rows.append((name, qn, float(r)))
    for name, qn, r in rows:
        tail = "" if r is None else f"  residual {r:.2e}"
        print(f"{name:<14}{qn}{tail}")
    _write_json(args.json, {
        "schema_version": 1,
        "labels": [{"name": n, "label": qn.to_json(), "residual": r} for n, qn, r in rows],
    })
    return 0


def cmd_discriminate(args) -> int:
    if args.state:
        state = _load_state(args.state)
    else:
        state = codes.PRESETS[args.preset]()
    res = codes.discriminate(state)
    print(f"kinds {','.join(state.config.kind_codes)}")
    print(f"max_a ||S^a psi|| = {max(res.generator_norms):.3e}")
    print("singlet" if res.is_singlet else "not a singlet")
    for dynkin, w in res.irrep_content:
        print(f"  ({','.join(map(str, dynkin))}) weight {w:.6f}")
    if res.raising_chain_label is not None:
        print(f"raising chain ends in ({','.join(map(str, res.raising_chain_label))})")
    elif not res.is_weight_vector:
        print("not a weight vector; no raising-chain label")
    _write_json(args.json, res.to_json())
    return 0


def cmd_simulate(args) -> int:
    config = noise_sim.SimConfig(
        code=args.code,
        trials=args.trials,
        seed=args.seed,
        distribution=args.distribution,
        scale=args.sigma,
        time=args.time,
        encoding=args.encoding,
    )
    config.validate()
    report = noise_sim.run_trials(config)
    s = report.summary()
    print(f"code {config.code} encoding {config.encoding} trials {config.trials} seed {config.seed}")
    print(f"fidelity mean {s['fidelity_mean']:.12f} min {s['fidelity_min']:.12f}")
    print(f"leakage max {s['leakage_max']:.3e}")
    print(f"runtime {report.runtime:.2f}s")
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
        print(f"wrote {args.csv}")
    if args.json:
        Path(args.json).write_text(report.to_json())
        print(f"wrote {args.json}")
    return 0


def cmd_twirl(args) -> int:
    if args.state or args.preset:
        state = _load_state(args.state) if args.state else codes.PRESETS[args.preset]()
        psi = state.amplitudes / state.norm
        rho = np.outer(psi, psi.conj())
        config = state.config
    else:
        config = _config(args.d, args.n, args.kinds)
        _check_size(config)
        if args.mixed:
            rho = np.eye(config.dim) / config.dim
        else:
            rho = noise_sim.random_density_matrix(config.dim, args.seed)
    ops = collective_set(config)
    out = noise_sim.twirl(rho, ops, args.samples, args.seed, args.sampler, symmetrise=not args.no_symmetrise)
    change = float(np.abs(out - rho).max())
    comm = noise_sim.commutator_residual(out, ops)
    print(f"samples {args.samples} sampler {args.sampler} seed {args.seed}")
    print(f"max |twirl(rho) - rho| = {change:.3e}")
    print(f"max_a ||[twirl(rho), S^a]||_F = {comm:.3e}")
    _write_json(args.json, {
        "schema_version": 1,
        "d": config.d,
        "kinds": config.kind_codes,
        "samples": args.samples,
        "seed": args.seed,
        "sampler": args.sampler,
        "change": change,
        "commutator_residual": comm,
        "rho": matrix_to_json(out),
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qudit-dfs", description="Noiseless subsystems of qudits under collective SU(d) noise.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="tensor-product decomposition via Young tableaux")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--factors", required=True, help="comma-separated f|af")
    p.add_argument("--json")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("operators", help="build collective operators and check the algebra")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--kinds")
    p.add_argument("--json")
    p.set_defaults(func=cmd_operators)

    p = sub.add_parser("find-dfs", help="numerical irrep decomposition and commutant dimension")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--kinds")
    p.add_argument("--include-v", action="store_true", help="store the change of basis in the JSON")
    p.add_argument("--json")
    p.set_defaults(func=cmd_find_dfs)

    p = sub.add_parser("verify-code", help="run the invariant suite for a built-in code")
    p.add_argument("--code", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(func=cmd_verify_code)

    p = sub.add_parser("label", help="CSCO labels of code states or a state file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--code")
    g.add_argument("--state", help="StateVector JSON")
    p.add_argument("--lam", type=int, default=0, help="copy index recorded for --state")
    p.add_argument("--json")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("discriminate", help="singlet test and irrep content of a state")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--preset", choices=sorted(codes.PRESETS))
    g.add_argument("--state", help="StateVector JSON")
    p.add_argument("--json")
    p.set_defaults(func=cmd_discriminate)

    p = sub.add_parser("simulate", help="Monte Carlo fidelity under random collective errors")
    p.add_argument("--code", default="qutrit3")
    p.add_argument("--encoding", choices=noise_sim.ENCODINGS, default="dfs")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distribution", choices=noise_sim.DISTRIBUTIONS, default="gaussian")
    p.add_argument("--sigma", type=float, default=1.0, help="gaussian sigma or uniform half-width")
    p.add_argument("--time", type=float, default=1.0)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("twirl", help="Monte Carlo twirl over collective unitaries")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--preset", choices=sorted(codes.PRESETS))
    g.add_argument("--state", help="StateVector JSON (pure state)")
    g.add_argument("--mixed", action="store_true", help="maximally mixed input")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--kinds")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sampler", choices=noise_sim.SAMPLERS, default="haar")
    p.add_argument("--no-symmetrise", action="store_true", help="plain Monte Carlo average")
    p.add_argument("--json")
    p.set_defaults(func=cmd_twirl)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
