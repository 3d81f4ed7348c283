"""Command-line client for the certification service.

The CLI is a thin client: every subcommand builds a request model, sends it
through the HTTP surface (an in-process app by default, or a remote server
with --server), and formats the response.  Exit codes are scriptable:

    0  success / certified
    1  screen failed / certificate inconclusive / selftest failed
    2  usage or validation error
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import httpx

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_USAGE = 2


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=3600.0)
    from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code == 422:
        detail = resp.json().get("detail", resp.text)
        print(f"error: {detail}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    resp.raise_for_status()
    return resp.json()


def _emit(data: dict, out: str | None) -> None:
    text = json.dumps(data, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read_spectrum(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return {"content": fh.read()}
    except OSError as e:
        print(f"error: cannot read spectrum file: {e}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE) from e


def _settings(args) -> dict:
    return {
        "t_max": args.tmax,
        "t_step": args.tstep,
        "theta_step": args.theta_step,
        "margin": args.margin,
        "m_min": args.mmin,
        "coeff_count": args.coeffs,
        "half_support": args.half_support,
        "seed": args.seed,
        "workers": args.workers or os.cpu_count() or 1,
    }


def cmd_word_check(args, client) -> int:
    data = _post(client, "/words/check", {"word": args.word, "genus": args.genus})
    if args.json or args.out:
        _emit(data, args.out)
    else:
        print(f"word                  {data['word'] or '(empty)'}")
        print(f"genus                 {data['genus']}")
        print(f"reverse palindromic   {data['reverse_palindromic']}")
        print(f"conjugation identity  {data['involution_conjugation_ok']}")
        print(f"unit-circle free      {data['unit_circle_free']}")
        print(f"torsion factors       {data['torsion_factors']}")
        print(f"|det(Id - action)|    {data['det_abs']}")
        print(f"char poly             {data['char_poly']}")
        print(f"screen                {'pass' if data['passes'] else 'FAIL'}")
    return EXIT_OK if data["passes"] else EXIT_INCONCLUSIVE


def cmd_word_search(args, client) -> int:
    data = _post(
        client,
        "/words/search",
        {"genus": args.genus, "length": args.length, "count": args.count, "seed": args.seed},
    )
    if args.json or args.out:
        _emit(data, args.out)
    else:
        for cand in data["candidates"]:
            print(f"{cand['word']}  torsion={cand['torsion_factors']}")
    if len(data["candidates"]) < args.count:
        print(
            f"warning: found only {len(data['candidates'])} of {args.count} "
            f"after {data['attempts']} attempts",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_validate(args, client) -> int:
    data = _post(client, "/datasets/validate", _read_spectrum(args.spectrum))
    _emit(data, args.out)
    return EXIT_OK if data["ok"] else EXIT_USAGE


def cmd_certify(args, client) -> int:
    payload = {
        "dataset": _read_spectrum(args.spectrum),
        "mode": args.mode,
        "settings": _settings(args),
    }
    if args.mode == "gap":
        if args.delta is None:
            print("error: --delta is required for gap mode", file=sys.stderr)
            return EXIT_USAGE
        payload["delta_candidate"] = args.delta
    if args.mode == "exists":
        if args.band is None or args.theta is None:
            print("error: --band a,b and --theta are required for exists mode", file=sys.stderr)
            return EXIT_USAGE
        try:
            a, b = (float(x) for x in args.band.split(","))
        except ValueError:
            print("error: --band expects two comma-separated numbers", file=sys.stderr)
            return EXIT_USAGE
        payload["band"] = (a, b)
        payload["theta"] = args.theta
    data = _post(client, "/certify", payload)
    _emit(data, args.out)
    return EXIT_OK if data["status"] == "certified" else EXIT_INCONCLUSIVE


def cmd_sweep(args, client) -> int:
    payload = {
        "dataset": _read_spectrum(args.spectrum),
        "theta": args.theta,
        "settings": _settings(args),
    }
    data = _post(client, "/sweep", payload)
    lines = ["t,theta,J"]
    lines += [f"{r['t']!r},{r['theta']!r},{r['j']!r}" for r in data["rows"]]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(data['rows'])} rows to {args.out} "
              f"(theta-Lipschitz bound {data['theta_lipschitz']:.4g})")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_selftest(args, client) -> int:
    data = _post(
        client,
        "/selftest",
        {"poisson_tol": args.tol_poisson, "fourier_tol": args.tol_fourier},
    )
    for check in data["checks"]:
        mark = "PASS" if check["ok"] else "FAIL"
        print(f"[{mark}] {check['name']}: {check['detail']}")
    print("selftest:", "pass" if data["passed"] else "FAIL")
    return EXIT_OK if data["passed"] else EXIT_INCONCLUSIVE


def cmd_serve(args, _client) -> int:
    import uvicorn

    uvicorn.run("gapcert.service:app", host=args.host, port=args.port, workers=1)
    return EXIT_OK


def _add_settings_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tmax", type=float, default=1.2)
    p.add_argument("--tstep", type=float, default=1e-3)
    p.add_argument("--theta-step", type=float, default=1.0 / 2048.0, dest="theta_step")
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--mmin", type=int, default=None, choices=(1, 2))
    p.add_argument("--coeffs", type=int, default=4, help="number of seed coefficients")
    p.add_argument("--half-support", type=float, default=None, dest="half_support")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None, help="default: machine parallelism")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gapcert", description=__doc__)
    parser.add_argument("--server", default=None, help="remote service URL (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("word-check", help="screen a twist word")
    p.add_argument("--word", required=True)
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_word_check)

    p = sub.add_parser("word-search", help="search for screen-passing words")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_word_search)

    p = sub.add_parser("validate", help="validate a spectrum dataset file")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("certify", help="run a certification")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--mode", required=True, choices=("gap", "exists", "delta"))
    p.add_argument("--delta", type=float, default=None, help="gap candidate (lambda units)")
    p.add_argument("--band", default=None, help="a,b band for exists mode (sqrt-lambda units)")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--out", default=None)
    _add_settings_flags(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sweep", help="emit a J sweep at fixed theta as CSV")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--out", default=None)
    _add_settings_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selftest", help="run the built-in verification suite")
    p.add_argument("--tol-poisson", type=float, default=1e-9, dest="tol_poisson")
    p.add_argument("--tol-fourier", type=float, default=1e-8, dest="tol_fourier")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args, None)
    with _client(args.server) as client:
        return args.func(args, client)


if __name__ == "__main__":
    sys.exit(main())
