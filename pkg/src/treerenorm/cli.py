"""Command-line interface: ``treerenorm <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from .birkhoff import birkhoff_decompose
from .characters import toy_character
from .config import Config, load_config
from .forests import TreeSyntaxError, enumerate_trees, parse_forest, parse_tree
from .hopf import antipode, coproduct
from .matrix_rep import (
    MatrixConsistencyError,
    NotACoidealError,
    aplus_flow_check,
    atkinson_factorize,
    beta_matrix,
    beta_matrix_bch,
    beta_matrix_commutator,
    coideal_closure,
    coproduct_matrix,
    psi,
    scattering_limit,
    scattering_psi,
    scattering_spectral,
    z0_matrix,
)
from .verify import run_checks

DEFAULT_SEED = "[[][][]]"


class UsageError(Exception):
    pass


def _emit(args, text: str, data) -> None:
    if args.format == "structured":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _config(args) -> Config:
    base = load_config(args.config)
    kw = {k: getattr(args, k) for k in ("max_degree", "z_hi", "tau_cap") if getattr(args, k) is not None}
    try:
        return base.replace(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _basis(args):
    seeds = args.seed or [DEFAULT_SEED]
    return coideal_closure([parse_tree(s) for s in seeds])


def _matrix_out(args, title: str, m, basis) -> tuple[str, dict]:
    return f"{title}\n{m.text(basis.labels())}", {"basis": basis.labels(), title: m.to_json()}


# --- commands -------------------------------------------------------------------

def cmd_trees(args, config):
    trees = enumerate_trees(args.degree)
    _emit(args, "\n".join(str(t) for t in trees), [str(t) for t in trees])
    return 0


def cmd_coproduct(args, config):
    d = coproduct(parse_forest(args.forest))
    data = [{"coefficient": str(c), "left": str(a), "right": str(b)} for (a, b), c in d.items()]
    _emit(args, str(d), data)
    return 0


def cmd_antipode(args, config):
    s = antipode(parse_forest(args.forest))
    _emit(args, str(s), str(s))
    return 0


def cmd_char_eval(args, config):
    phi = toy_character(config, with_log=not args.no_log)
    v = phi(parse_forest(args.forest))
    _emit(args, str(v), v.to_json())
    return 0


def cmd_birkhoff(args, config):
    pair = birkhoff_decompose(toy_character(config, with_log=not args.no_log))
    f = parse_forest(args.forest)
    minus, plus = pair.minus(f), pair.plus(f)
    _emit(args, f"phi_-: {minus}\nphi_+: {plus}", {"minus": minus.to_json(), "plus": plus.to_json()})
    return 0


def cmd_coproduct_matrix(args, config):
    basis = _basis(args)
    m = coproduct_matrix(basis)
    _emit(args, "basis: " + ", ".join(basis.labels()) + "\n" + m.text(), {"basis": basis.labels(), "M": m.to_json()})
    return 0


def cmd_matrix_birkhoff(args, config):
    basis = _basis(args)
    res = atkinson_factorize(psi(toy_character(config), basis))
    t1, d1 = _matrix_out(args, "minus", res.minus, basis)
    t2, d2 = _matrix_out(args, "plus", res.plus, basis)
    _emit(args, t1 + "\n" + t2, {**d1, **d2})
    return 0


_BETA = {"conjugation": beta_matrix, "commutator": beta_matrix_commutator, "bch": beta_matrix_bch}


def cmd_beta(args, config):
    basis = _basis(args)
    res = atkinson_factorize(psi(toy_character(config), basis))
    b = _BETA[args.method](res.minus, z0_matrix(basis))
    text, data = _matrix_out(args, "beta", b, basis)
    _emit(args, text, data)
    return 0


def cmd_flow_check(args, config):
    basis = _basis(args)
    rep = aplus_flow_check(psi(toy_character(config), basis), basis, config)
    lines = [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in rep.results]
    _emit(args, "\n".join(lines), [{"identity": n, "ok": ok} for n, ok in rep.results])
    return 0 if rep.ok else 1


def cmd_scattering_check(args, config):
    basis = _basis(args)
    phi = toy_character(config)
    res = atkinson_factorize(psi(phi, basis))
    beta = beta_matrix(res.minus, z0_matrix(basis))
    pair = birkhoff_decompose(phi)
    routes = [
        ("product", scattering_limit(res.minus, basis)),
        ("spectral", scattering_spectral(beta, basis)),
        ("Psi", scattering_psi(pair.minus, basis)),
    ]
    results = [(name, m.agrees(res.minus)) for name, m in routes]
    lines = [f"{'PASS' if ok else 'FAIL'} scattering limit via {name} route = phi_-" for name, ok in results]
    _emit(args, "\n".join(lines), [{"route": n, "ok": ok} for n, ok in results])
    return 0 if all(ok for _, ok in results) else 1


def cmd_verify(args, config):
    report = run_checks(config)
    if args.format == "structured":
        print(report.to_json())
    else:
        print(report.text())
    return 0 if report.ok else 1


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, help="largest tree degree considered (default 5)")
    common.add_argument("--z-hi", type=int, help="z-order kept in character values (default 6)")
    common.add_argument("--tau-cap", type=int, help="TAU-degree kept in flows (default 4)")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--config", help="JSON config file (default: $TREERENORM_CONFIG)")

    parser = argparse.ArgumentParser(prog="treerenorm", description="Renormalization calculus on rooted trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("trees", cmd_trees, "list trees of a degree")
    p.add_argument("--degree", type=int, required=True)
    for name, fn, help_text in (
        ("coproduct", cmd_coproduct, "coproduct of a forest"),
        ("antipode", cmd_antipode, "antipode of a forest"),
        ("char-eval", cmd_char_eval, "toy character on a forest"),
        ("birkhoff", cmd_birkhoff, "Birkhoff factors on a forest"),
    ):
        p = add(name, fn, help_text)
        p.add_argument("forest", help='bracket strings, e.g. "[[][]]" or "[] [[]]"')
        if name in ("char-eval", "birkhoff"):
            p.add_argument("--no-log", action="store_true", help="drop the mass factor (L = 0)")
    for name, fn, help_text in (
        ("coproduct-matrix", cmd_coproduct_matrix, "coproduct matrix of a coideal"),
        ("matrix-birkhoff", cmd_matrix_birkhoff, "matrix Birkhoff factors"),
        ("beta", cmd_beta, "matrix beta function"),
        ("flow-check", cmd_flow_check, "matrix flow identities"),
        ("scattering-check", cmd_scattering_check, "scattering formula"),
    ):
        p = add(name, fn, help_text)
        p.add_argument("--seed", action="append", help=f"seed tree of the coideal (default {DEFAULT_SEED})")
        if name == "beta":
            p.add_argument("--method", choices=sorted(_BETA), default="conjugation")
    add("verify", cmd_verify, "run every identity check")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        if getattr(args, "degree", None) is not None and args.degree < 1:
            raise UsageError("--degree must be >= 1")
        return args.func(args, config)
    except (UsageError, TreeSyntaxError, NotACoidealError) as exc:
        parser.print_usage(sys.stderr)
        print(f"treerenorm: error: {exc}", file=sys.stderr)
        return 2
    except MatrixConsistencyError as exc:
        print(f"treerenorm: identity failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
