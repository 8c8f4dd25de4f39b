"""Command-line front end: verification campaigns, phenomenology tables and report merging.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import action, hopf, pheno, qanalog, realizations
from .report import Report
from .scalars import I, TaylorSeries, parse_rational

log = logging.getLogger("hopfdsr")

ABELIAN_SET = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1))
JORDANIAN_SET = (Fraction(-1), Fraction(1), Fraction(2))


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# campaigns
# ---------------------------------------------------------------------------

def twist_suite(kind: str, param, order: int) -> Report:
    """Cocycle, closed tables, R-matrix, star relations, hat coordinates and crossed commutators."""
    rep = Report()
    S = hopf.twist_system()
    H = hopf.primitive_hopf(S)
    if kind == "none":
        F = hopf.build_twist("identity", order, S)
        _, r = hopf.check_cocycle(F, H, order)
        return rep.extend(r, "identity:")
    tag = f"{kind}({param}):"
    F = hopf.build_twist(kind, order, S, s=param if kind == "abelian" else None,
                         r=param if kind == "jordanian" else None)
    _, r = hopf.check_cocycle(F, H, order)
    rep.extend(r, tag)
    HF = hopf.twist_hopf(H, F, order)
    closed = hopf.closed_twisted_hopf(kind, param, order, S, printed=False)
    rep.extend(hopf.compare_hopf(HF, closed, order), tag + "closed:")

    R, r1 = hopf.r_matrices(F)
    P0, D = S.gen("P0"), hopf.dilatation(S)
    unit = hopf.TensorElement.unit(S)
    rep.add_residual(tag + "R=1+h r+O(h^2)", (R - unit - r1.shift(1)).truncate(1))
    if kind == "abelian":
        target = hopf.exp_tensor(hopf.wedge(D, P0).scale(I).shift(1), order)
        rep.add_residual(tag + "R=exp(i h D^P0)", (R - target).truncate(order))
    else:
        target = (hopf.wedge(D, P0) - hopf.wedge(S.gen("L00"), P0).scale(param)).scale(I)
        rep.add_residual(tag + "r=i(D^P0 - r L00^P0)", r1 - target)

    A = action.igl_action(H)
    x = [A.module.gen(f"x{m}") for m in range(4)]
    for k in (1, 2, 3):
        c = action.star_commutator(F, A, x[0], x[k])
        rep.add_residual(f"{tag}star[x0,x{k}]", (c - x[k].scale(I).shift(1)).truncate(order))
        for j in range(1, k):
            rep.add_residual(f"{tag}star[x{j},x{k}]", action.star_commutator(F, A, x[j], x[k]).truncate(order))
    f, g, k3 = x[0] * x[1] + x[2], x[0] * x[0], x[1] * x[3] + x[0]
    left = action.star_product(F, A, action.star_product(F, A, f, g), k3)
    right = action.star_product(F, A, f, action.star_product(F, A, g, k3))
    rep.add_residual(tag + "star-associativity", (left - right).truncate(order))

    hc = action.hat_coordinates(F, A)
    rep.extend(hc.roundtrip, tag)
    xh = hc.xhat
    for k in (1, 2, 3):
        rep.add_residual(f"{tag}hat[x0,x{k}]", (xh[0] * xh[k] - xh[k] * xh[0] - xh[k].scale(I).shift(1)).truncate(order))
        for j in range(1, k):
            rep.add_residual(f"{tag}hat[x{j},x{k}]", (xh[j] * xh[k] - xh[k] * xh[j]).truncate(order))

    Ssm, rels = action.smash_cross_relations(HF, A, action.star_relations(F, A))
    table = action.crossed_commutator_table(kind, param, Ssm, order, printed=False)
    rep.extend(action.compare_crossed(dict(rels), table, order), tag + "crossed:")
    return rep


def hopf_suite(order: int) -> Report:
    K = hopf.kappa_poincare(order)
    return Report().extend(hopf.check_hopf_axioms(K, order, relations=True), "kappa-poincare:")


def realization_generators(kind: str, order: int, psi=None, gamma=None, param=None):
    """Build a realization whose effective order is ``order``."""
    if kind == "covariant":
        return realizations.build_covariant(order)
    top = order + 3
    if kind == "abelian":
        psi, gamma = TaylorSeries([1], top), TaylorSeries([param], top)
    elif kind == "jordanian":
        psi, gamma = TaylorSeries([1, param], top), TaylorSeries([0], top)
    elif kind != "noncovariant":
        raise ConfigError(f"unknown realization {kind!r}")
    return realizations.build_noncovariant(realizations.RealizationParams(psi, gamma, order + 1))


def realization_suite(g, tag: str = "") -> Report:
    rep = Report()
    rep.extend(realizations.check_dsr_suite(g), tag)
    rep.extend(realizations.classical_limit_check(g), tag)
    rep.extend(realizations.check_against_smash(g), tag)
    if "Psi~" in g.extra:
        rep.extend(realizations.commuting_coordinates(g), tag)
        for c in realizations.boost_variants(g).checks:
            if "amended,Gamma^-1" in c.id:
                rep.checks.append(c)
                c.id = tag + c.id
    else:
        rep.extend(realizations.snyder_map(g), tag)
    return rep


def qanalog_suite(kappa) -> Report:
    rep = Report()
    A = qanalog.build_presented(kappa)
    rep.extend(qanalog.q_confluence(A), "qanalog:")
    Hsys = qanalog.build_presented(kappa, coordinates=False)
    rep.extend(qanalog.check_q_hopf(Hsys), "qanalog:hopf:")
    rep.extend(qanalog.check_q_smash(kappa), "qanalog:smash:")
    rep.extend(qanalog.casimir_report(A), "qanalog:")
    rep.extend(qanalog.localized_checks(kappa), "qanalog:")
    rep.extend(qanalog.rescaling_isomorphism(kappa, 2 * Fraction(kappa)), "qanalog:rescale:")
    rep.extend(qanalog.hadic_boost_check(2), "qanalog:h-adic:")
    return rep


def all_suite(order: int, seed: int = 0, samples: int = 3) -> Report:
    rep = Report()
    for s in ABELIAN_SET:
        rep.extend(twist_suite("abelian", s, order))
    for r in JORDANIAN_SET:
        rep.extend(twist_suite("jordanian", r, order))
    rep.extend(hopf_suite(order))
    rep.extend(realization_suite(realization_generators("covariant", order), "covariant:"))
    rep.extend(realizations.bicrossproduct_check(order))
    rep.extend(realizations.twist_special_cases(order))
    rng = random.Random(seed)
    for n in range(samples):
        p = realizations.random_params(rng, order + 1, psi_deg=3, gamma_deg=3)
        g = realizations.build_noncovariant(p)
        rep.extend(realization_suite(g, f"noncovariant#{n}:"))
    psi = TaylorSeries([1, Fraction(1, 2), -1], order + 3)
    g = realizations.build_noncovariant(realizations.RealizationParams(psi, realizations.hermitian_gamma(psi), order + 1))
    rep.extend(realizations.check_hermiticity(g), "hermitian:")
    rep.extend(qanalog_suite(1))
    return rep


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _rational(text) -> Fraction:
    try:
        return parse_rational(str(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _series(text: str, order: int) -> TaylorSeries:
    try:
        return TaylorSeries.parse(text, order)
    except ValueError as exc:
        raise ConfigError(f"bad series {text!r}: {exc}") from exc


def read_config(path: str) -> dict:
    """``key = value`` lines; keys mirror the long flags (dashes or underscores)."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected 'key = value'")
        key, val = (t.strip() for t in line.split("=", 1))
        out[key.replace("-", "_")] = val.strip('"').strip("'")
    return out


DEFAULTS = {
    "order": "6", "twist": "abelian", "s": "1/2", "r": "1", "realization": "covariant",
    "psi": "1", "gamma": "0", "kappa": "1", "format": "json", "seed": "0", "samples": "3",
    "model": "general", "kappa_gev": "1.2e19", "baseline_s": "4.7e17", "energies": "1,10,100",
    "mh": "1", "h": "1/2",
}


def _merged(args) -> dict:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key, default in DEFAULTS.items():
        val = getattr(args, key, None)
        if val is None:
            val = cfg.get(key, default)
        out[key] = val
    for key in cfg:
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config key {key!r}")
    return out


def _order(cfg) -> int:
    try:
        n = int(cfg["order"])
    except ValueError as exc:
        raise ConfigError(f"order must be an integer, got {cfg['order']!r}") from exc
    if n < 1:
        raise ConfigError("order must be positive")
    return n


def _emit(text: str, out_path: str | None):
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def report_csv(rep: Report) -> str:
    lines = ["id,status,effective_order,residual_nonzero_terms"]
    for c in rep.checks:
        eo = "" if c.effective_order is None else str(c.effective_order)
        lines.append(f"\"{c.id}\",{c.status},{eo},{c.residual_nonzero_terms}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    cfg = _merged(args)
    order = _order(cfg)
    target = args.target
    if target == "twist":
        kind = cfg["twist"]
        if kind not in ("abelian", "jordanian", "none"):
            raise ConfigError(f"unknown twist {kind!r}")
        param = _rational(cfg["s"] if kind == "abelian" else cfg["r"])
        if kind == "jordanian" and param == 0:
            raise ConfigError("r must be nonzero")
        rep = twist_suite(kind, param, order)
    elif target == "hopf":
        rep = hopf_suite(order)
    elif target == "realization":
        kind = cfg["realization"]
        psi = _series(cfg["psi"], order + 3)
        gamma = _series(cfg["gamma"], order + 3)
        if psi[0] != 1:
            raise ConfigError("psi(0) must equal 1")
        param = _rational(cfg["s"] if kind == "abelian" else cfg["r"])
        if kind == "jordanian" and param == 0:
            raise ConfigError("r must be nonzero")
        g = realization_generators(kind, order, psi, gamma, param)
        rep = realization_suite(g, f"{kind}:")
    elif target == "qanalog":
        kappa = _rational(cfg["kappa"])
        if kappa == 0:
            raise ConfigError("kappa must be nonzero")
        rep = qanalog_suite(kappa)
    else:
        rep = all_suite(order, int(cfg["seed"]), int(cfg["samples"]))
    text = report_csv(rep) if cfg["format"] == "csv" else rep.to_json() + "\n"
    _emit(text, args.out)
    for c in rep.failures():
        log.error("FAIL %s %s", c.id, c.detail)
    return 0 if rep.passed else 1


def _dispersion_model(cfg, order: int) -> pheno.DispersionModel:
    model = cfg["model"]
    if model == "jordanian":
        r = _rational(cfg["r"])
        if r == 0:
            raise ConfigError("r must be nonzero")
        return pheno.DispersionModel.jordanian(r, order)
    if model == "abelian":
        return pheno.DispersionModel.abelian(_rational(cfg["s"]), order)
    if model != "general":
        raise ConfigError(f"unknown model {model!r}")
    psi, gamma = _series(cfg["psi"], order), _series(cfg["gamma"], order)
    if psi[0] != 1:
        raise ConfigError("psi(0) must equal 1")
    return pheno.DispersionModel(psi, gamma, order=order)


def cmd_pheno(args) -> int:
    cfg = _merged(args)
    if args.sub == "dispersion":
        order = _order({"order": args.order or "3"})
        m = _dispersion_model(cfg, max(order, 3))
        ser = pheno.dispersion_series(m)
        b1, b2, rep = pheno.b_coefficients(m)
        payload = {
            "model": m.label,
            "params": m.params_text(),
            "abs_p_over_kappa": [str(c) for c in ser.coeffs[: order + 1]],
            "casimir_oracle_agrees": pheno.casimir_root_series(m) == ser,
            "b1": str(b1),
            "b2": str(b2),
            "checks": rep.to_dict()["checks"],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
        return 0
    if args.sub == "timedelay":
        m = _dispersion_model(cfg, 3)
        energies = [_rational(e) for e in str(cfg["energies"]).split(",") if e.strip()]
        if not energies:
            raise ConfigError("no energies given")
        kappa = _rational(cfg["kappa_gev"])
        if kappa <= 0:
            raise ConfigError("kappa must be positive")
        text, exact = pheno.delay_csv(m, energies, kappa, _rational(cfg["baseline_s"]))
        _emit(text, args.out)
        if args.out:
            Path(args.out).with_suffix(".json").write_text(json.dumps(exact, indent=2, sort_keys=True) + "\n")
        return 0
    # mass
    value = pheno.mass_relation(_rational(cfg["mh"]), _rational(cfg["h"]))
    _emit(f"{value}\n", args.out)
    return 0


def cmd_report(args) -> int:
    merged = Report()
    for p in args.paths:
        path = Path(p)
        if not path.is_file():
            raise ConfigError(f"missing report {p}")
        try:
            data = json.loads(path.read_text())
            for c in data["checks"]:
                merged.add(c["id"], c["status"] == "pass", c.get("effective_order"),
                           c.get("residual_nonzero_terms", 0))
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"malformed report {p}: {exc}") from exc
    _emit(merged.to_json() + "\n", args.out)
    return 0 if merged.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfdsr", description="Exact checks for kappa-deformed Hopf algebras and DSR phase spaces.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("target", choices=["twist", "hopf", "realization", "qanalog", "all"])
    v.add_argument("--order")
    v.add_argument("--twist", choices=["abelian", "jordanian", "none"])
    v.add_argument("--s")
    v.add_argument("--r")
    v.add_argument("--realization", choices=["covariant", "noncovariant", "abelian", "jordanian"])
    v.add_argument("--psi")
    v.add_argument("--gamma")
    v.add_argument("--kappa")
    v.add_argument("--seed")
    v.add_argument("--samples")
    v.add_argument("--format", choices=["json", "csv"])
    v.add_argument("--out")
    v.add_argument("--config")
    v.set_defaults(func=cmd_verify)

    ph = sub.add_parser("pheno", help="phenomenology tables")
    ph.add_argument("sub", choices=["dispersion", "timedelay", "mass"])
    ph.add_argument("--model", choices=["general", "jordanian", "abelian"])
    for flag in ("--order", "--psi", "--gamma", "--s", "--r", "--kappa-gev", "--baseline-s",
                 "--energies", "--mh", "--h", "--out", "--config"):
        ph.add_argument(flag)
    ph.set_defaults(func=cmd_pheno)

    rp = sub.add_parser("report", help="merge JSON reports")
    rp.add_argument("paths", nargs="+")
    rp.add_argument("--out")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ConfigError, argparse.ArgumentTypeError) as exc:
        print(f"hopfdsr: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
