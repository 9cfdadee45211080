"""Experiment runner: reproduces the five figure-style studies and arbitrary
user-specified scans, writing CSV time series with full provenance.

CSV schema (one header row after '#' comment lines):
    curve_id,t,pi,pi_stderr,phi,phi_stderr,wehrl,wehrl_stderr,pi_vn,c_l1,c_rel

Time is measured in units of 1/lambda (dephasing) or 1/Gamma-bar (amplitude
damping); the runner fixes lambda = 1 and Gamma-bar = 1 accordingly.
Identical flags produce byte-identical output; SPINPHASE_THREADS only caps
workers and never changes results.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .channels import ChannelSpec, propagate
from .entropy import EntropyRecord, entropy_record
from .errors import Exhausted, NonFinite, NotPositive
from .phasespace import MCConfig
from .qstate import (
    AmplitudeDampingFamily,
    DensityMatrix4,
    DephasingFamily,
    build_ad_state,
    build_dephasing_state,
    l1_coherence,
    load_state,
)

CSV_HEADER = "curve_id,t,pi,pi_stderr,phi,phi_stderr,wehrl,wehrl_stderr,pi_vn,c_l1,c_rel"

EXPERIMENTS = (
    "fig1",
    "fig2a",
    "fig2b",
    "fig2c",
    "fig2d",
    "fig3",
    "fig4a",
    "fig4b",
    "fig4c",
    "fig4d",
    "fig5a",
    "fig5b",
    "custom",
    "scan",
)

# fixed, documented seeds so the qualitative figure claims are regression-testable
DEFAULT_SEEDS = {
    "fig1": 1,
    "fig2a": 21,
    "fig2b": 22,
    "fig2c": 23,
    "fig2d": 24,
    "fig3": 3,
    "fig4a": 41,
    "fig4b": 42,
    "fig4c": 43,
    "fig4d": 44,
    "fig5a": 51,
    "fig5b": 52,
    "custom": 0,
    "scan": 0,
}

MU_DEFAULT = (0.25, 0.5, 0.75, 1.0)
# (mu_alpha, mu_beta) pairs for the differently-rescaled panel
FIG2D_FACTORS = ((0.25, 1.0), (0.5, 0.75), (1.0, 0.5), (1.0, 1.0))
N_RANDOM_CURVES = 6  # states per counterexample panel


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    spec: ChannelSpec
    t_max: float
    steps: int
    mc: MCConfig
    out: str
    state_file: str | None = None
    mu: tuple[float, ...] | None = None

    def provenance(self) -> dict:
        d = dataclasses.asdict(self)
        d["spec"] = dataclasses.asdict(self.spec)
        d["mc"] = dataclasses.asdict(self.mc)
        return d


@dataclass(frozen=True)
class Curve:
    curve_id: str
    state: DensityMatrix4


def _reject_sample_family(rng, kind: str, bounds: dict[str, tuple[float, float]]):
    """Random populations plus per-class uniform coherences, PSD-rejected."""
    for _ in range(10_000):
        xi = rng.random(4)
        pops = tuple(xi / xi.sum())
        draw = {k: rng.uniform(*v) for k, v in bounds.items()}
        try:
            if kind == "dephasing":
                fam = DephasingFamily(pops, **draw)
                return fam, build_dephasing_state(fam)
            fam = AmplitudeDampingFamily(pops, **draw)
            return fam, build_ad_state(fam)
        except NotPositive:
            continue
    raise Exhausted(f"no PSD {kind} state found for bounds {bounds}")


def _rescaled_curves(fam, build, mu_list) -> list[Curve]:
    curves = []
    for mu in mu_list:
        scaled = dataclasses.replace(
            fam,
            **{
                k: mu * getattr(fam, k)
                for k in ("alpha", "beta", "gamma")
                if hasattr(fam, k)
            },
        )
        state = build(scaled)
        curves.append(Curve(f"mu{mu:g}_C{l1_coherence(state):.4g}", state))
    return curves


def _build_curves(cfg: RunConfig, seed: int) -> list[Curve]:
    exp = cfg.experiment
    rng = np.random.default_rng(seed)
    quarter = (0.25, 0.25, 0.25, 0.25)
    mu_list = cfg.mu or MU_DEFAULT

    if exp == "fig1":
        return [
            Curve("x_alpha", build_dephasing_state(DephasingFamily(quarter, alpha=0.035))),
            Curve("nonx_beta", build_dephasing_state(DephasingFamily(quarter, beta=0.0175))),
        ]
    if exp in ("fig2a", "fig2b", "fig2c"):
        bounds = {
            "fig2a": {"alpha": (0.0, 0.25)},
            "fig2b": {"beta": (0.0, 0.25)},
            "fig2c": {"alpha": (0.0, 0.5), "beta": (0.0, 0.5)},
        }[exp]
        fam, _ = _reject_sample_family(rng, "dephasing", bounds)
        return _rescaled_curves(fam, build_dephasing_state, mu_list)
    if exp == "fig2d":
        # scaling the two coherence classes independently is not a convex mix
        # with the diagonal, so a draw is kept only if every factor pair stays
        # positive semi-definite
        for _ in range(10_000):
            fam, _ = _reject_sample_family(
                rng, "dephasing", {"alpha": (0.0, 0.5), "beta": (0.0, 0.5)}
            )
            curves = []
            try:
                for mu_a, mu_b in FIG2D_FACTORS:
                    scaled = dataclasses.replace(
                        fam, alpha=mu_a * fam.alpha, beta=mu_b * fam.beta
                    )
                    state = build_dephasing_state(scaled)
                    curves.append(
                        Curve(f"mua{mu_a:g}_mub{mu_b:g}_C{l1_coherence(state):.4g}", state)
                    )
            except NotPositive:
                continue
            return curves
        raise Exhausted("no family admits every fig2d factor pair")
    if exp == "fig3":
        fam = AmplitudeDampingFamily((0.1, 0.2, 0.1, 0.6), alpha=0.02, beta=0.15, gamma=0.02)
        return [Curve("wehrl_vs_vn", build_ad_state(fam))]
    if exp in ("fig4a", "fig4b", "fig4c", "fig4d"):
        bounds = {
            "fig4a": {"alpha": (0.0, 0.25)},
            "fig4b": {"beta": (0.0, 0.25)},
            "fig4c": {"gamma": (0.0, 0.25)},
            "fig4d": {"alpha": (0.0, 0.25), "beta": (0.0, 0.25), "gamma": (0.0, 0.25)},
        }[exp]
        fam, _ = _reject_sample_family(rng, "ad", bounds)
        return _rescaled_curves(fam, build_ad_state, mu_list)
    if exp in ("fig5a", "fig5b"):
        kind = "dephasing" if exp == "fig5a" else "ad"
        bounds = (
            {"alpha": (0.0, 0.25), "beta": (0.0, 0.25)}
            if kind == "dephasing"
            else {"alpha": (0.0, 0.25), "beta": (0.0, 0.25), "gamma": (0.0, 0.25)}
        )
        curves = []
        for i in range(N_RANDOM_CURVES):
            _, state = _reject_sample_family(rng, kind, bounds)
            curves.append(Curve(f"rand{i}_C{l1_coherence(state):.4g}", state))
        return curves
    if exp in ("custom", "scan"):
        if cfg.state_file is None:
            raise ValueError(f"--state-file is required for '{exp}'")
        base = load_state(cfg.state_file)
        if exp == "custom":
            return [Curve("custom", base)]
        if not cfg.mu:
            raise ValueError("--mu is required for 'scan'")
        return [
            Curve(f"mu{mu:g}_C{l1_coherence(s):.4g}", s)
            for mu in cfg.mu
            for s in (base.rescale_coherences(mu),)
        ]
    raise ValueError(f"unknown experiment {exp!r}")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def run(cfg: RunConfig) -> list[tuple[str, EntropyRecord]]:
    """Execute every curve of the experiment and write the CSV."""
    curves = _build_curves(cfg, cfg.mc.seed)
    times = np.linspace(0.0, cfg.t_max, cfg.steps)
    rho_eq = cfg.spec.equilibrium_state() if cfg.spec.kind == "ad" else None

    rows: list[tuple[str, EntropyRecord]] = []
    for curve in curves:
        for t in times:
            rho_t = propagate(curve.state, cfg.spec, float(t))
            rec = entropy_record(rho_t, cfg.spec, float(t), cfg.mc, rho_eq=rho_eq)
            rows.append((curve.curve_id, rec))

    discarded_max = max((r.discarded for _, r in rows), default=0.0)
    lines = [
        f"# spinphase {__version__}",
        f"# config: {json.dumps(cfg.provenance(), sort_keys=True)}",
        f"# seed: {cfg.mc.seed}",
        f"# samples: {cfg.mc.samples}",
        f"# discarded_fraction_max: {discarded_max:.3e}",
        CSV_HEADER,
    ]
    for curve_id, r in rows:
        lines.append(
            ",".join(
                [
                    curve_id,
                    _fmt(r.t),
                    _fmt(r.pi),
                    _fmt(r.pi_stderr),
                    _fmt(r.phi),
                    _fmt(r.phi_stderr),
                    _fmt(r.wehrl),
                    _fmt(r.wehrl_stderr),
                    _fmt(r.pi_vn),
                    _fmt(r.c_l1),
                    _fmt(r.c_rel),
                ]
            )
        )
    with open(cfg.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return rows


def _parse_mu(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spinphase",
        description="Wehrl entropy production experiments for two-qubit Lindblad channels.",
    )
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--samples", type=int, default=1_000_000,
                   help="Monte-Carlo samples per estimate (default 1e6, which puts "
                        "the stderr well below plotted line widths)")
    p.add_argument("--seed", type=int, default=None,
                   help="stream seed; defaults to a fixed per-experiment constant")
    p.add_argument("--chunk", type=int, default=65_536)
    p.add_argument("--tmax", type=float, default=None,
                   help="grid end in units of 1/lambda or 1/Gamma-bar "
                        "(default 3 for dephasing, 5 for amplitude damping)")
    p.add_argument("--steps", type=int, default=60, help="number of grid points")
    p.add_argument("--out", default=None, help="output CSV path (default <experiment>.csv)")
    p.add_argument("--state-file", default=None,
                   help="plain-text 4x4 state (re+imi entries) for custom/scan")
    p.add_argument("--nbar", type=float, default=None,
                   help="bath occupation for amplitude damping")
    p.add_argument("--mu", type=_parse_mu, default=None,
                   help="comma-separated rescaling factors")
    p.add_argument("--channel", choices=("dephasing", "ad"), default=None,
                   help="channel for custom/scan experiments")
    return p


_AD_EXPERIMENTS = ("fig3", "fig4a", "fig4b", "fig4c", "fig4d", "fig5b")


def config_from_args(args) -> RunConfig:
    exp = args.experiment
    if exp in ("custom", "scan"):
        if args.channel is None:
            raise ValueError(f"--channel is required for '{exp}'")
        kind = args.channel
    else:
        kind = "ad" if exp in _AD_EXPERIMENTS else "dephasing"

    if kind == "ad":
        nbar = args.nbar if args.nbar is not None else (1.5 if exp == "fig3" else 0.5)
        if nbar < 0:
            raise ValueError("--nbar must be non-negative")
        # time in units of 1/Gamma-bar
        spec = ChannelSpec(kind="ad", gamma=1.0 / (2.0 * nbar + 1.0), nbar=nbar)
        t_max = args.tmax if args.tmax is not None else 5.0
    else:
        spec = ChannelSpec(kind="dephasing", lam=1.0)
        t_max = args.tmax if args.tmax is not None else 3.0
    if t_max <= 0:
        raise ValueError("--tmax must be positive")
    if args.steps < 2:
        raise ValueError("--steps must be at least 2")

    seed = args.seed if args.seed is not None else DEFAULT_SEEDS[exp]
    mc = MCConfig(samples=args.samples, seed=seed, chunk=args.chunk)
    return RunConfig(
        experiment=exp,
        spec=spec,
        t_max=t_max,
        steps=args.steps,
        mc=mc,
        out=args.out or f"{exp}.csv",
        state_file=args.state_file,
        mu=args.mu,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ValueError, NotPositive, Exhausted) as exc:
        print(f"spinphase: invalid config: {exc}", file=sys.stderr)
        return 2
    try:
        run(cfg)
    except (ValueError, NotPositive, Exhausted, FileNotFoundError) as exc:
        print(f"spinphase: invalid config: {exc}", file=sys.stderr)
        return 2
    except NonFinite as exc:
        print(f"spinphase: estimator failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
