"""Command-line driver.

Commands
--------
pair-report     Z for an algebra and splitting: criterion plus pairwise brackets.
counterexample  Replay of the gl_4 / lower-right sl_2 counterexample.
cartan-suite    Generator inventory, ranks and certificates for a Cartan splitting.

Exit codes: 0 commutative (or all checks passed), 1 configuration error,
2 non-commutative with a witness, 3 undecided (term cap hit), 4 a stored
expectation or consistency check failed.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

from . import fixtures
from . import linalg as la
from .algebra import (
    LieAlgebra,
    LieAlgebraError,
    Splitting,
    build_classical,
    cartan_splitting,
    default_form,
    lower_right_sl2,
    make_splitting,
    parse_algebra_name,
    principal_triple,
    trace_form,
)
from .invariants import InvariantSet, charpoly_invariants, custom_invariants, trace_power_invariants
from .io import FormatError, parse_polys, parse_structure_constants, parse_vectors
from .poly import DEFAULT_TERM_CAP, Poly, PolyRing, TermCapExceeded, poly_matrix_mul, term_cap
from .ranklab import (
    b_of,
    completeness_certificate,
    differential_span,
    generic_wall_point,
    index_of,
    jacobian_rank,
    relMF_span_check,
)
from .subalgebras import (
    Verdict,
    criterion_polynomial,
    criterion_verdict,
    generate_Z,
    generate_Ztilde,
    near_pure_components,
    pairwise_bracket_report,
    vandermonde_consistency,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NOT_COMMUTATIVE = 2
EXIT_UNDECIDED = 3
EXIT_CHECK_FAILED = 4


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    algebra: str | None = None
    split: str | None = None
    invariants: str = "trace-powers"
    seed: int = 0
    bound: int | None = None
    term_cap: int = DEFAULT_TERM_CAP
    out: str | None = None
    jobs: int = 1
    trials: int = 5
    max_n: int = 4
    timings: bool = True


_FIELDS = {f.name for f in fields(RunConfig)}


def load_config(path: str | None, overrides: dict) -> RunConfig:
    """Defaults, then the JSON config file, then command-line flags."""
    values: dict = {}
    if path:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        data = {k.replace("-", "_"): v for k, v in data.items()}
        unknown = set(data) - _FIELDS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    values.update({k: v for k, v in overrides.items() if v is not None})
    cfg = RunConfig(**values)
    for name in ("seed", "term_cap", "jobs", "trials", "max_n"):
        if not isinstance(getattr(cfg, name), int):
            raise ConfigError(f"{name} must be an integer")
    if cfg.bound is not None and (not isinstance(cfg.bound, int) or cfg.bound < 1):
        raise ConfigError("bound must be a positive integer")
    if cfg.jobs < 1 or cfg.term_cap < 1 or cfg.trials < 1:
        raise ConfigError("jobs, term_cap and trials must be positive")
    return cfg


# -- loading algebras, splittings and invariants --------------------------------------


def load_algebra(source: str | None) -> LieAlgebra:
    if not source:
        raise ConfigError("no algebra given (use --algebra gl4, sl3, ... or a structure-constant file)")
    if re.fullmatch(r"(gl|sl)\d+", source):
        return parse_algebra_name(source)
    path = Path(source)
    if not path.is_file():
        raise ConfigError(f"unknown algebra {source!r}: not a family name and not a file")
    return parse_structure_constants(path)


def load_splitting(g: LieAlgebra, source: str | None) -> Splitting:
    if not source:
        raise ConfigError("no splitting given (cartan, lower-right-sl2 or a vector file)")
    if source == "cartan":
        return cartan_splitting(g)
    if source == "lower-right-sl2":
        return make_splitting(g, trace_form(g), lower_right_sl2(g))
    path = Path(source)
    if not path.is_file():
        raise ConfigError(f"unknown splitting {source!r}")
    return make_splitting(g, default_form(g), parse_vectors(path, g.dim))


def load_invariants(g: LieAlgebra, source: str) -> InvariantSet:
    if source == "trace-powers":
        return trace_power_invariants(g)
    if source == "charpoly":
        return charpoly_invariants(g)
    path = Path(source)
    if not path.is_file():
        raise ConfigError(f"unknown invariant set {source!r}")
    return custom_invariants(g, parse_polys(path, g.ring))


# -- output -------------------------------------------------------------------------


def _write_outputs(cfg: RunConfig, command: str, report: dict, summary: list[str]) -> None:
    out = Path(cfg.out) if cfg.out else Path(f"{command}.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    text = "\n".join(summary) + "\n"
    out.with_suffix(".txt").write_text(text)
    sys.stdout.write(text)


def _elapsed(cfg: RunConfig, start: float):
    return round(time.perf_counter() - start, 3) if cfg.timings else None


def _gen_entries(sub) -> list[dict]:
    return [
        {"label": label, "terms": len(p), "text": p.to_text()}
        for label, p in zip(sub.labels, sub.gens)
    ]


# -- pair-report ----------------------------------------------------------------------


def cmd_pair_report(cfg: RunConfig) -> int:
    start = time.perf_counter()
    g = load_algebra(cfg.algebra)
    split = load_splitting(g, cfg.split)
    inv = load_invariants(g, cfg.invariants)
    bound = cfg.bound or 3
    z = generate_Z(inv, split)
    crit = criterion_verdict(inv, split, seed=cfg.seed, bound=bound)
    brackets = pairwise_bracket_report(z, jobs=cfg.jobs, seed=cfg.seed, bound=bound)

    if brackets.verdict is Verdict.NOT_COMMUTATIVE:
        verdict, code = Verdict.NOT_COMMUTATIVE, EXIT_NOT_COMMUTATIVE
    elif brackets.verdict is Verdict.UNDECIDED or crit.verdict is Verdict.UNDECIDED:
        verdict, code = Verdict.UNDECIDED, EXIT_UNDECIDED
    else:
        verdict, code = Verdict.COMMUTATIVE, EXIT_OK
    consistent = (crit.verdict is Verdict.NOT_COMMUTATIVE) == (brackets.verdict is Verdict.NOT_COMMUTATIVE)
    if not consistent and Verdict.UNDECIDED not in (crit.verdict, brackets.verdict):
        code = EXIT_CHECK_FAILED

    report = {
        "command": "pair-report",
        "algebra": g.name,
        "split": cfg.split,
        "invariants": inv.source,
        "seed": cfg.seed,
        "bound": bound,
        "term_cap": cfg.term_cap,
        "generators": _gen_entries(z),
        "criterion": crit.to_dict(cfg.timings),
        "brackets": brackets.to_dict(cfg.timings),
        "consistent": consistent,
        "verdict": verdict.value,
        "exit_code": code,
        "elapsed": _elapsed(cfg, start),
    }
    summary = [
        f"pair-report  algebra={g.name}  split={cfg.split}  invariants={inv.source}",
        f"Z generators: {z.count}",
        f"criterion verdict: {crit.verdict.value}",
        f"pairwise brackets: {brackets.verdict.value} ({brackets.checked}/{brackets.total} pairs)",
    ]
    w = brackets.witness
    if w is not None:
        i, j = w.pair
        value = w.bracket.evaluate(w.witness_point)
        summary += [
            f"witness pair: [{i}] {z.labels[i]}  and  [{j}] {z.labels[j]}",
            f"bracket terms: {w.bracket_term_count}",
            "witness point: (" + ", ".join(str(a) for a in w.witness_point) + ")",
            f"bracket value there: {value}",
        ]
    if crit.witness is not None:
        a, b = crit.witness.pair
        summary.append(f"criterion witness: ({inv.labels[a]}, {inv.labels[b]})")
    if brackets.undecided:
        summary.append(f"undecided pairs: {brackets.undecided}")
    if not consistent:
        summary.append("criterion and brackets disagree")
    summary.append(f"verdict: {verdict.value}  (exit {code})")
    _write_outputs(cfg, "pair-report", report, summary)
    return code


# -- counterexample -------------------------------------------------------------------


_S_RING = PolyRing(("s",))


def _s_poly(coeffs) -> Poly:
    return _S_RING.from_terms({(k,): c for k, c in enumerate(coeffs) if c})


def _s_matrix(rows) -> list[list]:
    return [[None if e is None else _s_poly(e) for e in row] for row in rows]


def _matrix_text(m) -> list[str]:
    cells = [["*" if e is None else e.pretty() if isinstance(e, Poly) else str(e) for e in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return ["  [ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]


def _matches(actual, expected) -> bool:
    return all(
        e is None or a == e for arow, erow in zip(actual, expected) for a, e in zip(arow, erow)
    )


def _f_coefficients(split: Splitting, g: LieAlgebra, poly_matrix) -> tuple:
    """Coefficients on the f basis of the f-projection of a matrix over Q[s]."""
    degree = max(e.degree for row in poly_matrix for e in row)
    out = [[0] * (degree + 1) for _ in range(split.dim_f)]
    to_adapted = la.transpose(split.adapted_inverse)
    for k in range(degree + 1):
        m = [[e.coefficient((k,)) for e in row] for row in poly_matrix]
        coords = split.project_f(g.coords_of_matrix(m))
        adapted = la.matvec(to_adapted, coords)
        for a in range(split.dim_f):
            out[a][k] = adapted[a]
    return tuple(_s_poly(c) for c in out)


def cmd_counterexample(cfg: RunConfig) -> int:
    start = time.perf_counter()
    g = build_classical("gl", 4)
    form = trace_form(g)
    split = make_splitting(g, form, lower_right_sl2(g))
    inv = trace_power_invariants(g, form)
    gamma = form.flat(g.coords_of_matrix(fixtures.GAMMA))
    gamma_element = form.sharp(gamma)

    part_f = g.matrix(form.sharp(split.covector_f(gamma)))
    part_m = g.matrix(form.sharp(split.covector_m(gamma)))
    s = _S_RING.var(0)
    phi = [[_S_RING.const(a) + s.scale(b) for a, b in zip(ra, rb)] for ra, rb in zip(part_f, part_m)]
    square = poly_matrix_mul(phi, phi)
    cube = poly_matrix_mul(square, phi)

    checks = {
        "gamma": [la.vec(r) for r in g.matrix(gamma_element)] == [la.vec(r) for r in fixtures.GAMMA],
        "phi_gamma": _matches(phi, _s_matrix(fixtures.PHI_GAMMA)),
        "phi_gamma_squared": _matches(square, _s_matrix(fixtures.PHI_GAMMA_SQUARED)),
        "phi_gamma_cubed": _matches(cube, _s_matrix(fixtures.PHI_GAMMA_CUBED)),
        "gamma_f": _f_coefficients(split, g, [[_S_RING.const(a) for a in r] for r in part_f])
        == tuple(_s_poly(c) for c in fixtures.GAMMA_F),
        "squared_f": _f_coefficients(split, g, square) == tuple(_s_poly(c) for c in fixtures.SQUARED_F),
        "cubed_f": _f_coefficients(split, g, cube) == tuple(_s_poly(c) for c in fixtures.CUBED_F),
    }

    preferred = [tuple(gamma.coords) + fixtures.WITNESS_S]
    crit = criterion_verdict(inv, split, preferred_points=preferred, seed=cfg.seed, bound=cfg.bound or 3)
    at_gamma = None
    if crit.witness is not None:
        a, b = crit.witness.pair
        C = criterion_polynomial(inv, split, a, b)
        at_gamma = C.partial_evaluate(dict(enumerate(gamma.coords)))
    checks["criterion_nonzero_at_gamma"] = bool(at_gamma)

    z = generate_Z(inv, split)
    brackets = pairwise_bracket_report(z, seed=cfg.seed, bound=cfg.bound or 3, stop_at_first=True)
    w = brackets.witness
    checks["bracket_witness"] = w is not None and bool(w.bracket.evaluate(w.witness_point))

    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        code = EXIT_CHECK_FAILED
    elif crit.verdict is Verdict.NOT_COMMUTATIVE and w is not None:
        code = EXIT_NOT_COMMUTATIVE
    else:
        code = EXIT_CHECK_FAILED
        failed.append("verdict")

    def plain(m):
        return [["*" if e is None else e.pretty() for e in row] for row in m]

    report = {
        "command": "counterexample",
        "algebra": "gl4",
        "split": "lower-right-sl2",
        "gamma": [[str(a) for a in row] for row in g.matrix(gamma_element)],
        "phi_gamma": plain(phi),
        "phi_gamma_squared": plain(square),
        "phi_gamma_cubed_lower_right": [[cube[i][j].pretty() for j in (2, 3)] for i in (2, 3)],
        "checks": checks,
        "criterion": crit.to_dict(cfg.timings),
        "criterion_at_gamma": at_gamma.pretty() if at_gamma is not None else None,
        "bracket_witness": w.to_dict(cfg.timings) if w else None,
        "bracket_witness_labels": [z.labels[i] for i in w.pair] if w else None,
        "verdict": crit.verdict.value,
        "exit_code": code,
        "elapsed": _elapsed(cfg, start),
    }
    summary = ["counterexample  gl4 with sl2 in the lower-right corner", "gamma ="]
    summary += _matrix_text(g.matrix(gamma_element))
    summary += ["gamma_f + s gamma_m ="] + _matrix_text(phi)
    summary += ["(gamma_f + s gamma_m)^2 ="] + _matrix_text(square)
    summary += ["(gamma_f + s gamma_m)^3, lower-right block ="]
    summary += _matrix_text([[cube[i][j] for j in (2, 3)] for i in (2, 3)])
    for k, ok in checks.items():
        summary.append(f"  {'ok  ' if ok else 'FAIL'} {k}")
    if crit.witness is not None:
        a, b = crit.witness.pair
        summary.append(f"criterion for ({inv.labels[a]}, {inv.labels[b]}) at gamma: {at_gamma.pretty()}")
    if w is not None:
        summary.append(
            f"nonzero bracket: {z.labels[w.pair[0]]} with {z.labels[w.pair[1]]}, "
            f"{w.bracket_term_count} terms, value {w.bracket.evaluate(w.witness_point)} at the witness point"
        )
    summary.append(f"verdict: {crit.verdict.value}  (exit {code})")
    _write_outputs(cfg, "counterexample", report, summary)
    return code


# -- cartan-suite ---------------------------------------------------------------------


def cmd_cartan_suite(cfg: RunConfig) -> int:
    start = time.perf_counter()
    g = load_algebra(cfg.algebra)
    if g.family_tag not in ("gl", "sl"):
        raise ConfigError("cartan-suite runs on gl_n or sl_n")
    if g.rank_n > cfg.max_n:
        raise ConfigError(f"n = {g.rank_n} exceeds max_n = {cfg.max_n}")
    split = cartan_splitting(g)
    form = split.form
    inv = load_invariants(g, cfg.invariants)
    bound = cfg.bound or 10
    ind = index_of(g, trials=cfg.trials, seed=cfg.seed, bound=bound)
    b = b_of(g, ind)
    results: dict = {"index": ind, "b": b}
    failed: list[str] = []
    undecided: list[str] = []

    def step(name, fn):
        try:
            return fn()
        except TermCapExceeded as exc:
            undecided.append(name)
            results[name] = {"undecided": str(exc)}
            return None

    z = generate_Z(inv, split)
    zt = generate_Ztilde(inv, split)
    near = near_pure_components(inv, split)
    results["z_generators"] = z.count
    results["ztilde_generators"] = zt.count
    results["near_pure_components"] = [label for label, _ in near]
    results["z_labels"] = z.labels
    results["ztilde_labels"] = zt.labels
    if near:
        failed.append("near_pure_components")
    if z.count != b or zt.count != b:
        failed.append("generator_count")

    for name, sub in (("z", z), ("ztilde", zt)):
        rep = step(f"{name}_brackets", lambda sub=sub: pairwise_bracket_report(sub, jobs=cfg.jobs, seed=cfg.seed))
        if rep is not None:
            results[f"{name}_brackets"] = rep.verdict.value
            if rep.verdict is Verdict.NOT_COMMUTATIVE:
                failed.append(f"{name}_brackets")
            elif rep.verdict is Verdict.UNDECIDED:
                undecided.append(f"{name}_brackets")
        jr = jacobian_rank(sub, trials=cfg.trials, seed=cfg.seed, bound=bound)
        results[f"{name}_jacobian"] = jr.to_dict()
        if jr.rank != b:
            failed.append(f"{name}_jacobian")

    results["vandermonde"] = step("vandermonde", lambda: vandermonde_consistency(inv, split))
    if results["vandermonde"] is False:
        failed.append("vandermonde")

    e, h, f = principal_triple(g)
    shifts = {"e": e, "f": f, "e+f": la.add(e, f)}
    certs = {}
    for label, x in shifts.items():
        pt = form.flat(la.add(h, x))
        certs[f"h+{label}"] = {
            "certified": completeness_certificate(zt, pt, ind),
            "span_dim": differential_span(zt, pt).rank,
            "point": [str(a) for a in pt.coords],
        }
    results["completeness"] = certs
    if not all(c["certified"] for c in certs.values()):
        failed.append("completeness")

    rel = {}
    cases = [("h, e", h, e), ("h, f", h, f), ("h, e+f", h, la.add(e, f))]
    if g.rank_n >= 3:
        x = la.lincomb([k % 5 - 2 or 1 for k in range(split.dim_m)], list(split.m_basis))
        cases.append(("wall, generic x", generic_wall_point(g, 1) if g.family_tag == "sl" else _gl_wall(g), x))
    for label, hh, xx in cases:
        r = relMF_span_check(zt, hh, xx, inv)
        rel[label] = {"status": r.status, "h_regular": r.h_regular, "dims": r.dims}
        if r.status == "fail":
            failed.append(f"relMF {label}")
    results["relMF"] = rel

    code = EXIT_CHECK_FAILED if failed else EXIT_UNDECIDED if undecided else EXIT_OK
    report = {
        "command": "cartan-suite",
        "algebra": g.name,
        "invariants": inv.source,
        "seed": cfg.seed,
        "bound": bound,
        "trials": cfg.trials,
        "results": results,
        "failed": failed,
        "undecided": undecided,
        "exit_code": code,
        "elapsed": _elapsed(cfg, start),
    }
    summary = [
        f"cartan-suite  algebra={g.name}  index={ind}  b={b}",
        f"{'check':<28}{'value':>10}",
        f"{'Z generators':<28}{z.count:>10}",
        f"{'Ztilde generators':<28}{zt.count:>10}",
        f"{'(d-1,1) components':<28}{len(near):>10}",
        f"{'Z brackets':<28}{str(results.get('z_brackets')):>10}",
        f"{'Ztilde brackets':<28}{str(results.get('ztilde_brackets')):>10}",
        f"{'trdeg Z >=':<28}{results['z_jacobian']['rank']:>10}",
        f"{'trdeg Ztilde >=':<28}{results['ztilde_jacobian']['rank']:>10}",
        f"{'complete (certified)':<28}{sum(c['certified'] for c in certs.values()):>8}/{len(certs)}",
        f"{'span equalities':<28}{sum(r['status'] == 'pass' for r in rel.values()):>8}/{len(rel)}",
    ]
    if failed:
        summary.append("failed: " + ", ".join(failed))
    if undecided:
        summary.append("undecided: " + ", ".join(undecided))
    summary.append(f"exit {code}")
    _write_outputs(cfg, "cartan-suite", report, summary)
    return code


def _gl_wall(g: LieAlgebra) -> tuple:
    n = g.rank_n
    d = [3**k for k in range(n)]
    d[1] = d[0]
    return g.coords_of_matrix([[d[i] if i == j else 0 for j in range(n)] for i in range(n)])


# -- entry point ----------------------------------------------------------------------


COMMANDS = {
    "pair-report": cmd_pair_report,
    "counterexample": cmd_counterexample,
    "cartan-suite": cmd_cartan_suite,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage, which here means non-commutative."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="liepoisson", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with run settings; flags override it")
        p.add_argument("--algebra", help="gl<n>, sl<n> or a structure-constant file")
        p.add_argument("--split", help="cartan, lower-right-sl2 or a file with a basis of f")
        p.add_argument("--invariants", help="trace-powers, charpoly or a file of polynomials")
        p.add_argument("--seed", type=int)
        p.add_argument("--bound", type=int, help="integer box for witness search or sampling")
        p.add_argument("--term-cap", type=int, dest="term_cap")
        p.add_argument("--out", help="path of the JSON report; the summary goes next to it as .txt")
        p.add_argument("--jobs", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--max-n", type=int, dest="max_n")
        p.add_argument("--no-timings", dest="timings", action="store_const", const=False,
                       help="omit elapsed times so reports are byte-stable")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
        cfg = load_config(args.config, overrides)
        with term_cap(cfg.term_cap):
            return COMMANDS[args.command](cfg)
    except TermCapExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (ConfigError, LieAlgebraError, FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
