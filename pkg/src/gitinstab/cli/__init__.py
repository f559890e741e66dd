"""Command-line interface.

Every command writes one JSON document (or CSV of the weight set) and exits
with 0 on success, 1 on input errors and 2 when a budget is exhausted.
Errors are reported as JSON diagnostics as well.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from ..convex import PointSet, affine_dim, contains_origin, min_norm_point, origin_in_interior
from ..errors import BudgetError, GitInstabError, InputError, ZeroPolynomial
from ..gitcore import (
    FormTarget,
    GroupElement,
    HilbertTarget,
    Mode,
    OneParamSubgroup,
    SamplerConfig,
    State,
    TorusContext,
    Verdict,
    check_generic_semistable,
    check_generic_stable,
    destab_rays,
    generic_state_sample,
    hm_index,
    permutation_matrices,
    sample_group_elements,
    stratify_samples,
    worst_1ps_search,
)
from ..gitcore.torus import decimal_sqrt, exact_sqrt
from ..polyalg import IdealInput
from .parse import parse_ideal, parse_matrix, parse_points, parse_polynomial, parse_vector
from .render import ints, matrix, polytope_svg, rat, to_csv, vec, vecs

__all__ = ["JobSpec", "run", "main", "build_parser"]

COMMANDS = ("state", "hm-index", "nearest", "worst", "destab", "generic-state", "certify", "stratify", "hilbert-state")


class _ArgError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    mode: str = "SL"
    n: int | None = None
    d: int | None = None
    m: int | None = None
    f: str | None = None
    ideal: str | None = None
    input: str | None = None
    points: str | None = None
    rho: str | None = None
    g: list = field(default_factory=list)
    samples: int = 0
    trials: int = 50
    entry_bound: int = 5
    stall: int = 5
    seed: int = 0
    budget: int | None = None
    format: str = "json"
    svg: str | None = None
    svg_coords: str | None = None
    out: str | None = None

    @property
    def sampler(self) -> SamplerConfig:
        return SamplerConfig(self.trials, self.entry_bound, self.stall, self.seed)


@dataclass
class Outcome:
    code: int
    document: dict
    weights: list | None = None  # weight set for CSV output
    svg: str | None = None


# ---------------------------------------------------------------------------
# target construction


def _source_text(job: JobSpec) -> tuple[str, str]:
    """Returns (kind, text) with kind in {"form", "ideal"}."""
    if job.f and job.ideal:
        raise InputError("give either --f or --ideal, not both")
    if job.input:
        try:
            text = Path(job.input).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {job.input}: {exc.strerror}") from None
        kind = "ideal" if (job.command == "hilbert-state" or job.m is not None) else "form"
        return kind, text.strip()
    if job.ideal:
        return "ideal", job.ideal
    if job.f:
        if job.command == "hilbert-state":
            return "ideal", job.f
        return "form", job.f
    raise InputError("no input: use --f, --ideal or --input")


def _context(job: JobSpec, nvars_seen: int) -> TorusContext:
    n = job.n if job.n is not None else nvars_seen - 1
    if n < 1:
        raise InputError("need at least two variables; pass --n")
    return TorusContext(n, Mode(job.mode))


def build_target(job: JobSpec):
    kind, text = _source_text(job)
    if kind == "form":
        probe = parse_polynomial(text)
        ctx = _context(job, probe.nvars)
        f = parse_polynomial(text, ctx.n + 1, homogeneous=True)
        if f.is_zero():
            raise ZeroPolynomial("v = 0 is rejected: its state is empty")
        if job.d is not None and f.degree() != job.d:
            raise InputError(f"--d {job.d} does not match the form degree {f.degree()}")
        return FormTarget(f, ctx), {"form": str(f), "degree": f.degree()}
    gens = parse_ideal(text)
    ctx = _context(job, max(g.nvars for g in gens))
    gens = parse_ideal(text, ctx.n + 1)
    if job.m is None:
        raise InputError("Hilbert points need --m")
    target = HilbertTarget.from_ideal(IdealInput(tuple(gens), ctx.n), job.m, ctx, job.budget)
    desc = {
        "ideal": [str(g) for g in gens],
        "m": job.m,
        "ell": target.piece.ell,
        "monomial_count": len(target.piece.monomial_order),
    }
    return target, desc


def _group_elements(job: JobSpec, size: int) -> list[GroupElement]:
    gs = []
    for text in job.g:
        rows = parse_matrix(text)
        if len(rows) != size:
            raise InputError(f"--g matrix must be {size}x{size}")
        gs.append(GroupElement.of(rows))
    return gs


# ---------------------------------------------------------------------------
# rendering helpers


def _nearest_block(res) -> dict:
    return {
        "nearest_point": vec(res.point),
        "coefficients": [[vec(p), rat(w)] for p, w in res.coefficients.items()],
        "norm_squared": rat(res.norm_squared),
        "norm": rat(exact_sqrt(res.norm_squared)) if exact_sqrt(res.norm_squared) is not None else None,
        "norm_decimal": decimal_sqrt(res.norm_squared),
    }


def _state_block(state: State) -> dict:
    ps = state.pointset()
    return {
        "state": vecs(state.weights),
        "state_size": len(state),
        "contains_origin": contains_origin(ps),
        "origin_in_interior": origin_in_interior(ps, state.context.ambient_dim),
        "affine_dim": affine_dim(ps),
    }


def _torus_verdict(norm_squared) -> str:
    return (Verdict.UNSTABLE if norm_squared > 0 else Verdict.SEMISTABLE_WRT_EXPLORED_TORI).value


# ---------------------------------------------------------------------------
# commands


def _cmd_state(job, doc):
    target, desc = build_target(job)
    doc["input"], doc["n"] = desc, target.context.n
    state = target.state_under(None)
    doc.update(_state_block(state))
    res = min_norm_point(state.pointset())
    doc.update(_nearest_block(res))
    doc["verdict"] = _torus_verdict(res.norm_squared)
    return state, res


def _cmd_hilbert_state(job, doc):
    if job.m is None:
        raise InputError("hilbert-state needs --m")
    return _cmd_state(job, doc)


def _cmd_hm_index(job, doc):
    target, desc = build_target(job)
    doc["input"], doc["n"] = desc, target.context.n
    if not job.rho:
        raise InputError("hm-index needs --rho")
    rho = OneParamSubgroup.of(target.context, [int(x) for x in _integer_vector(job.rho)])
    state = target.state_under(None)
    mu = hm_index(state, rho)
    doc["state"] = vecs(state.weights)
    doc["rho"] = ints(rho.coords)
    doc["hm_index"] = rat(mu)
    doc["destabilizing"] = mu < 0
    return state, None


def _integer_vector(text):
    v = parse_vector(text)
    if any(x.denominator != 1 for x in v):
        raise InputError("one-parameter subgroups have integer weights")
    return v


def _cmd_nearest(job, doc):
    if job.points:
        pts = PointSet.of(parse_points(job.points))
        doc["input"] = {"points": vecs(pts.points)}
        res = min_norm_point(pts)
        doc["points"] = vecs(pts.points)
        doc.update(_nearest_block(res))
        doc["contains_origin"] = res.norm_squared == 0
        return pts.points, res
    target, desc = build_target(job)
    doc["input"], doc["n"] = desc, target.context.n
    state = target.state_under(None)
    res = min_norm_point(state.pointset())
    doc["state"] = vecs(state.weights)
    doc.update(_nearest_block(res))
    doc["contains_origin"] = res.norm_squared == 0
    return state, res


def _cmd_worst(job, doc):
    target, desc = build_target(job)
    doc["input"], doc["n"] = desc, target.context.n
    size = target.context.n + 1
    gs = [GroupElement.identity(size)] + _group_elements(job, size)
    search = worst_1ps_search(target, gs, job.sampler, samples=job.samples)
    best = search.best
    worst = best.worst
    doc["explored_tori"] = len(search.candidates)
    doc["torus"] = matrix(best.g.to_rows())
    doc["state"] = vecs(best.state.weights)
    doc.update(_nearest_block(worst.certificate))
    doc["worst_1ps"] = ints(worst.rho.coords) if worst.rho else None
    dest = destab_rays(best.state)
    doc["destabilizing_rays"] = [ints(r.coords) for r in dest.generators()]
    doc["open_cone_nonempty"] = dest.open_cone_nonempty
    doc["verdict"] = search.verdict.value
    if job.samples:
        doc["sampler"] = {"seed": job.seed, "entry_bound": job.entry_bound, "samples": job.samples}
    return best.state, worst.certificate


def _cmd_destab(job, doc):
    target, desc = build_target(job)
    doc["input"], doc["n"] = desc, target.context.n
    state = target.state_under(None)
    dest = destab_rays(state)
    doc["state"] = vecs(state.weights)
    doc["rays"] = [ints(r.coords) for r in dest.rays]
    doc["lineality"] = [ints(r.coords) for r in dest.lineality]
    doc["destabilizing_rays"] = [ints(r.coords) for r in dest.generators()]
    doc["open_cone_nonempty"] = dest.open_cone_nonempty
    doc["verdict"] = (Verdict.UNSTABLE if dest.open_cone_nonempty else Verdict.SEMISTABLE_WRT_EXPLORED_TORI).value
    return state, None


def _cmd_generic_state(job, doc):
    target, desc = build_target(job)
    doc["input"], doc["n"] = desc, target.context.n
    state, cert = generic_state_sample(target, job.sampler)
    doc.update(_state_block(state))
    doc["sampler"] = cert.as_dict()
    try:
        full = target.all_weights()
        doc["full_weight_count"] = len(full)
        doc["is_full_weight_set"] = set(state.weights) == set(full.weights)
    except BudgetError:
        doc["full_weight_count"] = None
        doc["is_full_weight_set"] = None
    res = min_norm_point(state.pointset())
    doc.update(_nearest_block(res))
    return state, res


def _cmd_certify(job, doc):
    target, desc = build_target(job)
    doc["input"], doc["n"] = desc, target.context.n
    semi = check_generic_semistable(target, job.sampler)
    doc["state"] = vecs(semi.state.weights)
    doc["sampler"] = semi.certificate.as_dict()
    doc.update(_nearest_block(semi.nearest))
    doc["semistable_verdict"] = semi.verdict.value
    verdict = semi.verdict
    if target.context.mode is Mode.SL:
        stable = check_generic_stable(target, job.sampler)
        doc["origin_in_interior"] = stable.interior
        doc["stable_verdict"] = stable.verdict.value
        if stable.verdict is Verdict.GENERICALLY_STABLE:
            verdict = stable.verdict
    doc["verdict"] = verdict.value
    return semi.state, semi.nearest


def _cmd_stratify(job, doc):
    target, desc = build_target(job)
    doc["input"], doc["n"] = desc, target.context.n
    size = target.context.n + 1
    gs = permutation_matrices(size) + _group_elements(job, size)
    if job.samples:
        gs += sample_group_elements(size, job.samples, job.sampler)
    try:
        strat = stratify_samples(target, gs)
        have_full = True
    except BudgetError:
        strat = stratify_samples(target, gs, with_full=False)
        have_full = False
    distinguished = strat.distinguished()
    buckets = []
    for state, members in strat.buckets.items():
        buckets.append(
            {
                "state": vecs(state.weights),
                "complement": vecs(strat.complement(state)) if have_full else None,
                "count": len(members),
                "elements": [matrix(g.to_rows()) for g in members],
                "distinguished": state == distinguished,
            }
        )
    doc["explored"] = len(gs)
    doc["buckets"] = buckets
    if job.samples:
        doc["sampler"] = {"seed": job.seed, "entry_bound": job.entry_bound, "samples": job.samples}
    return distinguished, None


HANDLERS = {
    "state": _cmd_state,
    "hm-index": _cmd_hm_index,
    "nearest": _cmd_nearest,
    "worst": _cmd_worst,
    "destab": _cmd_destab,
    "generic-state": _cmd_generic_state,
    "certify": _cmd_certify,
    "stratify": _cmd_stratify,
    "hilbert-state": _cmd_hilbert_state,
}


def _svg_coords(text):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2 or not all(p.strip().lstrip("-").isdigit() for p in parts):
        raise InputError("--svg-coords expects two indices like 0,1")
    return int(parts[0]), int(parts[1])


def run(job: JobSpec) -> Outcome:
    """Execute one job; never raises for input or budget problems."""
    doc = {"command": job.command, "mode": job.mode, "n": job.n, "seed": job.seed}
    try:
        if job.command not in HANDLERS:
            raise InputError(f"unknown command {job.command!r}")
        if job.format not in ("json", "csv"):
            raise InputError("--format must be json or csv")
        weights, res = HANDLERS[job.command](job, doc)
        if isinstance(weights, State):
            doc["n"] = weights.context.n
            weight_list = list(weights.weights)
        else:
            weight_list = list(weights) if weights is not None else None
        svg = None
        if job.svg:
            if not weight_list:
                raise InputError("nothing to draw")
            nearest = res.point if res is not None else min_norm_point(weight_list).point
            svg = polytope_svg(weight_list, nearest, job.mode, _svg_coords(job.svg_coords))
        doc = {k: doc[k] for k in ("command", "mode", "n", "seed") if k in doc} | doc
        return Outcome(0, doc, weight_list, svg)
    except GitInstabError as exc:
        code = 2 if isinstance(exc, BudgetError) else 1
        err = {"type": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "offset", None) is not None:
            err["offset"] = exc.offset
        return Outcome(code, {"command": job.command, "mode": job.mode, "n": job.n, "seed": job.seed, "error": err})


_NUM_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")
_PAIR_LIST = re.compile(r"\[\s*(\[[-\d, ]*\](?:,\s*\[[-\d, ]*\])*)\s*\]")


def dumps(doc: dict) -> str:
    """Indented JSON with integer lists and vectors of rationals kept on one line."""
    text = json.dumps(doc, indent=2)
    text = _NUM_LIST.sub(lambda m: "[" + re.sub(r",\s*", ", ", m.group(1)) + "]", text)
    text = _PAIR_LIST.sub(lambda m: "[" + re.sub(r"\],\s*\[", "], [", m.group(1)) + "]", text)
    return text + "\n"


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=["SL", "GL"], default="SL")
    common.add_argument("--n", type=int, help="the group is SL_{n+1} / GL_{n+1}; inferred from the input if omitted")
    common.add_argument("--d", type=int, help="expected degree of the form (checked)")
    common.add_argument("--m", type=int, help="degree of the Hilbert point")
    common.add_argument("--f", help="homogeneous form, e.g. 'x0*x2 - x1^2'")
    common.add_argument("--ideal", help="comma-separated homogeneous generators")
    common.add_argument("--input", help="file holding the form or ideal text")
    common.add_argument("--g", action="append", default=[], help="extra group element [[..],[..]] (repeatable)")
    common.add_argument("--samples", type=int, default=0, help="random group elements to add (worst, stratify)")
    common.add_argument("--trials", type=int, default=50)
    common.add_argument("--entry-bound", type=int, default=5)
    common.add_argument("--stall", type=int, default=5)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="subset-enumeration budget (default $GIT_INSTAB_BUDGET or 2e6)")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--svg", help="write a picture of the polytope to this path")
    common.add_argument("--svg-coords", help="coordinate pair to draw when the character space is not 2-D")
    common.add_argument("--out", help="write the document here instead of stdout")

    parser = _Parser(prog="gitinstab", description="Exact torus (semi)stability computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "state": "state of the point for the diagonal torus",
        "hm-index": "Hilbert-Mumford index for a given 1-PS (--rho)",
        "nearest": "nearest point of a polytope (--points or the state of --f)",
        "worst": "worst 1-PS over the identity torus plus --g / --samples tori",
        "destab": "generators of the destabilizing cone",
        "generic-state": "sampled generic state",
        "certify": "generic semistability / stability verdict",
        "stratify": "bucket permutation and sampled matrices by state",
        "hilbert-state": "state of the m-th Hilbert point of an ideal",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "hm-index":
            p.add_argument("--rho", required=True, help="integer weights, e.g. 2,-1,-1")
        if name == "nearest":
            p.add_argument("--points", help="point list, e.g. '[(1,0),(0,1)]'")
    return parser


def parse_job(argv) -> JobSpec:
    ns = build_parser().parse_args(argv)
    kw = {k: v for k, v in vars(ns).items() if k in JobSpec.__dataclass_fields__}
    return JobSpec(**kw)


def _emit(outcome: Outcome, job: JobSpec | None):
    if outcome.code == 0 and job is not None and job.format == "csv":
        text = to_csv(outcome.weights or [])
    else:
        text = dumps(outcome.document)
    if job is not None and job.out and outcome.code == 0:
        Path(job.out).write_text(text)
    else:
        sys.stdout.write(text)
    if outcome.svg is not None and job is not None and job.svg:
        Path(job.svg).write_text(outcome.svg)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        job = parse_job(argv)
    except _ArgError as exc:
        doc = {"command": None, "seed": None, "error": {"type": "UsageError", "message": str(exc)}}
        sys.stdout.write(dumps(doc))
        return 1
    outcome = run(job)
    try:
        _emit(outcome, job)
    except OSError as exc:
        sys.stdout.write(dumps({"command": job.command, "seed": job.seed,
                                "error": {"type": "OutputError", "message": str(exc)}}))
        return 1
    return outcome.code
