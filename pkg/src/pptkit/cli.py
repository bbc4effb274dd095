"""Command-line front end: ``verify``, ``invariant``, ``diagram``, ``gate``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .baxterization import (
    baxterize,
    hecke_alpha,
    hecke_from_projection,
    hecke_generator_check,
    r_pm,
    r_pm_family,
    r_pm_x,
    r_pm_u,
    three_equivalences,
    unitarity_rho,
)
from .braids import BraidSyntaxError, MarkovNormalizationError, entangling_test, link_invariant, parse_braid, resolve_link
from .diagrams import DiagramSyntaxError, parse_diagram_expr, represent
from .operators import identity, p_pm, p_sup, ppt, q_star, swap, v_pm
from .relations import (
    Family,
    FamilyEvaluationError,
    RelationReport,
    check_brauer,
    check_braid,
    check_color_ordering,
    check_colored_ybe,
    check_flat_unrestricted,
    check_forbidden,
    check_theorem1_system,
    check_tl,
    check_unitary,
    check_virtual_braid,
    check_ybe_add,
    check_ybe_mult,
    combine,
    compare,
    multiplicative_view,
    sample_params,
)
from .scalars import EPS, EXACT, FLOAT, BackendMismatchError, PoleError, QQi, ScalarSyntaxError, format_scalar, parse_scalar
from .tensor import CapacityError, Matrix, embed, scale, to_backend_matrix

EXIT_OK, EXIT_UNEXPECTED, EXIT_USAGE, EXIT_CAPACITY, EXIT_POLE = 0, 1, 2, 3, 4

SUITES = ("tl", "brauer", "braid", "ybe", "virtual", "forbidden", "theorem1", "theorem2", "hecke", "unitarity")


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    ds: tuple[int, ...] | None = None
    seed: int = 0
    samples: int = 25
    tol: float = EPS
    backend: str = EXACT
    fmt: str = "text"

    def __post_init__(self):
        if self.suite not in SUITES + ("all",):
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.ds is not None and any(d < 2 for d in self.ds):
            raise ValueError("every d must be >= 2")
        if self.samples < 1:
            raise ValueError("--samples must be >= 1")
        if self.tol <= 0:
            raise ValueError("--tol must be > 0")


@dataclass(frozen=True)
class Outcome:
    report: RelationReport
    expect_pass: bool

    @property
    def as_expected(self) -> bool:
        return self.report.passed == self.expect_pass

    def to_dict(self) -> dict:
        out = self.report.to_dict()
        out["expected"] = "pass" if self.expect_pass else "fail"
        out["as_expected"] = self.as_expected
        return out


def _renamed(report: RelationReport, name: str) -> RelationReport:
    return RelationReport(name, report.passed, report.deviation, report.witness, report.samples, report.seed, report.backend, report.parts)


def _mat(M: Matrix, cfg: SuiteConfig) -> Matrix:
    return to_backend_matrix(M, FLOAT) if cfg.backend == FLOAT else M


def _ds(cfg: SuiteConfig, default):
    return cfg.ds if cfg.ds is not None else default


def _num(value, cfg: SuiteConfig):
    return complex(value) if cfg.backend == FLOAT else value


# ---------------------------------------------------------------------------
# suites


def suite_tl(cfg):
    out = []
    for d in _ds(cfg, (2, 3, 4)):
        E = _mat(ppt(d), cfg)
        out.append(Outcome(_renamed(check_tl([embed(E, 1, 3), embed(E, 2, 3)], _num(d, cfg), cfg.tol), f"tl(d={d})"), True))
    return out


def suite_brauer(cfg):
    out = []
    ds = _ds(cfg, (2, 3))
    for d in ds:
        out.append(Outcome(_renamed(check_brauer(_mat(ppt(d), cfg), _mat(swap(d), cfg), _num(d, cfg), cfg.tol), f"brauer(P*,P,d={d})"), True))
    if 2 in ds:
        pair = check_brauer(_mat(q_star(QQi(0, 1)), cfg), _mat(p_pm(+1), cfg), _num(2, cfg), cfg.tol)
        out.append(Outcome(_renamed(pair, "brauer(Q*(i),P+,d=2)"), True))
        control = check_brauer(_mat(ppt(2), cfg), _mat(identity(2), cfg), _num(2, cfg), cfg.tol)
        out.append(Outcome(_renamed(control, "brauer(P*,Id,d=2)"), False))
    return out


def _isotropic_braid(d: int, which: str, cfg) -> Matrix:
    vp, vm = v_pm(d, EXACT if d == 2 and cfg.backend == EXACT else FLOAT)
    v = vp if which == "+" else vm
    b = EXACT if isinstance(v, QQi) else FLOAT
    return identity(d, 2, b) + scale(v, ppt(d, b))


def suite_braid(cfg):
    out = []
    for d in _ds(cfg, (2, 3, 4, 5)):
        for which in ("+", "-"):
            out.append(Outcome(_renamed(check_braid(_isotropic_braid(d, which, cfg), tol=cfg.tol), f"braid(Id+v{which}P*,d={d})"), True))
    out.append(Outcome(_renamed(check_braid(_mat(identity(2) + swap(2), cfg), tol=cfg.tol), "braid(Id+P,d=2)"), False))
    return out


def _werner(d, cfg):
    b = cfg.backend
    return Family(f"Id+uP(d={d})", {"u": "real"}, lambda u: identity(d, 2, b) + scale(u, swap(d, b)))


def _isotropic(d, cfg):
    b = cfg.backend
    return Family(f"Id+vP*(d={d})", {"v": "real"}, lambda v: identity(d, 2, b) + scale(v, ppt(d, b)))


def _theorem1_family(cfg):
    b = cfg.backend
    return Family("Psup+uP", {"u": "real"}, lambda u: p_sup(2, b) + scale(u, swap(2, b)))


def suite_ybe(cfg):
    out = []
    add_pts = sample_params({"u": "real", "v": "real"}, cfg.samples, cfg.seed, cfg.backend)
    pos_pts = sample_params({"x": "positive", "y": "positive"}, cfg.samples, cfg.seed, FLOAT)
    mult_pts = sample_params({"x": "real-nonzero", "y": "real-nonzero"}, cfg.samples, cfg.seed, cfg.backend)
    for d in _ds(cfg, (2, 3)):
        W = _werner(d, cfg)
        out.append(Outcome(check_ybe_add(W, add_pts, cfg.tol, cfg.seed), True))
        Wf = Family(W.name, W.params, lambda u, d=d: identity(d, 2, FLOAT) + scale(u, swap(d, FLOAT)))
        out.append(Outcome(check_ybe_mult(multiplicative_view(Wf), pos_pts, cfg.tol, cfg.seed), True))
        out.append(Outcome(check_ybe_mult(_isotropic(d, cfg), mult_pts, cfg.tol, cfg.seed), False))
    T = _theorem1_family(cfg)
    out.append(Outcome(check_ybe_add(T, add_pts, cfg.tol, cfg.seed), True))
    out.append(Outcome(check_ybe_mult(T, mult_pts, cfg.tol, cfg.seed), True))
    col_pts = sample_params({"x": "real", "z": "real", "y": "real"}, cfg.samples, cfg.seed, cfg.backend)
    out.append(Outcome(check_color_ordering(T, col_pts, cfg.tol, cfg.seed), True))
    b = cfg.backend
    q = QQi(1) if b == EXACT else 1.0
    colored = Family(
        "lambda*P+ + mu*Qsup",
        {"lambda": "real", "mu": "real"},
        lambda lam, mu: scale(lam, p_pm(+1, b)) + scale(mu, identity(2, 2, b) - _mat(q_star(q), cfg)),
    )
    cpts = sample_params({"lambda": "real", "mu": "real", "nu": "real"}, cfg.samples, cfg.seed, cfg.backend)
    out.append(Outcome(check_colored_ybe(colored, cpts, cfg.tol, cfg.seed), True))
    return out


def _virtual_pair(d, cfg):
    sigma = _isotropic_braid(d, "+", cfg)
    return sigma, swap(d, sigma.backend)


def suite_virtual(cfg):
    out = []
    for d in _ds(cfg, (2, 3)):
        s, v = _virtual_pair(d, cfg)
        out.append(Outcome(_renamed(check_virtual_braid(s, v, cfg.tol), f"virtual(Id+v+P*,P,d={d})"), True))
    if 2 in _ds(cfg, (2, 3)):
        out.append(Outcome(_renamed(check_flat_unrestricted(_mat(p_sup(2), cfg), _mat(swap(2), cfg), cfg.tol), "flat(Psup,P,d=2)"), True))
    return out


def suite_forbidden(cfg):
    out = []
    for d in _ds(cfg, (2, 3)):
        s, v = _virtual_pair(d, cfg)
        f1, f2 = check_forbidden(s, v, cfg.tol)
        out.append(Outcome(combine(f"forbidden(Id+v+P*,P,d={d})", [f1, f2]), d == 2))
    return out


def suite_theorem1(cfg):
    out = []
    pts = sample_params({"u": "real-nonzero", "v": "real-nonzero"}, cfg.samples, cfg.seed, cfg.backend)
    for d in _ds(cfg, (2, 3)):
        if d == 2:
            out.append(Outcome(check_theorem1_system(2, _num(1, cfg), _num(-1, cfg), pts, cfg.tol, cfg.seed), True))
            T = _theorem1_family(cfg)
            bgr = check_braid(T.build(pts[0]["u"]), tol=cfg.tol)
            out.append(Outcome(_renamed(bgr, "theorem1-bgr(Psup+uP)"), True))
        else:
            out.append(Outcome(check_theorem1_system(d, _num(1, cfg), _num(1, cfg), pts, cfg.tol, cfg.seed), False))
    return out


def _r_x(sign, cfg, t, q):
    return Family(f"R{sign}(x)", {"x": "unit-modulus"}, lambda x: r_pm_x(sign, x, t, q))


def suite_theorem2(cfg):
    out = []
    b = cfg.backend
    t = QQi(Fraction(1, 2)) if b == EXACT else 0.5
    q = QQi(Fraction(3, 5), Fraction(4, 5)) if b == EXACT else complex(0.6, 0.8)
    x = QQi(Fraction(5, 13), Fraction(12, 13)) if b == EXACT else complex(5 / 13, 12 / 13)
    pts = sample_params({"x": "unit-modulus", "y": "unit-modulus"}, cfg.samples, cfg.seed, b)
    P = swap(2, b)
    for sign in ("+", "-"):
        F = _r_x(sign, cfg, t, q)
        out.append(Outcome(check_ybe_mult(F, pts, cfg.tol, cfg.seed), True))
        R = r_pm_x(sign, x, t, q)
        out.append(Outcome(_renamed(check_braid(R, tol=cfg.tol), f"theorem2-bgr(R{sign}(x))"), True))
        out.append(Outcome(_renamed(check_virtual_braid(R, P, cfg.tol), f"theorem2-virtual(R{sign}(x),P)"), True))
        f1, f2 = check_forbidden(R, P, cfg.tol)
        out.append(Outcome(combine(f"theorem2-forbidden(R{sign}(x),P)", [f1, f2]), sign == "+"))
    return out


def suite_hecke(cfg):
    out = []
    for d in _ds(cfg, (2, 3, 4, 5)):
        for sign in ("+", "-"):
            out.append(Outcome(hecke_generator_check(sign, d, cfg.tol), True))
            out.append(Outcome(hecke_generator_check(sign, d, cfg.tol, corrected=True), True))
    for d in (2, 3):
        if cfg.ds is not None and d not in cfg.ds:
            continue
        exact = d == 2 and cfg.backend == EXACT
        e = scale(QQi(Fraction(1, d)), ppt(d)) if exact else scale(1 / d, ppt(d, FLOAT))
        lam = QQi(Fraction(1, d * d)) if exact else 1 / d**2
        alpha = hecke_alpha(lam)[0]
        sigma, lam_out = hecke_from_projection(e, alpha, QQi(1) if exact else 1.0, cfg.tol)
        out.append(Outcome(_renamed(check_braid(sigma, tol=cfg.tol), f"hecke-projection-braid(d={d})"), True))
    e = scale(QQi(Fraction(1, 2)), ppt(2))
    out.append(Outcome(three_equivalences(embed(e, 1, 3), embed(e, 2, 3), QQi(Fraction(1, 4)), cfg.tol), True))
    return out


def suite_unitarity(cfg):
    out = []
    b = cfg.backend
    t = QQi(Fraction(1, 2)) if b == EXACT else 0.5
    pts = sample_params({"q": "unit-modulus", "x": "unit-modulus"}, min(cfg.samples, 10), cfg.seed, b)
    reports = []
    for pt in pts:
        R = baxterize(r_pm(+1, t, pt["q"]), t)(pt["x"])
        rep, rho = check_unitary(R, cfg.tol)
        expected = unitarity_rho(pt["x"], t)
        ok = rep.passed and rho is not None and abs(complex(rho) - complex(expected)) <= (0 if b == EXACT else cfg.tol)
        reports.append(RelationReport("rho", ok, rep.deviation, None if ok else {"x": format_scalar(pt["x"])}, backend=b))
    out.append(Outcome(combine("unitarity(baxterized R+)", reports, cfg.seed, len(pts)), True))
    one = QQi(1) if b == EXACT else 1.0
    x0 = QQi(Fraction(3, 5), Fraction(4, 5)) if b == EXACT else complex(0.6, 0.8)
    rep, rho = check_unitary(r_pm_x(+1, x0, one, one), cfg.tol)
    ok = rep.passed and rho is not None and abs(complex(rho) - 4) <= (0 if b == EXACT else cfg.tol)
    out.append(Outcome(RelationReport("unitarity(t=1,rho=4)", ok, rep.deviation, None if ok else {"rho": format_scalar(rho) if rho is not None else None}, backend=b), True))
    i = QQi(0, 1) if b == EXACT else 1j
    out.append(Outcome(_renamed(check_unitary(r_pm_u(+1, i, one), cfg.tol)[0], "unitarity(gate,u=i)"), True))
    half = QQi(Fraction(1, 2)) if b == EXACT else 0.5
    out.append(Outcome(_renamed(check_unitary(r_pm_u(+1, half, one), cfg.tol)[0], "unitarity(gate,u=1/2)"), False))
    return out


SUITE_FUNCS = {
    "tl": suite_tl,
    "brauer": suite_brauer,
    "braid": suite_braid,
    "ybe": suite_ybe,
    "virtual": suite_virtual,
    "forbidden": suite_forbidden,
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "hecke": suite_hecke,
    "unitarity": suite_unitarity,
}


def run_suite(cfg: SuiteConfig) -> list[Outcome]:
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    out = []
    for name in names:
        out.extend(SUITE_FUNCS[name](cfg))
    return out


# ---------------------------------------------------------------------------
# output


def _emit_json(payload: dict, stream) -> None:
    stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _verify_text(outcomes, stream):
    for o in outcomes:
        r = o.report
        mark = "ok " if o.as_expected else "!! "
        stream.write(f"{mark}{r.verdict.upper():4} {r.name}  deviation={format_scalar(r.deviation)}  expected={'pass' if o.expect_pass else 'fail'}\n")
        if not r.passed and r.witness:
            stream.write(f"       witness: {json.dumps(r.witness, sort_keys=True)}\n")
    bad = sum(not o.as_expected for o in outcomes)
    stream.write(f"{len(outcomes)} checks, {len(outcomes) - bad} as expected, {bad} unexpected\n")


def cmd_verify(args, stream) -> int:
    ds = tuple(int(x) for x in args.d.split(",")) if args.d else None
    cfg = SuiteConfig(args.suite, ds, args.seed, args.samples, args.tol, args.backend, args.format)
    outcomes = run_suite(cfg)
    if cfg.fmt == "json":
        _emit_json({"tool_version": __version__, "seed": cfg.seed, "reports": [o.to_dict() for o in outcomes]}, stream)
    else:
        _verify_text(outcomes, stream)
    return EXIT_OK if all(o.as_expected for o in outcomes) else EXIT_UNEXPECTED


def _gate_scalars(args):
    u = parse_scalar(args.u, args.backend)
    q = parse_scalar(args.q, args.backend)
    # an angle literal on either side moves both to floats
    if isinstance(u, complex) or isinstance(q, complex):
        u, q = complex(u), complex(q)
    return u, q


def cmd_invariant(args, stream) -> int:
    if args.link:
        word = resolve_link(args.link)
    else:
        word = parse_braid(args.word)
    u, q = _gate_scalars(args)
    res = link_invariant(word, u, q, args.sign)
    if args.format == "json":
        _emit_json({"tool_version": __version__, "result": res.to_dict()}, stream)
    else:
        for key, value in res.to_dict().items():
            stream.write(f"{key}: {value}\n")
    return EXIT_OK


def _matrix_rows(M: Matrix) -> list[list[str]]:
    return [[format_scalar(z) for z in row] for row in M.tolist()]


def cmd_diagram(args, stream) -> int:
    D = parse_diagram_expr(args.expr)
    payload = {"diagram": D.to_text(), "n": D.n, "loops": D.loops}
    if args.represent is not None:
        payload["matrix"] = _matrix_rows(represent(D, args.represent))
    if args.format == "json":
        _emit_json({"tool_version": __version__, **payload}, stream)
    else:
        stream.write(D.to_text() + "\n")
        for row in payload.get("matrix", []):
            stream.write(" ".join(f"{z:>3}" for z in row) + "\n")
    return EXIT_OK


def cmd_gate(args, stream) -> int:
    u, q = _gate_scalars(args)
    report = entangling_test(r_pm_u(args.sign, u, q), seed=args.seed)
    data = report.to_dict()
    if args.format == "json":
        _emit_json({"tool_version": __version__, "gate": data}, stream)
    else:
        stream.write(f"unitary: {'yes' if report.unitary else 'no'}" + (f" (rho={data['rho']})" if report.unitary else "") + "\n")
        stream.write(f"entangling: {'yes' if report.entangling else 'no'}\n")
        if report.entangling:
            w = data["witness"]
            stream.write(f"witness: ({', '.join(w['first'])}) x ({', '.join(w['second'])})\n")
            stream.write(f"image: [{', '.join(w['image'])}]\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pptkit", description="Relation checks for partial-transpose braid representations.")
    parser.add_argument("--version", action="version", version=f"pptkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a relation suite")
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--d", help="comma-separated local dimensions")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=25)
    v.add_argument("--tol", type=float, default=EPS)
    v.add_argument("--backend", choices=(EXACT, FLOAT), default=EXACT)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    inv = sub.add_parser("invariant", help="Markov-trace invariant of a closed braid")
    which = inv.add_mutually_exclusive_group(required=True)
    which.add_argument("--link", help="hopf, trefoil, figure8, borromean, whitehead")
    which.add_argument("--word", help='braid word such as "B3: s1 S2 s1 S2"')
    inv.add_argument("--u", default="1/3")
    inv.add_argument("--q", default="1")
    inv.add_argument("--sign", choices=("+", "-"), default="+")
    inv.add_argument("--backend", choices=(EXACT, FLOAT), default=None)
    inv.add_argument("--format", choices=("text", "json"), default="text")
    inv.set_defaults(func=cmd_invariant)

    dg = sub.add_parser("diagram", help='multiply diagrams, e.g. "n=3: E(1)*V((12))"')
    dg.add_argument("expr")
    dg.add_argument("--represent", type=int, metavar="D")
    dg.add_argument("--format", choices=("text", "json"), default="text")
    dg.set_defaults(func=cmd_diagram)

    g = sub.add_parser("gate", help="unitarity and entangling test of the u-gate")
    g.add_argument("--u", required=True)
    g.add_argument("--q", default="1")
    g.add_argument("--sign", choices=("+", "-"), default="+")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--backend", choices=(EXACT, FLOAT), default=None)
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.set_defaults(func=cmd_gate)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, stdout)
    except CapacityError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_CAPACITY
    except (PoleError, FamilyEvaluationError, MarkovNormalizationError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_POLE
    except (ScalarSyntaxError, BraidSyntaxError, DiagramSyntaxError, BackendMismatchError, KeyError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
