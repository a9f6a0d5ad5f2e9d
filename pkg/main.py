"""qmat: CLI Entry Point"""
"""
Usage:
    python main.py degree --algebra mq --n 3 --m 5          Degree, divisors and closed form
    python main.py blocks --n 6 --r 3                       Block structure of J(M_q(6,3))
    python main.py center --n 2 --r 2 --m 3                 Kernel mod m and central candidates
    python main.py corank --n 6 --r 2                       Corank of the defining matrix
    python main.py snf --input J.txt                        Normal form of a matrix file
    python main.py minor --n 2 --rows 1,2 --cols 1,2        Expand a quantum minor
    python main.py verify --family za --n 2 --r 2 --m 3     Verify one family of candidates
    python main.py reproduce --suite detdeg --max-n 3       Reproduce the closed-form tables
"""

import argparse
import sys
from dataclasses import asdict, dataclass
from math import gcd
from typing import Optional, Tuple

import config
from evaluation.claims import SUITE_NAMES
from evaluation.reproduce import run_suites
from qmat.degree import (
    VERIFY_MODES,
    brute_force_h,
    candidates_for,
    classify_blocks,
    degree_quasipoly,
    degree_report,
    rectangle_corank_formula,
    verify_central_candidate,
)
from qmat.errors import GuardExceededError
from qmat.minors import (
    MinorDescriptor,
    candidate_Za,
    candidate_quarter,
    candidates_even_m,
    candidates_theta_chain,
    d_family,
    quantum_determinant,
    quantum_minor,
)
from qmat.ncalgebra import AlgebraDescriptor, build_algebra, commutator_witness
from qmat.render import FORMATS, render
from qmat.skewlat import (
    defining_matrix,
    image_cardinality,
    kernel_mod_m,
    load_matrix,
    skew_normal_form,
)
from utils.logger import log_run

ALGEBRAS = {"mq": "square", "mqnr": "rectangle", "anr": "hook", "snr": "cross", "custom": "custom"}
FAMILIES = ["za", "chain", "d", "even", "quarter", "det"]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    algebra: str
    n: Optional[int]
    r: Optional[int]
    m: Optional[int]
    rows: Optional[Tuple[int, ...]]
    cols: Optional[Tuple[int, ...]]
    input: Optional[str]
    fmt: str
    family: Optional[str] = None
    mode: str = "lattice"
    suite: str = "all"
    max_n: Optional[int] = None
    moduli: Optional[Tuple[int, ...]] = None
    brute: bool = False
    guard_enum: Optional[int] = None
    guard_symbolic: Optional[int] = None

    def __post_init__(self):
        if self.algebra not in ALGEBRAS:
            raise ValueError(f"Unknown algebra: {self.algebra}. Use: {list(ALGEBRAS)}")
        if self.algebra == "custom" and not self.input:
            raise ValueError("--algebra custom needs --input")
        if self.algebra in ("mqnr", "anr", "snr") and self.r is None:
            raise ValueError(f"--algebra {self.algebra} needs --r")
        if self.algebra == "mq" and self.r is not None:
            raise ValueError("--algebra mq takes no --r")
        for name in ("guard_enum", "guard_symbolic"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"Guard overrides must be positive, got {name}={value}")
        if self.m is not None and self.m < 1:
            raise ValueError(f"--m must be >= 1, got: {self.m}")

    def to_dict(self):
        return asdict(self)


def _int_list(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got: {text}")


def _infer_algebra(args):
    if args.algebra:
        return args.algebra
    if args.input:
        return "custom"
    if args.r is not None:
        return "mqnr"
    return "mq"


def _algebra(cfg: RunConfig) -> AlgebraDescriptor:
    if cfg.algebra == "custom":
        raise ValueError(f"{cfg.command} needs a generated algebra, not --input")
    if cfg.n is None:
        raise ValueError("--n is required")
    return build_algebra(ALGEBRAS[cfg.algebra], cfg.n, cfg.r)


def _target(cfg: RunConfig):
    """(algebra or None, J) for commands that also accept a matrix file."""
    if cfg.algebra == "custom":
        return None, load_matrix(cfg.input)
    alg = _algebra(cfg)
    return alg, defining_matrix(alg)


def _need_m(cfg: RunConfig):
    if cfg.m is None:
        raise ValueError(f"{cfg.command} needs --m")
    return cfg.m


# --- Commands ---

def cmd_degree(cfg):
    m = _need_m(cfg)
    alg, J = _target(cfg)
    if alg is not None:
        result = degree_report(alg, m).to_dict()
    else:
        snf = skew_normal_form(J)
        result = {"algebra": "custom", "modulus": m, "h": image_cardinality(J, m, snf),
                  "degree": degree_quasipoly(J, m, snf), "divisors": list(snf.divisors),
                  "corank": snf.zero_rank, "closed_form": None, "match": None}
    findings = []
    if result["match"] is False:
        findings.append({"claim": "degree = closed form", "expected": result["closed_form"],
                         "actual": result["degree"], "witness": None})
    if cfg.brute:
        brute = brute_force_h(J, m, guard=cfg.guard_enum, workers=config.WORKERS)
        result["brute_h"] = brute
        if brute != result["h"]:
            findings.append({"claim": "h = brute-force image size", "expected": brute,
                             "actual": result["h"], "witness": None})
    return result, findings


def cmd_blocks(cfg):
    alg, J = _target(cfg)
    if alg is None:
        snf = skew_normal_form(J)
        divs = snf.divisors
        result = {"algebra": "custom", "divisors": list(divs), "count_1": divs.count(1),
                  "count_2": divs.count(2), "count_4": divs.count(4),
                  "other": [d for d in divs if d not in (1, 2, 4)], "corank": snf.zero_rank}
        return result, []
    report = classify_blocks(alg).to_dict()
    findings = report.pop("findings")
    return report, findings


def cmd_center(cfg):
    m = _need_m(cfg)
    alg = _algebra(cfg)
    J = defining_matrix(alg)
    snf = skew_normal_form(J)
    kernel = kernel_mod_m(J, m, snf)
    verdicts = [verify_central_candidate(c, alg, m, "lattice").to_dict() for c in candidates_for(alg, m)]
    result = {
        "algebra": alg.describe(),
        "modulus": m,
        "h": image_cardinality(J, m, snf),
        "kernel_cardinality": kernel.cardinality,
        "kernel_generators": [list(v) for v in kernel.generators],
        "generator_order": [g.label() for g in alg.generators],
        "candidates": verdicts,
    }
    findings = [
        {"claim": "candidate is central", "expected": True, "actual": False, "witness": v["witness"]}
        for v in verdicts if not v["passed"]
    ]
    return result, findings


def cmd_corank(cfg):
    alg, J = _target(cfg)
    corank = skew_normal_form(J).zero_rank
    result = {"algebra": alg.describe() if alg else "custom", "corank": corank}
    findings = []
    if alg is not None and alg.kind == "rectangle":
        expected = rectangle_corank_formula(alg.n, alg.r)
        result["formula"] = expected
        if expected != corank:
            findings.append({"claim": "corank = gcd formula", "expected": expected,
                             "actual": corank, "witness": None})
    return result, findings


def cmd_snf(cfg):
    alg, J = _target(cfg)
    snf = skew_normal_form(J)
    result = {
        "algebra": alg.describe() if alg else "custom",
        "size": J.size,
        "divisors": list(snf.divisors),
        "zero_rank": snf.zero_rank,
        "transform": [list(row) for row in snf.transform],
    }
    return result, []


def cmd_minor(cfg):
    alg = _algebra(cfg)
    if cfg.rows is None or cfg.cols is None:
        raise ValueError("minor needs --rows and --cols")
    d = MinorDescriptor(cfg.rows, cfg.cols)
    poly = quantum_minor(d, alg)
    mono, coeff = poly.leading()
    result = {
        "algebra": alg.describe(),
        "minor": d.label(),
        "polynomial": str(poly),
        "terms": len(poly.terms),
        "leading": [g.label() for g, e in zip(alg.generators, mono) for _ in range(e)],
        "leading_coefficient": str(coeff),
    }
    return result, []


def _family_candidates(cfg, alg, m):
    if cfg.family == "za":
        r = cfg.r if cfg.r is not None else cfg.n
        # raises on even quotients
        return [candidate_Za(a, cfg.n, r, m) for a in range(1, gcd(cfg.n, r) + 1)]
    if cfg.family == "d":
        if alg.kind != "square":
            raise ValueError(f"The d family lives on M_q(n), got {alg.describe()}")
        return d_family(cfg.n, m)
    if cfg.family == "chain":
        return candidates_theta_chain(cfg.n, cfg.r if cfg.r is not None else cfg.n, m)
    if cfg.family == "even":
        return candidates_even_m(cfg.n, cfg.r if cfg.r is not None else cfg.n, m)
    if cfg.family == "quarter":
        return [candidate_quarter(cfg.n, cfg.r, m)]
    raise ValueError(f"Unknown family: {cfg.family}. Use: {FAMILIES}")


def cmd_verify(cfg):
    if cfg.family is None:
        raise ValueError(f"verify needs --family. Use: {FAMILIES}")
    alg = _algebra(cfg)
    if cfg.family == "det":
        witness = commutator_witness(quantum_determinant(alg), alg, cfg.m)
        verdicts = [{"candidate": "det_q", "mode": "symbolic", "passed": witness is None,
                     "witness": witness.label() if witness else None,
                     "detail": "generic q" if cfg.m is None else f"mod cyclotomic {cfg.m}"}]
    else:
        m = _need_m(cfg)
        sym_kwargs = {}
        if cfg.guard_symbolic is not None:
            sym_kwargs = {"max_generators": cfg.guard_symbolic, "max_modulus": m}
        verdicts = [
            verify_central_candidate(c, alg, m, cfg.mode, **sym_kwargs).to_dict()
            for c in _family_candidates(cfg, alg, m)
        ]
    findings = [
        {"claim": f"{cfg.family} candidate is central", "expected": True, "actual": False,
         "witness": v["witness"]}
        for v in verdicts if not v["passed"]
    ]
    return {"algebra": alg.describe(), "family": cfg.family, "candidates": verdicts}, findings


def cmd_reproduce(cfg):
    r_values = (cfg.r,) if cfg.r is not None else None
    suites = run_suites(cfg.suite, cfg.max_n, cfg.moduli, r_values)
    findings = [f for s in suites for f in s["findings"]]
    return {"suites": suites}, findings


COMMANDS = {
    "degree": cmd_degree,
    "blocks": cmd_blocks,
    "center": cmd_center,
    "corank": cmd_corank,
    "snf": cmd_snf,
    "minor": cmd_minor,
    "verify": cmd_verify,
    "reproduce": cmd_reproduce,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", choices=list(ALGEBRAS), default=None,
                        help="mq = M_q(n), mqnr = M_q(n,r), anr = A(n,r), snr = S(n,r), custom = --input matrix")
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--r", type=int, default=None)
    common.add_argument("--m", type=int, default=None, help="Root-of-unity order")
    common.add_argument("--input", default=None, help="Matrix file: N, then N rows")
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--unsafe-guard-enum", type=int, default=None, help="Raise the m^N enumeration bound")
    common.add_argument("--unsafe-guard-symbolic", type=int, default=None,
                        help="Allow symbolic checks up to this many generators at any m")

    parser = argparse.ArgumentParser(description="Exact algebra for quantized matrix algebras at roots of unity")
    sub = parser.add_subparsers(dest="command", required=True)
    degree = sub.add_parser("degree", parents=[common], help="Degree via the image of J mod m")
    degree.add_argument("--brute", action="store_true", help="Cross-check h by enumeration")
    sub.add_parser("blocks", parents=[common], help="Block structure of J")
    sub.add_parser("center", parents=[common], help="Kernel mod m and built-in central candidates")
    sub.add_parser("corank", parents=[common], help="Corank of J")
    sub.add_parser("snf", parents=[common], help="Skew normal form of J")
    minor = sub.add_parser("minor", parents=[common], help="Expand a quantum minor")
    minor.add_argument("--rows", type=_int_list, required=True)
    minor.add_argument("--cols", type=_int_list, required=True)
    verify = sub.add_parser("verify", parents=[common], help="Verify a family of central candidates")
    verify.add_argument("--family", choices=FAMILIES, required=True)
    verify.add_argument("--mode", choices=VERIFY_MODES, default="lattice")
    reproduce = sub.add_parser("reproduce", parents=[common], help="Reproduce the closed-form tables")
    reproduce.add_argument("--suite", choices=SUITE_NAMES + ["all"], default="all")
    reproduce.add_argument("--max-n", type=int, default=None)
    reproduce.add_argument("--moduli", type=_int_list, default=None)
    return parser


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        algebra=_infer_algebra(args),
        n=args.n,
        r=args.r,
        m=args.m,
        rows=getattr(args, "rows", None),
        cols=getattr(args, "cols", None),
        input=args.input,
        fmt=args.format,
        family=getattr(args, "family", None),
        mode=getattr(args, "mode", "lattice"),
        suite=getattr(args, "suite", "all"),
        max_n=getattr(args, "max_n", None),
        moduli=getattr(args, "moduli", None),
        brute=getattr(args, "brute", False),
        guard_enum=args.unsafe_guard_enum,
        guard_symbolic=args.unsafe_guard_symbolic,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        result, findings = COMMANDS[cfg.command](cfg)
    except GuardExceededError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(render(cfg.fmt, cfg.command, cfg.to_dict(), result, findings), end="")
    log_run(cfg.command, cfg.to_dict(), f"{len(findings)} findings")
    return EXIT_MISMATCH if findings else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
