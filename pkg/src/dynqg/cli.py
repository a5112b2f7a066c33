"""Command-line driver: ``dynqg verify`` runs check suites, ``dynqg dump`` writes element dumps."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass, field
from functools import cached_property

from .errors import DynqgError, InvalidSpec, UnsupportedType
from .reports import Report
from .scalars import LambdaParam

SUITES = ("axioms", "twist", "abrr", "duality", "rank", "bd", "all")
DUMPS = ("J", "curlyJ", "R_lambda", "H_structure", "ranks")


@dataclass
class RunSpec:
    command: str
    type: str = "A1"
    ell: int = 3
    Lambda: tuple = ()
    triple: str | None = None
    suite: str = "all"
    seed: int = 0
    out: str | None = None
    threshold: int = 512
    what: str | None = None
    extra: dict = field(default_factory=dict)

    def record(self) -> dict:
        d = asdict(self)
        d["Lambda"] = [str(x) for x in self.Lambda]
        d.pop("extra")
        return d


def parse_lambda(text: str | None, rank: int) -> LambdaParam:
    if text is None:
        return LambdaParam([2] * rank)
    try:
        values = [v.strip() for v in text.split(",") if v.strip()]
        Lambda = LambdaParam(values)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidSpec(f"bad --lambda {text!r}: {exc}", witness=text) from exc
    if len(Lambda) == 1 and rank > 1:
        Lambda = LambdaParam(list(Lambda) * rank)
    if len(Lambda) != rank:
        raise InvalidSpec(f"--lambda needs {rank} values, got {len(Lambda)}", witness=text)
    return Lambda


def parse_triple(text: str, datum, ell: int):
    """'id', 'swap', or a map 'i:j,i:j' from Gamma_1 to Gamma_2 (0-based simple roots)."""
    from .bd import bd_build, triple_preset

    if text in ("id", "swap"):
        return triple_preset(text, datum, ell)
    try:
        pairs = [p.split(":") for p in text.split(",") if p.strip()]
        tmap = {int(a): int(b) for a, b in pairs}
    except ValueError as exc:
        raise InvalidSpec(f"bad --triple {text!r}; use id, swap or i:j,...", witness=text) from exc
    return bd_build(sorted(tmap), sorted(tmap.values()), tmap, datum, ell)


class Instance:
    """Lazily built objects shared by the suites of one run."""

    def __init__(self, spec: RunSpec):
        from .uqg import cartan_datum
        from .scalars import make_field

        self.spec = spec
        make_field(spec.ell)
        self.datum = cartan_datum(spec.type)
        self.Lambda = parse_lambda(spec.extra.get("lambda_text"), self.datum.rank)
        spec.Lambda = tuple(self.Lambda)

    def require_rank_one(self, what: str) -> None:
        if self.datum.rank != 1:
            raise UnsupportedType(f"{what} needs the rank-one quantum group; use --suite bd for {self.datum.type}",
                                  witness=self.datum.type)

    @cached_property
    def U(self):
        from .abrr import check_generic
        from .uqg import build_uq

        self.require_rank_one("this suite")
        U = build_uq(self.datum, self.spec.ell)
        check_generic(U, self.Lambda)
        return U

    @cached_property
    def J(self):
        from .abrr import solve_abrr

        return solve_abrr(self.U, self.Lambda)

    @cached_property
    def curlyJ(self):
        from .abrr import curly_J

        return curly_J(self.J)

    @cached_property
    def twisted(self):
        from .construction import build_HJ

        return build_HJ(self.curlyJ, check=False)

    @cached_property
    def triple(self):
        from .bd import check_bd_generic

        t = parse_triple(self.spec.triple or "id", self.datum, self.spec.ell)
        check_bd_generic(t, self.Lambda)
        return t

    def samples(self, dim: int, count: int = 64) -> list | None:
        """None (full basis) below the threshold, else seeded basis indices."""
        if dim <= self.spec.threshold:
            return None
        rng = random.Random(self.spec.seed)
        return sorted(rng.sample(range(dim), count))


# ----------------------------------------------------------------------
# suites


def suite_abrr(inst: Instance) -> Report:
    from .abrr import closed_form_report, sl2_oracle, verify_dynamical_twist, verify_shifted_twist

    U, J = inst.U, inst.J
    report = Report("abrr")
    bad = next((lam for lam in U.torus.elements if J(lam) != sl2_oracle(U, inst.Lambda, lam)), None)
    report.add("oracle_equivalence", bad is None, bad)
    report.add("zero_weight", all(U.is_zero_weight(J(lam)) for lam in U.torus.elements))
    report.extend(verify_shifted_twist(J, inst.Lambda))
    report.extend(verify_dynamical_twist(inst.curlyJ))
    report.extend(closed_form_report(U, inst.Lambda, J))
    return report


def suite_twist(inst: Instance) -> Report:
    from .twist import check_twisted_counital

    tw = inst.twisted
    report = tw.twist_checks()
    report.extend(tw.lemma_checks())
    report.add("v_formula", tw.v_formula())
    report.extend(check_twisted_counital(tw.H, tw.HJ, tw.pair, instance="H_J"))
    return report


def suite_axioms(inst: Instance) -> Report:
    from .algebroid import algebroid_from_wha
    from .construction import end_A_wha
    from .verify import verify_axioms

    spec = inst.spec
    tw = inst.twisted
    report = verify_axioms(end_A_wha(inst.U.torus), threshold=spec.threshold, seed=spec.seed, instance="End(A)")
    report.extend(verify_axioms(tw.HJ, threshold=spec.threshold, seed=spec.seed, instance="H_J"))
    if tw.HJ.dim <= spec.threshold:
        _, algebroid = algebroid_from_wha(tw.HJ, threshold=spec.threshold, seed=spec.seed)
        report.extend(algebroid)
    return report


def suite_duality(inst: Instance) -> Report:
    from .construction import DualD, duality_checks

    tw = inst.twisted
    return duality_checks(tw, DualD(tw), h_indices=inst.samples(tw.HJ.dim))


def suite_rank(inst: Instance) -> Report:
    from .construction import rank_and_iso, twisted_R

    tw = inst.twisted
    picks = inst.samples(tw.HJ.dim, 16)
    samples = None if picks is None else [tw.HJ.basis_element(i) for i in picks]
    _, report = twisted_R(tw, samples=samples)
    ranks, _ = rank_and_iso(tw)
    return report.extend(ranks)


def suite_bd(inst: Instance) -> Report:
    from .bd import matrix_44_check

    t = inst.triple
    report = Report("bd")
    # the block check only concerns Gamma_1 = Gamma_2 with T an automorphism
    report.add("triple_built", True, None, automorphism=t.is_automorphism, **t.to_record())
    if t.is_automorphism:
        report.extend(matrix_44_check(t, inst.Lambda))
    return report


SUITE_FUNCS = {
    "abrr": suite_abrr,
    "twist": suite_twist,
    "axioms": suite_axioms,
    "duality": suite_duality,
    "rank": suite_rank,
    "bd": suite_bd,
}


def selected_suites(inst: Instance) -> list[str]:
    spec = inst.spec
    if spec.suite != "all":
        return [spec.suite]
    if inst.datum.rank != 1:
        return ["bd"]
    names = ["abrr", "twist", "axioms", "duality", "rank"]
    if spec.triple is not None:
        names.append("bd")
    return names


def cmd_verify(spec: RunSpec) -> tuple[int, dict]:
    inst = Instance(spec)
    names = selected_suites(inst)
    if "bd" not in names or len(names) > 1:
        inst.U  # validates ell, type and genericity before any suite runs
    if "bd" in names:
        inst.triple
    records = []
    for name in names:
        try:
            report = SUITE_FUNCS[name](inst)
        except InvalidSpec:
            raise
        except DynqgError as exc:
            report = Report(name)
            report.add(type(exc).__name__, False, getattr(exc, "witness", None), message=str(exc))
        for r in report.to_records():
            records.append({"suite": name, **r})
    failed = [r for r in records if r["status"] != "pass"]
    doc = {
        "command": "verify",
        "spec": spec.record(),
        "suites": names,
        "checks": records,
        "summary": {"total": len(records), "passed": len(records) - len(failed), "failed": len(failed)},
    }
    return (1 if failed else 0), doc


# ----------------------------------------------------------------------
# dumps


def _h_tensor_record(H, x) -> dict:
    return {
        "terms": [
            {"slots": [repr(H.labels[k]) for k in key], "coeff": v.to_record()}
            for key, v in sorted(x.terms.items())
        ]
    }


def dump_J(inst: Instance) -> dict:
    if inst.datum.rank != 1:
        from .bd import degree_one_solve, z_tensor

        t = inst.triple
        tables = []
        for lam in t.T_L.elements:
            solved = degree_one_solve(t, inst.Lambda, lam)
            tables.append({"lambda": list(lam),
                           "b": [{"i": i, "j": j, "tensor": v.to_record()} for (i, j), v in sorted(solved.items())]})
        return {"triple": t.to_record(), "Z": z_tensor(t).to_record(), "b_ij": tables}
    return inst.J.to_record()


def dump_curlyJ(inst: Instance) -> dict:
    return inst.curlyJ.to_record()


def dump_R(inst: Instance) -> dict:
    tw = inst.twisted
    qt = tw.twisted_R()
    return {"R": _h_tensor_record(tw.H, qt.R), "R_bar": _h_tensor_record(tw.H, qt.R_bar)}


def dump_H(inst: Instance) -> dict:
    HJ = inst.twisted.HJ
    rows = []
    for i in range(HJ.dim):
        rows.append({
            "label": repr(HJ.labels[i]),
            "counit": HJ.counit_basis(i).to_record(),
            "comul": [{"slots": [repr(HJ.labels[a]), repr(HJ.labels[b])], "coeff": v.to_record()}
                      for (a, b), v in sorted(HJ.comul_basis(i).items())],
            "antipode": [{"label": repr(HJ.labels[k]), "coeff": v.to_record()}
                         for k, v in sorted(HJ.antipode_basis(i).items())],
        })
    unit = [{"label": repr(HJ.labels[k]), "coeff": v.to_record()} for k, v in sorted(HJ.unit_terms.items())]
    return {"name": HJ.name, "dim": HJ.dim, "unit": unit, "basis": rows}


def dump_ranks(inst: Instance) -> dict:
    tw = inst.twisted
    expected = inst.U.dim // inst.U.torus.size
    rows = [
        {"instance": f"{inst.spec.type}_ell{inst.spec.ell}", "lambda": list(lam), "mu": list(mu), "nu": list(nu),
         "rank": r, "expected": expected, "status": "pass" if r == expected else "fail"}
        for lam, mu, nu, r in tw.r_blocks()
    ]
    return {"ranks": rows}


DUMP_FUNCS = {"J": dump_J, "curlyJ": dump_curlyJ, "R_lambda": dump_R, "H_structure": dump_H, "ranks": dump_ranks}


def cmd_dump(spec: RunSpec) -> tuple[int, dict]:
    inst = Instance(spec)
    if spec.what != "J" or inst.datum.rank == 1:
        inst.U
    payload = DUMP_FUNCS[spec.what](inst)
    return 0, {"command": "dump", "what": spec.what, "spec": spec.record(), "data": payload}


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynqg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", default="A1", help="Cartan type, e.g. A1, A2")
        p.add_argument("--ell", type=int, default=3, help="odd order of the root of unity")
        p.add_argument("--lambda", dest="lambda_text", default=None, help="Lambda values r[,r...] (default 2)")
        p.add_argument("--triple", default=None, help='"id", "swap" or a map i:j,...')
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write the JSON document here instead of stdout")
        p.add_argument("--threshold", type=int, default=512, help="full-basis checks up to this dimension")

    verify = sub.add_parser("verify", help="run verification suites")
    common(verify)
    verify.add_argument("--suite", choices=SUITES, default="all")
    dump = sub.add_parser("dump", help="dump elements and tables")
    dump.add_argument("what", choices=DUMPS)
    common(dump)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = RunSpec(
        command=args.command,
        type=args.type,
        ell=args.ell,
        triple=args.triple,
        suite=getattr(args, "suite", "all"),
        seed=args.seed,
        out=args.out,
        threshold=args.threshold,
        what=getattr(args, "what", None),
        extra={"lambda_text": args.lambda_text},
    )
    try:
        code, doc = cmd_verify(spec) if spec.command == "verify" else cmd_dump(spec)
    except InvalidSpec as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "witness": repr(exc.witness)}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2
    text = json.dumps(doc, indent=1, sort_keys=True, default=str)
    if spec.out:
        with open(spec.out, "w") as fh:
            fh.write(text + "\n")
        if spec.command == "verify":
            s = doc["summary"]
            print(f"{s['passed']}/{s['total']} checks passed -> {spec.out}")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
