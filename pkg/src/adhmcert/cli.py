"""Command-line front end.

Exit codes: 0 pass, 1 check failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

from .adhm import (
    AdhmDatum,
    DatumFormatError,
    ExtendedDatum,
    StructureKind,
    autodual_compatibility,
    classify_structure,
    datum_to_dict,
    failed_relations,
    load_datum,
    mu,
)
from .certify import (
    CERTIFICATES,
    UnsupportedDimension,
    certify_charge1_example,
    moduli_dimension,
    render_certificate,
    run_certificate,
    search_witness,
)
from .groebner import DEFAULT_CONFIG, GroebnerConfig, ResourceCapExceeded
from .polyring import chern_series
from .regularity import global_regularity

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
DEFAULT_SEED = 0


@dataclass
class VerifyReport:
    path: str
    checks: List[dict] = field(default_factory=list)
    regularity: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return all(c["ok"] for c in self.checks)

    @property
    def first_failure(self) -> Optional[str]:
        return next((c["name"] for c in self.checks if not c["ok"]), None)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append({"name": name, "ok": bool(ok), "detail": detail})
        return ok

    def to_dict(self) -> dict:
        return {
            "file": self.path,
            "verdict": "pass" if self.passed else "fail",
            "first_failure": self.first_failure,
            "checks": self.checks,
            "regularity": self.regularity,
        }

    def render(self) -> str:
        lines = [f"verify {self.path}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok ' if c['ok'] else 'BAD'}] {c['name']}" + (f"  ({c['detail']})" if c["detail"] else ""))
        if not self.passed:
            lines.append(f"  first failing check: {self.first_failure}")
        return "\n".join(lines)


def verify(obj, kind: Optional[str], regularity: bool, config: GroebnerConfig, path: str = "<datum>") -> VerifyReport:
    """Run the verification pipeline, stopping at the first failing check."""
    ext = obj if isinstance(obj, ExtendedDatum) else None
    d: AdhmDatum = ext.datum if ext else obj
    rep = VerifyReport(path)
    rep.add("dimensions", True, f"n={d.n} r={d.r} c={d.c}")
    if d.is_symbolic():
        rep.add("numeric entries", False, "datum has symbolic parameters")
        return rep
    if not rep.add("mu = [A,B] + IJ = 0", mu(d).is_zero()):
        return rep
    if kind is not None and ext is None:
        rep.add("structure", False, "--kind needs G and H in the datum file")
        return rep
    if ext is not None:
        failed = failed_relations(ext)
        for name in failed[:1]:
            rep.add(name, False, "duality relation violated")
            return rep
        rep.add("duality relations", True)
        if not rep.add("GIH^-1 + G^vee I (H^vee)^-1 = 0", autodual_compatibility(ext)):
            return rep
        found = classify_structure(ext)
        if kind is not None:
            want = StructureKind(kind)
            if want is StructureKind.ORTHOGONAL and d.c % 2:
                rep.add("parity", False, "orthogonal data need even c (G antisymmetric and invertible)")
                return rep
            if want is StructureKind.SYMPLECTIC and d.r % 2:
                rep.add("parity", False, "symplectic data need even r (H antisymmetric and invertible)")
                return rep
            ok = want is StructureKind.AUTODUAL or found is want
            if not rep.add(f"structure is {want.value}", ok, f"found {found.value}"):
                return rep
            if want is StructureKind.SYMPLECTIC:
                sym = ext.G.is_symmetric() and ext.H.is_antisymmetric()
                if not rep.add("G symmetric, H antisymmetric", sym):
                    return rep
            if want is StructureKind.ORTHOGONAL:
                sym = ext.G.is_antisymmetric() and ext.H.is_symmetric()
                if not rep.add("G antisymmetric, H symmetric", sym):
                    return rep
    if regularity:
        report = global_regularity(d, config)
        rep.regularity = report.to_dict()
        detail = "" if report.regular else f"witness {report.to_dict()['failure_witness']} ({report.witness_side})"
        rep.add("global regularity", report.regular, detail)
    return rep


# -- commands ------------------------------------------------------------------------------


def _config(args) -> GroebnerConfig:
    return GroebnerConfig(max_basis=args.max_basis, max_terms=args.max_terms)


def cmd_verify(args) -> int:
    try:
        obj = load_datum(args.file)
    except (DatumFormatError, OSError, TypeError, AttributeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep = verify(obj, args.kind, args.regularity == "on", _config(args), args.file)
    print(json.dumps(rep.to_dict(), indent=2) if args.json else rep.render())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _run_one(cid: str, max_basis: int, max_terms: int):
    kw = {}
    if cid in ("rank2-charge2", "appendix-a", "appendix-b"):
        kw["config"] = GroebnerConfig(max_basis=max_basis, max_terms=max_terms)
    try:
        return run_certificate(cid, **kw).to_dict(), None
    except ResourceCapExceeded as exc:
        return None, str(exc)


def cmd_certify(args) -> int:
    ids = sorted(CERTIFICATES) if args.id == "all" else [args.id]
    if args.id != "all" and args.id not in CERTIFICATES:
        print(f"unknown certificate {args.id!r}; choose from {', '.join(sorted(CERTIFICATES))} or all", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, ids, [args.max_basis] * len(ids), [args.max_terms] * len(ids)))
    else:
        results = [_run_one(cid, args.max_basis, args.max_terms) for cid in ids]
    capped = [cid for cid, (_, err) in zip(ids, results) if err]
    docs = [doc for doc, _ in results if doc]
    if args.json:
        print(json.dumps({"certificates": docs, "resource_cap": capped}, indent=2))
    else:
        for doc in docs:
            print(render_certificate(doc))
        for cid in capped:
            print(f"certificate {cid}: RESOURCE CAP")
    if capped:
        return EXIT_CAP
    return EXIT_PASS if all(doc["verdict"] == "pass" for doc in docs) else EXIT_FAIL


def cmd_chern(args) -> int:
    try:
        print(chern_series(args.charge, args.cap))
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_PASS


def cmd_dimension(args) -> int:
    try:
        print(moduli_dimension(args.kind, args.space, args.rank, args.charge))
    except (UnsupportedDimension, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_PASS


def cmd_example(args) -> int:
    try:
        cert = certify_charge1_example(args.n)
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(cert.to_dict(), indent=2))
    else:
        print(cert.render())
        print(f"{cert.verdict}, rank {2 * args.n} charge 1")
    return EXIT_PASS if cert.passed else EXIT_FAIL


def cmd_search(args) -> int:
    print(f"seed {args.seed}", file=sys.stderr)
    stats = {}
    try:
        found = search_witness(args.shape, args.bound, args.seed, args.attempts, _config(args), stats)
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    if found is None:
        print(f"no witness within bound {args.bound} ({stats}); this is not a disproof")
        return EXIT_FAIL
    doc = json.dumps(datum_to_dict(found), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc + "\n")
        print(f"witness written to {args.out}")
    else:
        print(doc)
    return EXIT_PASS


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adhmcert", description="Exact checks for autodual ADHM data.")
    p.add_argument("--max-basis", type=int, default=DEFAULT_CONFIG.max_basis,
                   help=f"Groebner basis size cap (default {DEFAULT_CONFIG.max_basis})")
    p.add_argument("--max-terms", type=int, default=DEFAULT_CONFIG.max_terms,
                   help=f"term count cap during reduction (default {DEFAULT_CONFIG.max_terms})")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify a datum file")
    v.add_argument("file")
    v.add_argument("--kind", choices=[k.value for k in StructureKind])
    v.add_argument("--regularity", choices=["on", "off"], default="on")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("certify", help="run a certificate")
    c.add_argument("id", help=f"one of {', '.join(sorted(CERTIFICATES))} or all")
    c.add_argument("--json", action="store_true")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_certify)

    ch = sub.add_parser("chern", help="total Chern class series")
    ch.add_argument("--charge", type=int, required=True)
    ch.add_argument("--cap", type=int, required=True)
    ch.set_defaults(func=cmd_chern)

    d = sub.add_parser("dimension", help="moduli dimension formula")
    d.add_argument("--kind", choices=["symplectic", "orthogonal"], required=True)
    d.add_argument("--space", required=True, help="p2, p3, ...")
    d.add_argument("--rank", type=int, required=True)
    d.add_argument("--charge", type=int, required=True)
    d.set_defaults(func=cmd_dimension)

    e = sub.add_parser("example", help="worked examples")
    e.add_argument("name", choices=["charge1"])
    e.add_argument("--n", type=int, default=2)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_example)

    s = sub.add_parser("search", help="bounded witness search")
    s.add_argument("--shape", required=True, choices=["p2-charge4", "p3-rank4-charge2"])
    s.add_argument("--bound", type=int, default=2)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--attempts", type=int, default=200)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
