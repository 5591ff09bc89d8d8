"""Command-line front end.

Subcommands: ``verify``, ``scan``, ``census``, ``export``, ``examples``.
JSON is the source of truth; ``text`` output is rendered from the same
payload.  Exit codes: 0 all confirmed/vacuous, 1 refutation or fixture
mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from ofz import lab
from ofz.census import census_report, cycle_to_json, union_cycles
from ofz.errors import OFZError
from ofz.factorization import (
    factor_pair_dot,
    factorization_from_starter,
    factorization_to_json,
)
from ofz.field import make_field, primes_upto, qr_generator
from ofz.starters import negate_starter, starter_for

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2
FIXTURE_FILE = "worked_examples.json"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: Optional[int] = None
    q_range: Optional[tuple[int, int]] = None
    beta: Optional[int] = None
    k: int = 4
    claims: tuple = ()
    construction: str = "horton"
    fmt: str = "json"
    out: Optional[str] = None
    jobs: Optional[int] = None
    include_mod3: bool = False
    cross: bool = False

    def validate(self):
        if self.k < 2:
            raise UsageError("--k must be at least 2")
        if self.q_range is not None:
            a, b = self.q_range
            if a <= 0 or b <= 0 or a > b:
                raise UsageError("--q-range endpoints must be positive and ordered")
        if self.command in ("verify", "census", "export") and self.q is None:
            raise UsageError(f"{self.command} needs --q")
        if self.jobs is not None and self.jobs < 1:
            raise UsageError("--jobs must be positive")


def parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _claims(text: Optional[str]) -> tuple:
    if not text:
        return ()
    return tuple(c.strip() for c in text.split(",") if c.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ofz", description="Starter one-factorizations and their 4-cycle census.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "text")):
        sp.add_argument("--format", dest="fmt", choices=formats, default="json")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("verify", help="check one claim at one q")
    sp.add_argument("--claim", required=True)
    sp.add_argument("--q", type=int)
    sp.add_argument("--beta", type=int)
    common(sp)

    sp = sub.add_parser("scan", help="check claims over a range of q")
    sp.add_argument("--q-range", type=parse_range, default=(11, 500))
    sp.add_argument("--claim", help="comma-separated claim ids (default: all field-level claims)")
    sp.add_argument("--include-mod3", action="store_true",
                    help="also scan primes q = 7 (mod 12), where beta^2 - beta + 1 has roots")
    sp.add_argument("--jobs", type=int)
    common(sp)

    for name, formats in (("census", ("json", "dot", "text")), ("export", ("json", "dot"))):
        sp = sub.add_parser(name)
        sp.add_argument("--q", type=int)
        sp.add_argument("--beta", type=int)
        sp.add_argument("--construction", choices=("horton", "mullin-nemeth"), default="horton")
        if name == "census":
            sp.add_argument("--k", type=int, default=4)
            sp.add_argument("--cross", action="store_true",
                            help="census the cross pairs against the negated starter")
        common(sp, formats)

    sp = sub.add_parser("examples", help="reproduce the embedded worked examples")
    common(sp)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    claims = _claims(getattr(ns, "claim", None))
    return RunConfig(
        command=ns.command,
        q=getattr(ns, "q", None),
        q_range=getattr(ns, "q_range", None),
        beta=getattr(ns, "beta", None),
        k=getattr(ns, "k", 4),
        claims=claims,
        construction=getattr(ns, "construction", "horton"),
        fmt=ns.fmt,
        out=ns.out,
        jobs=getattr(ns, "jobs", None),
        include_mod3=getattr(ns, "include_mod3", False),
        cross=getattr(ns, "cross", False),
    )


# -- output ---------------------------------------------------------------------

def dumps(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def write_output(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _verdict_text(r: dict) -> str:
    lines = [f"{r['claim']} q={r['q']}: {r['verdict']}"]
    if r["witnesses"].get("beta"):
        lines.append(f"  witness beta: {r['witnesses']['beta']}")
    if r["counterexamples"]:
        lines.append(f"  counterexamples: {len(r['counterexamples'])} (first: {json.dumps(r['counterexamples'][0])})")
    lines.extend(f"  note: {n}" for n in r["notes"])
    return "\n".join(lines) + "\n"


# -- subcommands ----------------------------------------------------------------

def cmd_verify(cfg: RunConfig):
    if len(cfg.claims) != 1:
        raise UsageError("verify takes exactly one --claim")
    claim = cfg.claims[0]
    if cfg.beta is None and claim not in lab.FIELD_CLAIMS:
        hint = " (needs --beta)" if claim in lab.BETA_CLAIMS else ""
        raise UsageError(f"unknown field-level claim {claim!r}{hint}")
    if cfg.beta is not None and claim not in lab.BETA_CLAIMS:
        raise UsageError(f"claim {claim!r} does not take --beta; choose from {sorted(lab.BETA_CLAIMS)}")
    report = lab.run_claim(claim, cfg.q, cfg.beta).to_json()
    text = _verdict_text(report) if cfg.fmt == "text" else dumps(report)
    return text, EXIT_REFUTED if report["verdict"] == lab.REFUTED else EXIT_OK


def scan_qs(lo: int, hi: int, include_mod3: bool = False) -> list[int]:
    return [q for q in primes_upto(hi) if q >= max(lo, 5) and (q % 24 == 11 or (include_mod3 and q % 12 == 7))]


def _scan_task(args):
    claim, q = args
    return lab.run_claim(claim, q).to_json()


def scan(q_range: tuple[int, int], claims=(), include_mod3=False, jobs: Optional[int] = None) -> dict:
    claims = tuple(claims) or tuple(lab.FIELD_CLAIMS)
    unknown = [c for c in claims if c not in lab.FIELD_CLAIMS]
    if unknown:
        raise UsageError(f"unknown claims for scan: {unknown}")
    qs = scan_qs(*q_range, include_mod3)
    tasks = [(c, q) for q in qs for c in claims]
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            results = list(pool.map(_scan_task, tasks))
    else:
        results = [_scan_task(t) for t in tasks]
    # map() keeps task order, so the report is independent of scheduling
    table = {str(q): {} for q in qs}
    for r in results:
        table[str(r["q"])][r["claim"]] = r["verdict"]
    return {"q_range": list(q_range), "claims": list(claims), "qs": qs, "table": table, "reports": results}


def cmd_scan(cfg: RunConfig):
    payload = scan(cfg.q_range, cfg.claims, cfg.include_mod3, cfg.jobs)
    refuted = any(r["verdict"] == lab.REFUTED for r in payload["reports"])
    if cfg.fmt == "text":
        claims = payload["claims"]
        rows = ["q".rjust(5) + "".join(c.rjust(18) for c in claims)]
        for q in payload["qs"]:
            rows.append(str(q).rjust(5) + "".join(payload["table"][str(q)][c].rjust(18) for c in claims))
        text = "\n".join(rows) + "\n"
    else:
        text = dumps(payload)
    return text, EXIT_REFUTED if refuted else EXIT_OK


def _factorizations(cfg: RunConfig):
    f = make_field(cfg.q)
    if cfg.construction == "horton" and cfg.beta is None:
        raise UsageError("the horton construction needs --beta")
    s = starter_for(f, cfg.construction, cfg.beta)
    return f, s, factorization_from_starter(s)


def cmd_census(cfg: RunConfig):
    f, s, F = _factorizations(cfg)
    i = qr_generator(f).value
    G = factorization_from_starter(negate_starter(s)) if cfg.cross else None
    if cfg.fmt == "dot":
        other = G[i] if G is not None else F[i]
        return factor_pair_dot(F[0], other, name=f"q{f.q}_0_{i}"), EXIT_OK
    report = census_report(F, cfg.k, beta=cfg.beta, other=G).to_json()
    other = G[i] if G is not None else F[i]
    rep = union_cycles(F[0], other)
    report["representative"] = {"pair": [0, i], "cycles": [cycle_to_json(c) for c in rep.cycles]}
    if cfg.fmt == "text":
        cls = report["classification"]
        text = (f"q={f.q} starters={report['starters']} k={cfg.k}\n"
                f"  structures: {report['structures']}\n"
                f"  l: {cls['l'] if cls['l'] is not None else 'not constant'} "
                f"over {cls['pairs_checked']} pairs\n")
        return text, EXIT_OK
    return dumps(report), EXIT_OK


def cmd_export(cfg: RunConfig):
    f, s, F = _factorizations(cfg)
    if cfg.fmt == "dot":
        return factor_pair_dot(F[0], F[1], name=f"q{f.q}_0_1"), EXIT_OK
    return dumps(factorization_to_json(F)), EXIT_OK


def load_fixtures() -> dict:
    seed_dir = os.environ.get("OFZ_SEED_DIR")
    if seed_dir:
        return json.loads((Path(seed_dir) / FIXTURE_FILE).read_text())
    return json.loads(resources.files("ofz.fixtures").joinpath(FIXTURE_FILE).read_text())


def compute_example(fx: dict) -> dict:
    """Recompute every quantity a fixture records, from scratch."""
    q, b = fx["q"], fx["beta"]
    f = make_field(q)
    i = qr_generator(f).value
    F = lab.horton_factorization(q, b)
    a, c = fx["pair"]
    fours = union_cycles(F[a], F[c]).k_cycles(4)
    out = {
        "q": q,
        "beta": b,
        "primitive_root": f.primitive_root.value,
        "qr_generator": i,
        "pair": [a, c],
        "four_cycle_vertices": [cycle_to_json(sorted(cyc)) for cyc in fours],
        "l": lab.classify_l_ck(F, 4).l,
    }
    if "non_residues" in fx:
        out["non_residues"] = list(f.non_residues())
    if "beta_is_quadratic_root" in fx:
        out["beta_is_quadratic_root"] = (b * b - b + 1) % q == 0
    if "beta_minus_1" in fx:
        out["beta_minus_1"] = str(f.residue_class(b - 1))
        out["beta_sq_plus_1"] = str(f.residue_class(b * b + 1))
    if "a" in fx:
        out["a"] = fx["a"]
        out["a_relation_holds"] = (2 * i - fx["a"] * (b + 1)) % q == 0 and f.is_qr(fx["a"])
    return out


def check_example(fx: dict) -> dict:
    got = compute_example(fx)
    mismatches = []
    for key, want in fx.items():
        if key in ("name", "a_relation"):
            continue
        if key == "four_cycle_vertices":
            if len(got[key]) != 1 or got[key][0] != want:
                mismatches.append({"field": key, "expected": [want], "computed": got[key]})
        elif got.get(key) != want:
            mismatches.append({"field": key, "expected": want, "computed": got.get(key)})
    if "a" in fx and not got["a_relation_holds"]:
        mismatches.append({"field": "a_relation", "expected": fx["a_relation"], "computed": False})
    return {"name": fx["name"], "reproduced": not mismatches, "mismatches": mismatches, "computed": got}


def cmd_examples(cfg: RunConfig):
    results = [check_example(fx) for fx in load_fixtures()["examples"]]
    ok = all(r["reproduced"] for r in results)
    if cfg.fmt == "text":
        text = "".join(f"{r['name']}: {'reproduced' if r['reproduced'] else 'MISMATCH'}\n" for r in results)
    else:
        text = dumps({"examples": results, "all_reproduced": ok})
    return text, EXIT_OK if ok else EXIT_REFUTED


COMMANDS = {
    "verify": cmd_verify,
    "scan": cmd_scan,
    "census": cmd_census,
    "export": cmd_export,
    "examples": cmd_examples,
}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        text, code = COMMANDS[cfg.command](cfg)
    except (UsageError, OFZError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"ofz {cfg.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    write_output(text, cfg.out)
    return code


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
