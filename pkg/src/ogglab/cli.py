"""ogglab command line.

Exit codes: 0 success/certificate, 1 usage, 2 obstruction (or a rejected
certificate), 3 unknown within budget, 4 bad input, 5 missing cache.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from sympy import factor_list, isprime, primerange, symbols, Poly

from . import cache
from .brandt import BrandtModule, BudgetExceeded, eichler_mass
from .curves import BadReduction, WeierstrassCurve, bundled_curve, bundled_curves, detect
from .hecke import (
    VARIANTS,
    build_hecke_algebra,
    discriminant,
    eisenstein_quotient,
    generation_check,
    sturm_bound,
)
from .linalg import IntMatrix, charpoly
from .moduleiso import (
    DEFAULT_BUDGET,
    GeneratorCountMismatch,
    IsoCertificate,
    dual_family,
    family_digest,
    freeness_test,
    module_isomorphism,
    verify_certificate,
)
from .ogg import eisenstein_primes, kernel_report, NEITHER, ogg_report
from .poly import roots_bounded_by

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_OBSTRUCTION = 2
EXIT_UNKNOWN = 3
EXIT_BAD_INPUT = 4
EXIT_NO_CACHE = 5

log = logging.getLogger("ogglab")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    cache_dir: Path
    budget: int = DEFAULT_BUDGET
    sturm_override: int | None = None
    output_format: str = "json"

    def __post_init__(self):
        if self.budget < 1:
            raise UsageError("budget must be >= 1")
        if self.output_format not in ("json", "text"):
            raise UsageError("format must be json or text")

    def bound(self, p: int, q: int) -> int:
        return self.sturm_override or sturm_bound(p, q)


def default_cache_dir() -> Path:
    env = os.environ.get("OGGLAB_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ogglab"


# ---------------------------------------------------------------------------
# helpers


def _pair(p: int, q: int) -> None:
    if not (isprime(p) and isprime(q)) or p == q:
        raise UsageError(f"p and q must be distinct primes (got {p}, {q})")


def get_module(cfg: RunConfig, p: int, q: int, nmax: int) -> BrandtModule:
    """Load (p, q) from the cache or build it; store any newly computed B(n)."""
    path = cache.brandt_path(cfg.cache_dir, p, q)
    B = cache.load_brandt(cfg.cache_dir, p, q) if path.exists() else BrandtModule(p, q)
    before = set(B._hecke)
    for n in range(1, nmax + 1):
        B.brandt_matrix(n)
    if set(B._hecke) != before or not path.exists():
        cache.save_brandt(B, cfg.cache_dir)
    return B


def _family(B: BrandtModule, bound: int) -> dict[int, IntMatrix]:
    return B.hecke_family(bound)


def _poly_text(coeffs) -> str:
    x = symbols("x")
    f = Poly(list(reversed(coeffs)), x)
    _, factors = factor_list(f)
    parts = [f"({g.as_expr()})" + (f"^{e}" if e > 1 else "") for g, e in factors]
    return " ".join(parts) if parts else "1"


def generating_sublist(alg, rank: int, bound: int, limit: int = 5000) -> tuple[int, ...] | None:
    """First r-subset of {1, primes, composites} <= bound spanning T over Z."""
    import itertools

    order = [1] + list(primerange(2, bound + 1))
    order += [n for n in range(4, bound + 1) if n not in order]
    for tries, combo in enumerate(itertools.combinations(order, rank)):
        if tries >= limit or combo[0] != 1:
            break
        if generation_check(alg, combo) == (True, 1):
            return combo
    return None


def _emit(cfg: RunConfig, obj: dict, text: str) -> None:
    if cfg.output_format == "text":
        print(text)
    else:
        sys.stdout.write(cache.dumps(obj))


# ---------------------------------------------------------------------------
# commands


def cmd_brandt(cfg: RunConfig, p: int, q: int, nmax: int | None = None) -> int:
    _pair(p, q)
    bound = cfg.bound(p, q)
    nmax = max(nmax or 0, bound)
    B = get_module(cfg, p, q, nmax)
    mass = B.classes.mass()
    polys, ramanujan = {}, {}
    for n in [1] + list(primerange(2, nmax + 1)):
        cp = charpoly(B.cuspidal_hecke(n)) if B.cuspidal_rank else [1]
        polys[str(n)] = cp
        if n > 1 and (p * q) % n:
            ramanujan[str(n)] = roots_bounded_by(cp, 4 * n)
    obj = {
        "p": p,
        "q": q,
        "algebra": [B.algebra.a, B.algebra.b],
        "classes": B.rank,
        "weights": list(B.weights),
        "mass": str(mass),
        "eichlerMass": str(eichler_mass(p, q)),
        "massOk": mass == eichler_mass(p, q),
        "cuspidalRank": B.cuspidal_rank,
        "sturmBound": bound,
        "nmax": nmax,
        "charpolys": polys,
        "ramanujanBound": ramanujan,
        "cache": str(cache.brandt_path(cfg.cache_dir, p, q)),
    }
    lines = [
        f"Brandt module p = {p}, q = {q}: {B.rank} classes, weights {list(B.weights)}",
        f"mass {mass} (expected {eichler_mass(p, q)}): {'ok' if obj['massOk'] else 'MISMATCH'}",
        f"cuspidal rank {B.cuspidal_rank}, Sturm bound {bound}",
    ]
    for n, cp in polys.items():
        lines.append(f"  charpoly S_{n}: {_poly_text(cp)}")
    _emit(cfg, obj, "\n".join(lines))
    return EXIT_OK


def _hecke_summary(cfg: RunConfig, p: int, q: int):
    bound = cfg.bound(p, q)
    B = get_module(cfg, p, q, bound)
    fam = _family(B, bound)
    alg = build_hecke_algebra(fam, bound, (p, q))
    return B, fam, alg, bound


def cmd_hecke(cfg: RunConfig, p: int, q: int) -> int:
    _pair(p, q)
    B, fam, alg, bound = _hecke_summary(cfg, p, q)
    if B.cuspidal_rank == 0:
        obj = {"p": p, "q": q, "rank": 0, "sturmBound": bound}
        _emit(cfg, obj, f"level {p * q}: cuspidal rank 0, T = 0")
        return EXIT_OK
    gens = generating_sublist(alg, alg.rank, bound)
    eis = [eisenstein_quotient(alg, p, q, "E", bound=bound)]
    for r in eisenstein_primes(p, q):
        for v in VARIANTS[1:]:
            eis.append(eisenstein_quotient(alg, p, q, v, r.ell, bound))
    obj = {
        "p": p,
        "q": q,
        "sturmBound": bound,
        "rank": alg.rank,
        "basis": [m.to_json() for m in alg.basis],
        "discriminant": str(discriminant(alg)),
        "generators": list(gens) if gens else None,
        "eisenstein": [e.to_json() for e in eis],
    }
    cache.atomic_write(cache.hecke_path(cfg.cache_dir, p, q), cache.dumps(obj))
    lines = [f"Hecke algebra at level {p * q}: rank {alg.rank}, discriminant {obj['discriminant']}",
             f"generated over Z by T_n, n in {list(gens) if gens else 'none found'}"]
    for e in eis:
        tag = f" ({e.variant}, l = {e.ell})" if e.ell else ""
        lines.append(f"  T/I{tag}: invariant factors {list(e.invariant_factors)}"
                     + (" = F_l" if e.is_residue_field else ""))
    _emit(cfg, obj, "\n".join(lines))
    return EXIT_OK


def _freeness(fam, alg, gens):
    if alg.rank == 0:
        return {"free": True, "vector": [], "determinant": 1}
    if gens is None:
        return {"free": None, "reason": "no generating sublist found"}
    try:
        res = freeness_test({n: fam[n] for n in gens})
    except GeneratorCountMismatch as e:
        return {"free": None, "reason": str(e)}
    if hasattr(res, "vector"):
        return {"free": True, "vector": list(res.vector), "determinant": res.determinant}
    return {"free": False if res.definitive else None, "obstruction": res.kind, "prime": res.prime}


def certificate_path(cfg: RunConfig, p: int, q: int, dual: bool) -> Path:
    return Path(cfg.cache_dir) / f"cert-{p}-{q}{'-dual' if dual else ''}.json"


def cmd_isocheck(cfg: RunConfig, p: int, q: int, dual: bool = False,
                 generators: tuple[int, ...] | None = None, out: Path | None = None) -> int:
    _pair(p, q)
    bound = cfg.bound(p, q)
    Bp = get_module(cfg, p, q, bound)
    S = _family(Bp, bound)
    if dual:
        Sp, target = dual_family(S), f"dual of M_{p}"
    else:
        Sp, target = _family(get_module(cfg, q, p, bound), bound), f"M_{q}"
    alg = build_hecke_algebra(S, bound, (p, q))
    if generators is None and Bp.cuspidal_rank:
        generators = generating_sublist(alg, alg.rank, bound)
    free = {f"M_{p}": _freeness(S, alg, generators), target: _freeness(Sp, alg, generators)}
    res = module_isomorphism(S, Sp, cfg.budget)
    obj = {"p": p, "q": q, "dual": dual, "bound": bound, "budget": cfg.budget,
           "generators": list(generators) if generators else [], "freeness": free}
    if isinstance(res, IsoCertificate):
        ok = verify_certificate(S, Sp, res, bound)
        cert = {
            "p": p, "q": q, "dual": dual, "bound": bound,
            "witness": res.witness.to_json(), "determinant": res.determinant,
            "sourceDigest": family_digest(S), "targetDigest": family_digest(Sp),
            "generators": list(range(1, bound + 1)),
        }
        path = Path(out) if out else certificate_path(cfg, p, q, dual)
        cache.atomic_write(path, cache.dumps(cert))
        obj.update({"result": "certificate", "determinant": res.determinant,
                    "verified": ok, "certificate": str(path)})
        code = EXIT_OK if ok else EXIT_UNKNOWN
        text = f"M_{p} = {target} as T-modules: certificate det {res.determinant}, written to {path}"
    else:
        obj.update({"result": "obstruction" if res.definitive else "unknown",
                    "kind": res.kind, "prime": res.prime, "evidence": _jsonable(res.evidence)})
        code = EXIT_OBSTRUCTION if res.definitive else EXIT_UNKNOWN
        where = f" at l = {res.prime}" if res.prime else ""
        text = f"M_{p} vs {target}: {res.kind}{where}"
    for name, f in free.items():
        text += f"\n  {name} free: {f.get('free')}" + (f" (v = {f['vector']}, det {f['determinant']})"
                                                     if f.get("vector") is not None else "")
    _emit(cfg, obj, text)
    return code


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


def cmd_ogg(cfg: RunConfig, p: int, q: int) -> int:
    _pair(p, q)
    cert_file = certificate_path(cfg, p, q, False)
    certificate = True if cert_file.exists() else None
    obj = ogg_report(p, q, certificate)
    refs = [label for label, d in bundled_curves().items() if d.get("conductor") == q and d.get("prime") == p]
    obj["bundledCounterexamples"] = refs
    text = obj["report"]
    if refs:
        text += f"\nbundled counterexample candidate(s) at this (p, q): {', '.join(refs)}"
    _emit(cfg, obj, text)
    return EXIT_OK


def _read_curve(source: str) -> WeierstrassCurve:
    if source in bundled_curves():
        return bundled_curve(source)
    path = Path(source)
    if path.exists():
        data = json.loads(path.read_text())
        if isinstance(data, dict):
            data = data.get("coefficients")
        return WeierstrassCurve.from_list(data)
    return WeierstrassCurve.from_list(json.loads(source))


def cmd_detect(cfg: RunConfig, curve: str, p: int, ell: int, irreducible: bool | None = None) -> int:
    if not isprime(p) or not isprime(ell) or p == ell:
        raise UsageError("p and l must be distinct primes")
    try:
        E = _read_curve(curve)
    except (ValueError, TypeError, json.JSONDecodeError) as e:
        log.error("bad curve input: %s", e)
        return EXIT_BAD_INPUT
    try:
        rep = detect(E, p, ell, irreducible)
    except BadReduction as e:
        log.error("bad reduction: %s", e)
        return EXIT_BAD_INPUT
    obj = rep.to_json()
    obj["curve"] = E.to_list()
    _emit(cfg, obj, rep.text())
    return EXIT_OK


def cmd_verify(cfg: RunConfig, cert_file: Path, recompute: bool = False) -> int:
    try:
        cert = json.loads(Path(cert_file).read_text())
        p, q, dual, bound = int(cert["p"]), int(cert["q"]), bool(cert["dual"]), int(cert["bound"])
        X = IntMatrix.from_json(cert["witness"])
        claimed = int(cert["determinant"])
    except (OSError, KeyError, ValueError, TypeError) as e:
        log.error("unreadable certificate: %s", e)
        return EXIT_BAD_INPUT
    needed = [(p, q)] if dual else [(p, q), (q, p)]
    if not recompute:
        missing = [str(cache.brandt_path(cfg.cache_dir, *k)) for k in needed
                   if not cache.brandt_path(cfg.cache_dir, *k).exists()]
        if missing:
            log.error("missing cache: %s", ", ".join(missing))
            return EXIT_NO_CACHE
    try:
        S = _family(get_module(cfg, p, q, bound), bound)
        Sp = dual_family(S) if dual else _family(get_module(cfg, q, p, bound), bound)
    except cache.CacheError as e:
        log.error("cache failed verification: %s", e)
        return EXIT_NO_CACHE
    checks = {
        "determinant": claimed in (1, -1),
        "intertwining": verify_certificate(S, Sp, IsoCertificate(X, claimed), bound),
        "sourceDigest": cert.get("sourceDigest") in (None, family_digest(S)),
        "targetDigest": cert.get("targetDigest") in (None, family_digest(Sp)),
    }
    ok = all(checks.values())
    obj = {"certificate": str(cert_file), "p": p, "q": q, "dual": dual, "bound": bound,
           "checks": checks, "valid": ok}
    text = f"certificate {cert_file}: {'valid' if ok else 'REJECTED'} at bound {bound}" + "".join(
        f"\n  {k}: {v}" for k, v in checks.items())
    _emit(cfg, obj, text)
    return EXIT_OK if ok else EXIT_OBSTRUCTION


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", type=Path, default=None,
                        help="cache directory (default: $OGGLAB_CACHE or ~/.cache/ogglab)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="max coefficient size in certificate searches")
    common.add_argument("--sturm", type=int, default=None, help="override the Sturm bound")
    common.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="ogglab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("brandt", parents=[common], help="Brandt module for (p, q)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--nmax", type=int, default=None)

    s = sub.add_parser("hecke", parents=[common], help="Hecke algebra and Eisenstein quotients")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)

    s = sub.add_parser("isocheck", parents=[common], help="integral isomorphism M_p = M_q")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--dual", action="store_true", help="compare M_p with its dual instead")
    s.add_argument("--generators", type=lambda t: tuple(int(x) for x in t.split(",")), default=None,
                   help="generating sublist for the freeness test, e.g. 1,2,3,5,11")
    s.add_argument("--out", type=Path, default=None, help="certificate output path")

    s = sub.add_parser("ogg", parents=[common], help="Ogg prediction report")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)

    s = sub.add_parser("detect", parents=[common], help="counterexample criteria for a curve")
    s.add_argument("curve", help="bundled label, JSON file, or literal [a1,a2,a3,a4,a6]")
    s.add_argument("p", type=int)
    s.add_argument("ell", type=int)
    s.add_argument("--irreducible", action="store_true", default=None,
                   help="assert that E[l] is irreducible")

    s = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    s.add_argument("certificate", type=Path)
    s.add_argument("--recompute", action="store_true", help="rebuild missing caches")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg = RunConfig(args.cache_dir or default_cache_dir(), args.budget, args.sturm,
                        "text" if args.text else "json")
        if cfg.sturm_override is not None and args.command in ("brandt", "hecke", "isocheck"):
            if cfg.sturm_override < sturm_bound(args.p, args.q):
                raise UsageError("--sturm must not be below the Sturm bound")
        if args.command == "brandt":
            return cmd_brandt(cfg, args.p, args.q, args.nmax)
        if args.command == "hecke":
            return cmd_hecke(cfg, args.p, args.q)
        if args.command == "isocheck":
            return cmd_isocheck(cfg, args.p, args.q, args.dual, args.generators, args.out)
        if args.command == "ogg":
            return cmd_ogg(cfg, args.p, args.q)
        if args.command == "detect":
            return cmd_detect(cfg, args.curve, args.p, args.ell, args.irreducible)
        if args.command == "verify":
            return cmd_verify(cfg, args.certificate, args.recompute)
    except UsageError as e:
        print(f"ogglab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"ogglab: budget exceeded: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    except cache.CacheError as e:
        print(f"ogglab: cache error: {e}", file=sys.stderr)
        return EXIT_NO_CACHE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
