"""Command-line entry points: verify, search, reduce, witness and export.

Spec files are flat ``key = value`` text.  A reflection-symmetric family
is given by ``f1 .. h2``; four arbitrary generators use ``gx1``, ``gx2``,
``gz1`` and ``gz2``, each a comma-separated list of three components.
``torus = m,l,q`` lines may carry an expected ``[[n,k,d]]``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bitmatrix import BitMatrix, pack_rows, row_space_contains
from .clifford import DirectSectorError, induced_bb_code
from .commute import (
    NoLocalStabilizersError,
    commutation_matrix,
    det2,
    entry_ideal_is_unit,
    kernel_stabilizers,
    plane_kernel_generator,
)
from .distance import DEFAULT_MAX_SUBSETS, NoLogicalOperatorsError, dressed_distance
from .gf2e import ResourceBoundError, field_ctx, nonlocal_witness
from .laurent import ZERO, LaurentPoly, PolyParseError, parse
from .pauli import GaugeGenerators, GaugeSpec, PauliVec, pauli_weight
from .search import SearchConfig, default_tori, format_summary, kernel_excess, run_search
from .torus import TorusCode, TwistedTorus, polyvec_rows

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_NO_STABILIZERS = 3
EXIT_MISMATCH = 4
EXIT_RESOURCE = 5

TRIPLE_KEYS = ("f1", "g1", "h1", "f2", "g2", "h2")
RAW_KEYS = ("gx1", "gx2", "gz1", "gz2")
_PARAMS_RE = re.compile(r"^\[\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\]$")


class SpecParseError(ValueError):
    """Malformed spec or config file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class TorusEntry:
    torus: TwistedTorus
    expected: tuple[int, int, int] | None = None

    def __str__(self) -> str:
        if self.expected is None:
            return str(self.torus)
        n, k, d = self.expected
        return f"{self.torus} [[{n},{k},{d}]]"


@dataclass
class SpecFile:
    name: str = ""
    triples: dict[str, LaurentPoly] = field(default_factory=dict)
    raw: dict[str, tuple[LaurentPoly, LaurentPoly, LaurentPoly]] = field(default_factory=dict)
    tori: list[TorusEntry] = field(default_factory=list)
    distance_budget: int | None = None
    certified: bool = False
    window: int | None = None
    threads: int | None = None
    first: list[str] = field(default_factory=list)

    @property
    def is_raw(self) -> bool:
        return bool(self.raw)

    @property
    def has_family(self) -> bool:
        return bool(self.triples or self.raw)

    def family(self) -> GaugeSpec | GaugeGenerators:
        if self.raw:
            missing = [k for k in RAW_KEYS if k not in self.raw]
            if missing:
                raise ValueError(f"raw generators missing {', '.join(missing)}")
            gx1, gx2 = (PauliVec(self.raw[k], (ZERO,) * 3) for k in ("gx1", "gx2"))
            gz1, gz2 = (PauliVec((ZERO,) * 3, self.raw[k]) for k in ("gz1", "gz2"))
            return GaugeGenerators(gx1, gx2, gz1, gz2)
        missing = [k for k in TRIPLE_KEYS if k not in self.triples]
        if missing:
            raise ValueError(f"spec missing {', '.join(missing)}")
        t = self.triples
        return GaugeSpec((t["f1"], t["g1"], t["h1"]), (t["f2"], t["g2"], t["h2"]))

    def format(self) -> str:
        """Canonical text; parsing it back and formatting again is the identity."""
        lines = []
        if self.name:
            lines.append(f"name = {self.name}")
        for k in TRIPLE_KEYS:
            if k in self.triples:
                lines.append(f"{k} = {self.triples[k]}")
        for k in RAW_KEYS:
            if k in self.raw:
                lines.append(f"{k} = " + ", ".join(str(p) for p in self.raw[k]))
        for entry in self.tori:
            lines.append(f"torus = {entry}")
        if self.distance_budget is not None:
            lines.append(f"distance_budget = {self.distance_budget}")
        if self.certified:
            lines.append("certified = true")
        if self.window is not None:
            lines.append(f"window = {self.window}")
        if self.threads is not None:
            lines.append(f"threads = {self.threads}")
        for text in self.first:
            lines.append(f"first = {text}")
        return "\n".join(lines) + "\n"


def _parse_poly(text: str, line: int, col: int) -> LaurentPoly:
    try:
        return parse(text)
    except PolyParseError as exc:
        raise SpecParseError(str(exc).split(": ", 1)[-1], line, col + exc.column - 1) from None


def _parse_components(value: str, line: int, col: int) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    parts = value.split(",")
    if len(parts) != 3:
        raise SpecParseError(f"expected three comma-separated components, got {len(parts)}", line, col)
    out = []
    offset = 0
    for part in parts:
        out.append(_parse_poly(part, line, col + offset))
        offset += len(part) + 1
    return out[0], out[1], out[2]


def _parse_torus(value: str, line: int, col: int) -> TorusEntry:
    head, _, tail = value.partition("[[")
    try:
        t = TwistedTorus.parse(head.strip())
    except ValueError as exc:
        raise SpecParseError(str(exc), line, col) from None
    if not tail:
        return TorusEntry(t)
    m = _PARAMS_RE.match("[[" + tail.strip())
    if not m:
        raise SpecParseError("expected parameters as [[n,k,d]]", line, col + len(head))
    return TorusEntry(t, (int(m.group(1)), int(m.group(2)), int(m.group(3))))


def _parse_int(value: str, line: int, col: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise SpecParseError(f"expected an integer, got {value!r}", line, col) from None


def _parse_bool(value: str, line: int, col: int) -> bool:
    low = value.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise SpecParseError(f"expected a boolean, got {value!r}", line, col)


def parse_spec_text(text: str) -> SpecFile:
    spec = SpecFile()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if "=" not in line:
            raise SpecParseError("expected 'key = value'", lineno, len(line) - len(line.lstrip()) + 1)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip().lower()
        value = value_part.strip()
        col = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        if not value:
            raise SpecParseError(f"empty value for {key!r}", lineno, col)
        if key == "name":
            spec.name = value
        elif key in TRIPLE_KEYS:
            spec.triples[key] = _parse_poly(value, lineno, col)
        elif key in RAW_KEYS:
            spec.raw[key] = _parse_components(value, lineno, col)
        elif key == "torus":
            spec.tori.append(_parse_torus(value, lineno, col))
        elif key == "distance_budget":
            spec.distance_budget = _parse_int(value, lineno, col)
        elif key == "certified":
            spec.certified = _parse_bool(value, lineno, col)
        elif key == "window":
            spec.window = _parse_int(value, lineno, col)
        elif key == "threads":
            spec.threads = _parse_int(value, lineno, col)
        elif key == "first":
            _parse_components(value, lineno, col)
            spec.first.append(value)
        else:
            raise SpecParseError(f"unknown key {key!r}", lineno, len(key_part) - len(key_part.lstrip()) + 1)
    if spec.triples and spec.raw:
        raise SpecParseError("use either f1..h2 or gx1..gz2, not both", 1)
    return spec


def load_spec(path: str | Path) -> SpecFile:
    return parse_spec_text(Path(path).read_text())


def bundled_spec_path(name: str) -> Path:
    """Path of a spec shipped with the package, e.g. ``"75_10_5"``."""
    path = Path(__file__).parent / "data" / f"{name}.spec"
    if not path.exists():
        raise FileNotFoundError(f"no bundled spec named {name!r}")
    return path


def bundled_spec_names() -> list[str]:
    return sorted(p.stem for p in (Path(__file__).parent / "data").glob("*.spec"))


# ---------------------------------------------------------------------------
# Pipelines


@dataclass
class CommandResult:
    exit_code: int
    reports: list[dict]
    text: str

    def to_json(self) -> str:
        return json.dumps({"exit_code": self.exit_code, "reports": self.reports}, indent=2, sort_keys=True)


def _label(n: int, k: int, d: int | None) -> str:
    return f"[[{n},{k},{d if d is not None else '?'}]]"


def _tori(spec: SpecFile, override: Sequence[TwistedTorus] | None) -> list[TorusEntry]:
    if override:
        expected = {e.torus: e.expected for e in spec.tori}
        return [TorusEntry(t, expected.get(t)) for t in override]
    return list(spec.tori)


def verify_spec(
    spec: SpecFile,
    tori: Sequence[TwistedTorus] | None = None,
    certified: bool | None = None,
) -> CommandResult:
    """Full pipeline on every torus; the exit code flags expected-value mismatches."""
    family = spec.family()
    M = commutation_matrix(family)
    det = det2(M)
    if det:
        raise NoLocalStabilizersError(f"no local stabilizers: det M = {det} is nonzero")
    stabs = kernel_stabilizers(M, family)
    ideal = entry_ideal_is_unit(M)
    certified = spec.certified if certified is None else certified
    budget = None if certified else spec.distance_budget
    max_subsets = None if certified else DEFAULT_MAX_SUBSETS
    reports = []
    lines = [f"M = {M}", f"det M = {det}", f"entry ideal: {'unit' if ideal.unit else 'proper'} ({ideal.reason})"]
    lines.append(f"S_X = {stabs.sx}  (weight {pauli_weight(stabs.sx)})")
    lines.append(f"S_Z = {stabs.sz}  (weight {pauli_weight(stabs.sz)})")
    code = EXIT_OK
    entries = _tori(spec, tori)
    if not entries:
        raise ValueError("no torus given")
    for entry in entries:
        t = entry.torus
        tc = TorusCode(family, t, stabs)
        counts = tc.counts
        try:
            dd = dressed_distance(tc, max_weight=budget, max_subsets=max_subsets)
            d, dx, dz, cert = dd.d, dd.d_x, dd.d_z, dd.certified
        except NoLogicalOperatorsError:
            d = dx = dz = None
            cert = True
        excess = kernel_excess(M, t)
        rep = {
            "name": spec.name,
            "torus": [t.m, t.ell, t.q],
            "n": counts.n,
            "k": counts.k,
            "d": d,
            "d_x": dx,
            "d_z": dz,
            "certified": cert,
            "counts": counts.as_dict(),
            "bare_logical_dims": list(tc.bare_logical_dims()) if counts.consistent() else None,
            "stabilizers_central": tc.stabilizers_central(),
            "excess": list(excess),
            "entry_ideal_unit": ideal.unit,
            "det": str(det),
            "matrix": [[str(p) for p in row] for row in M.rows],
            "stabilizer_weights": [pauli_weight(stabs.sx), pauli_weight(stabs.sz)],
        }
        status = "ok"
        if entry.expected is not None:
            rep["expected"] = list(entry.expected)
            if (counts.n, counts.k, d) != entry.expected:
                status = "MISMATCH"
                code = EXIT_MISMATCH
        elif d is None and counts.k > 0 and code == EXIT_OK:
            status = "undetermined"
            code = EXIT_RESOURCE
        rep["status"] = status
        reports.append(rep)
        lines.append(f"torus ({t}): {_label(counts.n, counts.k, d)}  excess={excess}  {status}")
    return CommandResult(code, reports, "\n".join(lines) + "\n")


def reduce_spec(spec: SpecFile, tori: Sequence[TwistedTorus] | None = None) -> CommandResult:
    """Clifford-reduce the direct sector and report the induced BB code."""
    family = spec.family()
    if not isinstance(family, GaugeSpec):
        raise DirectSectorError("reduction needs a reflection-symmetric f1..h2 spec")
    entries = _tori(spec, tori) or [None]
    reports = []
    lines = []
    bb = None
    for entry in entries:
        t = entry.torus if entry is not None else None
        bb, params = induced_bb_code(family, t=t, max_weight=spec.distance_budget)
        rep = {"name": spec.name, "bb": bb.as_strings(), "weights": list(bb.weights)}
        if params is not None:
            rep.update(torus=[t.m, t.ell, t.q], n=params.n, k=params.k, d=params.d)
            lines.append(f"torus ({t}): BB {_label(params.n, params.k, params.d)}")
        reports.append(rep)
    assert bb is not None
    head = [f"{k} = {v}" for k, v in bb.as_strings().items()]
    head.append(f"stabilizer weights = {bb.weights[0]}, {bb.weights[1]}")
    return CommandResult(EXIT_OK, reports, "\n".join(head + lines) + "\n")


def bits_to_polys(bits: np.ndarray, t: TwistedTorus, nsub: int) -> list[LaurentPoly]:
    N = t.cells
    out = []
    for s in range(nsub):
        idx = np.flatnonzero(bits[s * N : (s + 1) * N])
        out.append(LaurentPoly((int(c) // t.m, int(c) % t.m) for c in idx))
    return out


def extra_kernel_vector(M, t: TwistedTorus) -> np.ndarray | None:
    """A torus solution of ``M v = 0`` outside the span of the local kernel translates."""
    columns = BitMatrix.vstack([polyvec_rows((M.a, M.c), t), polyvec_rows((M.b, M.d), t)])
    kernel = columns.T.nullspace()
    local = polyvec_rows(plane_kernel_generator(M), t)
    red, piv = local.rref()
    dense = kernel.to_dense()
    inside = row_space_contains(red, piv, pack_rows(dense)) if kernel.rows else np.zeros(0, dtype=bool)
    for row, ok in zip(dense, inside):
        if not ok:
            return row
    return None


def witness_spec(spec: SpecFile) -> CommandResult:
    family = spec.family()
    M = commutation_matrix(family)
    w = nonlocal_witness(M)
    if w is None:
        rep = {"name": spec.name, "unit": True, "witness": None}
        return CommandResult(EXIT_OK, [rep], "entry ideal is the unit ideal: no nonlocal stabilizers on any torus\n")
    t = TwistedTorus(m=w.m, ell=w.n, q=0)
    vec = extra_kernel_vector(M, t)
    polys = bits_to_polys(vec, t, 2) if vec is not None else []
    ctx = field_ctx(w.e)
    rep = {
        "name": spec.name,
        "unit": False,
        "field_degree": w.e,
        "modulus": ctx.modulus,
        "root": list(w.root),
        "torus": [t.m, t.ell, t.q],
        "orders": list(w.torus),
        "excess": w.excess_dim,
        "kernel_vector": [str(p) for p in polys],
    }
    text = (
        f"entry ideal is proper: common zero in GF(2^{w.e}) with orders {w.torus}\n"
        f"torus ({t}) has kernel excess {w.excess_dim}\n"
        f"extra kernel vector: ({', '.join(str(p) for p in polys)})\n"
    )
    return CommandResult(EXIT_OK, [rep], text)


def export_spec(spec: SpecFile, out: str | Path, tori: Sequence[TwistedTorus] | None = None) -> CommandResult:
    """Write the four check matrices of each torus in alist and dense text, plus a JSON report."""
    family = spec.family()
    M = commutation_matrix(family)
    stabs = kernel_stabilizers(M, family)
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    reports = []
    entries = _tori(spec, tori)
    if not entries:
        raise ValueError("no torus given")
    for entry in entries:
        t = entry.torus
        tc = TorusCode(family, t, stabs)
        stem = f"{spec.name or 'code'}_{t.m}_{t.ell}_{t.q}"
        files = {}
        for label, mtx in (("H_GX", tc.h_gx), ("H_GZ", tc.h_gz), ("H_SX", tc.h_sx), ("H_SZ", tc.h_sz)):
            for fmt, ext in (("alist", "alist"), ("text", "txt")):
                path = out / f"{stem}_{label}.{ext}"
                mtx.save(path, fmt)
                files.setdefault(label, []).append(path.name)
        rep = {"name": spec.name, "torus": [t.m, t.ell, t.q], "counts": tc.counts.as_dict(), "files": files}
        (out / f"{stem}_report.json").write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")
        reports.append(rep)
    return CommandResult(EXIT_OK, reports, f"wrote {len(reports) * 9} files to {out}\n")


def search_config(spec: SpecFile, window: int | None = None, tori=None, threads: int | None = None) -> SearchConfig:
    torus_list = tuple(tori) if tori else tuple(e.torus for e in spec.tori) or default_tori()
    kwargs = {}
    if spec.distance_budget is not None:
        kwargs["distance_budget"] = spec.distance_budget
    return SearchConfig(
        window=window if window is not None else (spec.window if spec.window is not None else 3),
        tori=torus_list,
        threads=threads if threads is not None else (spec.threads or 1),
        first_generators=tuple(spec.first),
        **kwargs,
    )


def search_from_config(cfg: SearchConfig) -> CommandResult:
    res = run_search(cfg)
    reports = [r.as_dict() for r in res.reports]
    text = format_summary(res.reports) + json.dumps(res.stats.as_dict(), sort_keys=True) + "\n"
    return CommandResult(EXIT_OK, reports, text)


# ---------------------------------------------------------------------------
# Argument handling


def _torus_arg(text: str) -> TwistedTorus:
    try:
        return TwistedTorus.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sbbcodes", description="Subsystem bivariate bicycle code toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("verify", "run the full pipeline on a spec file"),
        ("reduce", "Clifford-reduce to the induced BB code"),
        ("witness", "decide the entry ideal and find a nonlocal witness"),
        ("export", "write check matrices"),
        ("search", "run the reflection-symmetric search"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file", nargs="?", help="spec or config file (or bundled:<name>)")
        p.add_argument("--torus", action="append", type=_torus_arg, default=[], metavar="m,l,q")
        p.add_argument("--out", metavar="DIR")
        if name in ("verify",):
            p.add_argument("--certified", action="store_true", help="exact distance with no resource cap")
        if name == "search":
            p.add_argument("--window", type=int)
            p.add_argument("--threads", type=int)
    return parser


def _resolve(path: str | None) -> SpecFile:
    if path is None:
        return SpecFile()
    if path.startswith("bundled:"):
        return load_spec(bundled_spec_path(path.split(":", 1)[1]))
    return load_spec(path)


def _dispatch(args) -> CommandResult:
    spec = _resolve(args.file)
    if args.command != "search" and not spec.has_family:
        raise SpecParseError("spec file defines no gauge generators", 1)
    if args.command == "verify":
        return verify_spec(spec, args.torus, True if args.certified else None)
    if args.command == "reduce":
        return reduce_spec(spec, args.torus)
    if args.command == "witness":
        return witness_spec(spec)
    if args.command == "export":
        return export_spec(spec, args.out or ".", args.torus)
    return search_from_config(search_config(spec, args.window, args.torus, args.threads))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = _dispatch(args)
    except (SpecParseError, PolyParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoLocalStabilizersError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_STABILIZERS
    except ResourceBoundError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(result.text)
    if args.out and args.command != "export":
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.command}_report.json").write_text(result.to_json() + "\n")
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
