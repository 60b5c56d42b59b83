"""Bundled classification tables and their batch verification.

Data files are tab-separated, one entry per line; rationals are rendered
p/q, matrices row-major with ';' between rows and ',' between entries.
The files transcribe the printed tables verbatim; the few printed values
that are internally inconsistent are kept as printed and repaired through
the errata list, which the loader applies (keeping the printed original
available) and every verifier reports explicitly.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .lattice import LatticeForm, NotInLattice, parse_form

Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]


def _parse_vec(s: str) -> Vec:
    return tuple(Fraction(x) for x in s.split(","))


def _parse_mat(s: str) -> Mat:
    return tuple(tuple(Fraction(x) for x in r.split(",")) for r in s.split(";"))


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_vec(v: Vec) -> str:
    return ",".join(_fmt_frac(x) for x in v)


def _fmt_mat(m: Mat) -> str:
    return ";".join(",".join(_fmt_frac(x) for x in r) for r in m)


@dataclass(frozen=True)
class Table4Entry:
    n: int
    d: int
    eta: int
    h: int
    form_text: str
    rho: Vec
    rho2: int
    gamma_plus: Mat
    gram_plus: Mat
    gamma_minus: Mat | None
    gram_minus: Mat | None
    generators: tuple[tuple[str, Mat], ...]

    @property
    def form(self) -> LatticeForm:
        return parse_form(self.form_text)

    def as_line(self) -> str:
        gens = "|".join(f"{k}:{_fmt_mat(m)}" for k, m in self.generators) or "-"
        return "\t".join([
            str(self.n), str(self.d), str(self.eta), str(self.h), self.form_text,
            _fmt_vec(self.rho), str(self.rho2), _fmt_mat(self.gamma_plus),
            _fmt_mat(self.gram_plus),
            _fmt_mat(self.gamma_minus) if self.gamma_minus else "-",
            _fmt_mat(self.gram_minus) if self.gram_minus else "-",
            gens])


@dataclass(frozen=True)
class Table5Entry:
    n: int
    d: int
    eta: int
    h: int
    form_text: str
    equiv: tuple[int, int, int, str] | None
    rho: Vec | None
    rho2: int | None
    gamma_plus: Mat | None
    gram_plus: Mat | None
    generators: tuple[tuple[str, Mat], ...]

    @property
    def form(self) -> LatticeForm:
        return parse_form(self.form_text)

    @property
    def equivariantly_equivalent(self) -> bool:
        return self.equiv is not None

    def as_line(self) -> str:
        eq = "-"
        if self.equiv:
            d, eta, h, f = self.equiv
            eq = f"{d},{eta},{h},{f}"
        gens = "|".join(f"{k}:{_fmt_mat(m)}" for k, m in self.generators) or "-"
        return "\t".join([
            str(self.n), str(self.d), str(self.eta), str(self.h), self.form_text, eq,
            _fmt_vec(self.rho) if self.rho else "-",
            str(self.rho2) if self.rho2 is not None else "-",
            _fmt_mat(self.gamma_plus) if self.gamma_plus else "-",
            _fmt_mat(self.gram_plus) if self.gram_plus else "-",
            gens])


@dataclass(frozen=True)
class Table6Entry:
    n: int
    d: int
    eta: int
    h: int
    form_text: str | None
    verdict: str  # "hr" | "nr"

    @property
    def form(self) -> LatticeForm | None:
        return parse_form(self.form_text) if self.form_text else None

    def as_line(self) -> str:
        return "\t".join([str(self.n), str(self.d), str(self.eta), str(self.h),
                          self.form_text or "-", self.verdict])


@dataclass(frozen=True)
class Table7Entry:
    n: int
    d: int
    eta: int
    h: int
    tags: tuple[str, ...]

    def as_line(self) -> str:
        return "\t".join([str(self.n), str(self.d), str(self.eta), str(self.h),
                          ",".join(self.tags) if self.tags else "-"])


@dataclass(frozen=True)
class Erratum:
    table: str
    entry: int
    kind: str
    printed: str
    corrected: str
    note: str


@dataclass
class Tables:
    table4: list[Table4Entry]
    table5: list[Table5Entry]
    table6: list[Table6Entry]
    table7: list[Table7Entry]
    errata: list[Erratum]
    printed: dict[tuple[str, int], object] = field(default_factory=dict)

    def table7_h0(self) -> list[Table7Entry]:
        return [e for e in self.table7 if e.h == 0]

    def table7_h2(self) -> list[Table7Entry]:
        return [e for e in self.table7 if e.h == 2]


def _data_path(name: str) -> Path:
    return Path(str(importlib.resources.files("hyplat") / "data" / name))


def _read_lines(path: Path) -> list[str]:
    return [ln for ln in path.read_text().splitlines()
            if ln and not ln.startswith("#")]


class TableParseError(ValueError):
    def __init__(self, path: str, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")


def load_tables(data_dir: str | Path | None = None) -> Tables:
    """Load and errata-correct the four bundled tables."""
    base = Path(data_dir) if data_dir else _data_path(".").parent / "data"

    def gens_of(fieldval: str) -> tuple[tuple[str, Mat], ...]:
        if fieldval in ("-", ""):
            return ()
        out = []
        for part in fieldval.split("|"):
            kind, mat = part.split(":", 1)
            out.append((kind, _parse_mat(mat)))
        return tuple(out)

    t4: list[Table4Entry] = []
    path = base / "table4.txt"
    for i, ln in enumerate(_read_lines(path), start=1):
        f = ln.split("\t")
        if len(f) != 12:
            raise TableParseError(str(path), i, f"expected 12 fields, got {len(f)}")
        try:
            t4.append(Table4Entry(
                n=int(f[0]), d=int(f[1]), eta=int(f[2]), h=int(f[3]),
                form_text=f[4], rho=_parse_vec(f[5]), rho2=int(f[6]),
                gamma_plus=_parse_mat(f[7]), gram_plus=_parse_mat(f[8]),
                gamma_minus=_parse_mat(f[9]) if f[9] != "-" else None,
                gram_minus=_parse_mat(f[10]) if f[10] != "-" else None,
                generators=gens_of(f[11])))
        except (ValueError, IndexError) as e:
            raise TableParseError(str(path), i, str(e)) from e

    t5: list[Table5Entry] = []
    path = base / "table5.txt"
    for i, ln in enumerate(_read_lines(path), start=1):
        f = ln.split("\t")
        if len(f) != 11:
            raise TableParseError(str(path), i, f"expected 11 fields, got {len(f)}")
        try:
            eq = None
            if f[5] != "-":
                d_, e_, h_, ff = f[5].split(",", 3)
                eq = (int(d_), int(e_), int(h_), ff)
            t5.append(Table5Entry(
                n=int(f[0]), d=int(f[1]), eta=int(f[2]), h=int(f[3]),
                form_text=f[4], equiv=eq,
                rho=_parse_vec(f[6]) if f[6] != "-" else None,
                rho2=int(f[7]) if f[7] != "-" else None,
                gamma_plus=_parse_mat(f[8]) if f[8] != "-" else None,
                gram_plus=_parse_mat(f[9]) if f[9] != "-" else None,
                generators=gens_of(f[10])))
        except (ValueError, IndexError) as e:
            raise TableParseError(str(path), i, str(e)) from e

    t6: list[Table6Entry] = []
    path = base / "table6.txt"
    for i, ln in enumerate(_read_lines(path), start=1):
        f = ln.split("\t")
        if len(f) != 6:
            raise TableParseError(str(path), i, f"expected 6 fields, got {len(f)}")
        t6.append(Table6Entry(n=int(f[0]), d=int(f[1]), eta=int(f[2]), h=int(f[3]),
                              form_text=None if f[4] == "-" else f[4], verdict=f[5]))

    t7: list[Table7Entry] = []
    path = base / "table7.txt"
    for i, ln in enumerate(_read_lines(path), start=1):
        f = ln.split("\t")
        if len(f) != 5:
            raise TableParseError(str(path), i, f"expected 5 fields, got {len(f)}")
        tags = () if f[4] == "-" else tuple(f[4].split(","))
        t7.append(Table7Entry(n=int(f[0]), d=int(f[1]), eta=int(f[2]), h=int(f[3]),
                              tags=tags))

    errata: list[Erratum] = []
    epath = base / "errata.txt"
    if epath.exists():
        for ln in _read_lines(epath):
            f = ln.split("\t")
            errata.append(Erratum(f[0], int(f[1]), f[2], f[3], f[4], f[5]))

    tables = Tables(t4, t5, t6, t7, errata)
    _apply_errata(tables)
    _check_basic_invariants(tables)
    return tables


def _apply_errata(tables: Tables) -> None:
    for err in tables.errata:
        if err.table == "table5":
            idx = next(i for i, e in enumerate(tables.table5) if e.n == err.entry)
            e = tables.table5[idx]
            tables.printed[("table5", err.entry)] = e
            if err.kind == "d":
                tables.table5[idx] = replace(e, d=int(err.corrected))
            else:
                raise ValueError(f"unsupported erratum {err}")
        elif err.table == "table6":
            idx = next(i for i, e in enumerate(tables.table6) if e.n == err.entry)
            e = tables.table6[idx]
            tables.printed[("table6", err.entry)] = e
            if err.kind == "form":
                tables.table6[idx] = replace(e, form_text=err.corrected)
            else:
                raise ValueError(f"unsupported erratum {err}")
        elif err.table in ("table7h0", "table7h2"):
            want_h = 0 if err.table.endswith("h0") else 2
            idx = next(i for i, e in enumerate(tables.table7)
                       if e.n == err.entry and e.h == want_h)
            e = tables.table7[idx]
            tables.printed[(err.table, err.entry)] = e
            if err.kind == "tags":
                tags = tuple(err.corrected.split(",")) if err.corrected else ()
                tables.table7[idx] = replace(e, tags=tags)
            else:
                raise ValueError(f"unsupported erratum {err}")
        else:
            raise ValueError(f"unsupported erratum table {err.table}")


def _check_basic_invariants(tables: Tables) -> None:
    if len(tables.table4) != 66:
        raise ValueError(f"table4 must have 66 entries, got {len(tables.table4)}")
    if len(tables.table5) != 21:
        raise ValueError(f"table5 must have 21 entries, got {len(tables.table5)}")
    if len(tables.table6) != 259:
        raise ValueError(f"table6 must have 259 entries, got {len(tables.table6)}")
    if len(tables.table7_h2()) != 259:
        raise ValueError("table7 must carry one row per table6 entry")
    for e in tables.table4:
        if e.h not in (0, 2):
            raise ValueError(f"table4 N={e.n}: h must be 0 or 2")
        k = len(e.gamma_plus)
        if len(e.gram_plus) != k or any(len(r) != k for r in e.gram_plus):
            raise ValueError(f"table4 N={e.n}: Gram size mismatch")


# ----------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class Check:
    table: str
    entry: int
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, table: str, entry: int, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(table, entry, name, passed, detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            msg = f"{c.table} {c.entry} {c.name} {status}"
            if c.detail:
                msg += f" ({c.detail})"
            out.append(msg)
        return out


def _mat3_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                 for i in range(3))


def _mat3_t(a):
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def _mat3_vec(a, v):
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))


_ID3 = tuple(tuple(Fraction(1 if i == j else 0) for j in range(3)) for i in range(3))


def _verify_chain_entry(report: Report, table: str, n: int, form: LatticeForm,
                        rho: Vec, rho2: int, blocks, generators) -> None:
    """The shared seven-point check for a Table 4/5 style entry."""
    try:
        d_eta = form.invariants_d_eta()
    except ValueError as e:
        report.add(table, n, "invariants", False, str(e))
        d_eta = None
    report.add(table, n, "rho-in-lattice", form.contains(rho))
    report.add(table, n, "rho-square", form.norm(rho) == rho2,
               f"norm {form.norm(rho)} vs printed {rho2}")
    report.add(table, n, "rho-primitive", form.is_primitive(rho))
    for sign, rows, gram in blocks:
        tagname = "gamma+" if sign > 0 else "gamma-"
        allroots = True
        for i, r in enumerate(rows):
            try:
                if not form.is_root(r):
                    allroots = False
                    report.add(table, n, f"{tagname}-row{i}-root", False)
            except NotInLattice:
                allroots = False
                report.add(table, n, f"{tagname}-row{i}-root", False, "not in lattice")
        if allroots:
            report.add(table, n, f"{tagname}-roots", True)
        k = len(rows)
        mism = [(i, j) for i in range(k) for j in range(k)
                if form.inner(rows[i], rows[j]) != gram[i][j]]
        report.add(table, n, f"{tagname}-gram", not mism,
                   f"{len(mism)} mismatches" if mism else "")
        signs_ok = all((form.inner(r, rho) > 0) if sign > 0 else (form.inner(r, rho) < 0)
                       for r in rows)
        report.add(table, n, f"{tagname}-weyl-signs", signs_ok)
    g = tuple(tuple(Fraction(x) for x in row) for row in form.gram())
    for kind, m in generators:
        iso = _mat3_mul(_mat3_t(m), _mat3_mul(g, m)) == g
        report.add(table, n, f"{kind}-isometry", iso)
        act = _mat3_vec(m, rho)
        if kind in ("C1", "C2", "S1"):
            report.add(table, n, f"{kind}-negates-weyl", act == tuple(-x for x in rho))
        if kind in ("C1", "C2"):
            report.add(table, n, f"{kind}-involution", _mat3_mul(m, m) == _ID3)
        if kind == "T":
            report.add(table, n, "T-fixes-weyl", act == rho)
            power = m
            infinite = True
            for _ in range(12):
                if power == _ID3:
                    infinite = False
                    break
                power = _mat3_mul(power, m)
            report.add(table, n, "T-infinite-order", infinite)
        # generator must map lattice into itself on a basis sample
        basis = [(Fraction(1), Fraction(0), Fraction(0)),
                 (Fraction(0), Fraction(1), Fraction(0)),
                 (Fraction(0), Fraction(0), Fraction(1))] + [g_ for g_ in form.glue()]
        keeps = all(form.contains(_mat3_vec(m, b)) for b in basis)
        report.add(table, n, f"{kind}-lattice-preserving", keeps)


def _orbit_sample_check(report: Report, table: str, n: int, form: LatticeForm,
                        rows, generators, steps: int = 3) -> None:
    """Generated orbit stays inside the root system (bounded sample)."""
    seen = {tuple(map(Fraction, r)) for r in rows}
    frontier = list(seen)
    ok = True
    for _ in range(steps):
        new = []
        for kind, m in generators:
            for v in frontier:
                w = _mat3_vec(m, v)
                if w not in seen:
                    try:
                        if not form.is_root(w):
                            ok = False
                    except NotInLattice:
                        ok = False
                    seen.add(w)
                    new.append(w)
        frontier = new
        if not ok:
            break
    report.add(table, n, "orbit-roots", ok, f"{len(seen)} sampled")


def verify_table4(tables: Tables, entry: int | None = None,
                  orbit_steps: int = 2) -> Report:
    report = Report()
    for e in tables.table4:
        if entry is not None and e.n != entry:
            continue
        form = e.form
        d_eta = form.invariants_d_eta()
        report.add("table4", e.n, "invariants", d_eta == (e.d, e.eta),
                   f"computed {d_eta}, printed ({e.d}, {e.eta})")
        report.add("table4", e.n, "main", form.is_main())
        blocks = [(1, e.gamma_plus, e.gram_plus)]
        if e.gamma_minus is not None:
            blocks.append((-1, e.gamma_minus, e.gram_minus))
        _verify_chain_entry(report, "table4", e.n, form, e.rho, e.rho2,
                            blocks, e.generators)
        if orbit_steps:
            _orbit_sample_check(report, "table4", e.n, form, e.gamma_plus,
                                e.generators, orbit_steps)
    return report


def verify_table5(tables: Tables, entry: int | None = None) -> Report:
    report = Report()
    for err in tables.errata:
        if err.table == "table5" and (entry is None or err.entry == entry):
            report.add("table5", err.entry, f"erratum-{err.kind}", True,
                       f"printed {err.printed} -> {err.corrected}: {err.note}")
    for e in tables.table5:
        if entry is not None and e.n != entry:
            continue
        form = e.form
        report.add("table5", e.n, "determinant", form.det() == e.d,
                   f"form {form.det()}, effective d {e.d}")
        report.add("table5", e.n, "odd-nonmain", not form.is_main())
        d_eta = form.invariants_d_eta()
        report.add("table5", e.n, "invariants", d_eta == (e.d, e.eta),
                   f"computed {d_eta}, printed ({e.d}, {e.eta})")
        if e.equiv is not None:
            dd, ee, hh, ff = e.equiv
            pf = parse_form(ff)
            report.add("table5", e.n, "equiv-partner-invariants",
                       pf.invariants_d_eta() == (dd, ee))
            report.add("table5", e.n, "equiv-partner-main", pf.is_main())
        if e.rho is not None:
            blocks = [(1, e.gamma_plus, e.gram_plus)]
            _verify_chain_entry(report, "table5", e.n, form, e.rho, e.rho2,
                                blocks, e.generators)
    return report


def verify_table6(tables: Tables, entry: int | None = None) -> Report:
    report = Report()
    for err in tables.errata:
        if err.table == "table6" and (entry is None or err.entry == entry):
            report.add("table6", err.entry, f"erratum-{err.kind}", True,
                       f"printed {err.printed} -> {err.corrected}: {err.note}")
    missing = []
    for e in tables.table6:
        if entry is not None and e.n != entry:
            continue
        if e.form_text is None:
            missing.append(e.n)
            continue
        form = e.form
        report.add("table6", e.n, "main", form.is_main())
        d_eta = form.invariants_d_eta()
        report.add("table6", e.n, "invariants", d_eta == (e.d, e.eta),
                   f"computed {d_eta}, printed ({e.d}, {e.eta})")
    if entry is None:
        report.add("table6", 0, "missing-form-set",
                   missing == [204, 206, 215, 245, 247], f"{missing}")
        hr = [e for e in tables.table6 if e.verdict == "hr"]
        report.add("table6", 0, "hr-count", len(hr) == 61, f"{len(hr)}")
        t4_pairs = {(e.d, e.eta) for e in tables.table4}
        hr_match = all((e.d, e.eta) in t4_pairs for e in hr)
        report.add("table6", 0, "hr-rows-have-table4-entry", hr_match)
    return report


def verify_cross(tables: Tables, main_sets: dict[str, Iterable[tuple[int, int, int]]],
                 ) -> Report:
    """Enumerated triplet sets against the narrow-part tags of Table 7."""
    report = Report()
    for tag, got in sorted(main_sets.items()):
        want = {(e.d, e.eta, e.h) for e in tables.table7 if tag in e.tags}
        got = set(got)
        extra = sorted(got - want)
        miss = sorted(want - got)
        report.add("cross", 0, f"{tag}-tag-set", not extra and not miss,
                   f"extra {extra[:4]} missing {miss[:4]}"
                   if (extra or miss) else f"{len(got)} triplets")
    tagged_none = {(e.d, e.eta, e.h) for e in tables.table7 if not e.tags}
    if set(main_sets) == {"AI1", "AI0", "AII1", "AII0", "AIII", "BI", "BII1",
                          "BII2", "BIII"}:
        union = set()
        for got in main_sets.values():
            union |= set(got)
        hit = sorted(t for t in tagged_none if t in union)
        report.add("cross", 0, "untagged-rows-stay-untagged", not hit, f"{hit[:6]}")
        report.add("cross", 0, "untagged-count", len(tagged_none) == 36,
                   f"{len(tagged_none)}")
    t6_pairs = {(e.d, e.eta): e for e in tables.table6}
    t7h0 = {(e.d, e.eta) for e in tables.table7_h0()}
    ok = True
    for e in tables.table4:
        if e.h == 2 and (e.d, e.eta) not in t6_pairs:
            ok = False
        if e.h == 0 and (e.d, e.eta) not in t7h0:
            ok = False
    report.add("cross", 0, "table4-rows-in-table6-or-h0", ok)
    return report


def serialize_table(entries: Sequence, header: str) -> str:
    return header + "\n" + "".join(e.as_line() + "\n" for e in entries)
