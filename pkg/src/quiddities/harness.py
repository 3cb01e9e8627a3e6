"""Published reference values, the suspected-typo registry, and verification suites.

Every suite returns a ``VerificationReport``: one ``CheckRecord`` per cell or
identity, with status ``match``, ``mismatch``, ``flagged-typo`` or
``skipped-resource``.  Reference values live here, next to the computed
fixtures in ``data/golden``; they are never overwritten by computation.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from . import counting, mat2
from .counting import crt_count, dp_count_all, st_formula, u_formula, w4_formula, z4_recurrence
from .errors import ResourceLimitError
from .irreducible import v_table
from .ring import Zmod, make_ring

TABLE_COLUMNS = (2, 3, 4, 5, 6, 7, 10, 11, 12)
TABLE_ROWS = (4, 5, 6, 7, 8)

# w-minus and w-plus tables over Z/NZ, rows n = 4..8, columns TABLE_COLUMNS
REF_W_MINUS = {
    4: (3, 2, 4, 4, 6, 6, 12, 10, 8),
    5: (5, 10, 20, 26, 50, 50, 130, 122, 200),
    6: (11, 35, 96, 149, 385, 391, 1639, 1451, 3360),
    7: (2, 91, 336, 651, 1911, 2451, 13671, 14763, 30576),
    8: (43, 260, 1344, 3224, 11180, 17100, 138632, 162260, 349440),
}
REF_W_PLUS = {
    4: (3, 5, 8, 9, 15, 13, 27, 21, 40),
    5: (5, 10, 20, 26, 50, 50, 130, 122, 200),
    6: (11, 26, 80, 124, 286, 342, 1364, 130, 2080),
    7: (21, 91, 336, 651, 1911, 2451, 13671, 14763, 30576),
    8: (43, 287, 1408, 3349, 12341, 17443, 148307, 163591, 404096),
}

ST_KEYS = ("S", "-S", "T", "-T")
# generator counts over Z/4Z, n = 2..10
REF_ST = {
    "S": (0, 0, 4, 32, 80, 320, 1344, 5632, 21760),
    "-S": (0, 4, 4, 16, 80, 384, 1344, 5376, 21760),
    "T": (0, 1, 8, 20, 80, 336, 1408, 5440, 21760),
    "-T": (1, 1, 4, 20, 96, 336, 1344, 5440, 22016),
}

# N -> (v_N, l_N); N <= 10 gate verification, 11 and 12 are extended runs
REF_CENSUS = {
    2: (2, 4), 3: (3, 4), 4: (6, 4), 5: (9, 6), 6: (10, 6), 7: (42, 9), 8: (48, 8),
    9: (229, 12), 10: (203, 12), 11: (25686, 19), 12: (1161, 15), 13: (2913226, 25),
    14: (90748, 20), 15: (14346911, 26), 16: (8259494, 24),
}
CENSUS_GATE = range(2, 11)

ANCHOR_W = {"w-minus": "w-minus table over Z/NZ", "w-plus": "w-plus table over Z/NZ"}
ANCHOR_ST = "generator table over Z/4Z"
ANCHOR_CENSUS = "irreducible census table"

MATCH, MISMATCH, FLAGGED, SKIPPED = "match", "mismatch", "flagged-typo", "skipped-resource"


@dataclass
class CheckRecord:
    check: str
    anchor: str
    expected: object
    computed: object
    status: str
    note: str = ""


@dataclass
class VerificationReport:
    suite: str
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, check, anchor, expected, computed, status=None, note=""):
        if status is None:
            status = MATCH if expected == computed else MISMATCH
        self.records.append(CheckRecord(check, anchor, expected, computed, status, note))

    def extend(self, other: "VerificationReport") -> None:
        self.records.extend(other.records)

    def by_status(self, status: str) -> list[CheckRecord]:
        return [r for r in self.records if r.status == status]

    @property
    def ok(self) -> bool:
        return not self.by_status(MISMATCH)

    def summary(self) -> dict:
        out = {s: len(self.by_status(s)) for s in (MATCH, MISMATCH, FLAGGED, SKIPPED)}
        out["total"] = len(self.records)
        return out

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "summary": self.summary(),
            "records": [asdict(r) for r in self.records],
        }

    def lines(self, only_problems: bool = False):
        for r in self.records:
            if only_problems and r.status == MATCH:
                continue
            extra = f" ({r.note})" if r.note else ""
            yield f"{r.status:16s} {r.check}: expected {r.expected}, computed {r.computed}{extra}"


# --- typo registry ----------------------------------------------------------


def load_typos(path: str | Path | None = None) -> list[dict]:
    if path is None:
        text = resources.files("quiddities").joinpath("data/typos.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def _typo_lookup(typos) -> dict:
    return {(t["table"], t["n"], t["N"]): t for t in typos}


# --- suites -----------------------------------------------------------------


def verify_tables(typos: list[dict] | None = None) -> VerificationReport:
    """Every w-minus / w-plus cell against the transfer-matrix count.

    A registered cell whose value disagrees is reported ``flagged-typo`` only
    when the closed form agrees with the dp value; otherwise it stays a mismatch.
    """
    registry = _typo_lookup(load_typos() if typos is None else typos)
    report = VerificationReport("tables")
    for table, ref, sign in (("w-minus", REF_W_MINUS, -1), ("w-plus", REF_W_PLUS, 1)):
        for n in TABLE_ROWS:
            for N, published in zip(TABLE_COLUMNS, ref[n]):
                computed = dp_count_all(Zmod(N), n).signed(sign)
                name = f"{table} n={n} N={N}"
                entry = registry.get((table, n, N))
                if entry is not None and computed != published:
                    closed = crt_count(n, N, sign)
                    if closed == computed:
                        report.add(name, ANCHOR_W[table], published, computed, FLAGGED,
                                   f"closed form also gives {closed}")
                    else:
                        report.add(name, ANCHOR_W[table], published, computed, MISMATCH,
                                   f"arbitration failed: closed form gives {closed}")
                    continue
                report.add(name, ANCHOR_W[table], published, computed)
    return report


FORMULA_FIELDS = (3, 5, 7, 9, 2, 4, 8)


def verify_formulas() -> VerificationReport:
    report = VerificationReport("formulas")
    for q in FORMULA_FIELDS:
        ring = make_ring(f"gf:{q}")
        for n in range(5, 11):
            cv = dp_count_all(ring, n)
            for sign in (-1, 1):
                if sign == 1 and ring.characteristic == 2 and n % 2 == 0:
                    continue
                label = "plus" if sign > 0 else "minus"
                report.add(f"u-{label} q={q} n={n}", "closed forms over F_q",
                           cv.signed(sign), u_formula(n, q, ring.characteristic, sign))
    z4 = Zmod(4)
    for n in range(3, 15):
        cv = dp_count_all(z4, n)
        for sign in (-1, 1):
            label = "plus" if sign > 0 else "minus"
            report.add(f"w4-{label} n={n}", "closed form over Z/4Z", cv.signed(sign), w4_formula(n, sign))
    for N in (6, 10, 12):
        ring = Zmod(N)
        for n in range(3, 9):
            cv = dp_count_all(ring, n)
            for sign in (-1, 1):
                label = "plus" if sign > 0 else "minus"
                report.add(f"crt-{label} N={N} n={n}", "CRT product rule", cv.signed(sign), crt_count(n, N, sign))
    return report


def verify_recurrence(fields=(2, 3, 4, 5), n_range=range(5, 10)) -> VerificationReport:
    """The general recurrence on dp counts, for every target in SL2(F_q)."""
    report = VerificationReport("recurrence")
    for q in fields:
        ring = make_ring(f"gf:{q}")
        series = counting.dp_series(ring, max(n_range))
        idx = counting.sl2_index(ring)
        neg = [idx.index(mat2.negate(ring, idx.matrix(i))) for i in range(len(idx))]
        for i in range(len(idx)):
            same = {k: series[k].counts[i] for k in range(len(series))}
            opp = {k: series[k].counts[neg[i]] for k in range(len(series))}
            for n in n_range:
                step = counting.recurrence_step(n, q, same, opp)
                report.add(f"recurrence q={q} B={idx.matrix(i).format(ring)} n={n}",
                           "general recurrence over F_q", same[n], step)
    return report


def _st_target(ring, key):
    m = mat2.generator_s(ring) if key.lstrip("-") == "S" else mat2.generator_t(ring)
    return mat2.negate(ring, m) if key.startswith("-") else m


def verify_st() -> VerificationReport:
    report = VerificationReport("st")
    z4 = Zmod(4)
    for key in ST_KEYS:
        target = _st_target(z4, key)
        for n, published in zip(range(2, 11), REF_ST[key]):
            report.add(f"{key} formula n={n}", ANCHOR_ST, published, st_formula(n, key))
            report.add(f"{key} recurrence n={n}", ANCHOR_ST, published, z4_recurrence(target, n))
    return report


def verify_irreducible(N_values=CENSUS_GATE, jobs: int | None = None) -> VerificationReport:
    report = VerificationReport("irreducible")
    for row in v_table(max(N_values), N_min=min(N_values), jobs=jobs):
        v_ref, l_ref = REF_CENSUS[row.N]
        if not row.complete:
            report.add(f"census N={row.N}", ANCHOR_CENSUS, (v_ref, l_ref), (row.v, row.ell), SKIPPED,
                       f"search still open at max_len={row.max_len}")
            continue
        report.add(f"census N={row.N} v", ANCHOR_CENSUS, v_ref, row.v)
        report.add(f"census N={row.N} ell", ANCHOR_CENSUS, l_ref, row.ell)
    return report


SUITES = {
    "tables": verify_tables,
    "formulas": verify_formulas,
    "recurrence": verify_recurrence,
    "st": verify_st,
    "irreducible": verify_irreducible,
}


def run_suite(name: str) -> VerificationReport:
    if name == "all":
        report = VerificationReport("all")
        for suite in SUITES.values():
            try:
                report.extend(suite())
            except ResourceLimitError as exc:
                report.add(suite.__name__, "resource guard", None, None, SKIPPED, str(exc))
        return report
    return SUITES[name]()


# --- generated tables -------------------------------------------------------

TABLE_NAMES = ("w-minus", "w-plus", "st", "census")


def table_rows(which: str) -> tuple[str, list[str], list[list[int]]]:
    """(title, header, rows) of a regenerated table; values are computed, not copied."""
    if which in ("w-minus", "w-plus"):
        sign = -1 if which == "w-minus" else 1
        header = ["n"] + [str(N) for N in TABLE_COLUMNS]
        rows = [[n] + [dp_count_all(Zmod(N), n).signed(sign) for N in TABLE_COLUMNS] for n in TABLE_ROWS]
        return ANCHOR_W[which], header, rows
    if which == "st":
        header = ["n"] + list(ST_KEYS)
        rows = [[n] + [st_formula(n, k) for k in ST_KEYS] for n in range(2, 11)]
        return ANCHOR_ST, header, rows
    if which == "census":
        rows = [[r.N, r.v, r.ell] for r in v_table(10)]
        return ANCHOR_CENSUS, ["N", "v", "ell"], rows
    raise ValueError(f"unknown table {which!r}")


def render_table(which: str, fmt: str = "csv") -> str:
    title, header, rows = table_rows(which)
    if fmt == "json":
        return json.dumps({"table": title, "columns": header, "rows": rows}, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"# {title}"])
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def golden_path(which: str, fmt: str = "csv") -> Path:
    return Path(str(resources.files("quiddities").joinpath(f"data/golden/{which}.{fmt}")))


def write_tables(out_dir: str | Path, fmt: str = "csv", which=TABLE_NAMES) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in which:
        path = out_dir / f"{name}.{fmt}"
        path.write_text(render_table(name, fmt))
        written.append(path)
    return written
