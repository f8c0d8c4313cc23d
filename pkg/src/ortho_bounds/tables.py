"""Built-in reference tables and the machinery to recompute them.

Each table row carries verbatim reference values with their printed
precision.  A recomputed cell passes when it matches the reference to half
a unit in the last printed digit (the reference figures carry anywhere
from 5 to 11 significant digits, so the tolerance adapts per cell).

Cells marked external are literature values quoted for comparison; they
are echoed, never recomputed, and do not affect the pass verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .bigfloat import GUARD_BITS, context, default_precision, sci_str
from .bounds import (
    alt_qcharlier_bounds,
    laguerre_bounds,
    little_qjacobi_report,
    qhermite2_bounds,
    stieltjes_wigert_lower_xn,
)
from .families import Family, family_spec
from .zeros import family_zeros

_ZERO_RTOL = "1e-18"


@dataclass(frozen=True)
class Cell:
    name: str
    printed: str | None  # None means the source table shows no value here
    external: bool = False


@dataclass(frozen=True)
class TableRow:
    params: tuple  # ((name, value-string), ...)
    cells: tuple


@dataclass(frozen=True)
class Table:
    table_id: int
    title: str
    rows: tuple


@dataclass(frozen=True)
class CellResult:
    name: str
    printed: str | None
    computed: str | None
    status: str  # pass | fail | external | absent
    err_ulps: float | None
    note: str = ""


@dataclass(frozen=True)
class RowResult:
    params: tuple
    cells: tuple
    notes: tuple = ()


@dataclass(frozen=True)
class TableResult:
    table_id: int
    title: str
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for r in self.rows for c in r.cells)


def _row(params, cells) -> TableRow:
    return TableRow(tuple(params), tuple(cells))


TABLES = {
    1: Table(1, "Laguerre extreme-zero bounds", (
        _row((("n", "10"), ("alpha", "-0.5")), (
            Cell("x1", "0.06019206315"), Cell("b4_upper_x1", "0.06019206332"),
            Cell("b_gm", "0.060269"), Cell("b4_lower_xn", "28.469"),
            Cell("literature_lower_xn", None, external=True), Cell("xn", "29.025"))),
        _row((("n", "10"), ("alpha", "10.0")), (
            Cell("x1", "3.50805"), Cell("b4_upper_x1", "3.51556"),
            Cell("b_gm", "4.0168"), Cell("b4_lower_xn", "44.945"),
            Cell("literature_lower_xn", None, external=True), Cell("xn", "46.365"))),
        _row((("n", "100"), ("alpha", "10.0")), (
            Cell("x1", "0.49692"), Cell("b4_upper_x1", "0.49863"),
            Cell("b_gm", "0.5746"), Cell("b4_lower_xn", "353.225"),
            Cell("literature_lower_xn", "387.960", external=True), Cell("xn", "394.294"))),
        _row((("n", "100"), ("alpha", "-0.5")), (
            Cell("x1", "0.00615313229"), Cell("b4_upper_x1", "0.00615313230"),
            Cell("b_gm", "0.0061611"), Cell("b4_lower_xn", "335.472"),
            Cell("literature_lower_xn", "367.816", external=True), Cell("xn", "374.006"))),
    )),
    2: Table(2, "little q-Jacobi bounds, alpha = 0.5", (
        _row((("n", "10"), ("beta", "1"), ("q", "0.6")), (
            Cell("x1", "0.005216"), Cell("b2", "0.005359"),
            Cell("literature_upper_x1", "0.021776", external=True),
            Cell("xn1", "0.600000"), Cell("xn", "1.000000"))),
        _row((("n", "30"), ("beta", "-10"), ("q", "0.6")), (
            Cell("x1", "1.8642e-7"), Cell("b2", "1.9497e-7"),
            Cell("literature_upper_x1", "7.9382e-7", external=True),
            Cell("xn1", "0.600000"), Cell("xn", "1.000000"))),
        _row((("n", "100"), ("beta", "-10"), ("q", "0.9")), (
            Cell("x1", "0.0000059"), Cell("b2", "0.0000073"),
            Cell("literature_upper_x1", "0.0000131", external=True),
            Cell("xn1", "0.8999999"), Cell("xn", "1.000000"))),
    )),
    3: Table(3, "alternative q-Charlier upper bounds for the smallest zero", (
        _row((("n", "10"), ("q", "0.55"), ("alpha", "0.5")), (
            Cell("x1", "0.0045925"), Cell("b3", "0.0045925"),
            Cell("b2", "0.0045964"), Cell("b_n", "0.004635"))),
        _row((("n", "10"), ("q", "0.99"), ("alpha", "10")), (
            Cell("x1", "0.06207968"), Cell("b3", "0.06796546"),
            Cell("b2", "0.08444314"), Cell("b_n", "0.115245"))),
        _row((("n", "10"), ("q", "0.45"), ("alpha", "100")), (
            Cell("x1", "0.00071318"), Cell("b3", "0.00071318"),
            Cell("b2", "0.00072109"), Cell("b_n", "0.000941"))),
        _row((("n", "70"), ("q", "0.45"), ("alpha", "10")), (
            Cell("x1", "1.179406e-24"), Cell("b3", "1.179406e-24"),
            Cell("b2", "1.179406e-24"), Cell("b_n", "1.179406e-24"))),
        _row((("n", "70"), ("q", "0.8"), ("alpha", "100")), (
            Cell("x1", "2.05671e-7"), Cell("b3", "2.05671e-7"),
            Cell("b2", "2.05682e-7"), Cell("b_n", "2.05783e-7"))),
    )),
    4: Table(4, "alternative q-Charlier: q as an upper bound for the second largest zero", (
        _row((("n", "10"), ("q", "0.55"), ("alpha", "0.50")), (
            Cell("xn1", "0.54999999"), Cell("xn", "1.00000000"))),
        _row((("n", "10"), ("q", "0.99"), ("alpha", "0.10")), (
            Cell("xn1", "0.9735504"), Cell("xn", "0.9935188"))),
        _row((("n", "10"), ("q", "0.10"), ("alpha", "1000")), (
            Cell("xn1", "0.099999999"), Cell("xn", "1.00000000"))),
        _row((("n", "70"), ("q", "0.70"), ("alpha", "1000")), (
            Cell("xn1", "0.700000000"), Cell("xn", "0.99999999"))),
        _row((("n", "70"), ("q", "0.70"), ("alpha", "0.10")), (
            Cell("xn1", "0.700000000"), Cell("xn", "0.99999999"))),
    )),
    5: Table(5, "Stieltjes-Wigert lower bounds for the largest zero", (
        _row((("n", "10"), ("q", "0.5")), (
            Cell("b3", "8.3925988e5"), Cell("a3_root", "8.3946795e5"), Cell("xn", "8.3946799e5"))),
        _row((("n", "10"), ("q", "0.9")), (
            Cell("b3", "15.3689887"), Cell("a3_root", "16.0730951"), Cell("xn", "16.1508699"))),
        _row((("n", "70"), ("q", "0.5")), (
            Cell("b3", "1.116350296e42"), Cell("a3_root", "1.1166280e42"), Cell("xn", "1.1166281e42"))),
        _row((("n", "70"), ("q", "0.9")), (
            Cell("b3", "5.9402911e6"), Cell("a3_root", "6.2658907e6"), Cell("xn", "6.3132591e6"))),
    )),
    6: Table(6, "discrete q-Hermite II inner bounds", (
        _row((("n", "10"), ("q", "0.5")), (Cell("b5", "406.3811"), Cell("xn", "406.4079"))),
        _row((("n", "10"), ("q", "0.98")), (Cell("b5", "0.72968"), Cell("xn", "0.76655"))),
        _row((("n", "100"), ("q", "0.5")), (Cell("b5", "5.0368e29"), Cell("xn", "5.0372e29"))),
        _row((("n", "100"), ("q", "0.98")), (Cell("b5", "10.7735"), Cell("xn", "12.1420"))),
    )),
}


def printed_half_ulp(printed: str):
    """Half a unit in the last printed digit, as an mpfr power of ten."""
    text = printed.strip().lower()
    if "e" in text:
        mantissa, _, exp = text.partition("e")
        exponent = int(exp)
    else:
        mantissa, exponent = text, 0
    if "." in mantissa:
        frac_digits = len(mantissa.split(".", 1)[1])
    else:
        frac_digits = 0
    return gmpy2.mpfr(f"0.5e{exponent - frac_digits}")


def _row_precision(family: Family, n: int, prec: int) -> int:
    # the large-n q-family rows need the wider format to certify brackets
    if family is not Family.LAGUERRE and n >= 70:
        return max(prec, 512)
    return prec


def _compute_row(table_id: int, params: dict, prec: int) -> dict:
    n = int(params["n"])
    values: dict = {}
    if table_id == 1:
        spec = family_spec(Family.LAGUERRE, alpha=params["alpha"])
        rp = _row_precision(spec.family, n, prec)
        zs = family_zeros(spec, n, rtol=_ZERO_RTOL, prec=rp)
        rep = laguerre_bounds(n, params["alpha"], prec=rp)
        values.update(x1=zs.smallest, xn=zs.largest,
                      b4_upper_x1=rep.value("b4_upper_x1"),
                      b_gm=rep.value("b_gm"),
                      b4_lower_xn=rep.value("b4_lower_xn"))
    elif table_id == 2:
        spec = family_spec(Family.LITTLE_Q_JACOBI, alpha="0.5", beta=params["beta"], q=params["q"])
        rp = _row_precision(spec.family, n, prec)
        zs = family_zeros(spec, n, rtol=_ZERO_RTOL, prec=rp)
        rep = little_qjacobi_report(n, "0.5", params["beta"], params["q"], prec=rp)
        values.update(x1=zs.smallest, xn=zs.largest, xn1=zs.zeros[-2], b2=rep.value("b2"))
    elif table_id == 3:
        spec = family_spec(Family.ALT_Q_CHARLIER, alpha=params["alpha"], q=params["q"])
        rp = _row_precision(spec.family, n, prec)
        zs = family_zeros(spec, n, rtol=_ZERO_RTOL, prec=rp)
        rep = alt_qcharlier_bounds(n, params["alpha"], params["q"], prec=rp)
        values.update(x1=zs.smallest, b3=rep.value("b3"), b2=rep.value("b2"), b_n=rep.value("b_n"))
    elif table_id == 4:
        spec = family_spec(Family.ALT_Q_CHARLIER, alpha=params["alpha"], q=params["q"])
        rp = _row_precision(spec.family, n, prec)
        zs = family_zeros(spec, n, rtol=_ZERO_RTOL, prec=rp)
        values.update(xn1=zs.zeros[-2], xn=zs.largest)
    elif table_id == 5:
        spec = family_spec(Family.STIELTJES_WIGERT, q=params["q"])
        rp = _row_precision(spec.family, n, prec)
        zs = family_zeros(spec, n, rtol=_ZERO_RTOL, prec=rp)
        rep = stieltjes_wigert_lower_xn(n, params["q"], prec=rp)
        values.update(b3=rep.value("b3"), a3_root=rep.value("b4"), xn=zs.largest)
    elif table_id == 6:
        spec = family_spec(Family.DISCRETE_Q_HERMITE_II, q=params["q"])
        rp = _row_precision(spec.family, n, prec)
        zs = family_zeros(spec, n, rtol=_ZERO_RTOL, prec=rp)
        rep = qhermite2_bounds(n, params["q"], prec=rp)
        values.update(b5=rep.value("b5_lower_xn"), xn=zs.largest)
    else:
        raise ValueError(f"unknown table id {table_id}")
    return values


def _row_notes(table_id: int, params: dict, values: dict) -> tuple:
    # observational diagnostics (reported, never asserted); the second
    # largest zero approaches q from below, often to within e-hundreds,
    # so the raw gap is shown alongside the comparison
    if table_id == 4:
        with context(192):
            q = gmpy2.mpfr(params["q"])
            gap = gmpy2.mpfr(values["xn1"]) - q
        return (f"xn1_minus_q={sci_str(gap, 8)}",)
    return ()


def run_table(table_id: int, prec: int | None = None) -> TableResult:
    """Recompute every computable cell of a reference table and compare."""
    if table_id not in TABLES:
        raise ValueError(f"table id must be 1..6, got {table_id}")
    prec = prec or default_precision()
    table = TABLES[table_id]
    row_results = []
    for row in table.rows:
        params = dict(row.params)
        values = _compute_row(table_id, params, prec)
        cells = []
        for cell in row.cells:
            if cell.external:
                cells.append(CellResult(cell.name, cell.printed, None, "external", None))
                continue
            if cell.printed is None:
                cells.append(CellResult(cell.name, None, None, "absent", None))
                continue
            computed = values[cell.name]
            with context(prec + GUARD_BITS):
                reference = gmpy2.mpfr(cell.printed)
                half_ulp = printed_half_ulp(cell.printed)
                cv = gmpy2.mpfr(computed)
                err = abs(cv - reference)
                ok = err <= half_ulp
                err_ulps = float(err / (2 * half_ulp))
                note = ""
                # a guard of a few e-15 covers the zero certification width
                # without touching the printed-digit scale
                guard = abs(cv) * gmpy2.mpfr("1e-14")
                if not ok and reference - guard <= cv < reference + 2 * half_ulp + guard:
                    # the reference figure is the computed value truncated
                    # toward zero rather than rounded
                    note = "truncation-consistent"
            cells.append(CellResult(cell.name, cell.printed, sci_str(computed),
                                    "pass" if ok else "fail", err_ulps, note))
        row_results.append(RowResult(row.params, tuple(cells), _row_notes(table_id, params, values)))
    return TableResult(table.table_id, table.title, tuple(row_results))
