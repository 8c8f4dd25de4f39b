"""Deformed photon dispersion, the b1/b2 coefficients, time delays and the mass relation.

All series are in the dimensionless energy u = p0/kappa.  The realization
functions are evaluated at t = -u, matching f~ = f(-h p0) with h = 1/kappa.
"""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

from .report import Report
from .scalars import TaylorSeries, build_psi_gamma

log = logging.getLogger(__name__)

CSV_COLUMNS = ["energy_gev", "kappa_gev", "baseline_s", "b1", "b2", "delta_t_s", "model", "params"]


@dataclass
class DispersionModel:
    psi: TaylorSeries
    gamma: TaylorSeries
    kappa: Fraction = Fraction(1)
    order: int = 3
    label: str = "general"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.psi[0] != 1:
            raise ValueError("psi(0) must equal 1")
        self.kappa = Fraction(self.kappa)

    @classmethod
    def jordanian(cls, r, order: int = 3) -> "DispersionModel":
        r = Fraction(r)
        return cls(TaylorSeries([1, r], order), TaylorSeries([], order), order=order,
                   label="jordanian", params={"r": r})

    @classmethod
    def abelian(cls, s, order: int = 3) -> "DispersionModel":
        s = Fraction(s)
        return cls(TaylorSeries([1], order), TaylorSeries([s], order), order=order,
                   label="abelian", params={"s": s})

    def params_text(self) -> str:
        if self.params:
            return ";".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        fmt = lambda ser: ",".join(str(c) for c in ser.coeffs[: max(ser.degree(), 0) + 1])
        return f"psi={fmt(self.psi)};gamma={fmt(self.gamma)}"


def _tilde_pair(m: DispersionModel, order: int):
    Psi, Gamma = build_psi_gamma(m.psi.with_order(order), m.gamma.with_order(order), order)
    return Psi.scale_variable(-1), Gamma.scale_variable(-1)


def dispersion_series(m: DispersionModel) -> TaylorSeries:
    """|p|/kappa as a series in u from the closed formula (Psi~^-1 - 1) Gamma~."""
    Psi_t, Gamma_t = _tilde_pair(m, m.order)
    return (Psi_t.reciprocal() - 1) * Gamma_t


def casimir_root_series(m: DispersionModel) -> TaylorSeries:
    """Independent route: solve the massless Casimir condition for p^2 and take the positive root.

    C = kappa^2 (Psi~^-1 + Psi~ - 2) - p^2 Psi~ Gamma~^-2 = 0.
    """
    n = m.order + 2
    Psi_t, Gamma_t = _tilde_pair(m, n)
    psq = (Psi_t.reciprocal() + Psi_t - 2) * Gamma_t * Gamma_t * Psi_t.reciprocal()
    if psq[0] or psq[1]:
        raise ValueError("p^2 must start at u^2")
    reduced = TaylorSeries(psq.coeffs[2:], m.order)      # p^2 / (kappa u)^2
    root = reduced.pow(Fraction(1, 2))
    return TaylorSeries([0] + list(root.coeffs), m.order)


def expansion_parameters(m: DispersionModel) -> dict:
    """psi = 1 - u psi1 - u^2 psi2, gamma = gamma0 - u gamma1 with u = -t."""
    return {"psi1": m.psi[1], "psi2": -m.psi[2], "gamma0": m.gamma[0], "gamma1": m.gamma[1]}


def b_formulas(psi1, psi2, gamma0, gamma1, amended: bool = False):
    """Closed formulas for (b1, b2).

    The printed b2 carries -psi2; expanding the closed dispersion formula gives
    +2 psi2 instead (``amended=True``).  The two agree whenever psi2 = 0.
    """
    b1 = Fraction(1, 2) * (2 * gamma0 - 1 - psi1)
    w = 2 if amended else -1
    b2 = Fraction(1, 6) * (1 + 3 * psi1 + 2 * psi1**2 + w * psi2 + 3 * gamma0**2 - 3 * gamma0
                           + 3 * gamma1 - 6 * gamma0 * psi1)
    return Fraction(b1), Fraction(b2)


def b_from_series(m: DispersionModel):
    """Read b1, b2 off |p|/kappa = u (1 - b1 u + b2 u^2)."""
    ser = dispersion_series(DispersionModel(m.psi, m.gamma, m.kappa, max(m.order, 3)))
    return -ser[2], ser[3]


def b_coefficients(m: DispersionModel, source: str = "formula"):
    """(b1, b2, report).

    ``source`` picks which pair is returned: the printed closed formulas
    ("formula"), the amended ones ("amended") or the series ("series").  The
    report compares all of them and flags any disagreement.
    """
    params = expansion_parameters(m)
    f1, f2 = b_formulas(**params)
    a1, a2 = b_formulas(**params, amended=True)
    s1, s2 = b_from_series(m)
    ser = dispersion_series(DispersionModel(m.psi, m.gamma, m.kappa, max(m.order, 3)))
    rep = Report()
    rep.add("leading |p| = p0", ser[0] == 0 and ser[1] == 1)
    rep.add("b1 formula vs series", s1 == f1, detail=f"formula={f1} series={s1}")
    rep.add("b2 formula vs series", s2 == f2, detail=f"formula={f2} series={s2}")
    rep.add("b2 amended formula vs series", s2 == a2, detail=f"amended={a2} series={s2}")
    pick = {"formula": (f1, f2), "amended": (a1, a2), "series": (s1, s2)}
    if source not in pick:
        raise ValueError(f"unknown source {source!r}")
    b1, b2 = pick[source]
    return b1, b2, rep


# ---------------------------------------------------------------------------
# time delays
# ---------------------------------------------------------------------------

def delay_general(T, u, b1, b2) -> Fraction:
    """-T u (2 b1 - 3 b2 u)."""
    T, u = Fraction(T), Fraction(u)
    return -T * u * (2 * b1 - 3 * b2 * u)


def delay_jordanian(T, u, r) -> Fraction:
    T, u, r = Fraction(T), Fraction(u), Fraction(r)
    return T * u * (1 + r + (1 + 3 * r + 2 * r * r) * u / 2)


def delay_abelian_momentum(T, k, s) -> Fraction:
    """Abelian closed form in the momentum variable k = |p|/kappa: -T k (2s - 1 + k s(s-1)/2)."""
    T, k, s = Fraction(T), Fraction(k), Fraction(s)
    return -T * k * (2 * s - 1 + k * s * (s - 1) / 2)


def abelian_b2_discrepancy(s) -> dict:
    """Second-order Abelian coefficients in both expansion variables.

    Written in u the general formula gives -T u (2s-1) + T u^2 (1 - 3s + 3s^2)/2.
    The momentum form, after substituting k = u + (1/2 - s) u^2, produces the
    u^2 coefficient below; ``agree`` says whether the two match at that order.
    """
    s = Fraction(s)
    _, b2, _ = b_coefficients(DispersionModel.abelian(s), source="series")
    general_u2 = 3 * b2                                   # coefficient of T u^2
    in_k = -s * (s - 1) / 2                               # coefficient of T k^2 in the momentum form
    k2 = Fraction(1, 2) - s                               # k = u + k2 u^2
    momentum_u2 = -(2 * s - 1) * k2 + in_k
    return {
        "s": s,
        "general_coefficient_u2": general_u2,
        "momentum_form_coefficient_k2": in_k,
        "momentum_form_in_u": momentum_u2,
        "literal_mismatch": general_u2 != in_k,
        "agree": general_u2 == momentum_u2,
    }


@dataclass
class DelayScenario:
    T: Fraction
    energies: list
    model: DispersionModel

    def __post_init__(self):
        self.T = Fraction(self.T)
        self.energies = [Fraction(e) for e in self.energies]
        for e in self.energies:
            if e <= 0:
                raise ValueError("energies must be positive")
            if e >= Fraction(1, 10):
                log.warning("energy %s is not small in kappa units; the expansion is unreliable", e)


def time_delay(sc: DelayScenario) -> list[dict]:
    """One row per energy with the general delay and, where known, the closed form."""
    b1, b2, _ = b_coefficients(sc.model, source="series")
    m = sc.model
    rows = []
    for u in sc.energies:
        row = {"u": u, "b1": b1, "b2": b2, "delta_t": delay_general(sc.T, u, b1, b2)}
        if m.label == "jordanian":
            row["closed_form"] = delay_jordanian(sc.T, u, m.params["r"])
        elif m.label == "abelian":
            ser = dispersion_series(m)
            k = ser[1] * u + ser[2] * u * u              # |p|/kappa to second order
            row["closed_form"] = delay_abelian_momentum(sc.T, k, m.params["s"])
        rows.append(row)
    return rows


def decimal_text(x: Fraction, digits: int = 12) -> str:
    """Exact rational rendered with ``digits`` significant digits."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, f".{digits}g") if d else "0"


def delay_csv(model: DispersionModel, energies_gev, kappa_gev, baseline_s) -> tuple[str, list]:
    """CSV text plus the exact rows; energies and kappa in GeV, baseline T = l/c in seconds."""
    kappa = Fraction(kappa_gev)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    energies = [Fraction(e) for e in energies_gev]
    sc = DelayScenario(Fraction(baseline_s), [e / kappa for e in energies], model)
    rows = time_delay(sc)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    exact = []
    for e, row in zip(energies, rows):
        w.writerow([decimal_text(e), decimal_text(kappa), decimal_text(sc.T), decimal_text(row["b1"]),
                    decimal_text(row["b2"]), decimal_text(row["delta_t"]), model.label, model.params_text()])
        exact.append({"energy_gev": str(e), "kappa_gev": str(kappa), "baseline_s": str(sc.T),
                      "b1": str(row["b1"]), "b2": str(row["b2"]), "delta_t_s": str(row["delta_t"]),
                      "closed_form_s": str(row["closed_form"]) if "closed_form" in row else None})
    return buf.getvalue(), exact


# ---------------------------------------------------------------------------
# mass relation
# ---------------------------------------------------------------------------

def mass_relation(m_h, h) -> Fraction:
    """m_ph^2 = m_h^2 (1 - h^2 m_h^2 / 4)."""
    m_h, h = Fraction(m_h), Fraction(h)
    return m_h**2 * (1 - h * h * m_h**2 / 4)


def mass_relation_series(m_h, order: int = 4, amended: bool = False) -> TaylorSeries:
    """m_ph^2 as a series in h, found by solving the Casimir condition iteratively.

    Default: 2 h^-2 (sqrt(1 + h^2 P^2) - 1) + m_h^2 = 0 with P^2 = -m_ph^2.
    ``amended``: 2 h^-2 (sqrt(1 - h^2 P^2) - 1) - m_h^2 = 0, the Casimir that
    satisfies the covariant DSR relations, with the plane-wave sign.
    """
    m2 = Fraction(m_h) ** 2
    n = order + 2
    sign = -1 if amended else 1
    y = TaylorSeries([-m2], n)                           # y = P^2
    for _ in range(order // 2 + 2):
        h2y = TaylorSeries([0, 0] + list(y.coeffs), n) * sign
        root = (h2y + 1).pow(Fraction(1, 2))
        c = TaylorSeries([2 * x for x in root.coeffs[2:]], n)   # 2 h^-2 (root - 1)
        residual = c - m2 if amended else c + m2
        # dC/dP^2 = sign at leading order
        y = y - residual * sign
    return TaylorSeries([-x for x in y.coeffs], order)


def check_mass_relation(m_h, order: int = 4) -> Report:
    """Casimir-substitution oracle against the closed relation, coefficient by coefficient in h."""
    m2 = Fraction(m_h) ** 2
    ser = mass_relation_series(m_h, order)
    target = TaylorSeries([m2, 0, -m2 * m2 / 4], order)
    rep = Report()
    rep.add(f"mass relation series to h^{order}", ser == target, detail=str(ser))
    return rep
