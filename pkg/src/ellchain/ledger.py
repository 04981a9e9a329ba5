"""Dimension bookkeeping: per-component moduli, automorphism and gluing
counts whose signed total must equal the Brill-Noether number.

Each row mirrors one bracket of the regime's dimension count, so a mismatch
localizes to a single term. A row covers a set of components with identical
contributions; its gluing entry is the family dimension of the node entering
each covered component (the first component has no such node). The closing
+1 accounts for the one-dimensional automorphism family of the glued stable
bundle.

For the regime with surplus sections the count is global instead: the stable
bundle moduli r^2(g-1) plus the Grassmannian choice k(d-r(g-1)-k), plus one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .params import Case, Params, brill_noether_rho, classify, decompose
from .skeleton import canonical_dumps


@dataclass(frozen=True)
class LedgerRow:
    label: str
    components: tuple[int, ...] | None  # None for global (whole-chain) rows
    count: int
    moduli: int
    autos: int
    gluing: int

    @property
    def net(self) -> int:
        return self.count * (self.moduli - self.autos + self.gluing)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "components": list(self.components) if self.components is not None else None,
            "count": self.count,
            "moduli": self.moduli,
            "autos": self.autos,
            "gluing": self.gluing,
            "net": self.net,
        }


@dataclass(frozen=True)
class DimensionLedger:
    case: Case
    rows: tuple[LedgerRow, ...]
    closing: int = 1

    @property
    def total(self) -> int:
        return sum(row.net for row in self.rows) + self.closing

    def split_rows(self) -> "DimensionLedger":
        """Expand every multi-component row into per-component rows.

        The total is invariant under this split.
        """
        rows: list[LedgerRow] = []
        for row in self.rows:
            if row.components is None or row.count <= 1:
                rows.append(row)
                continue
            for c in row.components:
                rows.append(
                    LedgerRow(
                        label=f"{row.label}[C{c}]",
                        components=(c,),
                        count=1,
                        moduli=row.moduli,
                        autos=row.autos,
                        gluing=row.gluing,
                    )
                )
        return DimensionLedger(case=self.case, rows=tuple(rows), closing=self.closing)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "case": self.case.value,
            "rows": [row.to_json_dict() for row in self.rows],
            "closing": self.closing,
            "total": self.total,
        }

    def to_canonical_json(self) -> str:
        return canonical_dumps(self.to_json_dict())

    def to_text(self) -> str:
        headers = ("row", "components", "count", "moduli", "autos", "gluing", "net")
        body = []
        for row in self.rows:
            comps = "-" if row.components is None else _compact_indices(row.components)
            body.append(
                (row.label, comps, str(row.count), str(row.moduli), str(row.autos), str(row.gluing), str(row.net))
            )
        body.append(("stable_bundle_autos", "-", "1", "1", "0", "0", str(self.closing)))
        widths = [max(len(headers[i]), *(len(r[i]) for r in body)) for i in range(len(headers))]
        lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
        for r in body:
            lines.append("  ".join(r[i].ljust(widths[i]) for i in range(len(headers))))
        lines.append(f"total = {self.total}")
        return "\n".join(lines)


def _compact_indices(indices: tuple[int, ...]) -> str:
    if not indices:
        return "(none)"
    parts = []
    start = prev = indices[0]
    for i in indices[1:]:
        if i == prev + 1:
            prev = i
            continue
        parts.append(f"{start}" if start == prev else f"{start}-{prev}")
        start = prev = i
    parts.append(f"{start}" if start == prev else f"{start}-{prev}")
    return ",".join(parts)


def _row(label: str, components: tuple[int, ...], moduli: int, autos: int, gluing: int) -> LedgerRow:
    return LedgerRow(
        label=label, components=components, count=len(components),
        moduli=moduli, autos=autos, gluing=gluing,
    )


def ledger(p: Params, case: Case | None = None) -> DimensionLedger:
    """The termwise dimension count for a tuple whose hypotheses pass."""
    classification = classify(p)
    actual = classification.case
    if case is not None and actual is not case:
        raise ValueError(f"tuple classifies as {actual.value}, not {case.value}")
    dec = decompose(p)
    g, r = p.g, p.r
    d1, d2, k1, k2 = dec.d1, dec.d2, dec.k1, dec.k2

    if actual is Case.LARGE_SECTIONS:
        rows = (
            LedgerRow(
                label="stable_bundle_family", components=None, count=1,
                moduli=r * r * (g - 1), autos=0, gluing=0,
            ),
            LedgerRow(
                label="section_space_grassmannian", components=None, count=1,
                moduli=p.k * (p.d - r * (g - 1) - p.k), autos=0, gluing=0,
            ),
        )
        return DimensionLedger(case=actual, rows=rows)

    if actual is Case.SMALL_C:
        t = g - d1 + k1 - 1
        blocks = tuple(range(2, t * k1 + 2))
        tail = tuple(range(t * k1 + 2, g + 1))
        rows = (
            _row("first_component", (1,), r, r, 0),
            _row("twisted_blocks", blocks, 0, r * r, r * r),
            _row("tail", tail, r, r, r * r),
        )
        return DimensionLedger(case=actual, rows=rows)

    if actual is Case.SMALL_A:
        t = g + k1 - d1
        early_moduli = r - k2 + d2
        early_autos = (k2 - d2) ** 2 + (r - k2 + d2)
        node1 = d2 * (r - (k2 - d2)) + r * (r - d2)
        chain_glue = (r - (k2 - d2)) ** 2 + r * (k2 - d2)
    else:  # SMALL_B
        t = g + k1 - d1 - 1
        early_moduli = d2 - k2
        early_autos = (r - (d2 - k2)) ** 2 + (d2 - k2)
        node1 = d2 * k2 + r * (r - k2)
        chain_glue = (d2 - k2) ** 2 + r * (r - d2 + k2)

    beta1 = tuple((k1 + 1) * alpha + 2 for alpha in range(1, t))
    beta_rest = tuple(
        (k1 + 1) * alpha + beta + 1
        for alpha in range(1, t)
        for beta in range(2, k1 + 2)
    )
    tail = tuple(range(t * (k1 + 1) + 2, g + 1))
    second_moduli = early_moduli if actual is Case.SMALL_A else r - k2
    second_autos = early_autos if actual is Case.SMALL_A else k2 * k2 + (r - k2)
    rows = (
        _row("first_component", (1,), dec.h, dec.h, 0),
        _row("second_component", (2,), second_moduli, second_autos, node1),
        _row("line_chain", tuple(range(3, k1 + 3)), early_moduli, early_autos, chain_glue),
        _row("block_first", beta1, r - k2, k2 * k2 + (r - k2), k2 * k2 + r * (r - k2)),
        _row("block_rest", beta_rest, 0, r * r, r * r),
        _row("tail", tail, r, r, r * r),
    )
    return DimensionLedger(case=actual, rows=rows)


@dataclass(frozen=True)
class AuditResult:
    params: Params
    case: Case
    rho: int
    total: int
    ledger: DimensionLedger

    @property
    def ok(self) -> bool:
        return self.rho == self.total

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "params": {"g": self.params.g, "r": self.params.r, "d": self.params.d, "k": self.params.k},
            "case": self.case.value,
            "rho": self.rho,
            "total": self.total,
            "ok": self.ok,
            "ledger": self.ledger.to_json_dict(),
        }


def audit_equals_rho(p: Params) -> AuditResult:
    """Exact comparison of the ledger total against the Brill-Noether number.

    A mismatch is a hard failure; the termwise ledger is the witness.
    """
    led = ledger(p)
    return AuditResult(
        params=p, case=led.case, rho=brill_noether_rho(p), total=led.total, ledger=led
    )
