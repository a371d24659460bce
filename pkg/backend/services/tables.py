"""Formula tables of the invariants over a (q, r) grid."""
from __future__ import annotations

import logging
from math import isqrt
from typing import List, Optional, Tuple

import pandas as pd

from config import settings
from core.bundle import BundleSpace, MapPair
from core.errors import GridTooLargeError
from core.nielsen import full_report
from core.omega import TRIVIAL, omega_class

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ["q", "r", "R", "N", "N#", "MCC", "loose", "c1", "c2", "c3"]


def parse_combo(combo: str) -> Tuple[BundleSpace, BundleSpace]:
    text = combo.strip().upper()
    if len(text) != 2:
        raise ValueError(f"combo must be two letters from T/K such as 'KK', got {combo!r}")
    return BundleSpace.parse(text[0]), BundleSpace.parse(text[1])


def table_axes(
    domain: BundleSpace,
    codomain: BundleSpace,
    q_range: Tuple[int, int],
    r_range: Tuple[int, int],
) -> Tuple[List[int], List[int]]:
    """The distinct classes the ranges describe: q = 0 only for mixed combos, r mod 2 into K."""
    qmin, qmax = q_range
    rmin, rmax = r_range
    if qmin > qmax or rmin > rmax:
        raise ValueError(f"Empty range: q in [{qmin}, {qmax}], r in [{rmin}, {rmax}]")

    q_values = list(range(qmin, qmax + 1))
    if domain is not codomain:
        q_values = [q for q in q_values if q == 0]
    r_values = list(range(rmin, rmax + 1))
    if codomain.is_klein:
        r_values = sorted({r % 2 for r in r_values})
    if not q_values:
        raise ValueError(f"Maps {domain} -> {codomain} only have q = 0, which [{qmin}, {qmax}] misses")
    return q_values, r_values


def _suggested_bounds(q_count: int, r_count: int, limit: int) -> str:
    side = max(isqrt(limit) // 2 - 1, 0)
    if r_count <= 2:
        return f"--qmin -{limit // (2 * r_count) - 1} --qmax {limit // (2 * r_count) - 1}"
    if q_count == 1:
        return f"--rmin -{limit // 2 - 1} --rmax {limit // 2 - 1}"
    return f"--qmin -{side} --qmax {side} --rmin -{side} --rmax {side}"


def _cell(value) -> object:
    if value is TRIVIAL:
        return "0"
    return str(value) if not isinstance(value, (bool, int)) else value


def build_table(
    combo: str,
    q_range: Tuple[int, int],
    r_range: Tuple[int, int],
    limit: Optional[int] = None,
) -> pd.DataFrame:
    domain, codomain = parse_combo(combo)
    q_values, r_values = table_axes(domain, codomain, q_range, r_range)
    limit = settings.TABLE_CELL_LIMIT if limit is None else limit
    cells = len(q_values) * len(r_values)
    if cells > limit:
        raise GridTooLargeError(cells, limit, _suggested_bounds(len(q_values), len(r_values), limit))

    rows = []
    for q in q_values:
        for r in r_values:
            pair = MapPair.from_differences(domain, codomain, q, r)
            invariants = full_report(pair)
            omega = omega_class(pair)
            rows.append(
                {
                    "q": q,
                    "r": r,
                    "R": _cell(invariants.reidemeister),
                    "N": invariants.nielsen,
                    "N#": invariants.nielsen_sharp,
                    "MCC": invariants.mcc,
                    "loose": invariants.loose,
                    "c1": _cell(omega.c1),
                    "c2": omega.c2,
                    "c3": omega.c3,
                }
            )
    logger.debug("Built %s table with %d rows", combo, len(rows))
    return pd.DataFrame(rows, columns=TABLE_COLUMNS)


def render_table(frame: pd.DataFrame, as_json: bool = False) -> str:
    if as_json:
        return frame.to_json(orient="records")
    return frame.to_string(index=False)
