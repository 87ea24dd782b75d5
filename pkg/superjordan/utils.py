"""
Utility functions for superjordan.
Provides table rendering, small parsers shared by the CLI and the library,
and the optional progress wrapper used by long scans.
"""

import os
from typing import Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from .config import SHOW_PROGRESS
from .errors import SuperJordanError


def render_table(algebra) -> str:
    """
    Aligned multiplication table: row label times column label, rows and
    columns in basis order, zero products shown as 0.
    """
    from .algebra import format_sparse

    labels = list(algebra.labels)
    cells = [[format_sparse(algebra, dict(algebra.table[i][j])) for j in range(algebra.dim)]
             for i in range(algebra.dim)]
    header = ["*"] + labels
    rows = [[labels[i]] + cells[i] for i in range(algebra.dim)]
    widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]

    def line(r):
        return " | ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()

    out = [line(header), "-+-".join("-" * w for w in widths)]
    out += [line(r) for r in rows]
    title = algebra.name or "algebra"
    out.insert(0, f"{title}  type ({algebra.dim_even},{algebra.dim_odd}) over {algebra.field}")
    return "\n".join(out)


def parse_type(text: str) -> Tuple[int, int]:
    """Parse "1,2" into (1, 2)."""
    try:
        n, m = (int(part) for part in text.split(","))
    except ValueError:
        raise SuperJordanError(f"type must look like 'n,m', got {text!r}") from None
    return n, m


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def progress(items: Iterable, total: Optional[int] = None, desc: str = "", enabled: Optional[bool] = None):
    """Wrap an iterable in a tqdm bar when progress display is on."""
    if enabled is None:
        enabled = SHOW_PROGRESS
    if not enabled:
        return items
    return tqdm(items, total=total, desc=desc, leave=False)


def chunk(seq: Sequence, parts: int) -> List[Sequence]:
    """Split a sequence into at most `parts` contiguous chunks."""
    parts = max(1, min(parts, len(seq))) if seq else 1
    size, extra = divmod(len(seq), parts)
    out, start = [], 0
    for k in range(parts):
        end = start + size + (1 if k < extra else 0)
        out.append(seq[start:end])
        start = end
    return out
