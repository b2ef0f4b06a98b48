"""Text formats: complex matrices, angle strings, and deterministic CSV.

Matrix files are plain text, diffable and hand-writable: a header line
"dim n" (square) or "dims r c", then one row per line of whitespace-separated
complex entries in the form a+bi (either part omissible, e.g. "3", "-i",
"1.5-2e-3i").  Lines starting with "#" are comments.

Angles are accepted as rational multiples of pi ("pi/4", "2pi/3", "-pi") or
as decimal radians, so unit-circle points never drift off the circle.

CSV output uses 17 significant digits and is byte-identical across runs for
a fixed configuration.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np

_ANGLE_RE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)?)pi(?:/((?:\d+\.?\d*|\.\d+)))?$")

# "i" needs a coefficient before Python's complex() will eat it as "j".
_BARE_I_RE = re.compile(r"(^|[+-])j")


def parse_angle(text: str) -> float:
    """Angle in radians from "pi/4", "2pi/3", "-0.5pi", or a decimal string."""
    s = text.strip().lower().replace(" ", "")
    m = _ANGLE_RE.match(s)
    if m:
        coef_s, den_s = m.groups()
        if coef_s in ("", "+"):
            coef = 1.0
        elif coef_s == "-":
            coef = -1.0
        else:
            coef = float(coef_s)
        den = float(den_s) if den_s else 1.0
        if den == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        return coef * math.pi / den
    try:
        return float(s)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}") from None


def parse_complex(token: str) -> complex:
    """One complex entry in a+bi form ("2", "-i", "1+2i", "1.5e-3-2i")."""
    s = token.strip().lower().replace("j", "i")
    if not s:
        raise ValueError("empty complex entry")
    t = _BARE_I_RE.sub(r"\g<1>1j", s.replace("i", "j"))
    try:
        return complex(t)
    except ValueError:
        raise ValueError(f"cannot parse complex entry {token!r}") from None


def format_float(x: float) -> str:
    """Full double precision, locale-free."""
    return format(float(x), ".17g")


def format_complex(v: complex) -> str:
    """Inverse of parse_complex: a+bi with 17 significant digits per part."""
    v = complex(v)
    if v.imag == 0:
        return format_float(v.real)
    imag = f"{format_float(abs(v.imag))}i"
    sign = "-" if v.imag < 0 else "+"
    if v.real == 0:
        return imag if sign == "+" else f"-{imag}"
    return f"{format_float(v.real)}{sign}{imag}"


def read_matrix_file(path) -> np.ndarray:
    """Read a complex matrix (or column/row vector) from the text format."""
    path = Path(path)
    lines = [
        (k + 1, line.strip())
        for k, line in enumerate(path.read_text().splitlines())
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise ValueError(f"{path}: empty file")
    header_no, header = lines[0]
    fields = header.split()
    if fields[0] == "dim" and len(fields) == 2:
        rows = cols = int(fields[1])
    elif fields[0] == "dims" and len(fields) == 3:
        rows, cols = int(fields[1]), int(fields[2])
    else:
        raise ValueError(f"{path}:{header_no}: header must be 'dim n' or 'dims r c'")
    if rows < 1 or cols < 1:
        raise ValueError(f"{path}:{header_no}: dimensions must be positive")
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"{path}: expected {rows} rows, found {len(body)}")
    out = np.empty((rows, cols), dtype=complex)
    for r, (line_no, line) in enumerate(body):
        tokens = line.split()
        if len(tokens) != cols:
            raise ValueError(f"{path}:{line_no}: expected {cols} entries, found {len(tokens)}")
        for c, token in enumerate(tokens):
            try:
                out[r, c] = parse_complex(token)
            except ValueError as exc:
                raise ValueError(f"{path}:{line_no}: {exc}") from None
    return out


def write_matrix_file(path, matrix) -> None:
    """Write a matrix in the same text format read_matrix_file accepts."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    rows, cols = matrix.shape
    header = f"dim {rows}" if rows == cols else f"dims {rows} {cols}"
    body = "\n".join(" ".join(format_complex(v) for v in row) for row in matrix)
    Path(path).write_text(f"{header}\n{body}\n")


def csv_text(header, rows) -> str:
    """Render a CSV deterministically: floats at 17 significant digits."""
    def cell(v):
        if isinstance(v, str):
            return v
        if isinstance(v, (int, np.integer)):
            return str(int(v))
        return format_float(v)

    out = [",".join(header)]
    out.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


def write_csv(path, header, rows) -> str:
    """Write csv_text to `path` (or only render, when path is None)."""
    text = csv_text(header, rows)
    if path is not None:
        Path(path).write_text(text)
    return text
