# blockdet/matrix_io.py
"""Matrix files: dense CSV, Matrix Market coordinate and a small JSON format.

Readers keep exact values (integers, decimals and "p/q" rationals become
int/Fraction in exact mode) and report the offending line on malformed input.
"""
import csv
import io
import json
import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from pydantic import ValidationError

from .config import ArithmeticMode
from .errors import DimensionError, DomainError, ParseError
from .graph import Matrix, Scalar, as_matrix, mode_of, order, to_scalar
from .schemas import JsonMatrix, MatrixFormat

logger = logging.getLogger(__name__)

MM_BANNER = "%%MatrixMarket"


def format_scalar(x: Scalar) -> str:
    """Integers as digits, rationals as "p/q", floats with 17 significant digits."""
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(int(x))


def _entry(token: str, mode: ArithmeticMode, line: int) -> Scalar:
    try:
        return to_scalar(token, mode)
    except (ValueError, ZeroDivisionError, DomainError) as e:
        raise ParseError(f"bad matrix entry {token.strip()!r}", line=line) from e


def _read_dense_csv(text: str, mode: ArithmeticMode) -> Matrix:
    rows: List[List[Scalar]] = []
    reader = csv.reader(io.StringIO(text))
    for fields in reader:
        if not fields or not "".join(fields).strip() or fields[0].lstrip().startswith("#"):
            continue
        rows.append([_entry(tok, mode, reader.line_num) for tok in fields])
    return as_matrix(rows, mode)


def _ints(tokens: List[str], line: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as e:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line=line) from e


def _read_matrix_market(text: str, mode: ArithmeticMode) -> Matrix:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(MM_BANNER):
        raise ParseError("missing %%MatrixMarket header", line=1)
    header = lines[0].split()
    if len(header) != 5 or header[1].lower() != "matrix" or header[2].lower() != "coordinate":
        raise ParseError("only 'matrix coordinate' files are supported", line=1)
    if header[3].lower() not in ("integer", "real") or header[4].lower() != "general":
        raise ParseError(f"unsupported field/symmetry '{header[3]} {header[4]}'", line=1)

    size = None
    values: Dict[Tuple[int, int], Scalar] = {}
    expected = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        tokens = stripped.split()
        if size is None:
            if len(tokens) != 3:
                raise ParseError("size line needs 'rows cols entries'", line=lineno)
            rows, cols, expected = _ints(tokens, lineno)
            if rows != cols:
                raise DimensionError(f"matrix is not square: {rows}x{cols}")
            size = rows
            continue
        if len(tokens) != 3:
            raise ParseError("entry line needs 'row col value'", line=lineno)
        i, j = _ints(tokens[:2], lineno)
        if not (1 <= i <= size and 1 <= j <= size):
            raise ParseError(f"index ({i}, {j}) outside 1..{size}", line=lineno)
        if (i, j) in values:
            raise ParseError(f"duplicate entry ({i}, {j})", line=lineno)
        values[(i, j)] = _entry(tokens[2], mode, lineno)

    if size is None:
        raise ParseError("missing size line", line=len(lines))
    if len(values) != expected:
        raise ParseError(f"size line announces {expected} entries, found {len(values)}")
    return _from_coordinates(size, values, mode)


def _read_json(text: str, mode: ArithmeticMode) -> Matrix:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from e
    try:
        doc = JsonMatrix.model_validate(raw)
    except ValidationError as e:
        raise ParseError(f"invalid matrix document: {e.errors()[0]['msg']}") from e

    values: Dict[Tuple[int, int], Scalar] = {}
    for i, j, v in doc.entries:
        if not (1 <= i <= doc.n and 1 <= j <= doc.n):
            raise ParseError(f"index ({i}, {j}) outside 1..{doc.n}")
        if (i, j) in values:
            raise ParseError(f"duplicate entry ({i}, {j})")
        try:
            values[(i, j)] = to_scalar(v, mode)
        except (ValueError, ZeroDivisionError, DomainError) as e:
            raise ParseError(f"bad matrix entry {v!r}") from e
    return _from_coordinates(doc.n, values, mode)


def _from_coordinates(n: int, values: Dict[Tuple[int, int], Scalar], mode: ArithmeticMode) -> Matrix:
    zero = 0.0 if mode == ArithmeticMode.FLOAT else 0
    rows = [[zero] * n for _ in range(n)]
    for (i, j), v in values.items():
        rows[i - 1][j - 1] = v
    return as_matrix(rows, mode)


_READERS = {
    "dense-csv": _read_dense_csv,
    "matrix-market": _read_matrix_market,
    "json": _read_json,
}


def read_matrix_text(text: str, format: MatrixFormat = "dense-csv",
                     mode: ArithmeticMode = ArithmeticMode.EXACT) -> Matrix:
    if format not in _READERS:
        raise ParseError(f"unknown matrix format {format!r}")
    return _READERS[format](text, mode)


def parse_matrix(path: str, format: MatrixFormat = "dense-csv",
                 mode: ArithmeticMode = ArithmeticMode.EXACT) -> Matrix:
    """Read a square matrix from path in the given format."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    m = read_matrix_text(text, format, mode)
    logger.debug("read %dx%d matrix from %s (%s)", order(m), order(m), path, format)
    return m


def matrix_text(m: Matrix, format: MatrixFormat = "dense-csv") -> str:
    n = order(m)
    if format == "dense-csv":
        return "".join(",".join(format_scalar(x) for x in row) + "\n" for row in m.tolist())

    nonzero = [(i + 1, j + 1, m[i, j]) for i in range(n) for j in range(n) if m[i, j] != 0]
    if format == "matrix-market":
        field = "integer" if mode_of(m) == ArithmeticMode.EXACT and all(
            isinstance(v, int) for _, _, v in nonzero) else "real"
        lines = [f"{MM_BANNER} matrix coordinate {field} general", f"{n} {n} {len(nonzero)}"]
        lines += [f"{i} {j} {format_scalar(v)}" for i, j, v in nonzero]
        return "\n".join(lines) + "\n"
    if format == "json":
        entries = [[i, j, v if isinstance(v, (int, float)) else format_scalar(v)] for i, j, v in nonzero]
        return json.dumps({"n": n, "entries": entries}) + "\n"
    raise ParseError(f"unknown matrix format {format!r}")


def write_matrix(m: Matrix, path: str, format: MatrixFormat = "dense-csv") -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(matrix_text(m, format))
