"""
Text Loader Module.
Reads matrices and matrix equations from the plain text formats used by the
command line tool, and writes matrices back in the same format.

Matrix format: one row per line, whitespace-separated scalar tokens
(``3``, ``-1.5``, ``1/3``, ``*`` or ``-inf`` for epsilon, ``+inf`` for top).
Blank lines and lines starting with ``#`` are ignored.

Equation format: blocks introduced by ``%A i``, ``%B i`` (i = 1..r) and
``%C``, each followed by a matrix in the format above.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Tuple

from src.algebra.matrix import TropMatrix
from src.algebra.semiring import format_token, parse_token
from src.errors import ParseError
from src.solvers.equations import MatrixEquation

logger = logging.getLogger(__name__)

_HEADER_RE = re.compile(r'^%\s*(?:(?P<side>[AB])\s+(?P<index>\d+)|(?P<rhs>C))\s*$')

NumberedLine = Tuple[int, str]


def _is_content(line: str) -> bool:
    stripped = line.strip()
    return bool(stripped) and not stripped.startswith('#')


def _parse_rows(lines: List[NumberedLine], source: str) -> TropMatrix:
    rows = []
    width = None
    first_line = lines[0][0] if lines else None

    for number, line in lines:
        if not _is_content(line):
            continue
        row = []
        for match in re.finditer(r'\S+', line):
            try:
                row.append(parse_token(match.group()))
            except ParseError as e:
                raise ParseError(e.message, source, number, match.start() + 1) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"row has {len(row)} entries, expected {width}", source, number)
        rows.append(row)

    if not rows:
        raise ParseError("no matrix rows found", source, first_line)
    return TropMatrix.from_rows(rows)


def parse_matrix(text: str, source: str = '<text>') -> TropMatrix:
    """Parse a matrix from text."""
    return _parse_rows(list(enumerate(text.splitlines(), start=1)), source)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read file ({e.__class__.__name__}: {e})", str(path)) from e


def load_matrix(path) -> TropMatrix:
    """Read a matrix file."""
    matrix = parse_matrix(_read(path), str(path))
    logger.debug("Loaded %dx%d matrix from %s", matrix.rows, matrix.cols, path)
    return matrix


def parse_equation(text: str, source: str = '<text>') -> MatrixEquation:
    """
    Parse an equation file into a MatrixEquation.

    Raises:
        ParseError: malformed headers, missing or duplicate blocks, bad tokens.
        DimensionError: blocks parse but their shapes do not fit together.
    """
    blocks: Dict[Tuple[str, int], List[NumberedLine]] = {}
    headers: Dict[Tuple[str, int], int] = {}
    current = None

    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith('%'):
            match = _HEADER_RE.match(stripped)
            if not match:
                raise ParseError(f"malformed block header '{stripped}'", source, number)
            key = ('C', 0) if match.group('rhs') else (match.group('side'), int(match.group('index')))
            if key in blocks:
                raise ParseError(f"duplicate block '{stripped}'", source, number)
            blocks[key] = []
            headers[key] = number
            current = key
        elif current is None:
            if _is_content(line):
                raise ParseError("content before the first block header", source, number)
        else:
            blocks[current].append((number, line))

    if ('C', 0) not in blocks:
        raise ParseError("missing '%C' block", source)

    a_indices = sorted(i for side, i in blocks if side == 'A')
    b_indices = sorted(i for side, i in blocks if side == 'B')
    if not a_indices:
        raise ParseError("equation has no '%A i' blocks", source)
    if a_indices != b_indices:
        raise ParseError(
            f"'%A' blocks {a_indices} do not pair with '%B' blocks {b_indices}", source
        )
    if a_indices != list(range(1, len(a_indices) + 1)):
        raise ParseError(f"term indices must run 1..{len(a_indices)}, got {a_indices}", source)

    def block(key):
        lines = blocks[key] or [(headers[key], '')]
        return _parse_rows(lines, source)

    terms = tuple((block(('A', i)), block(('B', i))) for i in a_indices)
    return MatrixEquation(terms, block(('C', 0)))


def load_equation(path) -> MatrixEquation:
    """Read an equation file."""
    return parse_equation(_read(path), str(path))


def format_matrix(matrix: TropMatrix) -> str:
    """Render a matrix in the text format, columns right-aligned."""
    tokens = [[format_token(x) for x in row] for row in matrix.to_rows()]
    width = max(len(t) for row in tokens for t in row)
    return '\n'.join(' '.join(t.rjust(width) for t in row) for row in tokens)
