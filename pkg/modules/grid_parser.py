"""
ASCII grid reader/writer for heightfields and attention snapshots.

Format:
    ncols nrows resolution origin_x origin_y
    <nrows lines of ncols whitespace-separated values, row 0 = minimum y>

Lines starting with '#' and blank lines are ignored anywhere in the document.
"""
import math
import os

import numpy as np

from models.grids import AttentionMap, ElevationMap
from utils.errors import GridParseError


def read_source(source):
    """
    Return grid text from either a document string or a file path.

    Args:
        source: Grid text, or a path (str or os.PathLike) to a grid file

    Returns:
        str: Document text
    """
    if isinstance(source, os.PathLike):
        source = os.fspath(source)
        with open(source, 'r') as handle:
            return handle.read()
    if '\n' in source:
        return source
    with open(source, 'r') as handle:
        return handle.read()


def _data_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        yield number, line


def parse_header(line, line_number):
    """
    Parse the grid header line.

    Returns:
        tuple: (ncols, nrows, resolution, origin_x, origin_y)
    """
    tokens = line.split()
    if len(tokens) != 5:
        raise GridParseError(
            f"header needs 5 fields (ncols nrows resolution origin_x origin_y), got {len(tokens)}",
            line_number)
    try:
        ncols = int(tokens[0])
        nrows = int(tokens[1])
    except ValueError:
        raise GridParseError(f"grid dimensions must be integers: {tokens[0]!r} {tokens[1]!r}", line_number)
    try:
        resolution, origin_x, origin_y = (float(t) for t in tokens[2:])
    except ValueError as e:
        raise GridParseError(f"non-numeric header field: {str(e)}", line_number)
    if ncols < 1 or nrows < 1:
        raise GridParseError(f"grid dimensions must be >= 1, got {ncols}x{nrows}", line_number)
    if not (math.isfinite(resolution) and resolution > 0):
        raise GridParseError(f"resolution must be positive, got {tokens[2]}", line_number)
    if not (math.isfinite(origin_x) and math.isfinite(origin_y)):
        raise GridParseError('origin must be finite', line_number)
    return ncols, nrows, resolution, origin_x, origin_y


def parse_row(line, ncols, line_number):
    """
    Parse one data row.

    Returns:
        list: ncols finite floats
    """
    tokens = line.split()
    if len(tokens) != ncols:
        raise GridParseError(f"expected {ncols} values, found {len(tokens)}", line_number)
    values = []
    for token in tokens:
        try:
            value = float(token)
        except ValueError:
            raise GridParseError(f"non-numeric cell value {token!r}", line_number)
        if not math.isfinite(value):
            raise GridParseError(f"non-finite cell value {token!r}", line_number)
        values.append(value)
    return values


def parse_grid(text):
    """
    Parse an ASCII grid document.

    Returns:
        tuple: (values ndarray [nrows, ncols], resolution, (origin_x, origin_y))
    """
    lines = _data_lines(text)
    try:
        header_number, header = next(lines)
    except StopIteration:
        raise GridParseError('empty grid document', 1)
    ncols, nrows, resolution, origin_x, origin_y = parse_header(header, header_number)

    rows = []
    last_number = header_number
    for number, line in lines:
        if len(rows) == nrows:
            raise GridParseError(f"more than the declared {nrows} rows", number)
        rows.append(parse_row(line, ncols, number))
        last_number = number
    if len(rows) != nrows:
        raise GridParseError(f"expected {nrows} rows, found {len(rows)}", last_number)

    return np.array(rows, dtype=float), resolution, (origin_x, origin_y)


def load_heightfield(source):
    """
    Load an ElevationMap from grid text or a grid file.

    Raises:
        GridParseError: Malformed header, non-numeric or non-finite cell, row-length mismatch
    """
    values, resolution, origin = parse_grid(read_source(source))
    return ElevationMap(values, resolution, origin)


def load_attention_snapshot(source):
    """
    Load an AttentionMap exported by an external attention model.

    Raises:
        GridParseError: Malformed document
        GridValidationError: A value outside [0, 1], citing its (row, col)
    """
    values, _, _ = parse_grid(read_source(source))
    return AttentionMap(values)


def format_grid(values, resolution, origin):
    lines = [f"{values.shape[1]} {values.shape[0]} {resolution!r} {origin[0]!r} {origin[1]!r}"]
    for row in values:
        lines.append(' '.join(repr(float(v)) for v in row))
    return '\n'.join(lines) + '\n'


def save_heightfield(elevation_map, path):
    """Write an ElevationMap in the ASCII grid format."""
    with open(path, 'w') as handle:
        handle.write(format_grid(elevation_map.heights, elevation_map.resolution, elevation_map.origin))
