"""
Plain-text tables for the command line. Columns holding booleans become check
marks, integer columns are right-aligned with thousands separators, and
everything else, mostly element names and set labels, is left-aligned.
"""
from enum import auto, StrEnum
import textwrap
from typing import NamedTuple

import pandas as pd


def sgr(code: int | str) -> str:
    return f"\x1b[{code}m"


_BOLD = 1
_PLAIN = 0
_SHADE = '48;5;255'
_NO_SHADE = '49'


class _Align(StrEnum):
    LEFT = auto()
    RIGHT = auto()


class _Column(NamedTuple):
    title: list[str]
    cells: list[str]
    align: _Align
    width: int


def _cell(value: object, na: str) -> str:
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return na
    if isinstance(value, (list, tuple, frozenset, set)):
        return ' '.join(str(v) for v in value)
    return str(value)


def _column(name: object, series: pd.Series, na: str) -> _Column:
    if pd.api.types.is_bool_dtype(series.dtype):
        cells = ['✅' if v else '❌' for v in series]
        align = _Align.LEFT
    elif pd.api.types.is_integer_dtype(series.dtype):
        cells = [f'{v:,d}' for v in series]
        align = _Align.RIGHT
    else:
        cells = [_cell(v, na) for v in series]
        align = _Align.LEFT

    # Titles may wrap, but never narrower than their longest word.
    label = str(name).replace('_', ' ')
    width = max([len(w) for w in label.split()] + [len(c) for c in cells] + [1])
    return _Column(textwrap.wrap(label, width) or [''], cells, align, width)


def _justify(text: str, column: _Column) -> str:
    if column.align is _Align.RIGHT:
        return text.rjust(column.width)
    return text.ljust(column.width)


def format_text(
    df: pd.DataFrame,
    *,
    not_available: str = '⋯',
    column_separator: str = '   ',
    use_sgr: bool = False,
    use_rowshade: bool = False,
) -> tuple[str, int]:
    """Format the dataframe as text and also return the table's width."""
    if df.shape[1] == 0:
        return '', 0

    columns = [_column(name, df[name], not_available) for name in df.columns]
    width = sum(c.width for c in columns) + len(column_separator) * (len(columns) - 1)

    # Header lines are aligned at the bottom.
    depth = max(len(c.title) for c in columns)
    header = []
    for line in range(depth):
        words = []
        for column in columns:
            offset = line - (depth - len(column.title))
            words.append(column.title[offset] if offset >= 0 else '')
        cells = (w.ljust(c.width) for w, c in zip(words, columns))
        header.append(column_separator.join(cells))

    body = []
    for row in range(len(df)):
        text = column_separator.join(_justify(c.cells[row], c) for c in columns)
        if use_sgr and use_rowshade and row % 2 == 1:
            text = sgr(_SHADE) + text + sgr(_NO_SHADE)
        body.append(text)

    heading = '\n'.join(header)
    if use_sgr:
        heading = sgr(_BOLD) + heading + sgr(_PLAIN)
    return '\n'.join([heading, *body]), width


def format_table(
    df: pd.DataFrame, title: None | str = None, use_sgr: bool = True
) -> str:
    """Format the dataframe with row shading and a centered, bold title."""
    text, width = format_text(df, use_sgr=use_sgr, use_rowshade=True)
    if title is None:
        return text

    indent = ' ' * max(0, (width - len(title)) // 2)
    if use_sgr:
        title = sgr(_BOLD) + title + sgr(_PLAIN)
    return f'{indent}{title}\n\n{text}'
