import logging
import re
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from ..polycore import parse_complex, parse_polynomial
from ..utils.exceptions import ParseError, ValidationError
from .symbol import (
    BUILTIN_SYMBOLS, ConstantSymbol, ExpPowerSymbol, IndicatorSymbol, RationalSymbol,
    Symbol, TabulatedSymbol
)

logger = logging.getLogger(__name__)

_INTERVAL = re.compile(r'[\[\(]\s*([^,\]\)]+?)\s*,\s*([^\]\)]+?)\s*[\]\)]')


def _parse_bound(text: str) -> float:
    token = text.strip().lower().replace('∞', 'inf')
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"Cannot parse interval bound '{text}'")
    if np.isnan(value):
        raise ParseError("Interval bound is NaN")
    return value


def parse_intervals(text: str) -> List[Tuple[float, float]]:
    """Parse `[a,b]∪[c,d]` (the letter U is accepted as union too)"""
    pieces = [p for p in re.split(r'∪|U', text.strip()) if p.strip()]
    intervals = []
    for piece in pieces:
        match = _INTERVAL.fullmatch(piece.strip())
        if not match:
            raise ParseError(f"Cannot parse interval '{piece}'")
        intervals.append((_parse_bound(match.group(1)), _parse_bound(match.group(2))))
    if not intervals:
        raise ParseError(f"No intervals in '{text}'")
    return intervals


def load_table(path: str) -> TabulatedSymbol:
    """Load a tabulated symbol from a CSV with columns x, re[, im] and a header row"""
    if not Path(path).exists():
        raise ParseError(f"Symbol table not found: {path}")
    try:
        df = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ParseError(f"Cannot read symbol table {path}: {e}")
    if df.shape[1] not in (2, 3):
        raise ParseError(f"Symbol table {path} needs 2 or 3 columns, found {df.shape[1]}")
    try:
        data = df.to_numpy(dtype=float)
    except ValueError:
        raise ParseError(f"Symbol table {path} has non-numeric entries")
    values = data[:, 1] + (1j * data[:, 2] if data.shape[1] == 3 else 0.0)
    try:
        table = TabulatedSymbol(tuple(data[:, 0]), tuple(values), label=f"table:{path}")
    except ValidationError as e:
        raise ParseError(str(e))
    logger.info(f"Loaded symbol table {path} ({len(table.grid)} points)")
    return table


def parse_symbol(text: str) -> Symbol:
    """
    Parse the symbol grammar used on the command line

    rational:<P>/<Q>, indicator:[a,b]∪[c,d], exppower:c,alpha, table:<path.csv>,
    constant:<c> and builtin:<name>.

    Args:
        text: Symbol text

    Returns:
        Symbol
    """
    if not text or ':' not in text:
        raise ParseError(f"Symbol text must look like kind:body, got '{text}'")
    kind, body = text.split(':', 1)
    kind = kind.strip().lower()
    body = body.strip()

    try:
        if kind == 'rational':
            parts = body.split('/')
            if len(parts) != 2:
                raise ParseError(f"Rational symbol needs exactly one '/', got '{body}'")
            P, Q = parse_polynomial(parts[0]), parse_polynomial(parts[1])
            if Q.is_zero:
                raise ParseError("Rational symbol with zero denominator")
            return RationalSymbol(P, Q)
        if kind == 'indicator':
            return IndicatorSymbol(tuple(parse_intervals(body)))
        if kind == 'exppower':
            parts = body.split(',')
            if len(parts) != 2:
                raise ParseError(f"exppower needs c,alpha, got '{body}'")
            try:
                return ExpPowerSymbol(float(parts[0]), float(parts[1]))
            except ValueError:
                raise ParseError(f"Cannot parse exppower parameters '{body}'")
        if kind == 'table':
            return load_table(body)
        if kind == 'constant':
            return ConstantSymbol(parse_complex(body))
        if kind == 'builtin':
            factory = BUILTIN_SYMBOLS.get(body.lower())
            if factory is None:
                raise ParseError(f"Unknown builtin symbol '{body}'; known: {sorted(BUILTIN_SYMBOLS)}")
            return factory()
    except ParseError:
        raise
    except ValidationError as e:
        raise ParseError(f"Invalid symbol '{text}': {e}")

    raise ParseError(f"Unknown symbol kind '{kind}'")


def symbol_builtin_name(symbol: Symbol) -> Optional[str]:
    """Name of the builtin a symbol was created from, if any"""
    label = getattr(symbol, 'label', None)
    if label and label.startswith('builtin:'):
        return label.split(':', 1)[1]
    return None
