"""
Deterministic report files: JSON with sorted keys and fixed significant digits,
CSV tables with a one-line header and LF line endings.
"""
import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import *

import numpy as np
from pydantic import BaseModel

from fractional_mra.analysis_exception import FormatError
from fractional_mra.types.grid import SampledSignal, UniformGrid

log = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 17
UNIFORM_TOL = 1e-9
SIGNAL_HEADER = ('t', 're', 'im')
SPECTRUM_HEADER = ('u', 're', 'im')
CWT_HEADER = ('a', 'b', 're', 'im')
GRAM_HEADER = ('n', 'm', 're', 'im')


def format_float(value: float, digits: int = SIGNIFICANT_DIGITS) -> Union[float, str]:
    value = float(value)
    if not math.isfinite(value):
        return 'nan' if math.isnan(value) else ('inf' if value > 0 else '-inf')
    return float(f"{value:.{digits}g}")


def to_builtin(obj: Any, digits: int = SIGNIFICANT_DIGITS) -> Any:
    """Plain JSON-ready data; complex numbers become {"re": ..., "im": ...}."""
    if isinstance(obj, BaseModel):
        return to_builtin(obj.model_dump(by_alias=True), digits)
    if isinstance(obj, dict):
        return {str(key): to_builtin(value, digits) for key, value in obj.items()}
    if isinstance(obj, np.ndarray):
        return [to_builtin(value, digits) for value in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [to_builtin(value, digits) for value in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return format_float(obj, digits)
    if isinstance(obj, (complex, np.complexfloating)):
        return {'re': format_float(obj.real, digits), 'im': format_float(obj.imag, digits)}
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def dumps_report(obj: Any, digits: int = SIGNIFICANT_DIGITS) -> str:
    return json.dumps(to_builtin(obj, digits), sort_keys=True, indent=2, allow_nan=False) + '\n'


def write_json(path: Union[str, Path], obj: Any, digits: int = SIGNIFICANT_DIGITS) -> Path:
    path = Path(path)
    path.write_text(dumps_report(obj, digits), encoding='utf-8', newline='\n')
    log.info(f"wrote {path}")
    return path


def _cell(value: Any, digits: int) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.{digits}g}"


def dumps_rows(header: Sequence[str], rows: Iterable[Sequence[Any]], digits: int = SIGNIFICANT_DIGITS) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value, digits) for value in row])
    return buffer.getvalue()


def write_rows(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]],
               digits: int = SIGNIFICANT_DIGITS) -> Path:
    path = Path(path)
    path.write_text(dumps_rows(header, rows, digits), encoding='utf-8', newline='')
    log.info(f"wrote {path}")
    return path


def complex_rows(points: np.ndarray, values: np.ndarray) -> Iterator[Tuple[float, float, float]]:
    for x, value in zip(points, values):
        yield float(x), float(value.real), float(value.imag)


def write_signal(path: Union[str, Path], signal: SampledSignal, digits: int = SIGNIFICANT_DIGITS) -> Path:
    return write_rows(path, SIGNAL_HEADER, complex_rows(signal.points, signal.values), digits)


def gram_rows(indices: np.ndarray, entries: np.ndarray) -> Iterator[Tuple[int, int, float, float]]:
    for i, n in enumerate(indices):
        for j, m in enumerate(indices):
            yield int(n), int(m), float(entries[i, j].real), float(entries[i, j].imag)


def load_signal(path: Union[str, Path], uniform_tol: float = UNIFORM_TOL) -> SampledSignal:
    """
    Read a ``t,re,im`` CSV with uniformly spaced t.

    Raises FormatError naming the offending line.
    """
    path = Path(path)
    t: List[float] = []
    values: List[complex] = []
    with path.open('r', encoding='utf-8', newline='') as csv_file:
        reader = csv.reader(csv_file)
        header = next(reader, None)
        if header is None or tuple(cell.strip().lower() for cell in header) != SIGNAL_HEADER:
            raise FormatError(f"expected header {','.join(SIGNAL_HEADER)} in {path}, got {header}", 1)
        for row in reader:
            line_number = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise FormatError(f"expected 3 columns, got {len(row)}", line_number)
            try:
                t_value, real, imag = (float(cell) for cell in row)
            except ValueError as e:
                raise FormatError(f"not a number: {e}", line_number) from None
            if not all(math.isfinite(v) for v in (t_value, real, imag)):
                raise FormatError("values must be finite", line_number)
            if len(t) >= 2:
                step = t[1] - t[0]
                if abs((t_value - t[-1]) - step) > uniform_tol * abs(step):
                    raise FormatError(
                        f"t={t_value!r} breaks the uniform spacing {step!r} of the first rows", line_number,
                    )
            elif len(t) == 1 and t_value <= t[0]:
                raise FormatError(f"t must increase, got {t[0]!r} then {t_value!r}", line_number)
            t.append(t_value)
            values.append(complex(real, imag))

    if len(t) < 2:
        raise FormatError(f"{path} needs at least two samples, found {len(t)}")
    grid = UniformGrid(start=t[0], step=(t[-1] - t[0]) / (len(t) - 1), count=len(t))
    log.debug(f"loaded {len(t)} samples from {path} on {grid}")
    return SampledSignal(grid=grid, values=np.array(values))
