import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..lab import OperatorMatrix

logger = logging.getLogger(__name__)


def numpy_handler(obj):
    """json `default` hook for numpy scalars, arrays and complex numbers"""
    if isinstance(obj, complex):
        return {'re': obj.real, 'im': obj.imag}
    if isinstance(obj, np.ndarray):
        return obj.tolist() if not np.iscomplexobj(obj) else [numpy_handler(complex(v)) for v in obj.ravel()]
    if hasattr(obj, 'item'):
        return obj.item()
    if hasattr(obj, 'to_dict'):
        return obj.to_dict()
    return str(obj)


def save_json(payload: Any, filepath: str) -> str:
    """Write a JSON document to an explicit path; "" on failure"""
    try:
        path = Path(filepath)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(payload, f, default=numpy_handler, indent=2, ensure_ascii=False)
        logger.info(f"Report saved: {path}")
        return str(path)
    except (OSError, TypeError, ValueError) as e:
        logger.error(f"Save report error: {e}")
        return ""


def complex_columns(entries: np.ndarray) -> pd.DataFrame:
    """Row-major re_j, im_j column pairs of a complex matrix"""
    entries = np.atleast_2d(np.asarray(entries, dtype=complex))
    columns = {}
    for j in range(entries.shape[1]):
        columns[f're_{j}'] = entries[:, j].real
        columns[f'im_{j}'] = entries[:, j].imag
    return pd.DataFrame(columns)


class ReportStorage:
    """File storage for reports, matrix dumps, spectra and plot data"""

    def __init__(self, base_path: str = "output", timestamp: bool = True):
        self.base_path = Path(base_path)
        self.base_path.mkdir(parents=True, exist_ok=True)
        self.timestamp = timestamp

        # Create subdirectories
        for sub in ("reports", "matrices", "spectra", "plots"):
            (self.base_path / sub).mkdir(exist_ok=True)

        self.logger = logging.getLogger(__name__)

    def _filename(self, stem: str, suffix: str) -> str:
        if self.timestamp:
            return f"{stem}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.{suffix}"
        return f"{stem}.{suffix}"

    def save_report(self, payload: Any, name: str) -> str:
        """Save a JSON report under reports/"""
        return save_json(payload, str(self.base_path / "reports" / self._filename(name, "json")))

    def save_matrix_csv(self, matrix: OperatorMatrix, name: str) -> str:
        """
        Save an operator matrix as re/im column pairs plus a JSON sidecar

        Returns:
            Path of the CSV file, or "" on failure
        """
        try:
            filepath = self.base_path / "matrices" / self._filename(name, "csv")
            complex_columns(matrix.entries).to_csv(filepath, index=False)
            sidecar = filepath.with_suffix('.json')
            with open(sidecar, 'w', encoding='utf-8') as f:
                json.dump(matrix.sidecar(), f, default=numpy_handler, indent=2)
            self.logger.info(f"Matrix saved to CSV: {filepath}")
            return str(filepath)
        except OSError as e:
            self.logger.error(f"Save matrix CSV error: {e}")
            return ""

    def load_matrix_csv(self, filepath: str) -> Optional[np.ndarray]:
        """Load a matrix written by save_matrix_csv"""
        try:
            df = pd.read_csv(filepath)
            re = df[[c for c in df.columns if c.startswith('re_')]].to_numpy()
            im = df[[c for c in df.columns if c.startswith('im_')]].to_numpy()
            self.logger.info(f"Matrix loaded from CSV: {filepath}")
            return re + 1j * im
        except (OSError, KeyError, ValueError) as e:
            self.logger.error(f"Load matrix CSV error: {e}")
            return None

    def save_spectrum_csv(self, values: np.ndarray, name: str) -> str:
        """Save eigenvalues or singular values as index, re, im"""
        try:
            values = np.asarray(values, dtype=complex).ravel()
            filepath = self.base_path / "spectra" / self._filename(name, "csv")
            df = pd.DataFrame({'index': np.arange(values.size), 're': values.real, 'im': values.imag})
            df.to_csv(filepath, index=False)
            self.logger.info(f"Spectrum saved to CSV: {filepath}")
            return str(filepath)
        except OSError as e:
            self.logger.error(f"Save spectrum CSV error: {e}")
            return ""

    def save_plot_csv(self, curve: pd.DataFrame, name: str) -> str:
        """Save one plot curve with the header x,re,im"""
        try:
            filepath = self.base_path / "plots" / self._filename(name, "csv")
            curve[['x', 're', 'im']].to_csv(filepath, index=False)
            self.logger.info(f"Plot data saved: {filepath}")
            return str(filepath)
        except (OSError, KeyError) as e:
            self.logger.error(f"Save plot data error: {e}")
            return ""

    def save_dumps(self, dumps: Dict[str, Any], prefix: str) -> List[str]:
        """
        Save every suite dump by type

        Matrices go to matrices/, arrays to spectra/ and curve frames to
        plots/. Dump names are sanitized into file stems.
        """
        paths = []
        for key, value in dumps.items():
            stem = f"{prefix}_{_safe_stem(key)}"
            if isinstance(value, OperatorMatrix):
                path = self.save_matrix_csv(value, stem)
            elif isinstance(value, pd.DataFrame):
                path = self.save_plot_csv(value, stem)
            elif isinstance(value, np.ndarray):
                path = self.save_spectrum_csv(value, stem)
            else:
                self.logger.warning(f"Dump {key} of type {type(value).__name__} skipped")
                continue
            if path:
                paths.append(path)
        return paths


def _safe_stem(name: str) -> str:
    return ''.join(c if c.isalnum() or c in '-_' else '_' for c in name)
